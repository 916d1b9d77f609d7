// Command line surface: tropicalize ultrametric matrices, modify curves,
// compute cohomology tables, verify skeleton predictions, run the self test.
//
// Exit codes: 0 success, 1 input validation failure, 2 invariant violation
// (methods disagree, duality fails on a smooth curve, self test failure),
// 3 I/O error.

#include <CLI11.hpp>

#include "trop/cohomology.hpp"
#include "trop/json_io.hpp"
#include "trop/mumford.hpp"
#include "trop/selftest.hpp"
#include "trop/tropicalize.hpp"
#include "trop/ultrametric.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using namespace trop;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return os.str();
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw IoError("cannot open " + output_path + " for writing");
  out << text;
  if (!out) throw IoError("cannot write " + output_path);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Json load_json(const std::string& path) { return parse_json_text(read_file(path)); }

// Loads either a curve or a skeleton ambient space plus an optional region.
struct Ambient {
  std::optional<TropicalCurve> curve;
  std::optional<SkeletonGraph> skeleton;
  RegionSpec region;
};

Ambient load_ambient(const std::string& input, const std::string& skeleton,
                     const std::string& region) {
  Ambient a;
  if (!input.empty() && !skeleton.empty())
    throw ValidationError("pass either --input (curve) or --skeleton, not both");
  if (input.empty() && skeleton.empty())
    throw ValidationError("pass --input (curve) or --skeleton");
  if (!input.empty()) {
    a.curve = decode_curve(load_json(input));
    validate_curve(*a.curve);
    a.region = region.empty() ? whole_region(*a.curve) : decode_region(load_json(region));
    validate_region(*a.curve, a.region);
  } else {
    a.skeleton = decode_skeleton(load_json(skeleton));
    validate_skeleton(*a.skeleton);
    a.region = region.empty() ? whole_region(*a.skeleton) : decode_region(load_json(region));
    validate_region(*a.skeleton, a.region);
  }
  return a;
}

int run(int argc, char** argv) {
  CLI::App app{
      "tropcurve: tropicalizations of the affine line over a non-archimedean field,\n"
      "tropical modifications, and cellular (p,q) cohomology tables of regions"};
  app.require_subcommand(1);
  std::function<int()> action;

  // ingest-points
  {
    auto* cmd = app.add_subcommand("ingest-points",
                                   "Build a log-distance matrix from rational points and a prime");
    auto p = std::make_shared<long long>(0);
    auto points = std::make_shared<std::string>();
    auto labels = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("--p", *p, "prime of the non-archimedean absolute value")->required();
    cmd->add_option("--points", *points, "comma-separated rational points")->required();
    cmd->add_option("--labels", *labels, "comma-separated names, one per point");
    cmd->add_option("--output", *output, "write JSON here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        std::vector<Rat> pts;
        for (const auto& s : split_commas(*points)) pts.push_back(parse_rat(s));
        std::vector<std::string> names;
        if (!labels->empty()) names = split_commas(*labels);
        LogDistanceMatrix m = from_padic_points(*p, pts, names);
        emit(json_text(encode(m)), *output);
        return 0;
      };
    });
  }

  // tropicalize
  {
    auto* cmd = app.add_subcommand("tropicalize",
                                   "Tropicalization of the line embedded by n marked points");
    auto input = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("direct");
    auto output = std::make_shared<std::string>();
    cmd->add_option("--input", *input, "log-distance matrix JSON")->required();
    cmd->add_option("--method", *method, "direct | incremental | both")
        ->check(CLI::IsMember({"direct", "incremental", "both"}));
    cmd->add_option("--output", *output, "write JSON here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        LogDistanceMatrix m = decode_matrix(load_json(*input));
        TropicalCurve curve;
        if (*method == "direct") {
          curve = tropicalize_direct(m);
        } else if (*method == "incremental") {
          curve = tropicalize_incremental(m);
        } else {
          TropicalCurve a = tropicalize_direct(m);
          TropicalCurve b = tropicalize_incremental(m);
          bool agree = canonical_equal(a, b);
          std::cerr << "methods agree: " << (agree ? "true" : "false") << "\n";
          if (!agree) throw InvariantError("direct and incremental tropicalizations disagree");
          curve = a;
        }
        emit(json_text(encode(curve)), *output);
        return 0;
      };
    });
  }

  // check
  {
    auto* cmd = app.add_subcommand(
        "check", "Validate a matrix, curve, or skeleton file and report its structure");
    auto input = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("--input", *input, "matrix, curve, or skeleton JSON")->required();
    cmd->add_option("--output", *output, "write JSON here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        Json j = load_json(*input);
        Json rep;
        int code = 0;
        if (j.is_object() && j.contains("L")) {
          LogDistanceMatrix m = decode_matrix(j);
          UltrametricReport ur = validate_ultrametric(m);
          rep["kind"] = "matrix";
          rep["ok"] = ur.ok;
          rep["structural_errors"] = ur.structural_errors;
          Json v = Json::array();
          for (const auto& x : ur.violations)
            v.push_back(Json::array({x.i, x.j, x.k}));
          rep["violations"] = v;
          if (!ur.ok) code = 1;
        } else if (j.is_object() && j.contains("r")) {
          TropicalCurve c = decode_curve(j);
          std::vector<std::string> errors = curve_structure_errors(c);
          rep["kind"] = "curve";
          rep["valid"] = errors.empty();
          rep["errors"] = errors;
          if (errors.empty()) {
            BalancingReport br = check_balancing(c);
            SmoothReport sr = check_smooth(c);
            rep["balanced"] = br.balanced;
            rep["smooth"] = sr.smooth;
            rep["weights_one"] = sr.weights_one;
          } else {
            code = 1;
          }
        } else if (j.is_object() && j.contains("vertices") && j.contains("edges")) {
          SkeletonGraph s = decode_skeleton(j);
          rep["kind"] = "skeleton";
          try {
            validate_skeleton(s);
            rep["valid"] = true;
            rep["genus"] = genus(s);
          } catch (const ValidationError& e) {
            rep["valid"] = false;
            rep["errors"] = Json::array({e.what()});
            code = 1;
          }
        } else {
          throw ValidationError("input is not a matrix, curve, or skeleton file");
        }
        emit(json_text(rep), *output);
        return code;
      };
    });
  }

  // modify
  {
    auto* cmd = app.add_subcommand(
        "modify", "Tropical modification: lift a curve along a piecewise affine function");
    auto input = std::make_shared<std::string>();
    auto paf = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("--input", *input, "curve JSON")->required();
    cmd->add_option("--paf", *paf, "piecewise affine function JSON")->required();
    cmd->add_option("--output", *output, "write JSON here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        TropicalCurve c = decode_curve(load_json(*input));
        validate_curve(c);
        PiecewiseAffineFunction p = decode_paf(load_json(*paf));
        ModificationMap mod = modify(c, p);
        emit(json_text(encode(mod.source)), *output);
        return 0;
      };
    });
  }

  // cohomology
  {
    auto* cmd = app.add_subcommand(
        "cohomology", "Dimension table h[p][q], hc[p][q] of a region of a curve or skeleton");
    auto input = std::make_shared<std::string>();
    auto skeleton = std::make_shared<std::string>();
    auto region = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    auto compact = std::make_shared<bool>(false);
    cmd->add_option("--input", *input, "curve JSON");
    cmd->add_option("--skeleton", *skeleton, "skeleton JSON");
    cmd->add_option("--region", *region, "region JSON (default: the whole space)");
    cmd->add_flag("--compact", *compact, "print only the compact-support half as a 2x2 array");
    cmd->add_option("--output", *output, "write JSON here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        Ambient a = load_ambient(*input, *skeleton, *region);
        CohomologyTable t =
            a.curve ? cohomology_table(*a.curve, a.region) : cohomology_table(*a.skeleton, a.region);
        if (*compact) {
          Json j = encode(t);
          emit(json_text(j["hc"]), *output);
        } else {
          emit(json_text(encode(t)), *output);
        }
        return 0;
      };
    });
  }

  // pd
  {
    auto* cmd = app.add_subcommand(
        "pd", "Check the duality h[p][q] = hc[1-p][1-q] on a region");
    auto input = std::make_shared<std::string>();
    auto skeleton = std::make_shared<std::string>();
    auto region = std::make_shared<std::string>();
    auto output = std::make_shared<std::string>();
    cmd->add_option("--input", *input, "curve JSON");
    cmd->add_option("--skeleton", *skeleton, "skeleton JSON");
    cmd->add_option("--region", *region, "region JSON (default: the whole space)");
    cmd->add_option("--output", *output, "write JSON here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        Ambient a = load_ambient(*input, *skeleton, *region);
        CohomologyTable t =
            a.curve ? cohomology_table(*a.curve, a.region) : cohomology_table(*a.skeleton, a.region);
        bool pd = pd_check(t);
        Json j;
        j["pd"] = pd;
        j["table"] = encode(t);
        emit(json_text(j), *output);
        if (!pd) {
          // Duality is a theorem on smooth spaces; elsewhere a failure is data.
          bool smooth = a.skeleton || check_smooth(*a.curve).smooth;
          if (smooth) throw InvariantError("duality fails on a smooth space");
        }
        return 0;
      };
    });
  }

  // mumford
  {
    auto* cmd = app.add_subcommand(
        "mumford", "Skeleton tables of totally degenerate curves: predicted and verified");
    auto genus_opt = std::make_shared<long long>(-1);
    auto skeleton = std::make_shared<std::string>();
    auto verify = std::make_shared<bool>(false);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto cases = std::make_shared<std::size_t>(5);
    auto output = std::make_shared<std::string>();
    cmd->add_option("--genus", *genus_opt, "genus of the predicted table");
    cmd->add_option("--skeleton", *skeleton, "skeleton JSON to verify instead of random ones");
    cmd->add_flag("--verify", *verify, "verify the prediction by cellular computation");
    cmd->add_option("--seed", *seed, "seed for random verification skeletons");
    cmd->add_option("--cases", *cases, "number of random skeletons when verifying by genus");
    cmd->add_option("--output", *output, "write JSON here instead of stdout");
    cmd->callback([=, &action] {
      action = [=] {
        if (skeleton->empty() && *genus_opt < 0)
          throw ValidationError("pass --genus or --skeleton");
        std::size_t g;
        bool verified = true;
        if (!skeleton->empty()) {
          SkeletonGraph s = decode_skeleton(load_json(*skeleton));
          g = genus(s);
          if (*verify) {
            SkeletonVerification v = verify_skeleton(s, *seed);
            verified = v.ok;
          }
        } else {
          g = static_cast<std::size_t>(*genus_opt);
          if (*verify) {
            Rng rng(*seed);
            for (std::size_t i = 0; i < *cases; ++i) {
              SkeletonGraph s = random_skeleton(g, rng);
              SkeletonVerification v = verify_skeleton(s, rng.next());
              if (!v.ok) verified = false;
            }
          }
        }
        emit(json_text(encode(theorem_table_global(g))), *output);
        if (*verify) {
          std::cerr << "verified: " << (verified ? "true" : "false") << "\n";
          if (!verified) throw InvariantError("cellular tables disagree with the prediction");
        }
        return 0;
      };
    });
  }

  // selftest
  {
    auto* cmd = app.add_subcommand("selftest", "Run the full deterministic verification battery");
    auto seed = std::make_shared<std::uint64_t>(1);
    auto jobs = std::make_shared<std::size_t>(1);
    auto cases = std::make_shared<long long>(-1);
    cmd->add_option("--seed", *seed, "base seed (same seed, same outcome)");
    cmd->add_option("--jobs", *jobs, "worker threads for independent cases");
    cmd->add_option("--cases", *cases, "cap each internal batch (quick smoke run)");
    cmd->callback([=, &action] {
      action = [=] {
        SelftestOptions opt;
        opt.seed = *seed;
        opt.jobs = *jobs == 0 ? 1 : *jobs;
        if (*cases >= 0) opt.cases = static_cast<std::size_t>(*cases);
        std::vector<CriterionResult> rs = run_selftest(opt);
        for (const auto& r : rs) {
          std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name
                    << " (" << r.detail << ")\n";
        }
        bool ok = all_pass(rs);
        std::cout << (ok ? "selftest: all criteria passed" : "selftest: FAILURES above") << "\n";
        return ok ? 0 : 2;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    return action();
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
