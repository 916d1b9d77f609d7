#include "trop/selftest.hpp"

#include "trop/cohomology.hpp"
#include "trop/mumford.hpp"
#include "trop/tropicalize.hpp"
#include "trop/ultrametric.hpp"

#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

namespace trop {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Runs f(i) for i in [0, n); f returns a failure message or nothing. Failures
// are collected by index, so the aggregate is independent of thread timing.
template <class F>
std::vector<std::string> run_cases(std::size_t n, std::size_t jobs, F&& f) {
  std::vector<std::string> slot(n);
  std::vector<char> failed(n, 0);
  auto work = [&](std::size_t i) {
    try {
      if (std::optional<std::string> msg = f(i)) {
        slot[i] = *msg;
        failed[i] = 1;
      }
    } catch (const std::exception& e) {
      slot[i] = std::string("exception: ") + e.what();
      failed[i] = 1;
    }
  };
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    std::size_t count = std::min(jobs, n);
    threads.reserve(count);
    for (std::size_t t = 0; t < count; ++t)
      threads.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
      });
    for (auto& t : threads) t.join();
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    if (failed[i]) out.push_back("case " + std::to_string(i) + ": " + slot[i]);
  return out;
}

std::string table_text(const CohomologyTable& t) {
  std::ostringstream os;
  os << "h=[[" << t.h[0][0] << "," << t.h[0][1] << "],[" << t.h[1][0] << "," << t.h[1][1]
     << "]] hc=[[" << t.hc[0][0] << "," << t.hc[0][1] << "],[" << t.hc[1][0] << "," << t.hc[1][1]
     << "]]";
  return os.str();
}

std::optional<std::string> expect_tables(const CohomologyTable& got, const CohomologyTable& want,
                                         const std::string& what) {
  if (got == want) return std::nullopt;
  return what + ": got " + table_text(got) + ", want " + table_text(want);
}

SkeletonGraph banana(std::size_t k) {
  SkeletonGraph g;
  g.num_vertices = 2;
  for (std::size_t i = 0; i < k; ++i) {
    SkeletonEdge e;
    e.a = 0;
    e.b = 1;
    e.length = Rat(static_cast<long long>(i + 1));
    g.edges.push_back(e);
  }
  return g;
}

// All pairwise log-distances zero: the tropicalization is a star with one
// finite vertex at the origin, n leaf edges and one free ray.
LogDistanceMatrix star_matrix(std::size_t n) {
  LogDistanceMatrix m;
  m.entries.assign(n, std::vector<LogValue>(n, LogValue(Rat(0))));
  for (std::size_t i = 0; i < n; ++i) m.entries[i][i] = LogValue::neg_inf();
  return m;
}

// Random connected subtree of a curve, closed under taking endpoints. Grown
// from a random finite vertex, so the result is never empty.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> random_core(const TropicalCurve& c,
                                                                          Rng& rng) {
  std::vector<std::size_t> finite;
  for (std::size_t v = 0; v < c.vertices.size(); ++v)
    if (!c.vertices[v].at_infinity()) finite.push_back(v);
  invariant(!finite.empty(), "random core needs a finite vertex");
  std::set<std::size_t> cv{finite[rng.below(finite.size())]};
  std::set<std::size_t> ce;
  while (true) {
    std::vector<std::size_t> frontier;
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
      if (ce.count(e)) continue;
      bool tail_in = cv.count(c.edges[e].tail) > 0;
      bool head_in = c.edges[e].head && cv.count(*c.edges[e].head) > 0;
      if (tail_in || head_in) frontier.push_back(e);
    }
    if (frontier.empty() || !rng.chance(3, 5)) break;
    std::size_t e = frontier[rng.below(frontier.size())];
    ce.insert(e);
    cv.insert(c.edges[e].tail);
    if (c.edges[e].head) cv.insert(*c.edges[e].head);
  }
  return {std::vector<std::size_t>(cv.begin(), cv.end()),
          std::vector<std::size_t>(ce.begin(), ce.end())};
}

std::vector<AffineTerm> random_terms(std::size_t r, Rng& rng) {
  std::vector<AffineTerm> terms(2 + rng.below(3));
  for (auto& t : terms) {
    t.m.resize(r);
    for (auto& x : t.m) x = static_cast<long long>(rng.below(3));
    t.c = Rat(rng.range(-2, 2), 1 + static_cast<long long>(rng.below(2)));
  }
  return terms;
}

TropicalCurve randomly_subdivided(const TropicalCurve& c, Rng& rng, std::size_t max_splits) {
  TropicalCurve x = c;
  std::size_t splits = rng.below(max_splits + 1);
  for (std::size_t s = 0; s < splits; ++s) {
    std::vector<std::size_t> eligible;
    for (std::size_t e = 0; e < x.edges.size(); ++e)
      if (!x.vertices[x.edges[e].tail].at_infinity()) eligible.push_back(e);
    if (eligible.empty()) break;
    std::size_t e = eligible[rng.below(eligible.size())];
    Rat t = x.edges[e].length ? *x.edges[e].length * Rat(1 + rng.below(3), 4)
                              : Rat(1 + rng.below(3), 2);
    x = subdivide_at(x, e, t).curve;
  }
  return x;
}

struct CriterionRun {
  std::size_t cases = 0;
  std::vector<std::string> failures;
};

CriterionResult finish(int id, const std::string& name, const CriterionRun& run,
                       double seconds, std::optional<double> bound = std::nullopt) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  r.seconds = seconds;
  r.pass = run.failures.empty();
  std::ostringstream d;
  d << "cases=" << run.cases;
  if (bound) {
    d << " time=" << seconds << "s bound=" << *bound << "s";
    if (seconds > *bound) {
      r.pass = false;
      d << " EXCEEDED";
    }
  }
  if (!run.failures.empty()) {
    d << "; " << run.failures.size() << " failed; first: " << run.failures.front();
  }
  r.detail = d.str();
  return r;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::vector<CriterionResult> run_selftest(const SelftestOptions& opt) {
  std::vector<CriterionResult> results;
  auto cap = [&](std::size_t n) { return opt.cases ? std::min(n, *opt.cases) : n; };

  // 1: whole-skeleton tables by genus.
  {
    Stopwatch sw;
    CriterionRun run;
    const std::size_t genera[] = {0, 1, 2, 3, 5};
    std::size_t per_genus = cap(20);
    std::size_t total = 5 * per_genus;
    run.cases = total;
    run.failures = run_cases(total, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      std::size_t g = genera[i / per_genus];
      Rng rng(mix(opt.seed, 1, i));
      SkeletonGraph s = random_skeleton(g, rng);
      SkeletonGraph sub = subdivide_loops(s, 2);
      CohomologyTable t = cohomology_table(sub, whole_region(sub));
      return expect_tables(t, theorem_table_global(g), "genus " + std::to_string(g));
    });
    results.push_back(finish(1, "whole-graph tables for g in {0,1,2,3,5}", run, sw.seconds(), 5.0));
  }

  // 2: simple-region tables for k = 1..6, on skeletons and on embedded curves.
  {
    Stopwatch sw;
    CriterionRun run;
    std::vector<std::string> fails;

    // Deterministic skeleton cases: cut all k parallel edges at one vertex.
    for (std::size_t k = 1; k <= 6; ++k) {
      try {
        SimpleSkeletonRegion sr = make_simple_region(banana(k), {0}, {});
        invariant(sr.k == k, "banana cut count");
        CohomologyTable t = cohomology_table(sr.ambient, sr.region);
        if (auto m = expect_tables(t, theorem_table_simple(k), "skeleton k=" + std::to_string(k)))
          fails.push_back(*m);
      } catch (const std::exception& e) {
        fails.push_back("skeleton k=" + std::to_string(k) + ": " + e.what());
      }
      ++run.cases;
    }

    // Deterministic embedded cases. k=1: the whole one-point tropicalization;
    // k>=2: stars with the escaping edges cut.
    for (std::size_t k = 1; k <= 6; ++k) {
      try {
        SimpleRegion sr = [&] {
          if (k == 1) {
            LogDistanceMatrix m;
            m.entries = {{LogValue::neg_inf()}};
            TropicalCurve x = tropicalize_direct(m);
            return make_simple_region(x, {0}, {0}, Rat(1, 3));
          }
          if (k == 2) {
            TropicalCurve x = tropicalize_direct(star_matrix(2));
            std::size_t center = SIZE_MAX, leaf0 = SIZE_MAX;
            for (std::size_t v = 0; v < x.vertices.size(); ++v) {
              if (!x.vertices[v].at_infinity()) center = v;
              if (x.vertices[v].coords[0].is_neg_inf()) leaf0 = v;
            }
            std::size_t leaf_edge = SIZE_MAX;
            for (std::size_t e = 0; e < x.edges.size(); ++e)
              if (x.edges[e].head == std::optional<std::size_t>(leaf0)) leaf_edge = e;
            return make_simple_region(x, {center, leaf0}, {leaf_edge}, Rat(1, 3));
          }
          TropicalCurve x = tropicalize_direct(star_matrix(k - 1));
          std::size_t center = SIZE_MAX;
          for (std::size_t v = 0; v < x.vertices.size(); ++v)
            if (!x.vertices[v].at_infinity()) center = v;
          return make_simple_region(x, {center}, {}, Rat(1, 3));
        }();
        invariant(sr.k == k, "embedded cut count");
        CohomologyTable t = cohomology_table(sr.ambient, sr.region);
        if (auto m = expect_tables(t, theorem_table_simple(k), "embedded k=" + std::to_string(k)))
          fails.push_back(*m);
      } catch (const std::exception& e) {
        fails.push_back("embedded k=" + std::to_string(k) + ": " + e.what());
      }
      ++run.cases;
    }

    // Randomized cases on both kinds of ambient space.
    std::size_t n_rand = cap(50);
    auto rand_fails = run_cases(2 * n_rand, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      Rng rng(mix(opt.seed, 2, i));
      if (i < n_rand) {
        SkeletonGraph s = random_skeleton(i % 4, rng);
        SkeletonGraph sub = subdivide_loops(s, 2);
        SimpleSkeletonRegion sr = random_simple_region(sub, rng);
        CohomologyTable t = cohomology_table(sr.ambient, sr.region);
        if (sr.k == 0)  // the subtree swallowed a genus-0 graph whole
          return expect_tables(t, theorem_table_global(0), "swallowed tree");
        return expect_tables(t, theorem_table_simple(sr.k),
                             "random skeleton k=" + std::to_string(sr.k));
      }
      LogDistanceMatrix m = random_ultrametric(2 + i % 6, mix(opt.seed, 20, i));
      TropicalCurve x = tropicalize_direct(m);
      auto [core_v, core_e] = random_core(x, rng);
      SimpleRegion sr = make_simple_region(x, core_v, core_e, Rat(1, 3));
      invariant(sr.k >= 1, "embedded simple region without endpoints");
      CohomologyTable t = cohomology_table(sr.ambient, sr.region);
      return expect_tables(t, theorem_table_simple(sr.k),
                           "random embedded k=" + std::to_string(sr.k));
    });
    run.cases += 2 * n_rand;
    for (auto& f : rand_fails) fails.push_back(f);
    run.failures = fails;
    results.push_back(finish(2, "simple-region tables for k = 1..6", run, sw.seconds(), 5.0));
  }

  // 3 and 4 share one pass over the same matrices.
  {
    Stopwatch sw;
    std::size_t total = cap(200);
    struct Outcome {
      std::optional<std::string> equality, structure;
    };
    std::vector<Outcome> outcomes(total);
    std::vector<std::string> hard_failures =
        run_cases(total, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      Outcome& out = outcomes[i];
      std::size_t n = 1 + i % 8;
      LogDistanceMatrix m = random_ultrametric(n, mix(opt.seed, 3, i));
      TropicalCurve direct = tropicalize_direct(m);
      TropicalCurve incremental;
      try {
        incremental = tropicalize_incremental(m);
      } catch (const std::exception& e) {
        out.equality = std::string("incremental failed: ") + e.what();
        out.structure = out.equality;
        return std::nullopt;
      }
      if (!canonical_equal(direct, incremental))
        out.equality = "direct and incremental disagree (n=" + std::to_string(n) + ")";
      for (const TropicalCurve* c : {&direct, &incremental}) {
        BalancingReport br = check_balancing(*c);
        SmoothReport sr = check_smooth(*c);
        if (!br.balanced) out.structure = "not balanced (n=" + std::to_string(n) + ")";
        if (!sr.smooth) out.structure = "not smooth (n=" + std::to_string(n) + ")";
        if (!sr.weights_one) out.structure = "non-unit weight (n=" + std::to_string(n) + ")";
      }
      return std::nullopt;
    });
    double elapsed = sw.seconds();

    CriterionRun run3, run4;
    run3.cases = run4.cases = total;
    for (const auto& f : hard_failures) {
      run3.failures.push_back(f);
      run4.failures.push_back(f);
    }
    for (std::size_t i = 0; i < total; ++i) {
      if (outcomes[i].equality)
        run3.failures.push_back("case " + std::to_string(i) + ": " + *outcomes[i].equality);
      if (outcomes[i].structure)
        run4.failures.push_back("case " + std::to_string(i) + ": " + *outcomes[i].structure);
    }
    results.push_back(finish(3, "direct = incremental on 200 random matrices", run3, elapsed, 30.0));
    results.push_back(
        finish(4, "balanced, smooth, unit weights on the same 200", run4, elapsed));
  }

  // 5: modification invariance of cohomology tables under region transport.
  {
    Stopwatch sw;
    CriterionRun run;
    std::size_t n_pairs = cap(100), n_steps = cap(100);
    run.cases = n_pairs + n_steps;
    run.failures =
        run_cases(n_pairs + n_steps, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
          Rng rng(mix(opt.seed, 5, i));
          ModificationMap mod;
          if (i < n_pairs) {
            LogDistanceMatrix m = random_ultrametric(2 + i % 5, mix(opt.seed, 50, i));
            TropicalCurve x = tropicalize_direct(m);
            Restriction res = restrict_max_affine(x, random_terms(x.r, rng));
            mod = modify(res.curve, res.paf);
          } else {
            LogDistanceMatrix m = random_ultrametric(3 + i % 5, mix(opt.seed, 51, i));
            IncrementalTrace trace = tropicalize_incremental_trace(m);
            mod = trace.steps[rng.below(trace.steps.size())];
          }
          RegionSpec region = random_region(mod.target, rng);
          RegionSpec pre = preimage_region(mod, region);
          CohomologyTable before = cohomology_table(mod.target, region);
          CohomologyTable after = cohomology_table(mod.source, pre);
          return expect_tables(after, before,
                               i < n_pairs ? "restricted-function modification"
                                           : "incremental-step modification");
        });
    results.push_back(finish(5, "cohomology invariance under modification", run, sw.seconds()));
  }

  // 6: duality on random regions of smooth curves and skeletons.
  {
    Stopwatch sw;
    CriterionRun run;
    std::size_t half = cap(50);
    run.cases = 2 * half;
    run.failures =
        run_cases(2 * half, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
          Rng rng(mix(opt.seed, 6, i));
          CohomologyTable t;
          if (i < half) {
            LogDistanceMatrix m = random_ultrametric(2 + i % 6, mix(opt.seed, 60, i));
            TropicalCurve x = randomly_subdivided(tropicalize_direct(m), rng, 3);
            t = cohomology_table(x, random_region(x, rng));
          } else {
            SkeletonGraph s = random_skeleton(i % 6, rng);
            SkeletonGraph sub = subdivide_loops(s, 2);
            t = cohomology_table(sub, random_region(sub, rng));
          }
          if (!pd_check(t)) return "duality fails: " + table_text(t);
          return std::nullopt;
        });
    results.push_back(finish(6, "duality h[p][q] = hc[1-p][1-q] on random regions", run,
                             sw.seconds()));
  }

  // 7: property suite.
  {
    Stopwatch sw;
    CriterionRun run;
    std::vector<std::string> fails;
    std::size_t per = cap(100);

    // a: orientation independence.
    auto fa = run_cases(per, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      Rng rng(mix(opt.seed, 71, i));
      CellGraph cg;
      if (i % 2 == 0) {
        LogDistanceMatrix m = random_ultrametric(2 + i % 5, mix(opt.seed, 710, i));
        TropicalCurve x = tropicalize_direct(m);
        cg = cell_graph(x, random_region(x, rng));
      } else {
        SkeletonGraph sub = subdivide_loops(random_skeleton(i % 5, rng), 2);
        cg = cell_graph(sub, random_region(sub, rng));
      }
      CohomologyTable base = table_of(cg);
      CellGraph flipped = cg;
      for (std::size_t e = 0; e < flipped.edges.size(); ++e)
        if (rng.chance(1, 2)) flip_edge_orientation(flipped, e);
      return expect_tables(table_of(flipped), base, "orientation flip");
    });
    for (auto& f : fa) fails.push_back("[orientation] " + f);
    run.cases += per;

    // b: subdivision invariance.
    auto fb = run_cases(per, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      Rng rng(mix(opt.seed, 72, i));
      LogDistanceMatrix m = random_ultrametric(2 + i % 6, mix(opt.seed, 720, i));
      TropicalCurve x = tropicalize_direct(m);
      RegionSpec region = random_region(x, rng);
      CohomologyTable before = cohomology_table(x, region);
      std::size_t e = region.edges[rng.below(region.edges.size())];
      Rat t = x.edges[e].length ? *x.edges[e].length * Rat(1 + rng.below(3), 4)
                                : Rat(1 + rng.below(3), 2);
      SubdivisionResult sub = subdivide_at(x, e, t);
      RegionSpec refined = region;
      refined.vertices.push_back(sub.new_vertex);
      refined.edges.push_back(sub.high_edge);
      return expect_tables(cohomology_table(sub.curve, refined), before, "subdivided region");
    });
    for (auto& f : fb) fails.push_back("[subdivision] " + f);
    run.cases += per;

    // c: cut-point placement invariance.
    auto fc = run_cases(per, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      Rng rng(mix(opt.seed, 73, i));
      LogDistanceMatrix m = random_ultrametric(2 + i % 6, mix(opt.seed, 730, i));
      TropicalCurve x = tropicalize_direct(m);
      auto [core_v, core_e] = random_core(x, rng);
      SimpleRegion a = make_simple_region(x, core_v, core_e, Rat(1, 4));
      SimpleRegion b = make_simple_region(x, core_v, core_e, Rat(1, 3));
      SimpleRegion c = make_simple_region(x, core_v, core_e, Rat(2, 5));
      if (a.k != b.k || b.k != c.k) return std::string("cut counts differ");
      CohomologyTable ta = cohomology_table(a.ambient, a.region);
      CohomologyTable tb = cohomology_table(b.ambient, b.region);
      CohomologyTable tc = cohomology_table(c.ambient, c.region);
      if (auto msg = expect_tables(tb, ta, "cut at 1/3 vs 1/4")) return msg;
      return expect_tables(tc, ta, "cut at 2/5 vs 1/4");
    });
    for (auto& f : fc) fails.push_back("[cut-point] " + f);
    run.cases += per;

    // d: Euler characteristic of the function complex matches the cell count.
    auto fd = run_cases(per, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      Rng rng(mix(opt.seed, 74, i));
      EulerReport er;
      if (i % 2 == 0) {
        LogDistanceMatrix m = random_ultrametric(2 + i % 6, mix(opt.seed, 740, i));
        TropicalCurve x = randomly_subdivided(tropicalize_direct(m), rng, 2);
        er = euler_check(x, random_region(x, rng));
      } else {
        SkeletonGraph sub = subdivide_loops(random_skeleton(i % 5, rng), 2);
        er = euler_check(sub, random_region(sub, rng));
      }
      if (!er.ok)
        return "chi=" + std::to_string(er.chi) + " cells=" + std::to_string(er.cells);
      return std::nullopt;
    });
    for (auto& f : fd) fails.push_back("[euler] " + f);
    run.cases += per;

    // e: embedded and valence-model stalks agree on smooth curves.
    auto fe = run_cases(per, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      Rng rng(mix(opt.seed, 75, i));
      LogDistanceMatrix m = random_ultrametric(2 + i % 6, mix(opt.seed, 750, i));
      TropicalCurve x = randomly_subdivided(tropicalize_direct(m), rng, 2);
      RegionSpec region = random_region(x, rng);
      return expect_tables(cohomology_table_abstract(x, region), cohomology_table(x, region),
                           "valence model");
    });
    for (auto& f : fe) fails.push_back("[abstract] " + f);
    run.cases += per;

    // f: canonical form is a fixed point and absorbs subdivisions.
    auto ff = run_cases(per, opt.jobs, [&](std::size_t i) -> std::optional<std::string> {
      Rng rng(mix(opt.seed, 76, i));
      LogDistanceMatrix m = random_ultrametric(1 + i % 7, mix(opt.seed, 760, i));
      TropicalCurve x = tropicalize_direct(m);
      if (!(canonicalize(x) == x)) return std::string("canonical form is not a fixed point");
      TropicalCurve y = randomly_subdivided(x, rng, 3);
      if (!(canonicalize(y) == x)) return std::string("subdivision does not canonicalize back");
      if (x.r >= 2) {
        Restriction res = restrict_max_affine(x, random_terms(x.r, rng));
        TropicalCurve z = modify(res.curve, res.paf).source;
        TropicalCurve zc = canonicalize(z);
        if (!(canonicalize(zc) == zc)) return std::string("modified curve: not idempotent");
      }
      return std::nullopt;
    });
    for (auto& f : ff) fails.push_back("[canonical] " + f);
    run.cases += per;

    run.failures = fails;
    results.push_back(finish(7, "property suite (6 families)", run, sw.seconds()));
  }

  return results;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace trop
