#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trop {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Raised when user-supplied data (files, flags, matrices, curves) is malformed.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal invariant that should hold by construction fails,
// e.g. two methods that must agree disagree. Distinct from bad input.
struct InvariantError : std::runtime_error {
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

inline void invariant(bool cond, const std::string& msg) {
  if (!cond) throw InvariantError(msg);
}

// Element of [-inf, +inf) = R united with -inf; the value space of tropical
// coordinates. -inf is absorbing under +.
class LogValue {
 public:
  LogValue() : finite_(true), v_(0) {}
  explicit LogValue(Rat v) : finite_(true), v_(std::move(v)) {}
  explicit LogValue(long long v) : finite_(true), v_(v) {}
  static LogValue neg_inf() {
    LogValue x;
    x.finite_ = false;
    x.v_ = 0;
    return x;
  }

  bool is_neg_inf() const { return !finite_; }
  bool is_finite() const { return finite_; }
  const Rat& value() const {
    if (!finite_) throw InvariantError("LogValue: value() on -inf");
    return v_;
  }

  friend bool operator==(const LogValue& a, const LogValue& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend bool operator!=(const LogValue& a, const LogValue& b) { return !(a == b); }
  friend bool operator<(const LogValue& a, const LogValue& b) {
    if (!a.finite_) return b.finite_;
    if (!b.finite_) return false;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const LogValue& a, const LogValue& b) { return a < b || a == b; }
  friend bool operator>(const LogValue& a, const LogValue& b) { return b < a; }
  friend bool operator>=(const LogValue& a, const LogValue& b) { return b <= a; }

  // a + finite rational; -inf absorbs.
  LogValue plus(const Rat& d) const {
    if (!finite_) return neg_inf();
    return LogValue(v_ + d);
  }

  friend LogValue max(const LogValue& a, const LogValue& b) { return a < b ? b : a; }

 private:
  bool finite_;
  Rat v_;
};

// Canonical text form of an exact rational: "q" when the denominator is 1,
// otherwise "num/den" with den > 1 and gcd(|num|, den) = 1.
std::string rat_to_string(const Rat& q);

// Strict parse of the canonical form above. Accepts an optional leading '-',
// rejects "2/4", "-0", "1/0", whitespace, and empty input.
Rat parse_rat(const std::string& s);

// "-inf" or a canonical rational.
std::string log_value_to_string(const LogValue& v);
LogValue parse_log_value(const std::string& s);

// Deterministic splittable RNG used by every randomized generator. A thin
// wrapper so generated sequences do not depend on libstdc++ distribution
// internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Uniform integer in [lo, hi] inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  Rng split() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }

 private:
  std::uint64_t state_;
};

}  // namespace trop
