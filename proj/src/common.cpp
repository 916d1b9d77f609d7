#include "trop/common.hpp"

namespace trop {

std::string rat_to_string(const Rat& q) {
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

// Unsigned decimal with no leading zeros (single "0" allowed).
bool is_plain_uint(const std::string& s) {
  if (s.empty()) return false;
  if (s[0] == '0') return s.size() == 1;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  std::string t = s;
  bool neg = false;
  if (!t.empty() && t[0] == '-') {
    neg = true;
    t = t.substr(1);
  }
  std::string num_s = t, den_s;
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    num_s = t.substr(0, slash);
    den_s = t.substr(slash + 1);
  }
  require(is_plain_uint(num_s), "rational: bad numerator in \"" + s + "\"");
  BigInt num(num_s);
  require(!(neg && num == 0), "rational: \"-0\" is not canonical");
  if (slash == std::string::npos) return neg ? Rat(-num) : Rat(num);

  require(is_plain_uint(den_s) && den_s != "0", "rational: bad denominator in \"" + s + "\"");
  BigInt den(den_s);
  require(gcd(num, den) == 1,
          "rational: \"" + s + "\" is not in lowest terms");
  Rat q(num, den);
  return neg ? Rat(-q) : q;
}

std::string log_value_to_string(const LogValue& v) {
  if (v.is_neg_inf()) return "-inf";
  return rat_to_string(v.value());
}

LogValue parse_log_value(const std::string& s) {
  if (s == "-inf") return LogValue::neg_inf();
  return LogValue(parse_rat(s));
}

}  // namespace trop
