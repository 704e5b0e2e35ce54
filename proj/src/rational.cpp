#include "feec/rational.hpp"

#include <cctype>

namespace feec {

Integer factorial(int n) {
  if (n < 0) throw Error("factorial of a negative number");
  Integer out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::int64_t binomial64(int n, int k) { return binomial(n, k).convert_to<std::int64_t>(); }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error("empty number");
  auto parse_int = [&](const std::string& t) {
    if (t.empty()) throw Error("malformed number '" + text + "'");
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw Error("malformed number '" + text + "'");
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw Error("malformed number '" + text + "'");
    return Integer(t[0] == '+' ? t.substr(1) : t);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw Error("zero denominator in '" + text + "'");
    return Rational(parse_int(s.substr(0, slash)), den);
  }
  int exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    exponent = parse_int(s.substr(e + 1)).convert_to<int>();
    s = s.substr(0, e);
  }
  std::string digits = s;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    digits = s.substr(0, dot) + frac;
    exponent -= static_cast<int>(frac.size());
    if (digits == "-" || digits == "+" || digits.empty()) throw Error("malformed number '" + text + "'");
  }
  Rational value(parse_int(digits));
  Rational ten = 10;
  for (int i = 0; i < std::abs(exponent); ++i) value = exponent > 0 ? value * ten : value / ten;
  return value;
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace feec
