#include "qnet/rational.hpp"

#include <cctype>

namespace qnet {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = trim(s.substr(0, slash));
    auto den = trim(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      throw InputError("malformed rational '" + std::string(text) + "'");
    }
    Integer d = parse_integer(den);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_integer(num), d);
  }
  if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
    std::string digits(s.substr(0, dot_pos));
    std::string frac(s.substr(dot_pos + 1));
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    if (!is_integer_literal(digits) || (!frac.empty() && !is_integer_literal(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+'))) {
      throw InputError("malformed rational '" + std::string(text) + "'");
    }
    bool negative = digits[0] == '-';
    Integer whole = parse_integer(negative ? std::string_view(digits).substr(1) : digits);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer part = frac.empty() ? Integer(0) : Integer(frac);
    Rational value = Rational(whole) + Rational(part, scale);
    return negative ? Rational(-value) : value;
  }
  if (!is_integer_literal(s)) throw InputError("malformed rational '" + std::string(text) + "'");
  return Rational(parse_integer(s));
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Integer lcm_of_denominators(const RationalVector& values) {
  Integer l = 1;
  for (const auto& v : values) l = boost::multiprecision::lcm(l, Integer(denominator(v)));
  return l;
}

RationalVector primitive_integer_direction(const RationalVector& v) {
  Integer l = lcm_of_denominators(v);
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = Integer(numerator(x)) * (l / Integer(denominator(x)));
    g = boost::multiprecision::gcd(g, n);
    ints.push_back(n);
  }
  if (g == 0) return v;
  if (g < 0) g = -g;
  RationalVector out;
  out.reserve(v.size());
  for (const auto& n : ints) out.emplace_back(n / g);
  return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw Error("dot product of vectors with different lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const Capacity& c) {
  return c.is_unlimited() ? std::string("inf") : to_string(c.value());
}

}  // namespace qnet
