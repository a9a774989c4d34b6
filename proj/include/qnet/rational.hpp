#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace qnet {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using RationalVector = std::vector<Rational>;

/// Base class for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad documents, unknown ids, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q", "p" or a plain decimal such as "0.25" into an exact value.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Integer lcm_of_denominators(const RationalVector& values);

/// Scales a vector by a positive value so that it becomes a primitive integer
/// vector (gcd of entries 1). The zero vector is returned unchanged.
RationalVector primitive_integer_direction(const RationalVector& v);

Rational dot(const RationalVector& a, const RationalVector& b);

/// Edge capacity: a nonnegative rational or the "unlimited" sentinel, which
/// compares greater than every finite value.
class Capacity {
 public:
  Capacity() = default;
  Capacity(Rational value) : value_(std::move(value)) {}  // NOLINT
  Capacity(int value) : value_(value) {}                   // NOLINT

  static Capacity unlimited() {
    Capacity c;
    c.unlimited_ = true;
    return c;
  }

  bool is_unlimited() const { return unlimited_; }
  /// Finite value; throws for the unlimited sentinel.
  const Rational& value() const {
    if (unlimited_) throw Error("unlimited capacity has no finite value");
    return value_;
  }

  friend bool operator==(const Capacity& a, const Capacity& b) {
    if (a.unlimited_ || b.unlimited_) return a.unlimited_ == b.unlimited_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const Capacity& a, const Capacity& b) {
    if (a.unlimited_) return false;
    if (b.unlimited_) return true;
    return a.value_ < b.value_;
  }
  friend Capacity operator+(const Capacity& a, const Capacity& b) {
    if (a.unlimited_ || b.unlimited_) return unlimited();
    return Capacity(Rational(a.value_ + b.value_));
  }

 private:
  Rational value_{0};
  bool unlimited_ = false;
};

std::string to_string(const Capacity& c);

}  // namespace qnet
