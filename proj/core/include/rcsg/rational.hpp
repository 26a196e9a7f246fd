#pragma once

#include <string>

#include "rcsg/bigint.hpp"

namespace rcsg {

/// Exact rational number. Always stored reduced, denominator > 0.
///
/// Transition probabilities, gadget coefficients and reduction arithmetic are
/// all exact rationals; solvers convert to double only at the equation-system
/// boundary.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den);
  Rational(BigInt num, BigInt den);

  /// Parses "p/q" or "p" with optional sign; throws std::invalid_argument.
  static Rational from_string(const std::string& s);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_integer() const { return den_ == BigInt(1); }
  int sign() const { return num_.sign(); }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  int compare(const Rational& o) const;
  bool operator==(const Rational& o) const { return compare(o) == 0; }
  bool operator!=(const Rational& o) const { return compare(o) != 0; }
  bool operator<(const Rational& o) const { return compare(o) < 0; }
  bool operator<=(const Rational& o) const { return compare(o) <= 0; }
  bool operator>(const Rational& o) const { return compare(o) > 0; }
  bool operator>=(const Rational& o) const { return compare(o) >= 0; }

  BigInt floor() const;
  BigInt ceil() const;

  double to_double() const { return num_.to_double() / den_.to_double(); }
  /// Canonical form: "p/q", or just "p" when the denominator is 1.
  std::string to_string() const;

 private:
  BigInt num_;
  BigInt den_;

  void normalize();
};

}  // namespace rcsg
