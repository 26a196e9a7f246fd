#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rcsg {

/// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs.
///
/// Scope is deliberately modest: the workbench needs exact rational
/// probabilities, the square-root-sum gadget identities, and integer square
/// roots at high precision. Schoolbook algorithms are more than fast enough
/// for those sizes.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);  // NOLINT: implicit by design, literals are handy
  static BigInt from_string(const std::string& s);
  static BigInt pow10(unsigned n);

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  /// Truncated division (rounds toward zero), like C++ integer division.
  BigInt operator/(const BigInt& o) const;
  BigInt operator%(const BigInt& o) const;
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  BigInt operator<<(unsigned bits) const;
  BigInt operator>>(unsigned bits) const;

  int compare(const BigInt& o) const;
  bool operator==(const BigInt& o) const { return compare(o) == 0; }
  bool operator!=(const BigInt& o) const { return compare(o) != 0; }
  bool operator<(const BigInt& o) const { return compare(o) < 0; }
  bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
  bool operator>(const BigInt& o) const { return compare(o) > 0; }
  bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

  /// Number of bits in the magnitude; 0 for zero.
  unsigned bit_length() const;
  bool bit(unsigned i) const;
  bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

  static BigInt gcd(BigInt a, BigInt b);
  /// Floor of the square root; throws std::domain_error for negatives.
  static BigInt isqrt(const BigInt& n);

  std::string to_string() const;
  double to_double() const;
  /// Value as int64 when it fits; throws std::overflow_error otherwise.
  std::int64_t to_int64() const;

 private:
  // Magnitude, little-endian, no trailing zero limbs; empty means zero.
  std::vector<std::uint32_t> limbs_;
  bool negative_ = false;

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(
      const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<std::uint32_t> sub_mag(
      const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  std::uint32_t div_small(std::uint32_t divisor);  // in place, returns remainder
  void mul_small(std::uint32_t factor);
  void add_small(std::uint32_t value);
};

}  // namespace rcsg
