#include "rcsg/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace rcsg {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
  negative_ = v < 0;
  std::uint64_t mag = negative_ ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
  while (mag != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
    mag >>= 32;
  }
}

BigInt BigInt::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("BigInt: empty string");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("BigInt: no digits in '" + s + "'");
  BigInt r;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
    r.mul_small(10);
    r.add_small(static_cast<std::uint32_t>(s[i] - '0'));
  }
  r.negative_ = neg && !r.is_zero();
  return r;
}

BigInt BigInt::pow10(unsigned n) {
  BigInt r(1);
  for (unsigned i = 0; i < n; ++i) r.mul_small(10);
  return r;
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) negative_ = false;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a,
                    const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r;
  r.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    std::uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r.push_back(static_cast<std::uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry != 0) r.push_back(static_cast<std::uint32_t>(carry));
  return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r;
  r.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                     (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<std::uint32_t>(d));
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.is_zero()) r.negative_ = !r.negative_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.negative_ = false;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  BigInt r;
  if (negative_ == o.negative_) {
    r.limbs_ = add_mag(limbs_, o.limbs_);
    r.negative_ = negative_;
  } else {
    int c = cmp_mag(limbs_, o.limbs_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.limbs_ = sub_mag(limbs_, o.limbs_);
      r.negative_ = negative_;
    } else {
      r.limbs_ = sub_mag(o.limbs_, limbs_);
      r.negative_ = o.negative_;
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (is_zero() || o.is_zero()) return BigInt();
  BigInt r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
      std::uint64_t cur = static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j] +
                          r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + o.limbs_.size();
    while (carry != 0) {
      std::uint64_t cur = r.limbs_[k] + carry;
      r.limbs_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.negative_ = negative_ != o.negative_;
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
  BigInt am = a.abs();
  BigInt bm = b.abs();
  if (cmp_mag(am.limbs_, bm.limbs_) < 0) {
    q = BigInt();
    r = a;
    return;
  }
  // Shift-subtract long division on magnitudes.
  BigInt quot, rem;
  int shift = static_cast<int>(am.bit_length()) - static_cast<int>(bm.bit_length());
  BigInt cur = bm << static_cast<unsigned>(shift);
  rem = am;
  quot.limbs_.assign((static_cast<std::size_t>(shift) + 32) / 32, 0);
  for (; shift >= 0; --shift) {
    if (cmp_mag(cur.limbs_, rem.limbs_) <= 0) {
      rem.limbs_ = sub_mag(rem.limbs_, cur.limbs_);
      quot.limbs_[static_cast<std::size_t>(shift) / 32] |=
          (1u << (static_cast<unsigned>(shift) % 32));
    }
    cur = cur >> 1;
  }
  quot.trim();
  rem.trim();
  // Truncated semantics: quotient sign is the XOR of signs, remainder follows
  // the dividend.
  quot.negative_ = !quot.is_zero() && (a.negative_ != b.negative_);
  rem.negative_ = !rem.is_zero() && a.negative_;
  q = quot;
  r = rem;
}

BigInt BigInt::operator/(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return r;
}

BigInt BigInt::operator<<(unsigned bits) const {
  if (is_zero() || bits == 0) return *this;
  unsigned limb_shift = bits / 32;
  unsigned bit_shift = bits % 32;
  BigInt r;
  r.negative_ = negative_;
  r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
    r.limbs_[i + limb_shift] |= static_cast<std::uint32_t>(v & 0xffffffffu);
    r.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
  }
  r.trim();
  return r;
}

BigInt BigInt::operator>>(unsigned bits) const {
  if (is_zero() || bits == 0) return *this;
  unsigned limb_shift = bits / 32;
  unsigned bit_shift = bits % 32;
  if (limb_shift >= limbs_.size()) return BigInt();
  BigInt r;
  r.negative_ = negative_;
  r.limbs_.assign(limbs_.size() - limb_shift, 0);
  for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
    std::uint64_t v = limbs_[i + limb_shift] >> bit_shift;
    if (bit_shift != 0 && i + limb_shift + 1 < limbs_.size())
      v |= static_cast<std::uint64_t>(limbs_[i + limb_shift + 1])
           << (32 - bit_shift);
    r.limbs_[i] = static_cast<std::uint32_t>(v);
  }
  r.trim();
  return r;
}

int BigInt::compare(const BigInt& o) const {
  if (negative_ != o.negative_) return negative_ ? -1 : 1;
  int c = cmp_mag(limbs_, o.limbs_);
  return negative_ ? -c : c;
}

unsigned BigInt::bit_length() const {
  if (limbs_.empty()) return 0;
  unsigned bits = static_cast<unsigned>(limbs_.size() - 1) * 32;
  std::uint32_t top = limbs_.back();
  while (top != 0) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigInt::bit(unsigned i) const {
  std::size_t limb = i / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (i % 32)) & 1u;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.negative_ = false;
  b.negative_ = false;
  while (!b.is_zero()) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

BigInt BigInt::isqrt(const BigInt& n) {
  if (n.is_negative()) throw std::domain_error("BigInt: isqrt of negative");
  if (n.is_zero()) return BigInt();
  BigInt x = BigInt(1) << ((n.bit_length() + 1) / 2);
  while (true) {
    BigInt y = (x + n / x) >> 1;
    if (y >= x) break;
    x = y;
  }
  // x = floor(sqrt(n)) now; Newton over integers lands exactly there.
  return x;
}

std::uint32_t BigInt::div_small(std::uint32_t divisor) {
  std::uint64_t rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    std::uint64_t cur = (rem << 32) | limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return static_cast<std::uint32_t>(rem);
}

void BigInt::mul_small(std::uint32_t factor) {
  std::uint64_t carry = 0;
  for (auto& limb : limbs_) {
    std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
    limb = static_cast<std::uint32_t>(cur & 0xffffffffu);
    carry = cur >> 32;
  }
  if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
  trim();
}

void BigInt::add_small(std::uint32_t value) {
  std::uint64_t carry = value;
  for (std::size_t i = 0; carry != 0 && i < limbs_.size(); ++i) {
    std::uint64_t cur = limbs_[i] + carry;
    limbs_[i] = static_cast<std::uint32_t>(cur & 0xffffffffu);
    carry = cur >> 32;
  }
  if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  BigInt tmp = *this;
  std::string out;
  while (!tmp.is_zero()) {
    std::uint32_t chunk = tmp.div_small(1000000000u);
    if (tmp.is_zero()) {
      out = std::to_string(chunk) + out;
    } else {
      std::string part = std::to_string(chunk);
      out = std::string(9 - part.size(), '0') + part + out;
    }
  }
  return (negative_ ? "-" : "") + out;
}

double BigInt::to_double() const {
  if (limbs_.empty()) return 0.0;
  double r = 0.0;
  // Top 64 bits carry all the precision a double can hold.
  std::size_t n = limbs_.size();
  if (n == 1) {
    r = static_cast<double>(limbs_[0]);
  } else {
    std::uint64_t top = (static_cast<std::uint64_t>(limbs_[n - 1]) << 32) | limbs_[n - 2];
    r = std::ldexp(static_cast<double>(top), static_cast<int>(32 * (n - 2)));
  }
  return negative_ ? -r : r;
}

std::int64_t BigInt::to_int64() const {
  if (limbs_.size() > 2) throw std::overflow_error("BigInt: does not fit int64");
  std::uint64_t mag = 0;
  if (!limbs_.empty()) mag = limbs_[0];
  if (limbs_.size() == 2) mag |= static_cast<std::uint64_t>(limbs_[1]) << 32;
  if (negative_) {
    if (mag > 0x8000000000000000ull)
      throw std::overflow_error("BigInt: does not fit int64");
    return -static_cast<std::int64_t>(mag - 1) - 1;
  }
  if (mag > 0x7fffffffffffffffull)
    throw std::overflow_error("BigInt: does not fit int64");
  return static_cast<std::int64_t>(mag);
}

}  // namespace rcsg
