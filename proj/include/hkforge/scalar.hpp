#ifndef HKFORGE_SCALAR_HPP
#define HKFORGE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "hkforge/error.hpp"

namespace hkforge {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic in F_p on raw residues. The modulus is validated once here so
/// that the hot paths (polynomial and Groebner code) can work on plain
/// 32-bit residues.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  PrimeField() = default;
  explicit PrimeField(std::uint64_t p) : p_(static_cast<value_type>(p)) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw Error(ErrorKind::PreconditionViolated,
                  "characteristic " + std::to_string(p) + " is not a prime below 2^31");
  }

  value_type characteristic() const noexcept { return p_; }

  value_type reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }
  value_type add(value_type a, value_type b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const noexcept {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
  }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }

  // Extended Euclid.
  value_type inv(value_type a) const {
    if (a % p_ == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in F_p");
    std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t t = r0 / r1;
      std::int64_t r2 = r0 - t * r1;
      r0 = r1;
      r1 = r2;
      std::int64_t s2 = s0 - t * s1;
      s0 = s1;
      s1 = s2;
    }
    return reduce(s0);
  }

  value_type pow(value_type a, std::uint64_t e) const noexcept {
    value_type result = 1 % p_;
    value_type base = a;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  bool operator==(const PrimeField&) const = default;

 private:
  value_type p_ = 2;
};

class PrimeFieldElement {
 public:
  PrimeFieldElement(const PrimeField& field, std::int64_t v)
      : field_(field), value_(field.reduce(v)) {}

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return field_.characteristic(); }
  const PrimeField& field() const noexcept { return field_; }

  PrimeFieldElement inverse() const { return {field_, field_.inv(value_), raw_tag{}}; }
  PrimeFieldElement pow(std::uint64_t e) const { return {field_, field_.pow(value_, e), raw_tag{}}; }

  friend PrimeFieldElement operator+(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.add(a.value_, b.value_), raw_tag{}};
  }
  friend PrimeFieldElement operator-(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.sub(a.value_, b.value_), raw_tag{}};
  }
  friend PrimeFieldElement operator*(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    check_same(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_), raw_tag{}};
  }
  friend PrimeFieldElement operator/(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    check_same(a, b);
    return a * b.inverse();
  }
  friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) noexcept {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const PrimeFieldElement& a) {
    return os << a.value_;
  }

 private:
  struct raw_tag {};
  PrimeFieldElement(const PrimeField& field, std::uint32_t v, raw_tag) : field_(field), value_(v) {}

  static void check_same(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    if (!(a.field_ == b.field_))
      throw Error(ErrorKind::RingMismatch, "operands live in F_" + std::to_string(a.modulus()) +
                                               " and F_" + std::to_string(b.modulus()));
  }

  PrimeField field_;
  std::uint32_t value_;
};

/// Exact rational in lowest terms with positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt num) : num_(std::move(num)), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num) : num_(num), den_(1) {}       // NOLINT(implicit)
  Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    normalize();
  }

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  std::string str() const { return num_.str() + "/" + den_.str(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt lhs = a.num_ * b.den_;
    BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_;
  BigInt den_;
};

inline Rational rat_make(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace hkforge

#endif  // HKFORGE_SCALAR_HPP
