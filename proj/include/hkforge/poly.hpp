#ifndef HKFORGE_POLY_HPP
#define HKFORGE_POLY_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hkforge/error.hpp"
#include "hkforge/matrix.hpp"
#include "hkforge/scalar.hpp"

namespace hkforge {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector over at most kMaxVars variables. Unused trailing slots
/// are always zero, so comparisons never need the variable count.
class Monomial {
 public:
  using Exponents = std::array<std::uint32_t, kMaxVars>;

  Monomial() = default;
  explicit Monomial(const Exponents& e) : e_(e) { refresh(); }
  Monomial(std::initializer_list<std::uint32_t> e) {
    if (e.size() > kMaxVars) throw Error(ErrorKind::RingMismatch, "too many exponents");
    std::copy(e.begin(), e.end(), e_.begin());
    refresh();
  }

  static Monomial variable(std::size_t i, std::uint32_t power = 1) {
    Monomial m;
    m.e_[i] = power;
    m.refresh();
    return m;
  }

  std::uint32_t operator[](std::size_t i) const noexcept { return e_[i]; }
  const Exponents& exponents() const noexcept { return e_; }
  std::uint32_t degree() const noexcept { return deg_; }
  /// Bit i set iff the exponent of x_i is positive.
  std::uint32_t support() const noexcept { return mask_; }
  bool is_one() const noexcept { return deg_ == 0; }

  bool divides(const Monomial& other) const noexcept {
    if ((mask_ & ~other.mask_) != 0 || deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] > other.e_[i]) return false;
    return true;
  }

  /// other / *this; caller guarantees divisibility.
  Monomial quotient_of(const Monomial& other) const noexcept {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = other.e_[i] - e_[i];
    r.refresh();
    return r;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      std::uint64_t s = std::uint64_t{a.e_[i]} + b.e_[i];
      if (s > std::numeric_limits<std::uint32_t>::max())
        throw Error(ErrorKind::ResourceCap, "exponent overflow");
      r.e_[i] = static_cast<std::uint32_t>(s);
    }
    r.refresh();
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    r.refresh();
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) noexcept {
    return (a.mask_ & b.mask_) == 0;
  }

  Monomial scaled(std::uint64_t q) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      std::uint64_t s = std::uint64_t{e_[i]} * q;
      if (s > std::numeric_limits<std::uint32_t>::max())
        throw Error(ErrorKind::ResourceCap, "exponent overflow in Frobenius scaling");
      r.e_[i] = static_cast<std::uint32_t>(s);
    }
    r.refresh();
    if (std::uint64_t{deg_} * q > std::numeric_limits<std::uint32_t>::max())
      throw Error(ErrorKind::ResourceCap, "degree overflow in Frobenius scaling");
    return r;
  }

  bool operator==(const Monomial& o) const noexcept { return e_ == o.e_; }

 private:
  void refresh() {
    std::uint64_t d = 0;
    mask_ = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      d += e_[i];
      if (e_[i] != 0) mask_ |= (1u << i);
    }
    if (d > std::numeric_limits<std::uint32_t>::max())
      throw Error(ErrorKind::ResourceCap, "degree overflow");
    deg_ = static_cast<std::uint32_t>(d);
  }

  Exponents e_{};
  std::uint32_t deg_ = 0;
  std::uint32_t mask_ = 0;
};

struct MonomialOrder {
  enum class Kind { lex, grevlex, elim };

  Kind kind = Kind::grevlex;
  std::uint32_t block = 0;  // elim only: size of the leading variable block

  static MonomialOrder lex() { return {Kind::lex, 0}; }
  static MonomialOrder grevlex() { return {Kind::grevlex, 0}; }
  static MonomialOrder elim(std::uint32_t k) { return {Kind::elim, k}; }

  std::string name() const {
    switch (kind) {
      case Kind::lex: return "lex";
      case Kind::grevlex: return "grevlex";
      case Kind::elim: return "elim(" + std::to_string(block) + ")";
    }
    return "?";
  }

  bool operator==(const MonomialOrder&) const = default;
  auto operator<=>(const MonomialOrder&) const = default;
};

namespace detail {

inline std::strong_ordering revlex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                                         std::size_t hi) noexcept {
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

}  // namespace detail

inline std::strong_ordering compare(const MonomialOrder& order, const Monomial& a,
                                    const Monomial& b) noexcept {
  switch (order.kind) {
    case MonomialOrder::Kind::lex:
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
      return std::strong_ordering::equal;
    case MonomialOrder::Kind::grevlex:
      if (a.degree() != b.degree()) return a.degree() <=> b.degree();
      return detail::revlex_range(a, b, 0, kMaxVars);
    case MonomialOrder::Kind::elim: {
      std::uint32_t da = 0, db = 0;
      for (std::size_t i = 0; i < order.block; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da <=> db;
      if (auto c = detail::revlex_range(a, b, 0, order.block); c != 0) return c;
      if (a.degree() - da != b.degree() - db) return (a.degree() - da) <=> (b.degree() - db);
      return detail::revlex_range(a, b, order.block, kMaxVars);
    }
  }
  return std::strong_ordering::equal;
}

/// Ambient polynomial ring F_p[x_1..x_n] together with its active order.
/// Cheap to copy; the descriptor is shared and immutable.
class Ring {
 public:
  Ring(std::uint64_t p, std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex())
      : d_(std::make_shared<const Data>(Data{PrimeField(p), std::move(names), order})) {
    if (d_->names.size() > kMaxVars)
      throw Error(ErrorKind::PreconditionViolated,
                  "at most " + std::to_string(kMaxVars) + " variables are supported");
    if (order.kind == MonomialOrder::Kind::elim && order.block > d_->names.size())
      throw Error(ErrorKind::PreconditionViolated, "elimination block larger than variable count");
  }

  const PrimeField& field() const noexcept { return d_->field; }
  std::uint32_t characteristic() const noexcept { return d_->field.characteristic(); }
  std::size_t nvars() const noexcept { return d_->names.size(); }
  const std::vector<std::string>& names() const noexcept { return d_->names; }
  const MonomialOrder& order() const noexcept { return d_->order; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(d_->names.begin(), d_->names.end(), name);
    if (it == d_->names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - d_->names.begin());
  }

  Ring with_order(MonomialOrder order) const { return Ring(characteristic(), names(), order); }

  std::strong_ordering cmp(const Monomial& a, const Monomial& b) const noexcept {
    return compare(d_->order, a, b);
  }

  /// Same coefficients and variables; the order may differ.
  bool same_variables(const Ring& o) const noexcept {
    return d_ == o.d_ || (d_->field == o.d_->field && d_->names == o.d_->names);
  }

  friend bool operator==(const Ring& a, const Ring& b) noexcept {
    return a.d_ == b.d_ || (a.same_variables(b) && a.d_->order == b.d_->order);
  }

 private:
  struct Data {
    PrimeField field;
    std::vector<std::string> names;
    MonomialOrder order;
  };
  std::shared_ptr<const Data> d_;
};

inline void require_same_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw Error(ErrorKind::RingMismatch, "operands belong to different rings");
}

struct Term {
  Monomial mono;
  std::uint32_t coeff = 0;

  bool operator==(const Term&) const = default;
};

/// Sparse polynomial: terms strictly descending in the ring's order, no zero
/// coefficients. The empty term list is 0.
class Polynomial {
 public:
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const Ring& ring, std::int64_t c) {
    Polynomial f(ring);
    auto v = ring.field().reduce(c);
    if (v != 0) f.terms_.push_back({Monomial{}, v});
    return f;
  }
  static Polynomial variable(const Ring& ring, std::size_t i) {
    if (i >= ring.nvars()) throw Error(ErrorKind::RingMismatch, "variable index out of range");
    Polynomial f(ring);
    f.terms_.push_back({Monomial::variable(i), 1});
    return f;
  }
  static Polynomial monomial(const Ring& ring, const Monomial& m, std::int64_t c = 1) {
    Polynomial f(ring);
    auto v = ring.field().reduce(c);
    if (v != 0) f.terms_.push_back({m, v});
    return f;
  }
  /// Arbitrary term list: sorted, like terms combined, zeros dropped.
  static Polynomial from_terms(const Ring& ring, std::vector<Term> terms) {
    Polynomial f(ring);
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return ring.cmp(a.mono, b.mono) > 0; });
    const auto& F = ring.field();
    for (auto& t : terms) {
      t.coeff %= F.characteristic();
      if (!f.terms_.empty() && f.terms_.back().mono == t.mono) {
        f.terms_.back().coeff = F.add(f.terms_.back().coeff, t.coeff);
        if (f.terms_.back().coeff == 0) f.terms_.pop_back();
      } else if (t.coeff != 0) {
        f.terms_.push_back(t);
      }
    }
    return f;
  }

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  std::uint32_t leading_coeff() const { return terms_.front().coeff; }
  bool is_constant() const noexcept { return terms_.empty() || terms_.front().mono.is_one(); }

  std::uint32_t total_degree() const noexcept {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }
  std::uint32_t min_degree() const noexcept {
    std::uint32_t d = std::numeric_limits<std::uint32_t>::max();
    for (const auto& t : terms_) d = std::min(d, t.mono.degree());
    return terms_.empty() ? 0 : d;
  }

  /// Same polynomial re-sorted for `target` (same variables, any order).
  Polynomial in(const Ring& target) const {
    if (!ring_.same_variables(target))
      throw Error(ErrorKind::RingMismatch, "cannot move polynomial between unrelated rings");
    if (ring_ == target) return *this;
    Polynomial f(target);
    f.terms_ = terms_;
    std::sort(f.terms_.begin(), f.terms_.end(),
              [&](const Term& a, const Term& b) { return target.cmp(a.mono, b.mono) > 0; });
    return f;
  }

  Polynomial monic() const {
    if (is_zero() || leading_coeff() == 1) return *this;
    return scaled(ring_.field().inv(leading_coeff()));
  }

  Polynomial scaled(std::uint32_t c) const {
    Polynomial f(ring_);
    c %= ring_.characteristic();
    if (c == 0) return f;
    f.terms_.reserve(terms_.size());
    for (const auto& t : terms_) f.terms_.push_back({t.mono, ring_.field().mul(t.coeff, c)});
    return f;
  }

  /// c * m * this; the order is multiplicative, so no re-sort is needed.
  Polynomial mul_term(std::uint32_t c, const Monomial& m) const {
    Polynomial f(ring_);
    c %= ring_.characteristic();
    if (c == 0) return f;
    f.terms_.reserve(terms_.size());
    for (const auto& t : terms_) f.terms_.push_back({t.mono * m, ring_.field().mul(t.coeff, c)});
    return f;
  }

  /// this + c * m * g, by a single merge.
  Polynomial add_scaled(std::uint32_t c, const Monomial& m, const Polynomial& g) const {
    require_same_ring(ring_, g.ring_);
    const auto& F = ring_.field();
    Polynomial r(ring_);
    c %= F.characteristic();
    if (c == 0) return *this;
    r.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      Monomial gm = g.terms_[j].mono * m;
      if (i == terms_.size()) {
        r.terms_.push_back({gm, F.mul(g.terms_[j++].coeff, c)});
        continue;
      }
      auto o = ring_.cmp(terms_[i].mono, gm);
      if (o > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (o < 0) {
        r.terms_.push_back({gm, F.mul(g.terms_[j++].coeff, c)});
      } else {
        auto v = F.add(terms_[i].coeff, F.mul(g.terms_[j].coeff, c));
        if (v != 0) r.terms_.push_back({gm, v});
        ++i;
        ++j;
      }
    }
    return r;
  }

  /// The polynomial without its leading term.
  Polynomial tail() const {
    Polynomial f(ring_);
    if (!terms_.empty()) f.terms_.assign(terms_.begin() + 1, terms_.end());
    return f;
  }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) {
    return f.add_scaled(1, Monomial{}, g);
  }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    return f.add_scaled(f.ring_.characteristic() - 1, Monomial{}, g);
  }
  friend Polynomial operator-(const Polynomial& f) { return f.scaled(f.ring_.characteristic() - 1); }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    require_same_ring(f.ring_, g.ring_);
    std::vector<Term> products;
    products.reserve(f.terms_.size() * g.terms_.size());
    const auto& F = f.ring_.field();
    for (const auto& a : f.terms_)
      for (const auto& b : g.terms_) products.push_back({a.mono * b.mono, F.mul(a.coeff, b.coeff)});
    return from_terms(f.ring_, std::move(products));
  }
  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    return f.ring_.same_variables(g.ring_) && f.terms_ == g.terms_;
  }

  /// Canonical rendering, e.g. `x^2*y + 4*y^3`.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (k) out += " + ";
      const auto& t = terms_[k];
      std::string mono;
      for (std::size_t i = 0; i < ring_.nvars(); ++i) {
        if (t.mono[i] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += ring_.names()[i];
        if (t.mono[i] != 1) mono += "^" + std::to_string(t.mono[i]);
      }
      if (mono.empty())
        out += std::to_string(t.coeff);
      else if (t.coeff == 1)
        out += mono;
      else
        out += std::to_string(t.coeff) + "*" + mono;
    }
    return out;
  }

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << f.str(); }

inline Polynomial poly_pow(const Polynomial& f, std::uint64_t e) {
  Polynomial result = Polynomial::constant(f.ring(), 1);
  Polynomial base = f;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// Returns n with q = p^n, or throws NotAPowerOfP.
inline unsigned log_p(std::uint64_t q, std::uint32_t p) {
  if (q == 0) throw Error(ErrorKind::NotAPowerOfP, "0 is not a power of " + std::to_string(p));
  unsigned n = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++n;
  }
  if (r != 1)
    throw Error(ErrorKind::NotAPowerOfP, std::to_string(q) + " is not a power of " + std::to_string(p));
  return n;
}

/// Largest admissible Frobenius exponent q is p^6.
inline void check_frobenius_exponent(std::uint64_t q, std::uint32_t p) {
  unsigned n = log_p(q, p);
  if (n > 6)
    throw Error(ErrorKind::ResourceCap, "q = " + std::to_string(q) + " exceeds the cap p^6");
}

/// f^q for q = p^n, term by term: (sum c m)^q = sum c^q m^q in characteristic p.
inline Polynomial frobenius_power(const Polynomial& f, std::uint64_t q) {
  const auto& F = f.ring().field();
  check_frobenius_exponent(q, F.characteristic());
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.mono.scaled(q), F.pow(t.coeff, q)});
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

/// Image of f under x_j -> sum_i M[i][j] x_i.
inline Polynomial substitute_linear(const Polynomial& f, const Matrix& m) {
  const Ring& ring = f.ring();
  const std::size_t n = ring.nvars();
  if (m.size() != n || m.characteristic() != ring.characteristic())
    throw Error(ErrorKind::RingMismatch, "substitution matrix does not match the ring");
  std::vector<Polynomial> images;
  images.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i)
      if (m(i, j) != 0) terms.push_back({Monomial::variable(i), m(i, j)});
    images.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  // Powers of each image are shared across terms.
  std::vector<std::vector<Polynomial>> powers(n);
  auto image_power = [&](std::size_t j, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(Polynomial::constant(ring, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[j]);
    return cache[e];
  };
  Polynomial result(ring);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(ring, t.coeff);
    for (std::size_t j = 0; j < n; ++j)
      if (t.mono[j] != 0) term = term * image_power(j, t.mono[j]);
    result = result + term;
  }
  return result;
}

inline Polynomial partial_derivative(const Polynomial& f, std::size_t i) {
  const Ring& ring = f.ring();
  if (i >= ring.nvars()) throw Error(ErrorKind::RingMismatch, "variable index out of range");
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    if (t.mono[i] == 0) continue;
    auto c = ring.field().mul(t.coeff, ring.field().reduce(t.mono[i]));
    if (c == 0) continue;
    auto e = t.mono.exponents();
    e[i] -= 1;
    terms.push_back({Monomial(e), c});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

/// Exact quotient f / g; throws InternalError when g does not divide f.
inline Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  require_same_ring(f.ring(), g.ring());
  if (g.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero polynomial");
  const auto& F = f.ring().field();
  const auto lc_inv = F.inv(g.leading_coeff());
  std::vector<Term> quotient;
  Polynomial rest = f;
  while (!rest.is_zero()) {
    if (!g.leading_monomial().divides(rest.leading_monomial()))
      throw Error(ErrorKind::InternalError, "inexact polynomial division");
    Monomial m = g.leading_monomial().quotient_of(rest.leading_monomial());
    auto c = F.mul(rest.leading_coeff(), lc_inv);
    quotient.push_back({m, c});
    rest = rest.add_scaled(F.neg(c), m, g);
  }
  return Polynomial::from_terms(f.ring(), std::move(quotient));
}

/// All monomials of total degree exactly d in the first n variables,
/// descending in grevlex.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint32_t d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial::Exponents e{};
  // Recursive composition enumeration.
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      out.emplace_back(e);
      e[i] = 0;
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(rec, 0, d);
  auto order = MonomialOrder::grevlex();
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return compare(order, a, b) > 0; });
  return out;
}

}  // namespace hkforge

#endif  // HKFORGE_POLY_HPP
