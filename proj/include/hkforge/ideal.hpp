#ifndef HKFORGE_IDEAL_HPP
#define HKFORGE_IDEAL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "hkforge/error.hpp"
#include "hkforge/groebner.hpp"
#include "hkforge/poly.hpp"

namespace hkforge {

/// Generator list plus a synchronized memo of reduced Groebner bases, one
/// per monomial order. Copies share the memo.
class Ideal {
 public:
  Ideal(Ring ring, std::vector<Polynomial> generators)
      : ring_(std::move(ring)), gens_(std::move(generators)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens_) {
      if (!g.ring().same_variables(ring_)) throw Error(ErrorKind::RingMismatch, "generator from another ring");
      g = g.in(ring_);
    }
  }

  static Ideal unit(const Ring& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }

  const GroebnerBasis& groebner() const { return groebner(ring_.order()); }

  const GroebnerBasis& groebner(const MonomialOrder& order) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->bases.find(order);
    if (it != cache_->bases.end()) return it->second;
    std::vector<Polynomial> gens = gens_;
    if (gens.empty()) gens.push_back(Polynomial(ring_));
    bool all_zero = std::all_of(gens.begin(), gens.end(), [](const Polynomial& f) { return f.is_zero(); });
    GroebnerBasis G = all_zero ? GroebnerBasis(ring_.with_order(order), {}, true) : buchberger(gens, order);
    return cache_->bases.emplace(order, std::move(G)).first->second;
  }

  bool contains(const Polynomial& f) const { return hkforge::contains(groebner(), f); }
  bool contains(const Ideal& other) const {
    for (const auto& g : other.gens_)
      if (!contains(g)) return false;
    return true;
  }
  bool is_unit() const { return groebner().is_unit(); }
  std::optional<std::uint64_t> colength() const { return hkforge::colength(groebner()); }
  std::size_t dimension() const { return krull_dim(groebner()); }

  /// Ideal equality, decided by reduced bases under the ring order.
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.groebner() == b.groebner(); }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<MonomialOrder, GroebnerBasis> bases;
  };

  Ring ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

inline Ideal ideal_sum(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  auto gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return Ideal(I.ring(), std::move(gens));
}

inline Ideal ideal_product(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  std::vector<Polynomial> gens;
  for (const auto& f : I.generators())
    for (const auto& g : J.generators()) gens.push_back(f * g);
  return Ideal(I.ring(), std::move(gens));
}

/// I^[q]: generated by the q-th powers of the generators.
inline Ideal bracket_power(const Ideal& I, std::uint64_t q) {
  check_frobenius_exponent(q, I.ring().characteristic());
  std::vector<Polynomial> gens;
  gens.reserve(I.generators().size());
  for (const auto& g : I.generators()) gens.push_back(frobenius_power(g, q));
  return Ideal(I.ring(), std::move(gens));
}

namespace detail {

// S[t] with t as variable 0 under elim(1).
inline Ring with_auxiliary_variable(const Ring& ring) {
  if (ring.nvars() + 1 > kMaxVars)
    throw Error(ErrorKind::ResourceCap, "elimination needs one spare variable slot");
  std::vector<std::string> names{"_t"};
  names.insert(names.end(), ring.names().begin(), ring.names().end());
  return Ring(ring.characteristic(), std::move(names), MonomialOrder::elim(1));
}

inline Polynomial shift_in(const Polynomial& f, const Ring& big) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial::Exponents e{};
    for (std::size_t i = 0; i + 1 < kMaxVars; ++i) e[i + 1] = t.mono[i];
    terms.push_back({Monomial(e), t.coeff});
  }
  return Polynomial::from_terms(big, std::move(terms));
}

inline Polynomial shift_out(const Polynomial& f, const Ring& small) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial::Exponents e{};
    for (std::size_t i = 0; i + 1 < kMaxVars; ++i) e[i] = t.mono[i + 1];
    terms.push_back({Monomial(e), t.coeff});
  }
  return Polynomial::from_terms(small, std::move(terms));
}

}  // namespace detail

/// I ∩ J via t*I + (1-t)*J in S[t], eliminating t.
inline Ideal intersect(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  const Ring& ring = I.ring();
  Ring big = detail::with_auxiliary_variable(ring);
  Polynomial t = Polynomial::variable(big, 0);
  Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : I.groebner().basis()) gens.push_back(t * detail::shift_in(f, big));
  for (const auto& g : J.groebner().basis()) gens.push_back(one_minus_t * detail::shift_in(g, big));
  if (gens.empty()) return Ideal(ring, {});
  GroebnerBasis G = buchberger(gens, big.order());
  std::vector<Polynomial> out;
  for (const auto& g : G.basis())
    if (g.leading_monomial()[0] == 0) out.push_back(detail::shift_out(g, ring));
  return Ideal(ring, std::move(out));
}

/// (I : g) for a single polynomial g.
inline Ideal colon(const Ideal& I, const Polynomial& g) {
  const Ring& ring = I.ring();
  if (g.is_zero()) return Ideal::unit(ring);
  if (I.contains(g)) return Ideal::unit(ring);
  if (g.is_constant()) return I;
  Ideal K = intersect(I, Ideal(ring, {g}));
  std::vector<Polynomial> gens;
  for (const auto& f : K.generators()) gens.push_back(divide_exact(f, g.in(ring)));
  return Ideal(ring, std::move(gens));
}

/// (I : J) = ∩_g (I : g) over the generators of J.
inline Ideal colon(const Ideal& I, const Ideal& J) {
  require_same_ring(I.ring(), J.ring());
  bool any = false;
  std::optional<Ideal> acc;
  for (const auto& g : J.generators()) {
    if (g.is_zero()) continue;
    any = true;
    Ideal part = colon(I, g);
    if (part.is_unit()) continue;
    acc = acc ? intersect(*acc, part) : part;
  }
  if (!any) throw Error(ErrorKind::PreconditionViolated, "colon by the zero ideal");
  if (!acc) return Ideal::unit(I.ring());
  // Canonical generators: the reduced basis under the ring order.
  return Ideal(I.ring(), acc->groebner().basis());
}

namespace detail {

// x_i is nilpotent modulo I for every i. Iterates NF(x_i^k) until it
// vanishes; a nilpotent element of an L-dimensional algebra has x^L = 0.
inline bool supported_at_origin(const GroebnerBasis& G, std::uint64_t length) {
  const Ring& ring = G.ring();
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    Polynomial x = Polynomial::variable(ring, i);
    Polynomial power = normal_form(x, G);
    for (std::uint64_t k = 1; !power.is_zero(); ++k) {
      if (k >= length) return false;
      power = normal_form(power * x, G);
    }
  }
  return true;
}

}  // namespace detail

/// Finite colength with all of V(I) at the origin.
inline bool is_m_primary(const Ideal& I) {
  const auto& G = I.groebner();
  if (G.is_unit()) throw Error(ErrorKind::EmptyVariety, "the unit ideal is not m-primary");
  auto len = colength(G);
  if (!len) return false;
  return detail::supported_at_origin(G, *len);
}

/// R = S / C with C generated by a regular sequence; dim R = n - c.
class QuotientPresentation {
 public:
  QuotientPresentation(Ring ring, std::vector<Polynomial> ci_generators)
      : ring_(std::move(ring)), ci_(std::move(ci_generators)) {
    for (auto& c : ci_) {
      if (!c.ring().same_variables(ring_)) throw Error(ErrorKind::RingMismatch, "quotient generator from another ring");
      c = c.in(ring_);
      if (c.is_zero()) throw Error(ErrorKind::PreconditionViolated, "zero quotient generator");
      for (const auto& t : c.terms())
        if (t.mono.is_one())
          throw Error(ErrorKind::PreconditionViolated, "quotient generator " + c.str() + " does not vanish at the origin");
    }
    if (ci_.size() > ring_.nvars())
      throw Error(ErrorKind::PreconditionViolated, "more quotient generators than variables");
    dim_ = ring_.nvars();
    if (!ci_.empty()) {
      Ideal C(ring_, ci_);
      dim_ = C.dimension();
      if (dim_ != ring_.nvars() - ci_.size())
        throw Error(ErrorKind::PreconditionViolated,
                    "quotient is not a complete intersection: dim S/C = " + std::to_string(dim_) +
                        " but n - c = " + std::to_string(ring_.nvars() - ci_.size()));
    }
  }

  explicit QuotientPresentation(Ring ring) : QuotientPresentation(std::move(ring), {}) {}

  const Ring& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& ci_generators() const noexcept { return ci_; }
  std::size_t dim() const noexcept { return dim_; }
  bool is_polynomial_ring() const noexcept { return ci_.empty(); }
  Ideal zero_ideal_lift() const { return Ideal(ring_, ci_); }

  friend bool operator==(const QuotientPresentation& a, const QuotientPresentation& b) {
    return a.ring_ == b.ring_ && a.ci_ == b.ci_;
  }

 private:
  Ring ring_;
  std::vector<Polynomial> ci_;
  std::size_t dim_ = 0;
};

/// An ideal of R = S/C carried as its lift to S (which contains C).
class RIdeal {
 public:
  RIdeal(const QuotientPresentation& P, std::vector<Polynomial> generators)
      : presentation_(P), generators_(std::move(generators)), lift_(make_lift(P, generators_)) {}

  /// From an ideal of S that must already contain C.
  static RIdeal from_lift(const QuotientPresentation& P, const Ideal& lift) {
    for (const auto& c : P.ci_generators())
      if (!lift.contains(c)) throw Error(ErrorKind::InternalError, "lift does not contain the quotient ideal");
    return RIdeal(P, lift.generators(), lift);
  }

  const QuotientPresentation& presentation() const noexcept { return presentation_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  const Ideal& lift() const noexcept { return lift_; }
  bool is_unit() const { return lift_.is_unit(); }

  friend bool operator==(const RIdeal& a, const RIdeal& b) { return a.lift_ == b.lift_; }

 private:
  RIdeal(const QuotientPresentation& P, std::vector<Polynomial> generators, Ideal lift)
      : presentation_(P), generators_(std::move(generators)), lift_(std::move(lift)) {}

  static Ideal make_lift(const QuotientPresentation& P, const std::vector<Polynomial>& gens) {
    std::vector<Polynomial> all;
    for (const auto& g : gens) {
      if (!g.ring().same_variables(P.ring())) throw Error(ErrorKind::RingMismatch, "ideal generator from another ring");
      all.push_back(g.in(P.ring()));
    }
    for (const auto& c : P.ci_generators())
      if (std::find(all.begin(), all.end(), c) == all.end()) all.push_back(c);
    return Ideal(P.ring(), std::move(all));
  }

  QuotientPresentation presentation_;
  std::vector<Polynomial> generators_;
  Ideal lift_;
};

inline void require_same_presentation(const RIdeal& a, const RIdeal& b) {
  if (!(a.presentation() == b.presentation()))
    throw Error(ErrorKind::RingMismatch, "ideals live over different quotient presentations");
}

/// Lift of I^[q]: q-th powers of the generators, together with C.
inline RIdeal bracket_power(const RIdeal& I, std::uint64_t q) {
  check_frobenius_exponent(q, I.presentation().ring().characteristic());
  const auto& ci = I.presentation().ci_generators();
  std::vector<Polynomial> gens;
  for (const auto& g : I.lift().generators()) {
    if (std::find(ci.begin(), ci.end(), g) != ci.end()) continue;
    gens.push_back(frobenius_power(g, q));
  }
  return RIdeal(I.presentation(), std::move(gens));
}

inline RIdeal colon(const RIdeal& I, const RIdeal& J) {
  require_same_presentation(I, J);
  return RIdeal::from_lift(I.presentation(), colon(I.lift(), J.lift()));
}

inline RIdeal intersect(const RIdeal& I, const RIdeal& J) {
  require_same_presentation(I, J);
  return RIdeal::from_lift(I.presentation(), intersect(I.lift(), J.lift()));
}

inline bool is_m_primary(const RIdeal& I) { return is_m_primary(I.lift()); }

inline std::optional<std::uint64_t> r_colength(const RIdeal& I) { return I.lift().colength(); }

/// |f| = dim R and (f) + C is m-primary; over a Cohen-Macaulay R this makes
/// f a regular sequence.
inline bool is_full_ci(const std::vector<Polynomial>& f, const QuotientPresentation& P) {
  if (f.empty() || f.size() != P.dim()) return false;
  RIdeal a(P, f);
  if (a.is_unit()) return false;
  return is_m_primary(a);
}

namespace detail {

inline Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  const Ring& ring = m[0][0].ring();
  Polynomial det(ring);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * determinant(std::move(minor));
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

inline void for_each_subset(std::size_t n, std::size_t k, std::vector<std::size_t>& cur, std::size_t from,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (cur.size() == k) {
    fn(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    for_each_subset(n, k, cur, i + 1, fn);
    cur.pop_back();
  }
}

}  // namespace detail

/// Jacobian criterion: C + (c x c minors of the Jacobian) has finite
/// colength or is the unit ideal. The polynomial ring is regular.
inline bool is_isolated_singularity(const QuotientPresentation& P) {
  const auto& ci = P.ci_generators();
  if (ci.empty()) return true;
  const Ring& ring = P.ring();
  const std::size_t c = ci.size(), n = ring.nvars();
  std::vector<std::vector<Polynomial>> jac(c, std::vector<Polynomial>(n, Polynomial(ring)));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i][j] = partial_derivative(ci[i], j);
  std::vector<Polynomial> gens = ci;
  std::vector<std::size_t> cols;
  detail::for_each_subset(n, c, cols, 0, [&](const std::vector<std::size_t>& chosen) {
    std::vector<std::vector<Polynomial>> sub(c);
    for (std::size_t i = 0; i < c; ++i)
      for (auto j : chosen) sub[i].push_back(jac[i][j]);
    Polynomial d = detail::determinant(std::move(sub));
    if (!d.is_zero()) gens.push_back(d);
  });
  Ideal sing(ring, gens);
  if (sing.is_unit()) return true;
  return sing.colength().has_value();
}

}  // namespace hkforge

#endif  // HKFORGE_IDEAL_HPP
