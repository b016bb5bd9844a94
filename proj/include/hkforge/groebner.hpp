#ifndef HKFORGE_GROEBNER_HPP
#define HKFORGE_GROEBNER_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hkforge/error.hpp"
#include "hkforge/poly.hpp"

namespace hkforge {

/// Budgets for Groebner computations. `defaults()` honours the
/// HKFORGE_MAX_PAIRS environment override.
struct Caps {
  std::size_t max_pairs = 50000;
  std::size_t max_terms = 1000000;
  std::size_t max_group = 5000;
  bool chain_criterion = true;

  static Caps from_environment() {
    Caps caps;
    if (const char* s = std::getenv("HKFORGE_MAX_PAIRS")) caps.max_pairs = std::strtoull(s, nullptr, 10);
    if (const char* s = std::getenv("HKFORGE_MAX_GROUP")) caps.max_group = std::strtoull(s, nullptr, 10);
    return caps;
  }

  static Caps& defaults() {
    static Caps caps = from_environment();
    return caps;
  }
};

/// Reduced (or, transiently, unreduced) Groebner basis. Elements are monic
/// and sorted by increasing leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(Ring ring, std::vector<Polynomial> basis, bool reduced)
      : ring_(std::move(ring)), basis_(std::move(basis)), reduced_(reduced) {}

  const Ring& ring() const noexcept { return ring_; }
  const MonomialOrder& order() const noexcept { return ring_.order(); }
  const std::vector<Polynomial>& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }
  bool reduced() const noexcept { return reduced_; }
  bool is_zero_ideal() const noexcept { return basis_.empty(); }
  bool is_unit() const noexcept { return basis_.size() == 1 && basis_.front().is_constant(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    out.reserve(basis_.size());
    for (const auto& g : basis_) out.push_back(g.leading_monomial());
    return out;
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.ring_ == b.ring_ && a.basis_ == b.basis_;
  }

 private:
  Ring ring_;
  std::vector<Polynomial> basis_;
  bool reduced_;
};

namespace detail {

// out = a[from..] + c * m * g[1..]; the leading terms are assumed to cancel.
inline std::vector<Term> merge_reduce(const Ring& ring, const std::vector<Term>& a, std::size_t from,
                                      std::uint32_t c, const Monomial& m, const std::vector<Term>& g) {
  const auto& F = ring.field();
  std::vector<Term> out;
  out.reserve(a.size() - from + g.size());
  std::size_t i = from, j = 1;
  while (i < a.size() && j < g.size()) {
    Monomial gm = g[j].mono * m;
    auto o = ring.cmp(a[i].mono, gm);
    if (o > 0) {
      out.push_back(a[i++]);
    } else if (o < 0) {
      out.push_back({gm, F.mul(g[j++].coeff, c)});
    } else {
      auto v = F.add(a[i].coeff, F.mul(g[j].coeff, c));
      if (v != 0) out.push_back({gm, v});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < g.size(); ++j) out.push_back({g[j].mono * m, F.mul(g[j].coeff, c)});
  return out;
}

inline const Polynomial* find_reducer(const std::vector<const Polynomial*>& reducers, const Monomial& m) {
  for (const auto* g : reducers)
    if (g->leading_monomial().divides(m)) return g;
  return nullptr;
}

// Full reduction of f by monic reducers: the greatest reducible term is
// always reduced first, using the first reducer whose leading monomial
// divides it.
inline Polynomial reduce_fully(const Polynomial& f, const std::vector<const Polynomial*>& reducers) {
  const Ring& ring = f.ring();
  const auto& F = ring.field();
  std::vector<Term> work = f.terms();
  std::vector<Term> rem;
  std::size_t k = 0;
  while (k < work.size()) {
    const Term lt = work[k];
    const Polynomial* g = find_reducer(reducers, lt.mono);
    if (!g) {
      rem.push_back(lt);
      ++k;
      continue;
    }
    Monomial m = g->leading_monomial().quotient_of(lt.mono);
    work = merge_reduce(ring, work, k + 1, F.mul(F.neg(lt.coeff), F.inv(g->leading_coeff())), m, g->terms());
    k = 0;
  }
  return Polynomial::from_terms(ring, std::move(rem));
}

}  // namespace detail

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  if (!f.ring().same_variables(G.ring()))
    throw Error(ErrorKind::RingMismatch, "normal form across different rings");
  std::vector<const Polynomial*> reducers;
  for (const auto& g : G.basis()) reducers.push_back(&g);
  return detail::reduce_fully(f.in(G.ring()), reducers);
}

inline bool contains(const GroebnerBasis& G, const Polynomial& f) {
  return normal_form(f, G).is_zero();
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  require_same_ring(f.ring(), g.ring());
  const auto& F = f.ring().field();
  Monomial L = lcm(f.leading_monomial(), g.leading_monomial());
  Polynomial a = f.mul_term(F.inv(f.leading_coeff()), f.leading_monomial().quotient_of(L));
  return a.add_scaled(F.neg(F.inv(g.leading_coeff())), g.leading_monomial().quotient_of(L), g);
}

namespace detail {

class BuchbergerState {
 public:
  BuchbergerState(const Ring& ring, const Caps& caps) : ring_(ring), caps_(caps) {}

  void add_generator(const Polynomial& f) {
    Polynomial h = reduce(f);
    if (!h.is_zero()) insert(h.monic());
  }

  bool has_unit() const noexcept { return unit_; }

  void run() {
    while (!unit_ && !queue_.empty()) {
      auto [deg, i, j] = *queue_.begin();
      queue_.erase(queue_.begin());
      pending_[i][j] = false;
      treated_[i][j] = true;
      if (caps_.chain_criterion && chain_applies(i, j)) continue;
      if (++pairs_done_ > caps_.max_pairs)
        throw Error(ErrorKind::ResourceCap,
                    "Groebner pair budget of " + std::to_string(caps_.max_pairs) + " exceeded");
      Polynomial h = reduce(s_polynomial(basis_[i], basis_[j]));
      if (!h.is_zero()) insert(h.monic());
    }
  }

  GroebnerBasis finish() && {
    if (unit_) return GroebnerBasis(ring_, {Polynomial::constant(ring_, 1)}, true);
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (!redundant_[i]) minimal.push_back(basis_[i]);
    std::vector<Polynomial> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<const Polynomial*> others;
      for (std::size_t k = 0; k < minimal.size(); ++k)
        if (k != i) others.push_back(&minimal[k]);
      reduced.push_back(reduce_fully(minimal[i], others));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
      return ring_.cmp(a.leading_monomial(), b.leading_monomial()) < 0;
    });
    return GroebnerBasis(ring_, std::move(reduced), true);
  }

 private:
  Polynomial reduce(const Polynomial& f) const {
    std::vector<const Polynomial*> reducers;
    reducers.reserve(basis_.size());
    for (const auto& g : basis_) reducers.push_back(&g);
    return reduce_fully(f, reducers);
  }

  void insert(Polynomial h) {
    if (h.is_constant()) {
      unit_ = true;
      return;
    }
    total_terms_ += h.size();
    if (total_terms_ > caps_.max_terms)
      throw Error(ErrorKind::ResourceCap,
                  "Groebner term budget of " + std::to_string(caps_.max_terms) + " exceeded");
    const std::size_t t = basis_.size();
    const Monomial lm = h.leading_monomial();
    basis_.push_back(std::move(h));
    redundant_.push_back(false);
    for (auto& row : pending_) row.push_back(false);
    for (auto& row : treated_) row.push_back(false);
    pending_.emplace_back(t + 1, false);
    treated_.emplace_back(t + 1, false);
    for (std::size_t i = 0; i < t; ++i) {
      if (redundant_[i]) continue;
      const Monomial& li = basis_[i].leading_monomial();
      if (coprime(li, lm)) {
        treated_[i][t] = true;
        continue;
      }
      pending_[i][t] = true;
      queue_.emplace(lcm(li, lm).degree(), i, t);
    }
    for (std::size_t i = 0; i < t; ++i)
      if (!redundant_[i] && lm.divides(basis_[i].leading_monomial())) redundant_[i] = true;
  }

  bool was_treated(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    return treated_[a][b];
  }

  bool chain_applies(std::size_t i, std::size_t j) const {
    Monomial L = lcm(basis_[i].leading_monomial(), basis_[j].leading_monomial());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == i || k == j) continue;
      if (!basis_[k].leading_monomial().divides(L)) continue;
      if (was_treated(i, k) && was_treated(j, k)) return true;
    }
    return false;
  }

  Ring ring_;
  const Caps& caps_;
  std::vector<Polynomial> basis_;
  std::vector<bool> redundant_;
  std::vector<std::vector<bool>> pending_;
  std::vector<std::vector<bool>> treated_;
  std::set<std::tuple<std::uint32_t, std::size_t, std::size_t>> queue_;
  std::size_t pairs_done_ = 0;
  std::size_t total_terms_ = 0;
  bool unit_ = false;
};

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens` under `order`.
/// Zero generators are dropped; the zero ideal has the empty basis.
inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order,
                                const Caps& caps = Caps::defaults()) {
  if (gens.empty()) throw Error(ErrorKind::PreconditionViolated, "buchberger needs generators");
  Ring ring = gens.front().ring().with_order(order);
  detail::BuchbergerState state(ring, caps);
  for (const auto& g : gens) {
    if (!g.ring().same_variables(ring)) throw Error(ErrorKind::RingMismatch, "generators in different rings");
    if (g.is_zero()) continue;
    state.add_generator(g.in(ring));
    if (state.has_unit()) break;
  }
  state.run();
  return std::move(state).finish();
}

inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const Caps& caps = Caps::defaults()) {
  if (gens.empty()) throw Error(ErrorKind::PreconditionViolated, "buchberger needs generators");
  return buchberger(gens, gens.front().ring().order(), caps);
}

/// Minimal generators of a monomial ideal (antichain under divisibility).
class Staircase {
 public:
  Staircase(std::size_t nvars, std::vector<Monomial> generators) : nvars_(nvars) {
    for (auto& g : generators) {
      bool dominated = false;
      for (const auto& h : generators)
        if (!(h == g) && h.divides(g)) dominated = true;
      if (!dominated && std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(g);
    }
  }
  explicit Staircase(const GroebnerBasis& G) : Staircase(G.ring().nvars(), G.leading_monomials()) {}

  const std::vector<Monomial>& generators() const noexcept { return gens_; }
  std::size_t nvars() const noexcept { return nvars_; }

  bool is_standard(const Monomial& m) const noexcept {
    for (const auto& g : gens_)
      if (g.divides(m)) return false;
    return true;
  }

  /// Pure-power exponent bound for each variable, if every variable has one.
  std::optional<std::vector<std::uint32_t>> box() const {
    std::vector<std::uint32_t> bound(nvars_, 0);
    for (const auto& g : gens_) {
      if (g.is_one()) return std::vector<std::uint32_t>(nvars_, 0);
      if (__builtin_popcount(g.support()) == 1) {
        std::size_t i = static_cast<std::size_t>(__builtin_ctz(g.support()));
        if (bound[i] == 0 || g[i] < bound[i]) bound[i] = g[i];
      }
    }
    for (auto b : bound)
      if (b == 0) return std::nullopt;
    return bound;
  }

  bool finite() const {
    for (const auto& g : gens_)
      if (g.is_one()) return true;
    return box().has_value();
  }

  /// Number of standard monomials, or nullopt when infinite.
  std::optional<std::uint64_t> count() const {
    for (const auto& g : gens_)
      if (g.is_one()) return 0;
    if (nvars_ == 0) return 1;
    auto b = box();
    if (!b) return std::nullopt;
    std::uint64_t total = 0;
    Monomial::Exponents e{};
    walk(e, 0, *b, [&](const Monomial::Exponents&, std::uint32_t run) { total += run; });
    return total;
  }

  /// Standard monomials in increasing lex of exponent vectors (finite case).
  std::vector<Monomial> standard_monomials() const {
    std::vector<Monomial> out;
    for (const auto& g : gens_)
      if (g.is_one()) return out;
    auto b = box();
    if (!b) throw Error(ErrorKind::PreconditionViolated, "staircase is infinite");
    Monomial::Exponents e{};
    walk(e, 0, *b, [&](const Monomial::Exponents& prefix, std::uint32_t run) {
      auto x = prefix;
      for (std::uint32_t k = 0; k < run; ++k) {
        x[nvars_ - 1] = k;
        out.emplace_back(x);
      }
    });
    return out;
  }

 private:
  // Enumerates exponent prefixes; for the last variable reports the run
  // length of standard exponents (divisibility is monotone in each slot).
  template <class Sink>
  void walk(Monomial::Exponents& e, std::size_t i, const std::vector<std::uint32_t>& bound,
            Sink&& sink) const {
    if (i + 1 == nvars_) {
      std::uint32_t run = 0;
      while (run < bound[i]) {
        e[i] = run;
        if (!is_standard(Monomial(e))) break;
        ++run;
      }
      e[i] = 0;
      sink(e, run);
      return;
    }
    for (std::uint32_t k = 0; k < bound[i]; ++k) {
      e[i] = k;
      if (!is_standard(Monomial(e))) break;
      walk(e, i + 1, bound, sink);
    }
    e[i] = 0;
  }

  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

/// dim_k S/I as the number of standard monomials; nullopt means infinite.
inline std::optional<std::uint64_t> colength(const GroebnerBasis& G) {
  if (G.is_zero_ideal()) return G.ring().nvars() == 0 ? std::optional<std::uint64_t>(1) : std::nullopt;
  return Staircase(G).count();
}

/// Krull dimension of S/I: the largest set of variables containing the
/// support of no leading monomial.
inline std::size_t krull_dim(const GroebnerBasis& G) {
  if (G.is_unit()) throw Error(ErrorKind::EmptyVariety, "the unit ideal has empty variety");
  const std::size_t n = G.ring().nvars();
  std::vector<std::uint32_t> masks;
  for (const auto& m : Staircase(G).generators()) masks.push_back(m.support());
  std::size_t best = 0;
  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  for (std::uint32_t U = 0;; ++U) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcount(U));
    if (size > best) {
      bool free = true;
      for (auto mask : masks)
        if ((mask & ~U) == 0) {
          free = false;
          break;
        }
      if (free) best = size;
    }
    if (U == full) break;
  }
  return best;
}

}  // namespace hkforge

#endif  // HKFORGE_GROEBNER_HPP
