#ifndef HKFORGE_INVARIANTS_HPP
#define HKFORGE_INVARIANTS_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hkforge/error.hpp"
#include "hkforge/groebner.hpp"
#include "hkforge/matrix.hpp"
#include "hkforge/poly.hpp"
#include "hkforge/scalar.hpp"

namespace hkforge {

/// g . f = f(x_j -> sum_i g(i,j) x_i). With this convention (gh) . f = g . (h . f).
inline Polynomial act(const Matrix& g, const Polynomial& f) { return substitute_linear(f, g); }

class MatrixGroup {
 public:
  MatrixGroup(PrimeField field, std::size_t n, std::vector<Matrix> elements)
      : field_(std::move(field)), n_(n), elements_(std::move(elements)) {}

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t characteristic() const noexcept { return field_.characteristic(); }
  std::size_t nvars() const noexcept { return n_; }
  const std::vector<Matrix>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }

 private:
  PrimeField field_;
  std::size_t n_;
  std::vector<Matrix> elements_;
};

inline std::size_t default_group_cap() { return Caps::defaults().max_group; }

/// Breadth-first closure of the generators under multiplication. Elements are
/// listed in discovery order, identity first.
inline MatrixGroup group_closure(const PrimeField& field, std::size_t n, const std::vector<Matrix>& gens,
                                 std::size_t cap = default_group_cap()) {
  for (const auto& g : gens) {
    if (g.size() != n || g.characteristic() != field.characteristic())
      throw Error(ErrorKind::RingMismatch, "group generator has the wrong shape or field");
    if (!g.is_invertible()) throw Error(ErrorKind::PreconditionViolated, "group generator is singular");
  }
  std::vector<Matrix> elements;
  std::set<Matrix> seen;
  std::deque<Matrix> frontier;
  auto id = Matrix::identity(field, n);
  seen.insert(id);
  elements.push_back(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Matrix cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      Matrix next = cur * g;
      if (!seen.insert(next).second) continue;
      if (elements.size() >= cap)
        throw Error(ErrorKind::ResourceCap, "group order exceeds cap " + std::to_string(cap));
      elements.push_back(next);
      frontier.push_back(std::move(next));
    }
  }
  if (elements.size() % field.characteristic() == 0)
    throw Error(ErrorKind::ModularCase, "p = " + std::to_string(field.characteristic()) + " divides |G| = " +
                                            std::to_string(elements.size()));
  return MatrixGroup(field, n, std::move(elements));
}

inline Polynomial reynolds(const Polynomial& f, const MatrixGroup& G) {
  if (f.ring().nvars() != G.nvars() || f.ring().characteristic() != G.characteristic())
    throw Error(ErrorKind::RingMismatch, "group does not act on this ring");
  Polynomial sum(f.ring());
  for (const auto& g : G.elements()) sum = sum + act(g, f);
  const auto& F = G.field();
  return sum.scaled(F.inv(F.reduce(static_cast<std::int64_t>(G.order()))));
}

inline bool is_invariant(const Polynomial& f, const MatrixGroup& G) {
  for (const auto& g : G.elements())
    if (!(act(g, f) == f)) return false;
  return true;
}

/// Reduced row-echelon basis of the degree-d invariants, columns in
/// decreasing grevlex order.
inline std::vector<Polynomial> invariant_basis(const Ring& ring, const MatrixGroup& G, std::uint32_t d) {
  if (d == 0) throw Error(ErrorKind::PreconditionViolated, "invariant degree must be positive");
  const auto& F = ring.field();
  auto cols = monomials_of_degree(ring.nvars(), d);
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& m : cols) {
    auto r = reynolds(Polynomial::monomial(ring, m), G);
    std::vector<std::uint32_t> row(cols.size(), 0);
    for (const auto& t : r.terms()) {
      auto it = std::find(cols.begin(), cols.end(), t.mono);
      row[static_cast<std::size_t>(it - cols.begin())] = t.coeff;
    }
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    auto s = F.inv(rows[rank][c]);
    for (auto& v : rows[rank]) v = F.mul(v, s);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      auto f = F.neg(rows[r][c]);
      for (std::size_t k = 0; k < cols.size(); ++k) rows[r][k] = F.add(rows[r][k], F.mul(f, rows[rank][k]));
    }
    ++rank;
  }
  std::vector<Polynomial> out;
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (rows[r][k] != 0) terms.push_back({cols[k], rows[r][k]});
    out.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return out;
}

struct InvariantIdealResult {
  /// generators[d-1] holds the degree-d invariants added at step d.
  std::vector<std::vector<Polynomial>> generators;
  std::uint32_t d_stop = 0;
  std::uint64_t colength = 0;
  Rational e_hk;
  GroebnerBasis basis;
};

/// The ideal of S generated by all invariants of positive degree, built
/// degree by degree until it swallows every monomial of the current degree.
inline InvariantIdealResult noether_ideal(const Ring& ring, const MatrixGroup& G, const Caps& caps = Caps::defaults()) {
  if (ring.nvars() != G.nvars() || ring.characteristic() != G.characteristic())
    throw Error(ErrorKind::RingMismatch, "group does not act on this ring");
  if (G.order() % G.characteristic() == 0) throw Error(ErrorKind::ModularCase, "p divides |G|");
  const auto g = static_cast<std::uint32_t>(G.order());
  std::vector<Polynomial> all;
  std::vector<std::vector<Polynomial>> by_degree;
  for (std::uint32_t d = 1; d <= g; ++d) {
    auto basis = invariant_basis(ring, G, d);
    for (const auto& f : basis)
      if (!is_invariant(f, G)) throw Error(ErrorKind::InternalError, "Reynolds image " + f.str() + " is not invariant");
    by_degree.push_back(basis);
    all.insert(all.end(), basis.begin(), basis.end());
    if (all.empty()) continue;
    auto GB = buchberger(all, ring.order(), caps);
    bool saturated = true;
    for (const auto& m : monomials_of_degree(ring.nvars(), d))
      if (!contains(GB, Polynomial::monomial(ring, m))) {
        saturated = false;
        break;
      }
    if (!saturated) continue;
    // Every monomial of degree |G| must be a member.
    for (const auto& m : monomials_of_degree(ring.nvars(), g))
      if (!contains(GB, Polynomial::monomial(ring, m)))
        throw Error(ErrorKind::NoetherBoundViolated, "monomial of degree |G| outside the invariant ideal");
    auto len = hkforge::colength(GB);
    if (!len) throw Error(ErrorKind::InternalError, "invariant ideal is not m-primary");
    return {std::move(by_degree), d, *len, Rational(BigInt(*len), BigInt(g)), std::move(GB)};
  }
  throw Error(ErrorKind::NoetherBoundViolated,
              "invariants of degree <= |G| = " + std::to_string(g) + " do not generate an m-primary ideal");
}

struct NoetherBound {
  Rational bound;
  std::optional<Rational> two_var_bound;
  std::optional<std::uint64_t> hs_bound;
};

inline NoetherBound noether_bound_value(std::uint64_t n, std::uint64_t g) {
  if (n == 0 || g == 0) throw Error(ErrorKind::PreconditionViolated, "bound needs n >= 1 and g >= 1");
  NoetherBound b{Rational(binomial(static_cast<unsigned>(n - 1 + g), static_cast<unsigned>(n)), BigInt(g)), {}, {}};
  if (n == 2) {
    b.two_var_bound = Rational(BigInt(g + 1), BigInt(2));
    b.hs_bound = g + 1;
  }
  return b;
}

}  // namespace hkforge

#endif  // HKFORGE_INVARIANTS_HPP
