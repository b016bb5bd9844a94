#ifndef HKFORGE_ORACLE_HPP
#define HKFORGE_ORACLE_HPP

// Brute-force linear algebra over truncated monomial spaces. Nothing here
// touches the Groebner engine: these routines exist to certify it.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hkforge/error.hpp"
#include "hkforge/poly.hpp"

namespace hkforge::oracle {

struct OracleLimits {
  std::uint32_t max_degree = 96;
  std::size_t max_columns = 60000;
};

namespace detail {

struct ExponentHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto e : m.exponents()) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using SparseRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

}  // namespace detail

/// Row space of { m * g_i truncated below degree D } inside the span of all
/// monomials of degree < D, kept in sparse row-echelon form. Columns are
/// ordered by decreasing degree so pivots land on high-degree monomials and
/// the non-pivot columns form a basis of S / (I + m^D).
class MacaulayFrame {
 public:
  MacaulayFrame(const std::vector<Polynomial>& gens, std::uint32_t D, const OracleLimits& limits = {})
      : degree_bound_(D) {
    if (gens.empty()) throw Error(ErrorKind::PreconditionViolated, "oracle needs at least one generator");
    const Ring& ring = gens.front().ring();
    field_ = ring.field();
    nvars_ = ring.nvars();
    if (D > limits.max_degree)
      throw Error(ErrorKind::ResourceCap, "oracle degree bound " + std::to_string(D) + " exceeds cap");
    BigInt count = binomial(static_cast<unsigned>(D - 1 + nvars_), static_cast<unsigned>(nvars_));
    if (D == 0) count = 0;
    if (count > limits.max_columns)
      throw Error(ErrorKind::ResourceCap, "oracle frame needs " + count.str() + " columns");
    for (std::uint32_t d = D; d-- > 0;)
      for (auto& m : monomials_of_degree(nvars_, d)) {
        index_.emplace(m, static_cast<std::uint32_t>(columns_.size()));
        columns_.push_back(m);
      }
    pivot_row_.assign(columns_.size(), -1);
    work_.assign(columns_.size(), 0);

    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      std::uint32_t low = g.min_degree();
      if (low >= D) continue;
      for (std::uint32_t d = 0; d + low < D; ++d)
        for (const auto& m : monomials_of_degree(nvars_, d)) insert(truncate(g, m));
    }
  }

  std::uint32_t degree_bound() const noexcept { return degree_bound_; }
  std::size_t column_count() const noexcept { return columns_.size(); }
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t quotient_dimension() const noexcept { return columns_.size() - rows_.size(); }
  const std::vector<Monomial>& columns() const noexcept { return columns_; }

  std::vector<std::uint32_t> basis_columns() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < columns_.size(); ++c)
      if (pivot_row_[c] < 0) out.push_back(c);
    return out;
  }

  /// Remainder of m * f modulo the row space, as a dense vector over all
  /// columns (zero at every pivot column). Terms of degree >= D are dropped.
  std::vector<std::uint32_t> remainder(const Polynomial& f, const Monomial& m = Monomial{}) const {
    std::vector<std::uint32_t> v(columns_.size(), 0);
    for (auto [c, val] : truncate(f, m)) v[c] = val;
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c] == 0 || pivot_row_[c] < 0) continue;
      auto factor = field_.neg(v[c]);
      for (auto [cc, val] : rows_[static_cast<std::size_t>(pivot_row_[c])])
        v[cc] = field_.add(v[cc], field_.mul(factor, val));
    }
    return v;
  }

  bool contains(const Polynomial& f) const {
    if (!f.is_zero() && f.total_degree() >= degree_bound_)
      throw Error(ErrorKind::PreconditionViolated, "membership test needs deg f < D");
    for (auto x : remainder(f))
      if (x != 0) return false;
    return true;
  }

 private:
  detail::SparseRow truncate(const Polynomial& g, const Monomial& m) const {
    detail::SparseRow row;
    for (const auto& t : g.terms()) {
      if (t.mono.degree() + m.degree() >= degree_bound_) continue;
      row.emplace_back(index_.at(t.mono * m), t.coeff);
    }
    std::sort(row.begin(), row.end());
    return row;
  }

  void insert(const detail::SparseRow& row) {
    if (row.empty()) return;
    auto& v = work_;
    std::size_t first = row.front().first;
    for (auto [c, val] : row) v[c] = val;
    for (std::size_t c = first; c < v.size(); ++c) {
      if (v[c] == 0) continue;
      if (pivot_row_[c] >= 0) {
        auto factor = field_.neg(v[c]);
        for (auto [cc, val] : rows_[static_cast<std::size_t>(pivot_row_[c])])
          v[cc] = field_.add(v[cc], field_.mul(factor, val));
        continue;
      }
      detail::SparseRow fresh;
      auto s = field_.inv(v[c]);
      for (std::size_t cc = c; cc < v.size(); ++cc) {
        if (v[cc] == 0) continue;
        fresh.emplace_back(static_cast<std::uint32_t>(cc), field_.mul(v[cc], s));
        v[cc] = 0;
      }
      pivot_row_[c] = static_cast<long>(rows_.size());
      rows_.push_back(std::move(fresh));
      return;
    }
  }

  std::uint32_t degree_bound_;
  PrimeField field_;
  std::size_t nvars_ = 0;
  std::vector<Monomial> columns_;
  std::unordered_map<Monomial, std::uint32_t, detail::ExponentHash> index_;
  std::vector<detail::SparseRow> rows_;
  std::vector<long> pivot_row_;
  std::vector<std::uint32_t> work_;
};

/// dim_k S / (I + m^D).
inline std::uint64_t colength_bruteforce(const std::vector<Polynomial>& gens, std::uint32_t D,
                                         const OracleLimits& limits = {}) {
  return MacaulayFrame(gens, D, limits).quotient_dimension();
}

inline bool membership_bruteforce(const Polynomial& f, const std::vector<Polynomial>& gens,
                                  std::uint32_t D, const OracleLimits& limits = {}) {
  if (f.is_zero()) return true;
  return MacaulayFrame(gens, D, limits).contains(f);
}

namespace detail {

inline bool pure_powers_inside(const MacaulayFrame& frame, const Ring& ring) {
  if (frame.degree_bound() == 0) return false;
  for (std::size_t i = 0; i < ring.nvars(); ++i)
    if (!frame.contains(Polynomial::monomial(ring, Monomial::variable(i, frame.degree_bound() - 1))))
      return false;
  return true;
}

}  // namespace detail

/// Smallest degree bound D at which the truncated quotient has stabilized:
/// the values at D and D+1 agree and every x_i^(D-1) lies in I + m^D.
/// Returns nullopt when no such D exists up to limits.max_degree.
inline std::optional<std::uint32_t> stable_degree(const std::vector<Polynomial>& gens,
                                                  const OracleLimits& limits = {},
                                                  std::uint32_t start = 1) {
  if (gens.empty()) return std::nullopt;
  const Ring& ring = gens.front().ring();
  std::optional<MacaulayFrame> prev;
  for (std::uint32_t D = std::max<std::uint32_t>(start, 1); D + 1 <= limits.max_degree; ++D) {
    if (!prev) prev.emplace(gens, D, limits);
    MacaulayFrame next(gens, D + 1, limits);
    if (prev->quotient_dimension() == next.quotient_dimension() &&
        detail::pure_powers_inside(*prev, ring))
      return D;
    prev.emplace(std::move(next));
  }
  return std::nullopt;
}

/// Stabilized brute-force colength, or nullopt ("unstable").
inline std::optional<std::uint64_t> stabilized_colength(const std::vector<Polynomial>& gens,
                                                        const OracleLimits& limits = {}) {
  auto D = stable_degree(gens, limits);
  if (!D) return std::nullopt;
  return colength_bruteforce(gens, *D, limits);
}

/// Stabilized brute-force membership f in I.
inline std::optional<bool> stabilized_membership(const Polynomial& f, const std::vector<Polynomial>& gens,
                                                 const OracleLimits& limits = {}) {
  auto D = stable_degree(gens, limits);
  if (!D) return std::nullopt;
  std::uint32_t bound = std::max(*D, f.total_degree() + 1);
  return membership_bruteforce(f, gens, bound, limits);
}

/// l(S / (I : J)) for I supported at the origin, as the rank of the
/// multiplication map S/I -> (S/I)^r, h -> (h g_1, ..., h g_r).
inline std::optional<std::uint64_t> colon_colength_bruteforce(const std::vector<Polynomial>& I,
                                                              const std::vector<Polynomial>& J,
                                                              const OracleLimits& limits = {}) {
  auto D = stable_degree(I, limits);
  if (!D) return std::nullopt;
  MacaulayFrame frame(I, *D, limits);
  const auto basis = frame.basis_columns();
  const PrimeField& F = I.front().ring().field();
  const std::size_t width = basis.size() * J.size();
  std::vector<long> position(frame.column_count(), -1);
  for (std::size_t k = 0; k < basis.size(); ++k) position[basis[k]] = static_cast<long>(k);

  std::vector<std::vector<std::uint32_t>> rows;
  for (auto b : basis) {
    std::vector<std::uint32_t> row(width, 0);
    for (std::size_t j = 0; j < J.size(); ++j) {
      auto rem = frame.remainder(J[j], frame.columns()[b]);
      for (std::size_t c = 0; c < rem.size(); ++c)
        if (rem[c] != 0) row[j * basis.size() + static_cast<std::size_t>(position[c])] = rem[c];
    }
    rows.push_back(std::move(row));
  }
  // Dense rank.
  std::uint64_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    auto s = F.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = F.mul(x, s);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      auto f = F.neg(rows[r][col]);
      for (std::size_t c = col; c < width; ++c) rows[r][c] = F.add(rows[r][c], F.mul(f, rows[rank][c]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace hkforge::oracle

#endif  // HKFORGE_ORACLE_HPP
