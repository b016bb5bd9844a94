#ifndef HKFORGE_LINKAGE_HPP
#define HKFORGE_LINKAGE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkforge/error.hpp"
#include "hkforge/ideal.hpp"
#include "hkforge/scalar.hpp"

namespace hkforge {

/// I linked to J = (a : I) through the full-length complete intersection a.
struct LinkageDatum {
  QuotientPresentation presentation;
  RIdeal I;
  RIdeal a;
  RIdeal J;
  bool a_inside_I = false;
  bool m_primary = false;
  bool full_ci = false;
  bool double_link = false;
  /// J is the unit ideal, which happens exactly when I = a.
  bool degenerate = false;
};

struct HKRow {
  unsigned n = 0;
  std::uint64_t q = 1;
  std::uint64_t len_I = 0;
  std::uint64_t len_J = 0;
  std::uint64_t len_a = 0;
  std::uint64_t len_corner = 0;
  std::uint64_t deviation = 0;
  bool vraciu_ok = false;
  bool smith_ok = false;
  Rational norm_I, norm_J, norm_a, norm_corner;
};

enum class PdProbe { finite, infinite };

inline const char* to_string(PdProbe p) { return p == PdProbe::finite ? "finite" : "infinite"; }

struct Preconditions {
  bool isolated_singularity = false;
  bool full_ci = false;
  bool m_primary = false;
};

struct ReciprocityReport {
  std::uint32_t p = 0;
  std::size_t dim_R = 0;
  std::vector<HKRow> rows;
  bool smith_identity_at_1 = false;
  bool reciprocity_all_q = false;
  PdProbe pd_probe = PdProbe::finite;
  /// q at which the probe was evaluated.
  std::uint64_t probe_q = 1;
  Preconditions preconditions;
  bool degenerate_link = false;
  std::vector<Polynomial> J_generators;
};

struct HKTableRow {
  unsigned n = 0;
  std::uint64_t q = 1;
  std::uint64_t length = 0;
  Rational normalized;
};

namespace detail {

inline std::uint64_t finite_colength(const RIdeal& I, const char* what) {
  auto len = r_colength(I);
  if (!len) throw Error(ErrorKind::InternalError, std::string(what) + " has infinite colength");
  return *len;
}

inline Rational normalize(std::uint64_t length, std::uint64_t q, std::size_t dim) {
  BigInt scale = 1;
  for (std::size_t i = 0; i < dim; ++i) scale *= q;
  return Rational(BigInt(length), scale);
}

inline std::uint64_t power_of(std::uint32_t p, unsigned n) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) q *= p;
  return q;
}

}  // namespace detail

inline LinkageDatum link(const RIdeal& I, const RIdeal& a) {
  require_same_presentation(I, a);
  const auto& P = I.presentation();
  for (const auto& f : a.lift().generators())
    if (!I.lift().contains(f))
      throw Error(ErrorKind::PreconditionViolated, "a is not contained in I (" + f.str() + ")");
  if (!is_full_ci(a.generators(), P))
    throw Error(ErrorKind::PreconditionViolated,
                "a is not a full-length complete intersection (needs " + std::to_string(P.dim()) +
                    " generators generating an m-primary ideal)");
  if (I.is_unit() || !is_m_primary(I)) throw Error(ErrorKind::PreconditionViolated, "I is not m-primary");

  RIdeal J = colon(a, I);
  LinkageDatum L{P, I, a, J};
  L.a_inside_I = true;
  L.full_ci = true;
  L.m_primary = true;
  L.degenerate = J.is_unit();
  if (!L.degenerate && !is_m_primary(J))
    throw Error(ErrorKind::InternalError, "linked ideal J is not m-primary");
  if (!(colon(a, J) == I)) throw Error(ErrorKind::DoubleLinkFailed, "(a : (a : I)) differs from I");
  L.double_link = true;
  return L;
}

/// I^<q> = (a^[q] : J^[q]).
inline RIdeal corner_power(const LinkageDatum& L, std::uint64_t q) {
  check_frobenius_exponent(q, L.presentation.ring().characteristic());
  return colon(bracket_power(L.a, q), bracket_power(L.J, q));
}

/// l(I^<q> / I^[q]) = l(R/I^[q]) - l(R/I^<q>).
inline std::uint64_t deviation(const LinkageDatum& L, std::uint64_t q) {
  auto bracket = detail::finite_colength(bracket_power(L.I, q), "I^[q]");
  auto corner = detail::finite_colength(corner_power(L, q), "I^<q>");
  if (corner > bracket)
    throw Error(ErrorKind::InternalError, "corner power colength exceeds bracket power colength");
  return bracket - corner;
}

/// Over a complete-intersection presentation, I^[q] = I^<q> for a single
/// q = p^n with n >= 1 decides finite projective dimension.
inline PdProbe pd_finite_probe(const LinkageDatum& L, std::uint64_t q) {
  const auto p = L.presentation.ring().characteristic();
  if (log_p(q, p) == 0) throw Error(ErrorKind::NotAPowerOfP, "pd probe needs q = p^n with n >= 1");
  return deviation(L, q) == 0 ? PdProbe::finite : PdProbe::infinite;
}

/// Exact lengths l(R/I^[p^n]) for n = 0..n_max and their normalizations by
/// q^dim R. On ResourceCap the error carries the largest completed n.
inline std::vector<HKTableRow> hk_table(const RIdeal& I, unsigned n_max) {
  if (I.is_unit() || !is_m_primary(I)) throw Error(ErrorKind::PreconditionViolated, "I is not m-primary");
  const auto& P = I.presentation();
  const auto p = P.ring().characteristic();
  std::vector<HKTableRow> rows;
  for (unsigned n = 0; n <= n_max; ++n) {
    std::uint64_t q = detail::power_of(p, n);
    try {
      auto len = detail::finite_colength(bracket_power(I, q), "I^[q]");
      rows.push_back({n, q, len, detail::normalize(len, q, P.dim())});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceCap) throw;
      throw Error(ErrorKind::ResourceCap,
                  e.message() + " (largest completed n = " + std::to_string(static_cast<long>(n) - 1) + ")",
                  static_cast<long>(n) - 1);
    }
  }
  return rows;
}

inline HKRow reciprocity_row(const LinkageDatum& L, unsigned n) {
  const auto p = L.presentation.ring().characteristic();
  const std::size_t d = L.presentation.dim();
  HKRow row;
  row.n = n;
  row.q = detail::power_of(p, n);
  row.len_I = detail::finite_colength(bracket_power(L.I, row.q), "I^[q]");
  row.len_J = L.degenerate ? 0 : detail::finite_colength(bracket_power(L.J, row.q), "J^[q]");
  row.len_a = detail::finite_colength(bracket_power(L.a, row.q), "a^[q]");
  row.len_corner = detail::finite_colength(corner_power(L, row.q), "I^<q>");
  if (row.len_corner > row.len_I)
    throw Error(ErrorKind::InternalError,
                "I^[q] is not contained in I^<q> at q = " + std::to_string(row.q));
  row.deviation = row.len_I - row.len_corner;
  row.vraciu_ok = row.len_corner + row.len_J == row.len_a;
  row.smith_ok = row.len_I + row.len_J == row.len_a;
  row.norm_I = detail::normalize(row.len_I, row.q, d);
  row.norm_J = detail::normalize(row.len_J, row.q, d);
  row.norm_a = detail::normalize(row.len_a, row.q, d);
  row.norm_corner = detail::normalize(row.len_corner, row.q, d);
  if (!row.vraciu_ok)
    throw Error(ErrorKind::InternalError,
                "corner-power identity violated at q = " + std::to_string(row.q) + ": " +
                    std::to_string(row.len_corner) + " + " + std::to_string(row.len_J) +
                    " != " + std::to_string(row.len_a));
  if (n == 0 && !row.smith_ok)
    throw Error(ErrorKind::InternalError, "length reciprocity violated at q = 1");
  return row;
}

/// Rows for n = 0..n_max. The pd probe uses the largest computed q, or q = p
/// when n_max = 0.
inline ReciprocityReport reciprocity_report(const RIdeal& I, const RIdeal& a, unsigned n_max) {
  require_same_presentation(I, a);
  const auto& P = I.presentation();
  if (P.dim() == 0)
    throw Error(ErrorKind::PreconditionViolated, "reciprocity reports need a ring of positive dimension");
  ReciprocityReport report;
  report.p = P.ring().characteristic();
  report.dim_R = P.dim();
  report.preconditions.isolated_singularity = is_isolated_singularity(P);
  LinkageDatum L = link(I, a);
  report.preconditions.full_ci = L.full_ci;
  report.preconditions.m_primary = L.m_primary;
  report.degenerate_link = L.degenerate;
  report.J_generators = L.J.lift().generators();
  for (unsigned n = 0; n <= n_max; ++n) report.rows.push_back(reciprocity_row(L, n));
  report.smith_identity_at_1 = report.rows.front().smith_ok;
  report.reciprocity_all_q = true;
  for (const auto& row : report.rows) report.reciprocity_all_q = report.reciprocity_all_q && row.smith_ok;
  if (n_max == 0) {
    report.probe_q = report.p;
    report.pd_probe = pd_finite_probe(L, report.p);
  } else {
    const auto& last = report.rows.back();
    report.probe_q = last.q;
    report.pd_probe = last.deviation == 0 ? PdProbe::finite : PdProbe::infinite;
  }
  return report;
}

struct ParityResult {
  bool self_linked = false;
  bool even_certified = false;
  std::uint64_t total_length = 0;
};

/// On a zero-dimensional complete intersection R: if (0 : I) = I then l(R)
/// must be even.
inline ParityResult gorenstein_parity_check(const QuotientPresentation& P, const RIdeal& I) {
  if (P.dim() != 0) throw Error(ErrorKind::PreconditionViolated, "parity check needs dim R = 0");
  if (!(I.presentation() == P)) throw Error(ErrorKind::RingMismatch, "ideal over a different presentation");
  ParityResult result;
  RIdeal zero(P, {});
  auto total = r_colength(zero);
  if (!total) throw Error(ErrorKind::InternalError, "zero-dimensional ring of infinite length");
  result.total_length = *total;
  result.self_linked = colon(zero, I) == I;
  if (result.self_linked) {
    if (result.total_length % 2 != 0)
      throw Error(ErrorKind::InternalError, "self-linked ideal in a ring of odd length");
    result.even_certified = true;
  }
  return result;
}

}  // namespace hkforge

#endif  // HKFORGE_LINKAGE_HPP
