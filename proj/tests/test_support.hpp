#ifndef HKFORGE_TEST_SUPPORT_HPP
#define HKFORGE_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "hkforge/poly.hpp"

namespace hkforge::testing {

inline Ring make_ring(std::uint32_t p, std::size_t n, MonomialOrder order = MonomialOrder::grevlex()) {
  static const char* names[] = {"x", "y", "z", "w", "u", "v"};
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(names[i]);
  return Ring(p, v, order);
}

inline Polynomial random_polynomial(const Ring& ring, std::mt19937_64& rng, std::uint32_t max_deg,
                                    std::size_t max_terms, std::uint32_t min_deg = 0) {
  std::uniform_int_distribution<std::uint32_t> deg(min_deg, max_deg);
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  std::uniform_int_distribution<std::uint32_t> coeff(1, ring.characteristic() - 1);
  std::vector<Term> terms;
  std::size_t k = count(rng);
  for (std::size_t t = 0; t < k; ++t) {
    std::uint32_t d = deg(rng);
    Monomial::Exponents e{};
    for (std::uint32_t s = 0; s < d; ++s) e[std::uniform_int_distribution<std::size_t>(0, ring.nvars() - 1)(rng)]++;
    terms.push_back({Monomial(e), coeff(rng)});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

/// Generators of a random ideal supported at the origin: pure powers
/// x_i^{a_i} plus a few random polynomials without constant term.
inline std::vector<Polynomial> random_m_primary(const Ring& ring, std::mt19937_64& rng,
                                                std::uint32_t max_power = 4, std::size_t extra = 2,
                                                std::uint32_t extra_deg = 3, std::uint32_t extra_min_deg = 1) {
  std::vector<Polynomial> gens;
  std::uniform_int_distribution<std::uint32_t> power(1, max_power);
  for (std::size_t i = 0; i < ring.nvars(); ++i)
    gens.push_back(Polynomial::monomial(ring, Monomial::variable(i, power(rng))));
  for (std::size_t k = 0; k < extra; ++k) {
    auto f = random_polynomial(ring, rng, extra_deg, 3, extra_min_deg);
    if (!f.is_zero()) gens.push_back(f);
  }
  return gens;
}

}  // namespace hkforge::testing

#endif
