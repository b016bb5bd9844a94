// One line per acceptance criterion; nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hkforge/cli.hpp"
#include "hkforge/groebner.hpp"
#include "hkforge/ideal.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/io.hpp"
#include "hkforge/linkage.hpp"
#include "hkforge/oracle.hpp"
#include "test_support.hpp"

using namespace hkforge;
using hkforge::testing::make_ring;
using hkforge::testing::random_m_primary;

namespace {

std::string corpus(const std::string& name) { return std::string(HKFORGE_CORPUS_DIR) + "/" + name; }

struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failure = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line << (c.failure.empty() ? "PASS" : "FAIL") << "  criterion " << id << ": " << title;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << " (" << secs << " s)";
  if (!c.failure.empty()) {
    line << " :: " << c.failure;
    ++failures;
  }
  std::cout << line.str() << std::endl;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Smallest k with m^k inside the lift of I.
std::uint32_t saturation_degree(const RIdeal& I) {
  const Ring& r = I.presentation().ring();
  for (std::uint32_t k = 1;; ++k) {
    bool all = true;
    for (const auto& m : monomials_of_degree(r.nvars(), k))
      if (!I.lift().contains(Polynomial::monomial(r, m))) {
        all = false;
        break;
      }
    if (all) return k;
  }
}

bool s_criterion(const GroebnerBasis& G) {
  const auto& b = G.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!normal_form(s_polynomial(b[i], b[j]), G).is_zero()) return false;
  return true;
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_command(args, out, err);
  return {code, out.str()};
}

const std::vector<std::string> kCorpusFiles = {
    "node.json",          "cone.json",          "poly_xy.json",         "order2.json",
    "order2_f7.json",     "order3_f7.json",     "order4_f5.json",       "order6_f7.json",
    "trivial.json",       "reflection_f5.json", "reflection_dual_f5.json", "gorenstein_x2.json",
    "gorenstein_x2y2.json", "example43_n2.json", "example43_n3.json",   "example43_n4.json"};

}  // namespace

int main() {
  criterion(1, "colength(I^[q]) = q^n colength(I) on 60 random m-primary ideals, q in {p, p^2}", [](Check& c) {
    std::mt19937_64 rng(101);
    struct Setting {
      std::uint32_t p;
      std::size_t n;
    };
    for (auto s : {Setting{2, 2}, Setting{3, 2}, Setting{5, 3}}) {
      Ring r = make_ring(s.p, s.n);
      for (int k = 0; k < 20; ++k) {
        Ideal I(r, random_m_primary(r, rng, 5, 2, 4, 2));
        auto len = I.colength();
        c.expect(len.has_value(), "random ideal not m-primary");
        if (!len) return;
        for (std::uint64_t q : {std::uint64_t(s.p), std::uint64_t(s.p) * s.p}) {
          auto lq = bracket_power(I, q).colength();
          c.expect(lq && *lq == ipow(q, s.n) * *len,
                   "p=" + std::to_string(s.p) + " q=" + std::to_string(q) + " scaling fails");
        }
      }
    }
  });

  criterion(2, "length reciprocity at q = 1 on the corpus link and 30 random links", [](Check& c) {
    {
      auto pf = load_problem(corpus("poly_xy.json"));
      auto L = link(pf.r_ideal("I"), pf.r_ideal("a"));
      auto row = reciprocity_row(L, 0);
      c.expect(row.len_I == 1 && row.len_J == 3 && row.len_a == 4 && row.smith_ok, "(x,y) linked by (x^2,y^2)");
    }
    std::mt19937_64 rng(202);
    Ring r2 = make_ring(5, 2), r3 = make_ring(5, 3);
    auto x = Polynomial::variable(r2, 0), y = Polynomial::variable(r2, 1);
    auto X = Polynomial::variable(r3, 0), Y = Polynomial::variable(r3, 1), Z = Polynomial::variable(r3, 2);
    struct Setting {
      QuotientPresentation P;
      std::function<std::vector<Polynomial>(std::uint32_t)> ci;
    };
    std::vector<Setting> settings = {
        {QuotientPresentation(r2), [&](std::uint32_t k) { return std::vector{poly_pow(x, k), poly_pow(y, k)}; }},
        {QuotientPresentation(r2, {x * y}), [&](std::uint32_t k) { return std::vector{poly_pow(x, k) + poly_pow(y, k)}; }},
        {QuotientPresentation(r3, {X * X + Y * Y + Z * Z}),
         [&](std::uint32_t k) { return std::vector{poly_pow(Y, k), poly_pow(Z, k)}; }},
    };
    for (const auto& s : settings) {
      const Ring& r = s.P.ring();
      int done = 0;
      for (int attempt = 0; done < 10 && attempt < 200; ++attempt) {
        RIdeal I(s.P, random_m_primary(r, rng, 5, 2, 4, 2));
        if (I.is_unit() || !is_m_primary(I)) continue;
        RIdeal a(s.P, s.ci(saturation_degree(I)));
        auto L = link(I, a);
        auto row = reciprocity_row(L, 0);
        c.expect(row.smith_ok, "random link: " + std::to_string(row.len_I) + " + " + std::to_string(row.len_J) +
                                   " != " + std::to_string(row.len_a));
        ++done;
      }
      c.expect(done == 10, "could not draw 10 m-primary ideals");
    }
  });

  criterion(3, "corner-power identity on every row of every corpus reciprocity report", [](Check& c) {
    struct Report {
      const char* file;
      const char* nmax;
    };
    for (auto rep : {Report{"node.json", "2"}, Report{"cone.json", "1"}, Report{"poly_xy.json", "2"}}) {
      auto run = cli_run({"reciprocity", "--in", corpus(rep.file), "--nmax", rep.nmax});
      c.expect(run.code == 0, std::string(rep.file) + " exit code " + std::to_string(run.code));
      if (run.code != 0) continue;
      auto j = nlohmann::json::parse(run.out);
      for (const auto& row : j["rows"]) {
        c.expect(row["vraciu_ok"] == true, std::string(rep.file) + " row violates the identity");
        c.expect(row["len_corner"].get<std::uint64_t>() + row["len_J"].get<std::uint64_t>() ==
                     row["len_a"].get<std::uint64_t>(),
                 std::string(rep.file) + " lengths do not add up");
      }
    }
    c.expect(cli::exit_code(ErrorKind::InternalError) == 5, "violations must exit with code 5");
  });

  criterion(4, "node F5[x,y]/(xy), I = m, a = (x+y): exact rows at q = 1, 5, 25, pd infinite, < 10 s", [](Check& c) {
    auto t0 = std::chrono::steady_clock::now();
    auto pf = load_problem(corpus("node.json"));
    auto rep = reciprocity_report(pf.r_ideal("I"), pf.r_ideal("a"), 2);
    const std::uint64_t qs[] = {1, 5, 25};
    c.expect(rep.rows.size() == 3, "row count");
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
      const auto& row = rep.rows[k];
      const auto q = qs[k];
      c.expect(row.q == q && row.len_I == 2 * q - 1 && row.len_J == 2 * q - 1 && row.len_a == 2 * q &&
                   row.len_corner == 1 && row.deviation == 2 * q - 2,
               "row q=" + std::to_string(q));
    }
    c.expect(!rep.reciprocity_all_q, "reciprocity_all_q should be false");
    c.expect(rep.pd_probe == PdProbe::infinite, "pd probe should be infinite");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  });

  criterion(5, "cone F5[x,y,z]/(x^2+y^2+z^2), I = (y,z), a = (y,z^3): deviation 0, reciprocity, pd finite", [](Check& c) {
    auto pf = load_problem(corpus("cone.json"));
    auto rep = reciprocity_report(pf.r_ideal("I"), pf.r_ideal("a"), 1);
    const std::uint64_t frozen[2][3] = {{2, 4, 6}, {50, 100, 150}};
    c.expect(rep.rows.size() == 2, "row count");
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
      const auto& row = rep.rows[k];
      c.expect(row.deviation == 0, "deviation at q=" + std::to_string(row.q));
      c.expect(row.len_I + row.len_J == row.len_a, "reciprocity at q=" + std::to_string(row.q));
      c.expect(row.len_I == frozen[k][0] && row.len_J == frozen[k][1] && row.len_a == frozen[k][2],
               "frozen lengths at q=" + std::to_string(row.q));
    }
    c.expect(rep.pd_probe == PdProbe::finite, "pd probe should be finite");
  });

  criterion(6, "invariant rings: {+-1} gives e_HK = 3/2 = bound over F5 and F7; weight-3 group gives 5/3 <= 2", [](Check& c) {
    for (const char* f : {"order2.json", "order2_f7.json"}) {
      auto pf = load_problem(corpus(f));
      auto G = group_closure(pf.ring().field(), pf.ring().nvars(), *pf.group);
      auto res = noether_ideal(pf.ring(), G);
      c.expect(res.colength == 3 && res.d_stop == 2 && res.e_hk == rat_make(3, 2), std::string(f) + " values");
      c.expect(res.e_hk == noether_bound_value(2, 2).bound, std::string(f) + " bound not attained");
    }
    auto pf = load_problem(corpus("order3_f7.json"));
    auto G = group_closure(pf.ring().field(), pf.ring().nvars(), *pf.group);
    auto res = noether_ideal(pf.ring(), G);
    c.expect(G.order() == 3 && res.e_hk == rat_make(5, 3), "weight-3 e_HK");
    c.expect(res.e_hk <= noether_bound_value(2, 3).bound && noether_bound_value(2, 3).bound == Rational(2),
             "weight-3 bound");
    auto run = cli_run({"invariant", "--in", corpus("order2.json")});
    c.expect(run.out == "{\"colength\":3,\"d_stop\":2,\"e_hk\":\"3/2\"}\n", "CLI output " + run.out);
  });

  criterion(7, "every monomial of degree |G| lies in the invariant ideal (orders 1, 2, 3, 4, 6)", [](Check& c) {
    std::vector<std::size_t> orders;
    for (const auto& f : kCorpusFiles) {
      auto pf = load_problem(corpus(f));
      if (!pf.group) continue;
      auto G = group_closure(pf.ring().field(), pf.ring().nvars(), *pf.group);
      auto res = noether_ideal(pf.ring(), G);
      orders.push_back(G.order());
      for (const auto& m : monomials_of_degree(pf.ring().nvars(), static_cast<std::uint32_t>(G.order())))
        c.expect(contains(res.basis, Polynomial::monomial(pf.ring(), m)), f + ": monomial outside");
      c.expect(res.d_stop <= G.order(), f + ": d_stop above |G|");
    }
    for (std::size_t want : {1u, 2u, 3u, 4u, 6u})
      c.expect(std::find(orders.begin(), orders.end(), want) != orders.end(),
               "no corpus group of order " + std::to_string(want));
  });

  criterion(8, "Gorenstein examples: colength n+2 for n = 2, 3, 4; K[x]/(x^2) self-linked of length 2", [](Check& c) {
    for (unsigned n = 2; n <= 4; ++n) {
      auto pf = load_problem(corpus("example43_n" + std::to_string(n) + ".json"));
      auto len = Ideal(pf.ring(), pf.ideal("G")).colength();
      c.expect(len && *len == n + 2, "n=" + std::to_string(n) + " colength");
      // Basis 1, x_1, ..., x_n, x_1^2: the socle is spanned by x_1^2.
      auto R = Ideal(pf.ring(), pf.ideal("G"));
      auto socle = colon(R, Ideal(pf.ring(), pf.ideal("m")));
      c.expect(socle.colength() && *socle.colength() == n + 1, "n=" + std::to_string(n) + " socle dimension");
    }
    auto pf = load_problem(corpus("gorenstein_x2.json"));
    auto res = gorenstein_parity_check(pf.presentation(), pf.r_ideal("I"));
    c.expect(res.self_linked && res.even_certified && res.total_length == 2, "K[x]/(x^2)");
  });

  criterion(9, "Groebner engine: S-criterion on corpus bases, order independence, Frobenius shortcut, oracle agreement",
            [](Check& c) {
              for (const auto& f : kCorpusFiles) {
                auto pf = load_problem(corpus(f));
                for (const auto& [name, gens] : pf.ideals) {
                  if (gens.empty()) continue;
                  c.expect(s_criterion(RIdeal(pf.presentation(), gens).lift().groebner()), f + ":" + name);
                }
                if (!pf.quotient.empty()) c.expect(s_criterion(pf.presentation().zero_ideal_lift().groebner()), f);
              }
              std::mt19937_64 rng(909);
              Ring r = make_ring(7, 3);
              for (int k = 0; k < 20; ++k) {
                auto gens = random_m_primary(r, rng, 5, 2, 4, 2);
                auto a = colength(buchberger(gens, MonomialOrder::grevlex()));
                auto b = colength(buchberger(gens, MonomialOrder::lex()));
                c.expect(a && a == b, "lex vs grevlex colength");
                auto o = oracle::stabilized_colength(gens);
                c.expect(o && o == a, "oracle colength");
              }
              Ring r2 = make_ring(3, 2);
              for (int k = 0; k < 10; ++k) {
                Ideal I(r2, random_m_primary(r2, rng, 5, 2, 4, 2));
                for (std::uint64_t q : {3u, 9u}) {
                  auto lead = I.groebner().leading_monomials();
                  auto lead_q = bracket_power(I, q).groebner().leading_monomials();
                  std::vector<Monomial> scaled;
                  for (const auto& m : lead) scaled.push_back(m.scaled(q));
                  c.expect(lead_q == scaled, "Frobenius shortcut at q=" + std::to_string(q));
                }
              }
            });

  criterion(10, "finite tables only: node sequence (2q-1)/q strictly increasing below 2 at q = 1, 5, 25", [](Check& c) {
    auto pf = load_problem(corpus("node.json"));
    auto rows = hk_table(pf.r_ideal("I"), 2);
    c.expect(rows.size() == 3, "row count");
    const Rational expected[] = {Rational(1), rat_make(9, 5), rat_make(49, 25)};
    for (std::size_t k = 0; k < rows.size(); ++k) {
      c.expect(rows[k].length == 2 * rows[k].q - 1, "length at q=" + std::to_string(rows[k].q));
      c.expect(rows[k].normalized == expected[k], "normalized value at q=" + std::to_string(rows[k].q));
      c.expect(rows[k].normalized < Rational(2), "value reaches 2");
      if (k) c.expect(rows[k - 1].normalized < rows[k].normalized, "not strictly increasing");
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
