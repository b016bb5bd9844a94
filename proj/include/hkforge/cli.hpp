#ifndef HKFORGE_CLI_HPP
#define HKFORGE_CLI_HPP

#include <cstdint>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hkforge/error.hpp"
#include "hkforge/groebner.hpp"
#include "hkforge/ideal.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/io.hpp"
#include "hkforge/linkage.hpp"
#include "hkforge/oracle.hpp"

namespace hkforge::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kPrecondition = 2,
  kParse = 3,
  kResource = 4,
  kInternal = 5,
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownVariable: return kParse;
    case ErrorKind::ResourceCap: return kResource;
    case ErrorKind::InternalError:
    case ErrorKind::NoetherBoundViolated: return kInternal;
    case ErrorKind::DivisionByZero:
    case ErrorKind::RingMismatch:
    case ErrorKind::NotAPowerOfP:
    case ErrorKind::EmptyVariety:
    case ErrorKind::PreconditionViolated:
    case ErrorKind::DoubleLinkFailed:
    case ErrorKind::ModularCase: return kPrecondition;
  }
  return kInternal;
}

struct Options {
  std::string command;
  std::string in;
  std::string ideal = "I";
  std::string ci = "a";
  std::string by = "J";
  unsigned nmax = 2;
  std::optional<std::uint64_t> q;
  std::string format = "json";
  bool oracle = false;
  bool verbose = false;
  std::optional<std::size_t> max_pairs;
  std::optional<std::size_t> max_group;
  std::uint64_t n = 0;
  std::uint64_t g = 0;
};

namespace detail {

/// Restores the process-wide caps when a command finishes.
class CapsScope {
 public:
  explicit CapsScope(const Options& o) : saved_(Caps::defaults()) {
    if (o.max_pairs) Caps::defaults().max_pairs = *o.max_pairs;
    if (o.max_group) Caps::defaults().max_group = *o.max_group;
  }
  ~CapsScope() { Caps::defaults() = saved_; }
  CapsScope(const CapsScope&) = delete;
  CapsScope& operator=(const CapsScope&) = delete;

 private:
  Caps saved_;
};

/// Cross-checks a colength against the Macaulay-matrix oracle. The oracle
/// measures the length at the origin only, so ideals that are not
/// m-primary are skipped. Returns whether a check happened.
inline bool oracle_agrees(const std::vector<Polynomial>& gens, std::optional<std::uint64_t> expected,
                          const std::string& what) {
  if (gens.empty() || !expected) return false;
  Ideal I(gens.front().ring(), gens);
  if (!I.is_unit() && !is_m_primary(I)) return false;
  std::optional<std::uint64_t> got;
  try {
    got = oracle::stabilized_colength(gens);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ResourceCap) return false;
    throw;
  }
  if (!got) throw Error(ErrorKind::InternalError, "oracle finds " + what + " unstable, engine says " + std::to_string(*expected));
  if (*got != *expected)
    throw Error(ErrorKind::InternalError, "oracle colength " + std::to_string(*got) + " of " + what +
                                              " disagrees with engine " + std::to_string(*expected));
  return true;
}

inline nlohmann::json colength_json(std::optional<std::uint64_t> len) {
  return len ? nlohmann::json(*len) : nlohmann::json(nullptr);
}

inline std::string emit(const Options& o, const nlohmann::json& j) {
  return o.format == "tsv" ? object_tsv(j) : dump(j);
}

inline std::uint64_t q_or_p(const Options& o, const ProblemFile& pf) { return o.q ? *o.q : pf.p; }

inline std::string run_problem_command(const Options& o) {
  const ProblemFile pf = load_problem(o.in);
  const auto& P = pf.presentation();
  nlohmann::json j;
  const std::string& cmd = o.command;

  if (cmd == "gb") {
    RIdeal I = pf.r_ideal(o.ideal);
    const auto& G = I.lift().groebner();
    j = {{"ideal", o.ideal}, {"order", pf.ring().order().name()}, {"basis", to_json(G.basis())}, {"size", G.size()}};
    return emit(o, j);
  }
  if (cmd == "colength") {
    RIdeal I = pf.r_ideal(o.ideal);
    auto len = r_colength(I);
    j = {{"ideal", o.ideal}, {"colength", colength_json(len)}};
    if (o.oracle) j["oracle_checked"] = oracle_agrees(I.lift().generators(), len, o.ideal);
    return emit(o, j);
  }
  if (cmd == "dim") {
    RIdeal I = pf.r_ideal(o.ideal);
    j = {{"ideal", o.ideal}, {"dim", I.lift().dimension()}};
    return emit(o, j);
  }
  if (cmd == "colon" || cmd == "intersect") {
    RIdeal I = pf.r_ideal(o.ideal), J = pf.r_ideal(o.by);
    RIdeal K = cmd == "colon" ? colon(I, J) : intersect(I, J);
    auto len = r_colength(K);
    j = {{"generators", to_json(K.lift().generators())}, {"colength", colength_json(len)}};
    if (o.oracle) j["oracle_checked"] = oracle_agrees(K.lift().generators(), len, cmd);
    return emit(o, j);
  }
  if (cmd == "bracket") {
    const auto q = q_or_p(o, pf);
    RIdeal K = bracket_power(pf.r_ideal(o.ideal), q);
    auto len = r_colength(K);
    j = {{"q", q}, {"generators", to_json(K.lift().generators())}, {"colength", colength_json(len)}};
    if (o.oracle) j["oracle_checked"] = oracle_agrees(K.lift().generators(), len, "bracket power");
    return emit(o, j);
  }
  if (cmd == "link") {
    auto L = link(pf.r_ideal(o.ideal), pf.r_ideal(o.ci));
    auto row = reciprocity_row(L, 0);
    j = {{"J", to_json(L.J.lift().generators())},
         {"degenerate", L.degenerate},
         {"double_link", L.double_link},
         {"len_I", row.len_I},
         {"len_J", row.len_J},
         {"len_a", row.len_a},
         {"smith_ok", row.smith_ok}};
    return emit(o, j);
  }
  if (cmd == "corner") {
    const auto q = q_or_p(o, pf);
    auto L = link(pf.r_ideal(o.ideal), pf.r_ideal(o.ci));
    RIdeal C = corner_power(L, q);
    auto bracket = hkforge::detail::finite_colength(bracket_power(L.I, q), "I^[q]");
    auto corner = hkforge::detail::finite_colength(C, "I^<q>");
    if (corner > bracket) throw Error(ErrorKind::InternalError, "I^[q] is not contained in I^<q>");
    j = {{"q", q},
         {"corner", to_json(C.lift().generators())},
         {"len_bracket", bracket},
         {"len_corner", corner},
         {"deviation", bracket - corner}};
    return emit(o, j);
  }
  if (cmd == "hk") {
    RIdeal I = pf.r_ideal(o.ideal);
    auto rows = hk_table(I, o.nmax);
    if (o.format == "tsv") return hk_tsv(rows);
    j = {{"ideal", o.ideal}, {"p", pf.p}, {"dim_R", P.dim()}, {"rows", to_json(rows)}};
    if (o.oracle) {
      std::size_t checked = 0;
      for (const auto& r : rows) checked += oracle_agrees(bracket_power(I, r.q).lift().generators(), r.length, "I^[q]");
      j["oracle_checked"] = checked;
    }
    return dump(j);
  }
  if (cmd == "reciprocity") {
    RIdeal I = pf.r_ideal(o.ideal), a = pf.r_ideal(o.ci);
    auto rep = reciprocity_report(I, a, o.nmax);
    if (o.format == "tsv") return reciprocity_tsv(rep);
    j = to_json(rep);
    if (o.oracle) {
      std::size_t checked = 0;
      RIdeal J = RIdeal(P, rep.J_generators);
      for (const auto& r : rep.rows) {
        checked += oracle_agrees(bracket_power(I, r.q).lift().generators(), r.len_I, "I^[q]");
        checked += oracle_agrees(bracket_power(a, r.q).lift().generators(), r.len_a, "a^[q]");
        if (!rep.degenerate_link)
          checked += oracle_agrees(bracket_power(J, r.q).lift().generators(), r.len_J, "J^[q]");
      }
      j["oracle_checked"] = checked;
    }
    return dump(j);
  }
  if (cmd == "parity") {
    auto res = gorenstein_parity_check(P, pf.r_ideal(o.ideal));
    j = {{"self_linked", res.self_linked}, {"even_certified", res.even_certified}, {"total_length", res.total_length}};
    return emit(o, j);
  }
  if (cmd == "invariant") {
    if (!pf.group) throw Error(ErrorKind::PreconditionViolated, "problem file has no group");
    if (!P.is_polynomial_ring()) throw Error(ErrorKind::PreconditionViolated, "invariant rings need an empty quotient");
    auto G = group_closure(pf.ring().field(), pf.ring().nvars(), *pf.group);
    auto res = noether_ideal(pf.ring(), G);
    j = {{"colength", res.colength}, {"d_stop", res.d_stop}, {"e_hk", to_json(res.e_hk)}};
    auto bound = noether_bound_value(pf.ring().nvars(), G.order());
    if (!(res.e_hk <= bound.bound)) throw Error(ErrorKind::InternalError, "e_hk exceeds the binomial bound");
    if (o.verbose) {
      j["group_order"] = G.order();
      j["generators"] = to_json(res.basis.basis());
      j["bound"] = to_json(bound);
    }
    if (o.oracle) j["oracle_checked"] = oracle_agrees(res.basis.basis(), res.colength, "invariant ideal");
    return emit(o, j);
  }
  throw std::logic_error("unhandled command " + cmd);
}

}  // namespace detail

/// Runs one hkforge invocation. `args` excludes the program name. The report
/// is written to `out` in one piece; diagnostics go to `err`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact Hilbert-Kunz, linkage and invariant-ring computations over prime fields", "hkforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", o.in, "problem file (JSON)")->required();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "tsv"}));
    sub->add_option("--max-pairs", o.max_pairs, "cap on critical pairs per Groebner run");
    sub->add_option("--max-group", o.max_group, "cap on group order");
  };
  struct Spec {
    const char* name;
    const char* help;
    bool ci, by, q, nmax, oracle;
  };
  const Spec specs[] = {
      {"gb", "reduced Groebner basis of the lift of an ideal", false, false, false, false, false},
      {"colength", "length of R/I", false, false, false, false, true},
      {"dim", "Krull dimension of R/I", false, false, false, false, false},
      {"colon", "ideal quotient (I : J)", false, true, false, false, true},
      {"intersect", "intersection of I and J", false, true, false, false, true},
      {"bracket", "Frobenius power I^[q]", false, false, true, false, true},
      {"link", "linked ideal J = (a : I)", true, false, false, false, false},
      {"corner", "corner power (a^[q] : J^[q]) and its deviation", true, false, true, false, false},
      {"hk", "table of l(R/I^[p^n]) for n <= nmax", false, false, false, true, true},
      {"reciprocity", "length reciprocity report for I linked through a", true, false, false, true, true},
      {"parity", "self-linkage parity check on a zero-dimensional ring", false, false, false, false, false},
      {"invariant", "invariant ideal of the problem's group and its e_HK", false, false, false, false, true},
  };
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (std::string(s.name) != "invariant") sub->add_option("--ideal", o.ideal, "ideal name");
    if (s.ci) sub->add_option("--ci", o.ci, "name of the linking complete intersection");
    if (s.by) sub->add_option("--by", o.by, "name of the second ideal");
    if (s.q) sub->add_option("--q", o.q, "power of p");
    if (s.nmax) sub->add_option("--nmax", o.nmax, "largest n");
    if (s.oracle) sub->add_flag("--oracle", o.oracle, "cross-check lengths with the brute-force oracle");
    if (std::string(s.name) == "invariant") sub->add_flag("--verbose", o.verbose, "include generators and bounds");
  }
  auto* bound = app.add_subcommand("bound", "binomial upper bound for e_HK of an invariant ring");
  bound->add_option("--n", o.n, "number of variables")->required()->check(CLI::PositiveNumber);
  bound->add_option("--g", o.g, "group order")->required()->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hkforge: " << e.what() << "\n";
    return kUsage;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    detail::CapsScope scope(o);
    std::string report;
    if (o.command == "bound")
      report = dump(to_json(noether_bound_value(o.n, o.g)));
    else
      report = detail::run_problem_command(o);
    out << report;
    out.flush();
    return kOk;
  } catch (const Error& e) {
    err << "hkforge: " << e.what();
    if (e.completed() >= 0) err << " [completed n = " << e.completed() << "]";
    err << "\n";
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "hkforge: out of memory\n";
    return kResource;
  } catch (const std::ios_base::failure& e) {
    err << "hkforge: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    // Unreadable input files land here.
    err << "hkforge: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "hkforge: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace hkforge::cli

#endif  // HKFORGE_CLI_HPP
