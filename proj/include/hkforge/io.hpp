#ifndef HKFORGE_IO_HPP
#define HKFORGE_IO_HPP

#include <cctype>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkforge/error.hpp"
#include "hkforge/ideal.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/linkage.hpp"
#include "hkforge/matrix.hpp"
#include "hkforge/poly.hpp"

namespace hkforge {

// ---------------------------------------------------------------------------
// Polynomial expressions
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' integer)?
//   atom   := integer | name | '(' expr ')'

namespace detail {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    skip();
    if (at_end()) fail("empty expression");
    Polynomial f = expr();
    skip();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::ParseError) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial t = term();
    acc = negate ? -t : t;
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    skip();
    std::size_t start = pos_;
    bool monomial_atom = false;
    Polynomial base = atom(monomial_atom);
    if (!accept('^')) return base;
    skip();
    auto e = integer_literal("exponent");
    if (monomial_atom) {
      // x^e stays a single term; overflow surfaces here instead of in poly_pow.
      const auto& m = base.leading_monomial();
      for (std::size_t i = 0; i < ring_.nvars(); ++i)
        if (m[i] != 0 && e > std::numeric_limits<std::uint32_t>::max() / m[i]) {
          pos_ = start;
          fail("exponent overflow");
        }
    } else if (e > std::numeric_limits<std::uint32_t>::max()) {
      pos_ = start;
      fail("exponent overflow");
    }
    try {
      return poly_pow(base, e);
    } catch (const Error& err) {
      pos_ = start;
      if (err.kind() == ErrorKind::ResourceCap) fail("exponent overflow");
      throw;
    }
  }

  Polynomial atom(bool& monomial_atom) {
    skip();
    if (at_end()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial f = expr();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      const std::uint64_t p = ring_.characteristic();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        v = (v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0')) % p;
      return Polynomial::constant(ring_, static_cast<std::int64_t>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_.index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'", ErrorKind::UnknownVariable);
      }
      monomial_atom = true;
      return Polynomial::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::uint64_t integer_literal(const char* what) {
    skip();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(std::string("expected ") + what);
    std::uint64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("exponent overflow");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
  return detail::ExpressionParser(text, ring).parse();
}

inline std::string render(const Polynomial& f) { return f.str(); }

// ---------------------------------------------------------------------------
// Problem files

inline MonomialOrder parse_order(const std::string& name, std::size_t nvars) {
  if (name == "grevlex") return MonomialOrder::grevlex();
  if (name == "lex") return MonomialOrder::lex();
  if (name.size() > 6 && name.rfind("elim(", 0) == 0 && name.back() == ')') {
    auto inner = name.substr(5, name.size() - 6);
    if (!inner.empty() && inner.find_first_not_of("0123456789") == std::string::npos && inner.size() < 4) {
      auto k = static_cast<std::uint32_t>(std::stoul(inner));
      if (k >= 1 && k < nvars) return MonomialOrder::elim(k);
    }
  }
  throw Error(ErrorKind::ParseError, "unknown monomial order '" + name + "'");
}

struct ProblemFile {
  std::uint32_t p = 0;
  std::vector<std::string> vars;
  std::string order_name = "grevlex";
  std::vector<Polynomial> quotient;
  std::map<std::string, std::vector<Polynomial>> ideals;
  std::optional<std::vector<Matrix>> group;
  std::optional<Ring> ring_;
  std::optional<QuotientPresentation> presentation_;

  const Ring& ring() const { return *ring_; }
  const QuotientPresentation& presentation() const { return *presentation_; }

  const std::vector<Polynomial>& ideal(const std::string& name) const {
    auto it = ideals.find(name);
    if (it == ideals.end()) throw Error(ErrorKind::PreconditionViolated, "no ideal named '" + name + "'");
    return it->second;
  }
  RIdeal r_ideal(const std::string& name) const { return RIdeal(presentation(), ideal(name)); }
};

namespace detail {

template <class T>
T json_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("problem file lacks '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad '") + key + "': " + e.what());
  }
}

inline Polynomial parse_in_context(const std::string& text, const Ring& ring, const std::string& where) {
  try {
    return parse_polynomial(text, ring);
  } catch (const Error& e) {
    throw Error(e.kind(), where + ": " + e.message());
  }
}

}  // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "problem file must be a JSON object");
  ProblemFile pf;
  auto p = detail::json_field<std::int64_t>(j, "p");
  if (p < 2 || p > std::numeric_limits<std::int32_t>::max())
    throw Error(ErrorKind::PreconditionViolated, "p out of range");
  pf.p = static_cast<std::uint32_t>(p);
  pf.vars = detail::json_field<std::vector<std::string>>(j, "vars");
  if (pf.vars.empty()) throw Error(ErrorKind::ParseError, "'vars' must not be empty");
  for (std::size_t i = 0; i < pf.vars.size(); ++i) {
    const auto& v = pf.vars[i];
    bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
    for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) throw Error(ErrorKind::ParseError, "bad variable name '" + v + "'");
    for (std::size_t k = 0; k < i; ++k)
      if (pf.vars[k] == v) throw Error(ErrorKind::ParseError, "duplicate variable '" + v + "'");
  }
  if (j.contains("order")) pf.order_name = detail::json_field<std::string>(j, "order");
  auto order = parse_order(pf.order_name, pf.vars.size());
  pf.ring_.emplace(pf.p, pf.vars, order);
  const Ring& ring = *pf.ring_;
  if (j.contains("quotient")) {
    auto q = detail::json_field<std::vector<std::string>>(j, "quotient");
    for (std::size_t i = 0; i < q.size(); ++i)
      pf.quotient.push_back(detail::parse_in_context(q[i], ring, "quotient[" + std::to_string(i) + "]"));
  }
  pf.presentation_.emplace(ring, pf.quotient);
  if (j.contains("ideals")) {
    auto ideals = detail::json_field<std::map<std::string, std::vector<std::string>>>(j, "ideals");
    for (const auto& [name, gens] : ideals) {
      auto& out = pf.ideals[name];
      for (std::size_t i = 0; i < gens.size(); ++i)
        out.push_back(detail::parse_in_context(gens[i], ring, "ideals." + name + "[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("group") && !j.at("group").is_null()) {
    auto mats = detail::json_field<std::vector<std::vector<std::vector<std::int64_t>>>>(j, "group");
    std::vector<Matrix> group;
    for (const auto& rows : mats) {
      if (rows.size() != ring.nvars())
        throw Error(ErrorKind::ParseError, "group matrix must be " + std::to_string(ring.nvars()) + " x " +
                                               std::to_string(ring.nvars()));
      for (const auto& r : rows)
        if (r.size() != ring.nvars()) throw Error(ErrorKind::ParseError, "group matrix row has the wrong length");
      group.emplace_back(ring.field(), rows);
    }
    pf.group = std::move(group);
  }
  return pf;
}

inline ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

// ---------------------------------------------------------------------------
// Reports. nlohmann::json objects keep keys sorted, so dump() is canonical.

inline nlohmann::json to_json(const Rational& r) { return r.str(); }

inline nlohmann::json to_json(const std::vector<Polynomial>& gens) {
  auto a = nlohmann::json::array();
  for (const auto& g : gens) a.push_back(g.str());
  return a;
}

inline nlohmann::json to_json(const HKRow& r) {
  return {{"n", r.n},
          {"q", r.q},
          {"len_I", r.len_I},
          {"len_J", r.len_J},
          {"len_a", r.len_a},
          {"len_corner", r.len_corner},
          {"deviation", r.deviation},
          {"vraciu_ok", r.vraciu_ok},
          {"smith_ok", r.smith_ok},
          {"norm_I", to_json(r.norm_I)},
          {"norm_J", to_json(r.norm_J)},
          {"norm_a", to_json(r.norm_a)},
          {"norm_corner", to_json(r.norm_corner)}};
}

inline nlohmann::json to_json(const ReciprocityReport& rep) {
  auto rows = nlohmann::json::array();
  for (const auto& r : rep.rows) rows.push_back(to_json(r));
  return {{"p", rep.p},
          {"dim_R", rep.dim_R},
          {"rows", rows},
          {"smith_identity_at_1", rep.smith_identity_at_1},
          {"reciprocity_all_q", rep.reciprocity_all_q},
          {"pd_probe", to_string(rep.pd_probe)},
          {"probe_q", rep.probe_q},
          {"degenerate_link", rep.degenerate_link},
          {"J", to_json(rep.J_generators)},
          {"preconditions",
           {{"isolated_singularity", rep.preconditions.isolated_singularity},
            {"full_ci", rep.preconditions.full_ci},
            {"m_primary", rep.preconditions.m_primary}}}};
}

inline nlohmann::json to_json(const std::vector<HKTableRow>& rows) {
  auto a = nlohmann::json::array();
  for (const auto& r : rows) a.push_back({{"n", r.n}, {"q", r.q}, {"length", r.length}, {"normalized", to_json(r.normalized)}});
  return a;
}

inline nlohmann::json to_json(const NoetherBound& b) {
  nlohmann::json j = {{"bound", to_json(b.bound)}};
  if (b.two_var_bound) j["two_var_bound"] = to_json(*b.two_var_bound);
  if (b.hs_bound) j["hs_bound"] = *b.hs_bound;
  return j;
}

inline std::string dump(const nlohmann::json& j) { return j.dump() + "\n"; }

inline const char* tsv_bool(bool b) { return b ? "true" : "false"; }

inline std::string reciprocity_tsv(const ReciprocityReport& rep) {
  std::ostringstream os;
  os << "n\tq\tlen_I\tlen_J\tlen_a\tlen_corner\tdeviation\tvraciu_ok\tsmith_ok\n";
  for (const auto& r : rep.rows)
    os << r.n << '\t' << r.q << '\t' << r.len_I << '\t' << r.len_J << '\t' << r.len_a << '\t' << r.len_corner
       << '\t' << r.deviation << '\t' << tsv_bool(r.vraciu_ok) << '\t' << tsv_bool(r.smith_ok) << '\n';
  return os.str();
}

inline std::string hk_tsv(const std::vector<HKTableRow>& rows) {
  std::ostringstream os;
  os << "n\tq\tlength\tnormalized\n";
  for (const auto& r : rows) os << r.n << '\t' << r.q << '\t' << r.length << '\t' << r.normalized.str() << '\n';
  return os.str();
}

/// Flat objects as key/value lines; nested values are written as JSON.
inline std::string object_tsv(const nlohmann::json& j) {
  std::ostringstream os;
  os << "key\tvalue\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << it.key() << '\t';
    if (it->is_string())
      os << it->get<std::string>();
    else
      os << it->dump();
    os << '\n';
  }
  return os.str();
}

}  // namespace hkforge

#endif  // HKFORGE_IO_HPP
