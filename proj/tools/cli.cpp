#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "qtoric/curves.hpp"
#include "qtoric/fan_json.hpp"
#include "qtoric/fano.hpp"
#include "qtoric/standard_fans.hpp"

namespace qtoric::cli {

using json = nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::NotACone:
    case ErrorKind::DimensionMismatch:
      return 2;
    case ErrorKind::ValidationFailed:
    case ErrorKind::NonUnimodular:
    case ErrorKind::DependentGenerators:
    case ErrorKind::LocateFailure:
      return 3;
    case ErrorKind::NotInClass:
    case ErrorKind::NotFano:
    case ErrorKind::NotInTier:
    case ErrorKind::BlowDownInvalid:
    case ErrorKind::PreconditionFailed:
      return 4;
    case ErrorKind::NotEffective:
      return 5;
  }
  return 1;
}

namespace {

// ---------------------------------------------------------------------------
// rendering

json jinteger(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json jrational(const Rational& r) {
  if (r.get_den() == 1) return jinteger(r.get_num());
  return r.get_str();
}

json jvector(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(jinteger(x));
  return out;
}

json jset(const IndexSet& s) {
  json out = json::array();
  for (auto i : s) out.push_back(i + 1);
  return out;
}

json jfan(const Fan& fan) { return json::parse(write_fan_json(fan)); }

json jcohomology(const CohomologyClass& c) {
  json out = json::object();
  for (const auto& [i, v] : c.coords()) out[std::to_string(i + 1)] = jrational(v);
  return out;
}

json jquantum(const QuantumClass& q) {
  json terms = json::array();
  for (const auto& [beta, alpha] : q.terms())
    terms.push_back({{"beta", jvector(beta.pairings())}, {"class", jcohomology(alpha)}});
  return {{"terms", terms}};
}

json jbasis(const CohomologyRing& ring) {
  json out = json::array();
  for (std::size_t i = 0; i < ring.basis_size(); ++i)
    out.push_back({{"index", i + 1}, {"tau", jset(ring.basis_tau(i))}, {"degree", ring.basis_degree(i)}});
  return out;
}

json jrelation(const PrimitiveData& rel) {
  return {{"set", jset(rel.set)},
          {"rhs", jset(rel.rhs_cone)},
          {"rhs_coeffs", jvector(rel.rhs_coeffs)},
          {"class", jvector(rel.cls.pairings())},
          {"coefficient_sum", jinteger(rel.coefficient_sum())}};
}

json jexceptional(const ExceptionalData& e) {
  return {{"set", jset(e.set)},
          {"exceptional_ray", e.exc_divisor + 1},
          {"class", jvector(e.cls.pairings())},
          {"primitive", e.primitive}};
}

std::string text_set(const IndexSet& s) { return to_string_1based(s); }

std::string text_cohomology(const CohomologyRing& ring, const CohomologyClass& c) {
  if (c.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, v] : c.coords()) {
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << '-';
    first = false;
    const Rational mag = abs(v);
    if (mag != 1) os << mag.get_str() << '*';
    os << "X" << text_set(ring.basis_tau(i));
  }
  return os.str();
}

std::string text_quantum(const CohomologyRing& ring, const QuantumClass& q) {
  if (q.is_zero()) return "0\n";
  std::ostringstream os;
  for (const auto& [beta, alpha] : q.terms()) {
    os << "  q^" << beta.to_string() << " : " << text_cohomology(ring, alpha) << '\n';
  }
  return os.str();
}

std::string text_basis(const CohomologyRing& ring) {
  std::ostringstream os;
  os << "basis:\n";
  for (std::size_t i = 0; i < ring.basis_size(); ++i)
    os << "  " << i + 1 << "  X" << text_set(ring.basis_tau(i)) << "  degree " << ring.basis_degree(i) << '\n';
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class F>
Output guarded(bool json_mode, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    Output out;
    out.exit_code = exit_code_for(e.kind());
    const std::string kind(to_string(e.kind()));
    if (json_mode) {
      out.out = dump({{"error", {{"kind", kind}, {"message", e.what()}}}});
    } else {
      out.err = "error (" + kind + "): " + e.what() + "\n";
    }
    return out;
  } catch (const std::exception& e) {
    Output out;
    out.exit_code = 1;
    if (json_mode) {
      out.out = dump({{"error", {{"kind", "Internal"}, {"message", e.what()}}}});
    } else {
      out.err = std::string("error (Internal): ") + e.what() + "\n";
    }
    return out;
  }
}

Fan load_fan(const std::string& path) {
  Fan fan = read_fan_file(path);
  require_accepted(fan);
  return fan;
}

// ---------------------------------------------------------------------------
// expression parser

class ExpressionParser {
 public:
  ExpressionParser(const QuantumRing& ring, std::string_view text) : ring_(ring), text_(text) {}

  QuantumClass parse() {
    QuantumClass value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, "expression \"" + std::string(text_) + "\" at offset " +
                                           std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static bool starts_factor(char c) { return c == 'D' || c == '[' || c == '('; }

  Integer integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  QuantumClass unit() const { return QuantumClass::classical(ring_.num_rays(), ring_.cohomology().unit()); }

  QuantumClass expr() {
    QuantumClass value;
    Rational sign = accept('-') ? -1 : 1;
    value += sign * term();
    while (true) {
      if (accept('+')) sign = 1;
      else if (accept('-')) sign = -1;
      else break;
      value += sign * term();
    }
    return value;
  }

  QuantumClass term() {
    Rational scalar = 1;
    const bool has_scalar = std::isdigit(static_cast<unsigned char>(peek()));
    if (has_scalar) {
      scalar = Rational(integer());
      if (accept('/')) {
        const Integer den = integer();
        if (den == 0) fail("zero denominator");
        scalar /= Rational(den);
      }
      if (accept('*')) {
        if (!starts_factor(peek())) fail("expected a factor after '*'");
      } else if (!starts_factor(peek())) {
        return scalar * unit();
      }
    }
    QuantumClass value = factor();
    while (accept('*')) value = ring_.product(value, factor());
    return scalar * value;
  }

  QuantumClass factor() {
    if (accept('D')) {
      const Integer i = integer();
      if (i < 1 || i > static_cast<long>(ring_.num_rays())) {
        throw Error(ErrorKind::IndexOutOfRange, "divisor D" + i.get_str() + " out of range");
      }
      return QuantumClass::classical(ring_.num_rays(), ring_.cohomology().stratum_class({i.get_ui() - 1}));
    }
    if (accept('[')) {
      std::vector<std::size_t> indices;
      if (!accept(']')) {
        do {
          const Integer i = integer();
          if (i < 1 || i > static_cast<long>(ring_.num_rays())) {
            throw Error(ErrorKind::IndexOutOfRange, "ray " + i.get_str() + " out of range");
          }
          indices.push_back(i.get_ui() - 1);
        } while (accept(','));
        expect(']');
      }
      return QuantumClass::classical(ring_.num_rays(), ring_.cohomology().stratum_class(make_index_set(indices)));
    }
    if (accept('(')) {
      QuantumClass value = expr();
      expect(')');
      return value;
    }
    fail("expected D<i>, [i,...] or '('");
  }

  const QuantumRing& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

CohomologyClass classical_expression(const QuantumRing& ring, const std::string& text) {
  const QuantumClass q = evaluate_expression(ring, text);
  for (const auto& [beta, alpha] : q.terms()) {
    if (!beta.is_zero()) {
      throw Error(ErrorKind::InvalidArgument, "\"" + text + "\" has quantum corrections; expected a classical class");
    }
  }
  return ring.classical_part(q);
}

}  // namespace

QuantumClass evaluate_expression(const QuantumRing& ring, std::string_view text) {
  return ExpressionParser(ring, text).parse();
}

std::vector<long> parse_int_list(std::string_view text) {
  std::vector<long> out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos == text.size()) return out;
  while (true) {
    skip();
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw Error(ErrorKind::ParseError, "expected an integer list, got \"" + std::string(text) + "\"");
    }
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
    skip();
    if (pos == text.size()) break;
    if (text[pos] != ',') {
      throw Error(ErrorKind::ParseError, "expected ',' in \"" + std::string(text) + "\"");
    }
    ++pos;
  }
  return out;
}

IndexSet parse_cone(std::string_view text, std::size_t num_rays) {
  std::vector<std::size_t> indices;
  for (long v : parse_int_list(text)) {
    if (v < 1 || static_cast<std::size_t>(v) > num_rays) {
      throw Error(ErrorKind::IndexOutOfRange, "ray " + std::to_string(v) + " out of range");
    }
    indices.push_back(static_cast<std::size_t>(v - 1));
  }
  return make_index_set(indices);
}

CurveClass parse_curve_class(std::string_view text, std::size_t num_rays) {
  const auto values = parse_int_list(text);
  if (values.size() != num_rays) {
    throw Error(ErrorKind::ParseError, "a curve class needs " + std::to_string(num_rays) + " integers, got " +
                                           std::to_string(values.size()));
  }
  std::vector<Integer> pairings;
  for (long v : values) pairings.emplace_back(v);
  return CurveClass(std::move(pairings));
}

// ---------------------------------------------------------------------------
// commands

Output cmd_validate(const std::string& fan_path, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = read_fan_file(fan_path);
    const ValidationReport report = validate(fan);
    Output out;
    out.exit_code = report.accepted ? 0 : exit_code_for(ErrorKind::ValidationFailed);
    if (json_mode) {
      out.out = dump({{"accepted", report.accepted}, {"failures", report.failures}});
    } else {
      out.out = report.accepted ? "accepted\n" : "rejected\n";
      for (const auto& f : report.failures) out.out += "  - " + f + "\n";
    }
    return out;
  });
}

Output cmd_classify(const std::string& fan_path, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = load_fan(fan_path);
    const ClassTier tier = classify(fan);
    const ConditionResult cond = check_condition_iii(fan);
    const auto exceptional = exceptional_sets(fan);
    Output out;
    if (json_mode) {
      json rels = json::array();
      for (const auto& cert : tier.certificates) {
        json r = jrelation(cert.relation);
        r["rhs_multiplicity"] = cert.rhs_multiplicity;
        rels.push_back(r);
      }
      json witness = nullptr;
      if (cond.witness) {
        witness = {{"max_cone", jset(fan.max_cones()[cond.witness->max_cone])},
                   {"ray", cond.witness->ray + 1},
                   {"coords", jvector(cond.witness->coords)}};
      }
      json exc = json::array();
      for (const auto& e : exceptional) exc.push_back(jexceptional(e));
      out.out = dump({{"tier", to_string(tier.tier)},
                      {"relations", rels},
                      {"condition_iii", {{"holds", cond.holds}, {"witness", witness}}},
                      {"exceptional_sets", exc}});
    } else {
      std::ostringstream os;
      os << "tier: " << to_string(tier.tier) << '\n' << "primitive relations:\n";
      for (const auto& cert : tier.certificates) {
        os << "  " << text_set(cert.relation.set) << " -> " << text_set(cert.relation.rhs_cone)
           << "  sum a = " << cert.coefficient_sum.get_str() << "  class " << cert.relation.cls.to_string() << '\n';
      }
      os << "condition (iii): " << (cond.holds ? "holds" : "fails");
      if (cond.witness) {
        os << " at cone " << text_set(fan.max_cones()[cond.witness->max_cone]) << ", ray "
           << cond.witness->ray + 1 << ", coordinates " << to_string(cond.witness->coords);
      }
      os << "\nexceptional sets:\n";
      for (const auto& e : exceptional) {
        os << "  " << text_set(e.set) << " -> " << e.exc_divisor + 1 << (e.primitive ? "  (primitive)" : "") << '\n';
      }
      out.out = os.str();
    }
    return out;
  });
}

Output cmd_primitive(const std::string& fan_path, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = load_fan(fan_path);
    const auto relations = primitive_relations(fan);
    Output out;
    if (json_mode) {
      json rels = json::array();
      for (const auto& rel : relations) rels.push_back(jrelation(rel));
      out.out = dump({{"primitive_relations", rels}});
    } else {
      std::ostringstream os;
      for (const auto& rel : relations) {
        os << text_set(rel.set) << "  sum = ";
        if (rel.rhs_cone.empty()) os << "0";
        for (std::size_t j = 0; j < rel.rhs_cone.size(); ++j) {
          if (j) os << " + ";
          if (rel.rhs_coeffs[j] != 1) os << rel.rhs_coeffs[j].get_str() << '*';
          os << "rho" << rel.rhs_cone[j] + 1;
        }
        os << "  class " << rel.cls.to_string() << '\n';
      }
      out.out = os.str();
    }
    return out;
  });
}

Output cmd_present(const std::string& fan_path, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = load_fan(fan_path);
    const Presentation p = presentation(fan);
    Output out;
    if (json_mode) {
      json lin = json::array();
      for (const auto& row : p.linear_relations) lin.push_back(jvector(row));
      json def = json::array();
      for (const auto& d : p.deformed_relations) {
        def.push_back({{"set", jset(d.set)},
                       {"rhs", jset(d.rhs)},
                       {"rhs_coeffs", jvector(d.rhs_coeffs)},
                       {"beta", jvector(d.beta.pairings())}});
      }
      out.out = dump({{"generators", p.num_generators}, {"linear_relations", lin}, {"deformed_relations", def}});
    } else {
      std::ostringstream os;
      os << "generators: D1..D" << p.num_generators << "\nlinear relations:\n";
      for (const auto& row : p.linear_relations) {
        os << "  ";
        bool first = true;
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (row[i] == 0) continue;
          if (!first) os << (row[i] < 0 ? " - " : " + ");
          else if (row[i] < 0) os << '-';
          first = false;
          const Integer mag = abs(row[i]);
          if (mag != 1) os << mag.get_str() << '*';
          os << 'D' << i + 1;
        }
        os << " = 0\n";
      }
      os << "deformed relations:\n";
      for (const auto& d : p.deformed_relations) {
        os << "  " << to_string(Monomial(d.set)) << " = q^" << d.beta.to_string();
        Monomial rhs;
        for (std::size_t j = 0; j < d.rhs.size(); ++j)
          for (Integer a = 0; a < d.rhs_coeffs[j]; ++a) rhs.push_back(d.rhs[j]);
        if (!rhs.empty()) os << " * " << to_string(rhs);
        os << '\n';
      }
      out.out = os.str();
    }
    return out;
  });
}

Output cmd_giambelli(const std::string& fan_path, const std::string& cone, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = load_fan(fan_path);
    const QuantumRing ring(fan);
    const IndexSet sigma = parse_cone(cone, fan.num_rays());
    const QuantumPolynomial poly = ring.giambelli(sigma);
    Output out;
    if (json_mode) {
      json terms = json::array();
      for (const auto& [key, c] : poly.terms()) {
        json mono = json::array();
        for (auto i : key.second) mono.push_back(i + 1);
        terms.push_back({{"beta", jvector(key.first.pairings())}, {"monomial", mono}, {"coeff", jrational(c)}});
      }
      out.out = dump({{"cone", jset(sigma)}, {"formula", to_string(poly)}, {"terms", terms}});
    } else {
      out.out = "X" + text_set(sigma) + " = " + to_string(poly) + "\n";
    }
    return out;
  });
}

Output cmd_multiply(const std::string& fan_path, const std::string& a, const std::string& b, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = load_fan(fan_path);
    const QuantumRing ring(fan);
    const QuantumClass product = ring.product(evaluate_expression(ring, a), evaluate_expression(ring, b));
    Output out;
    if (json_mode) {
      json j = jquantum(product);
      j["basis"] = jbasis(ring.cohomology());
      out.out = dump(j);
    } else {
      out.out = "(" + a + ") * (" + b + ") =\n" + text_quantum(ring.cohomology(), product) +
                text_basis(ring.cohomology());
    }
    return out;
  });
}

Output cmd_gw(const std::string& fan_path, const std::string& a, const std::string& b, const std::string& c,
              const std::string& beta, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = load_fan(fan_path);
    const QuantumRing ring(fan);
    const CurveClass cls = parse_curve_class(beta, fan.num_rays());
    const Rational value = ring.gw3(classical_expression(ring, a), classical_expression(ring, b),
                                    classical_expression(ring, c), cls);
    Output out;
    if (json_mode) {
      out.out = dump({{"beta", jvector(cls.pairings())}, {"value", jrational(value)}});
    } else {
      out.out = "<" + a + ", " + b + ", " + c + ">_" + cls.to_string() + " = " + value.get_str() + "\n";
    }
    return out;
  });
}

Output cmd_tower(const std::string& fan_path, const std::optional<std::string>& order, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = load_fan(fan_path);
    std::optional<std::vector<std::size_t>> requested;
    if (order) {
      requested.emplace();
      for (long v : parse_int_list(*order)) {
        if (v < 1 || static_cast<std::size_t>(v) > fan.num_rays()) {
          throw Error(ErrorKind::IndexOutOfRange, "ray " + std::to_string(v) + " out of range");
        }
        requested->push_back(static_cast<std::size_t>(v - 1));
      }
    }
    const auto tower = blow_down_tower(fan, requested);
    const ProductTest terminal = is_product_of_projective_spaces(tower.back().fan);
    Output out;
    if (json_mode) {
      json stages = json::array();
      for (std::size_t k = 0; k < tower.size(); ++k) {
        const auto& st = tower[k];
        json origin = json::array();
        for (auto o : st.ray_origin) origin.push_back(o + 1);
        stages.push_back({{"stage", k},
                          {"removed_ray", st.removed_ray ? json(*st.removed_ray + 1) : json(nullptr)},
                          {"ray_origin", origin},
                          {"tier", to_string(classify(st.fan).tier)},
                          {"fan", jfan(st.fan)}});
      }
      out.out = dump({{"stages", stages},
                      {"terminal", {{"is_product", terminal.is_product}, {"factor_dims", terminal.factor_dims}}}});
    } else {
      std::ostringstream os;
      for (std::size_t k = 0; k < tower.size(); ++k) {
        const auto& st = tower[k];
        os << "stage " << k;
        if (st.removed_ray) os << "  (blew down ray " << *st.removed_ray + 1 << ")";
        os << "  rays " << st.fan.num_rays() << "  tier " << to_string(classify(st.fan).tier) << '\n';
      }
      os << "terminal: " << (terminal.is_product ? "product of projective spaces" : "not a product");
      if (terminal.is_product) {
        os << " of dimensions";
        for (auto d : terminal.factor_dims) os << ' ' << d;
      }
      os << '\n';
      out.out = os.str();
    }
    return out;
  });
}

namespace {

json jtree(const ToricTree& tree) {
  json edges = json::array();
  for (const auto& e : tree.edges) {
    edges.push_back({{"wall", jset(e.wall)},
                     {"multiplicity", jinteger(e.multiplicity)},
                     {"class", jvector(e.cls.pairings())},
                     {"from", jset(e.from)},
                     {"to", jset(e.to)}});
  }
  return {{"start", jset(tree.start)},
          {"divisor", tree.divisor + 1},
          {"degree", jinteger(tree.degree())},
          {"class", jvector(tree.cls.pairings())},
          {"unverified_degree", tree.unverified_degree},
          {"edges", edges}};
}

std::string text_tree(const ToricTree& tree, const std::string& indent) {
  std::ostringstream os;
  os << indent << "X" << text_set(tree.start) << " to D" << tree.divisor + 1 << "  degree "
     << tree.degree().get_str() << "  class " << tree.cls.to_string()
     << (tree.unverified_degree ? "  (unverified degree)" : "") << '\n';
  for (const auto& e : tree.edges) {
    os << indent << "  edge X" << text_set(e.wall) << " x" << e.multiplicity.get_str() << "  "
       << text_set(e.from) << " -> " << text_set(e.to) << "  class " << e.cls.to_string() << '\n';
  }
  return os.str();
}

}  // namespace

Output cmd_tree(const std::string& fan_path, const std::optional<std::string>& beta,
                const std::optional<std::string>& cone, const std::optional<long>& divisor, bool json_mode) {
  return guarded(json_mode, [&] {
    const Fan fan = load_fan(fan_path);
    Output out;
    if (cone || divisor) {
      if (!cone || !divisor) throw Error(ErrorKind::ParseError, "--cone and --divisor go together");
      if (*divisor < 1 || static_cast<std::size_t>(*divisor) > fan.num_rays()) {
        throw Error(ErrorKind::IndexOutOfRange, "divisor " + std::to_string(*divisor) + " out of range");
      }
      const ToricTree tree = min_tree(fan, parse_cone(*cone, fan.num_rays()), static_cast<std::size_t>(*divisor - 1));
      out.out = json_mode ? dump(jtree(tree)) : text_tree(tree, "");
      return out;
    }
    if (!beta) throw Error(ErrorKind::ParseError, "give --beta, or --cone with --divisor");
    const CurveClass cls = parse_curve_class(*beta, fan.num_rays());
    if (!is_curve_class(fan, cls)) throw Error(ErrorKind::ParseError, cls.to_string() + " is not a curve class");
    const ToricForest forest = tree_for_class(fan, cls);
    if (json_mode) {
      json trees = json::array();
      for (const auto& [tree, copies] : forest.trees) {
        json t = jtree(tree);
        t["copies"] = jinteger(copies);
        trees.push_back(t);
      }
      out.out = dump({{"root", jset(forest.root)}, {"class", jvector(forest.cls.pairings())}, {"trees", trees}});
    } else {
      std::ostringstream os;
      os << "root X" << text_set(forest.root) << "  total class " << forest.cls.to_string() << '\n';
      for (const auto& [tree, copies] : forest.trees) {
        os << "  " << copies.get_str() << " x\n" << text_tree(tree, "    ");
      }
      out.out = os.str();
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// census

namespace {

// Half-plane then cross product: a strict weak order by angle in [0, 2 pi).
bool angle_less(const LatticeVector& a, const LatticeVector& b) {
  auto half = [](const LatticeVector& v) { return v[1] < 0 || (v[1] == 0 && v[0] < 0); };
  if (half(a) != half(b)) return !half(a);
  return a[0] * b[1] - a[1] * b[0] > 0;
}

}  // namespace

std::vector<Fan> census_2d(std::size_t max_rays) {
  // Condition (iii) holds on the class, so in the basis of any maximal cone
  // every ray lies in the box {-1, 0, 1}^2.
  std::vector<LatticeVector> box;
  for (long x = -1; x <= 1; ++x)
    for (long y = -1; y <= 1; ++y)
      if (x || y) box.push_back({Integer(x), Integer(y)});
  std::sort(box.begin(), box.end(), angle_less);

  std::vector<Fan> classes;
  for (std::size_t mask = 1; mask < (std::size_t{1} << box.size()); ++mask) {
    std::vector<LatticeVector> rays;
    for (std::size_t i = 0; i < box.size(); ++i)
      if (mask >> i & 1) rays.push_back(box[i]);
    if (rays.size() < 3 || rays.size() > max_rays) continue;
    bool smooth = true;
    std::vector<IndexSet> cones;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const std::size_t j = (i + 1) % rays.size();
      if (rays[i][0] * rays[j][1] - rays[i][1] * rays[j][0] != 1) smooth = false;
      cones.push_back(make_index_set({i, j}));
    }
    if (!smooth) continue;
    Fan fan(2, rays, cones);
    if (!validate(fan).accepted || classify(fan).tier != Tier::FullClass) continue;
    const bool seen = std::any_of(classes.begin(), classes.end(), [&](const Fan& f) { return is_isomorphic(f, fan); });
    if (!seen) classes.push_back(std::move(fan));
  }
  std::stable_sort(classes.begin(), classes.end(),
                   [](const Fan& a, const Fan& b) { return a.num_rays() < b.num_rays(); });
  return classes;
}

std::string surface_name(const Fan& fan) {
  if (fan.dim() != 2) return {};
  const std::pair<const char*, Fan> known[] = {{"P2", fans::projective_plane()},
                                               {"P1xP1", fans::p1_x_p1()},
                                               {"Bl1P2", fans::blown_up_plane_1()},
                                               {"Bl2P2", fans::blown_up_plane_2()},
                                               {"Bl3P2", fans::blown_up_plane_3()}};
  for (const auto& [name, f] : known)
    if (is_isomorphic(fan, f)) return name;
  return {};
}

Output cmd_census(std::size_t dim, std::size_t max_rays, bool json_mode) {
  return guarded(json_mode, [&] {
    if (dim != 2) throw Error(ErrorKind::InvalidArgument, "the census is implemented for dimension 2 only");
    const auto classes = census_2d(max_rays);
    Output out;
    if (json_mode) {
      json list = json::array();
      for (const auto& f : classes)
        list.push_back({{"name", surface_name(f)}, {"num_rays", f.num_rays()}, {"fan", jfan(f)}});
      out.out = dump({{"dim", dim}, {"max_rays", max_rays}, {"count", classes.size()}, {"classes", list}});
    } else {
      std::ostringstream os;
      os << classes.size() << " isomorphism classes\n";
      for (const auto& f : classes) {
        os << "  " << f.num_rays() << " rays  " << surface_name(f) << "  " << write_fan_json(f);
      }
      out.out = os.str();
    }
    return out;
  });
}

}  // namespace qtoric::cli
