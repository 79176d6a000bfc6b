#include "qtoric/quantum.hpp"

#include <algorithm>
#include <sstream>

#include "qtoric/error.hpp"

namespace qtoric {

// ---------------------------------------------------------------------------
// QuantumClass

QuantumClass QuantumClass::classical(std::size_t num_rays, CohomologyClass alpha) {
  return term(CurveClass(num_rays), std::move(alpha));
}

QuantumClass QuantumClass::term(CurveClass beta, CohomologyClass alpha) {
  QuantumClass q;
  q.add(beta, alpha);
  return q;
}

void QuantumClass::add(const CurveClass& beta, const CohomologyClass& alpha) {
  if (alpha.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(beta, alpha);
  if (inserted) return;
  it->second += alpha;
  if (it->second.is_zero()) terms_.erase(it);
}

CohomologyClass QuantumClass::coefficient(const CurveClass& beta) const {
  auto it = terms_.find(beta);
  return it == terms_.end() ? CohomologyClass{} : it->second;
}

QuantumClass& QuantumClass::operator+=(const QuantumClass& other) {
  for (const auto& [beta, alpha] : other.terms_) add(beta, alpha);
  return *this;
}

QuantumClass& QuantumClass::operator-=(const QuantumClass& other) {
  for (const auto& [beta, alpha] : other.terms_) add(beta, Rational(-1) * alpha);
  return *this;
}

QuantumClass operator*(const Rational& s, const QuantumClass& c) {
  QuantumClass out;
  for (const auto& [beta, alpha] : c.terms()) out.add(beta, s * alpha);
  return out;
}

QuantumClass QuantumClass::shifted(const CurveClass& beta) const {
  QuantumClass out;
  for (const auto& [b, alpha] : terms_) out.add(b + beta, alpha);
  return out;
}

// ---------------------------------------------------------------------------
// QuantumPolynomial

void QuantumPolynomial::add_term(const CurveClass& beta, const Monomial& m, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{beta, m}, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

QuantumPolynomial& QuantumPolynomial::operator+=(const QuantumPolynomial& other) {
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, c);
  return *this;
}

QuantumPolynomial operator*(const QuantumPolynomial& a, const QuantumPolynomial& b) {
  QuantumPolynomial out;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      out.add_term(ka.first + kb.first, multiply(ka.second, kb.second), ca * cb);
  return out;
}

QuantumPolynomial operator*(const Rational& s, const QuantumPolynomial& p) {
  QuantumPolynomial out;
  for (const auto& [k, c] : p.terms()) out.add_term(k.first, k.second, s * c);
  return out;
}

std::string to_string(const QuantumPolynomial& p) {
  if (p.terms().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : p.terms()) {
    const auto& [beta, m] = key;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const Rational mag = abs(c);
    bool need_star = false;
    if (mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    if (!beta.is_zero()) {
      if (need_star) os << '*';
      os << "q^" << beta.to_string();
      need_star = true;
    }
    if (!m.empty() || !need_star) {
      if (need_star) os << '*';
      os << to_string(m);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// presentation

Presentation presentation(const Fan& fan) {
  require_accepted(fan);
  require_tier(fan, Tier::Fano);
  Presentation out;
  out.num_generators = fan.num_rays();
  for (std::size_t k = 0; k < fan.dim(); ++k) {
    std::vector<Integer> row;
    for (std::size_t i = 0; i < fan.num_rays(); ++i) row.push_back(fan.ray(i)[k]);
    out.linear_relations.push_back(std::move(row));
  }
  for (const auto& rel : primitive_relations(fan))
    out.deformed_relations.push_back({rel.set, rel.rhs_cone, rel.rhs_coeffs, rel.cls});
  return out;
}

// ---------------------------------------------------------------------------
// QuantumRing

namespace {

template <class F>
void for_each_subfamily(const std::vector<ExceptionalData>& sets, F&& visit) {
  const std::size_t k = sets.size();
  std::vector<ExceptionalData> family;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    family.clear();
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) family.push_back(sets[i]);
    visit(family);
  }
}

std::vector<ExceptionalData> specials_for(const Fan& fan, const std::vector<ExceptionalData>& all,
                                          const IndexSet& sigma) {
  if (!fan.is_cone(sigma)) throw Error(ErrorKind::NotACone, to_string_1based(sigma) + " is not a cone");
  std::vector<ExceptionalData> out;
  for (const auto& e : all) {
    if (!contains(sigma, e.exc_divisor)) continue;
    std::size_t inside = 0;
    for (auto i : e.set)
      if (contains(sigma, i)) ++inside;
    if (inside + 1 == e.set.size()) out.push_back(e);
  }
  return out;
}

template <class T>
const T& pick(const std::vector<T>& options, std::mt19937_64* rng) {
  if (!rng || options.size() == 1) return options.front();
  std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
  return options[dist(*rng)];
}

}  // namespace

QuantumRing::QuantumRing(const Fan& fan) : cohomology_(fan), zero_(fan.num_rays()) {
  require_tier(fan, Tier::FullClass);
  relations_ = primitive_relations(fan);
  exceptional_ = exceptional_sets(fan);
}

void QuantumRing::require_effective(const CurveClass& beta) const {
  if (beta.is_zero()) return;
  {
    std::lock_guard lock(cache_mutex_);
    if (effective_.count(beta)) return;
  }
  if (beta.size() != num_rays() || !is_curve_class(fan(), beta) || !is_effective(fan(), beta)) {
    throw Error(ErrorKind::NotEffective, "q^" + beta.to_string() + " is not an effective class");
  }
  std::lock_guard lock(cache_mutex_);
  effective_.insert(beta);
}

QuantumPolynomial QuantumRing::giambelli(const IndexSet& sigma) const {
  const IndexSet s = make_index_set(sigma);
  QuantumPolynomial out;
  for_each_subfamily(specials_for(fan(), exceptional_, s), [&](const std::vector<ExceptionalData>& family) {
    const auto pred = family_predicates(family);
    if (!pred.distinct_exc || !pred.no_cycles) return;
    CurveClass beta = zero_;
    IndexSet covered;
    for (const auto& e : family) {
      beta += e.cls;
      covered.insert(covered.end(), e.set.begin(), e.set.end());
    }
    covered = make_index_set(covered);
    Monomial m;
    for (auto i : s)
      if (!contains(covered, i)) m.push_back(i);
    require_effective(beta);
    out.add_term(beta, m, 1);
  });
  return out;
}

QuantumClass QuantumRing::divisor_product_closed_form(const IndexSet& sigma) const {
  const IndexSet s = make_index_set(sigma);
  QuantumClass out;
  for_each_subfamily(specials_for(fan(), exceptional_, s), [&](const std::vector<ExceptionalData>& family) {
    const auto pred = family_predicates(family);
    if (!pred.distinct_exc || !pred.no_overlaps) return;
    CurveClass beta = zero_;
    for (const auto& e : family) beta += e.cls;
    IndexSet kept;
    for (auto i : s)
      if (beta[i] != 1) kept.push_back(i);
    require_effective(beta);
    const Rational sign = family.size() % 2 ? -1 : 1;
    out.add(beta, sign * cohomology_.stratum_class(kept));
  });
  return out;
}

QuantumClass QuantumRing::reduce_monomial(const Monomial& m) const {
  return reduce(make_monomial(m), nullptr);
}

QuantumClass QuantumRing::reduce_monomial(const Monomial& m, std::mt19937_64& rng) const {
  return reduce(make_monomial(m), &rng);
}

QuantumClass QuantumRing::reduce(const Monomial& m, std::mt19937_64* rng) const {
  for (auto i : m)
    if (i >= num_rays()) throw Error(ErrorKind::IndexOutOfRange, "divisor index out of range");
  if (!rng) {
    std::lock_guard lock(cache_mutex_);
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
  }

  const IndexSet supp = support(m);
  QuantumClass result;

  std::vector<const PrimitiveData*> inside;
  for (const auto& rel : relations_)
    if (is_subset(rel.set, supp)) inside.push_back(&rel);

  if (!inside.empty()) {
    // deformed relation D_P = q^beta * D_rhs
    const PrimitiveData& rel = *pick(inside, rng);
    Monomial next = m;
    for (auto i : rel.set) next.erase(std::find(next.begin(), next.end(), i));
    for (std::size_t j = 0; j < rel.rhs_cone.size(); ++j)
      for (Integer a = 0; a < rel.rhs_coeffs[j]; ++a) next.push_back(rel.rhs_cone[j]);
    require_effective(rel.cls);
    result = reduce(make_monomial(next), rng).shifted(rel.cls);
  } else if (supp.size() == m.size()) {
    result = divisor_product_closed_form(supp);
  } else {
    // linear relation: D_i = -sum_{j not in mu} phi(rho_j) D_j
    std::vector<std::size_t> repeated;
    for (std::size_t k = 0; k + 1 < m.size(); ++k)
      if (m[k] == m[k + 1] && (repeated.empty() || repeated.back() != m[k])) repeated.push_back(m[k]);
    const std::size_t i = pick(repeated, rng);
    std::vector<IndexSet> cones;
    for (const auto& mu : fan().max_cones())
      if (is_subset(supp, mu)) cones.push_back(mu);
    const IndexSet& mu = pick(cones, rng);
    const auto pos = static_cast<std::size_t>(std::find(mu.begin(), mu.end(), i) - mu.begin());
    const DualFunctional phi = dual_basis_functional(fan().generators(mu), pos);

    Monomial rest = m;
    rest.erase(std::find(rest.begin(), rest.end(), i));
    for (std::size_t j = 0; j < num_rays(); ++j) {
      if (contains(mu, j)) continue;
      const Integer value = phi(fan().ray(j));
      if (value == 0) continue;
      result += Rational(-value) * reduce(multiply(rest, Monomial{j}), rng);
    }
  }

  if (!rng) {
    std::lock_guard lock(cache_mutex_);
    memo_.emplace(m, result);
  }
  return result;
}

QuantumClass QuantumRing::evaluate(const QuantumPolynomial& p) const {
  QuantumClass out;
  for (const auto& [key, c] : p.terms()) out += c * reduce_monomial(key.second).shifted(key.first);
  return out;
}

QuantumPolynomial QuantumRing::lift(const CohomologyClass& a) const {
  QuantumPolynomial out;
  for (const auto& [i, c] : a.coords()) out += c * giambelli(cohomology_.basis_tau(i));
  return out;
}

QuantumClass QuantumRing::product(const QuantumClass& a, const QuantumClass& b) const {
  QuantumClass out;
  for (const auto& [ba, alpha] : a.terms())
    for (const auto& [bb, gamma] : b.terms()) out += evaluate(lift(alpha) * lift(gamma)).shifted(ba + bb);
  return out;
}

QuantumClass QuantumRing::product(const CohomologyClass& a, const CohomologyClass& b) const {
  return evaluate(lift(a) * lift(b));
}

Rational QuantumRing::gw3(const CohomologyClass& a, const CohomologyClass& b, const CohomologyClass& c,
                          const CurveClass& beta) const {
  require_effective(beta);
  const CohomologyClass coeff = product(a, b).coefficient(beta);
  return cohomology_.integrate(cohomology_.cup(coeff, c));
}

CohomologyClass QuantumRing::classical_part(const QuantumClass& a) const { return a.coefficient(zero_); }

}  // namespace qtoric
