#include "qtoric/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "qtoric/error.hpp"
#include "qtoric/fano.hpp"

namespace qtoric {

Monomial make_monomial(std::vector<std::size_t> factors) {
  std::sort(factors.begin(), factors.end());
  return factors;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IndexSet support(const Monomial& m) {
  IndexSet s(m);
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::string to_string(const Monomial& m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size();) {
    std::size_t j = i;
    while (j < m.size() && m[j] == m[i]) ++j;
    if (i) os << '*';
    os << 'D' << m[i] + 1;
    if (j - i > 1) os << '^' << j - i;
    i = j;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// DivisorPolynomial

DivisorPolynomial DivisorPolynomial::monomial(Monomial m, Rational coeff) {
  DivisorPolynomial p;
  p.add_term(m, coeff);
  return p;
}

void DivisorPolynomial::add_term(const Monomial& m, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

DivisorPolynomial& DivisorPolynomial::operator+=(const DivisorPolynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

DivisorPolynomial operator*(const DivisorPolynomial& a, const DivisorPolynomial& b) {
  DivisorPolynomial out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

// ---------------------------------------------------------------------------
// CohomologyClass

CohomologyClass CohomologyClass::basis(std::size_t index, Rational coeff) {
  CohomologyClass c;
  c.add(index, coeff);
  return c;
}

Rational CohomologyClass::coefficient(std::size_t index) const {
  auto it = coords_.find(index);
  return it == coords_.end() ? Rational(0) : it->second;
}

void CohomologyClass::add(std::size_t index, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = coords_.try_emplace(index, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) coords_.erase(it);
}

CohomologyClass& CohomologyClass::operator+=(const CohomologyClass& other) {
  for (const auto& [i, c] : other.coords_) add(i, c);
  return *this;
}

CohomologyClass& CohomologyClass::operator-=(const CohomologyClass& other) {
  for (const auto& [i, c] : other.coords_) add(i, -c);
  return *this;
}

CohomologyClass operator*(const Rational& s, const CohomologyClass& c) {
  CohomologyClass out;
  if (s == 0) return out;
  for (const auto& [i, v] : c.coords()) out.add(i, s * v);
  return out;
}

// ---------------------------------------------------------------------------
// shelling

std::vector<std::size_t> Shelling::census() const {
  std::size_t n = 0;
  for (const auto& t : tau) n = std::max(n, t.size());
  std::vector<std::size_t> out(n + 1, 0);
  for (const auto& t : tau) ++out[t.size()];
  return out;
}

namespace {

// Calls visit on every offset with max-norm exactly r, in lexicographic order,
// until visit returns true.
bool scan_shell(std::size_t n, long r, const std::function<bool(const std::vector<long>&)>& visit) {
  std::vector<long> v(n, -r);
  while (true) {
    bool on_shell = r == 0;
    for (long x : v)
      if (x == r || x == -r) on_shell = true;
    if (on_shell && visit(v)) return true;
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (v[k] < r) {
        ++v[k];
        for (std::size_t j = k + 1; j < n; ++j) v[j] = -r;
        break;
      }
      if (k == 0) return false;
    }
    if (n == 0) return false;
  }
}

}  // namespace

Shelling shelling(const Fan& fan) {
  const std::size_t n = fan.dim();
  const std::size_t s = fan.max_cones().size();
  std::vector<DualFunctional> y;
  for (const auto& mu : fan.max_cones()) {
    DualFunctional phi{std::vector<Integer>(n, Integer(0))};
    for (const auto& d : dual_basis(fan.generators(mu)))
      for (std::size_t k = 0; k < n; ++k) phi.coefficients[k] += d.coefficients[k];
    y.push_back(std::move(phi));
  }

  const LatticeVector center = fan.ray_sum([&] {
    IndexSet all(fan.num_rays());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }());

  Shelling out;
  for (long r = 0; out.perturbation.empty(); ++r) {
    scan_shell(n, r, [&](const std::vector<long>& offset) {
      LatticeVector v = center;
      for (std::size_t k = 0; k < n; ++k) v[k] += offset[k];
      if (is_zero(v)) return false;
      std::vector<Integer> h;
      for (const auto& phi : y) h.push_back(phi(v));
      std::vector<Integer> sorted = h;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
      out.perturbation = v;
      out.heights = h;
      return true;
    });
  }

  out.order.resize(s);
  for (std::size_t i = 0; i < s; ++i) out.order[i] = i;
  std::sort(out.order.begin(), out.order.end(),
            [&](std::size_t a, std::size_t b) { return out.heights[a] > out.heights[b]; });
  std::vector<Integer> heights;
  for (auto c : out.order) heights.push_back(out.heights[c]);
  out.heights = std::move(heights);

  for (std::size_t i = 0; i < s; ++i) {
    const IndexSet& mu_i = fan.max_cones()[out.order[i]];
    IndexSet t = mu_i;
    for (std::size_t j = i + 1; j < s; ++j) {
      const IndexSet& mu_j = fan.max_cones()[out.order[j]];
      IndexSet common;
      std::set_intersection(mu_i.begin(), mu_i.end(), mu_j.begin(), mu_j.end(),
                            std::back_inserter(common));
      if (common.size() + 1 != n) continue;
      IndexSet next;
      std::set_intersection(t.begin(), t.end(), mu_j.begin(), mu_j.end(), std::back_inserter(next));
      t = std::move(next);
    }
    out.tau.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CohomologyRing

namespace {

// Sparse row over column indices, kept in fully reduced echelon form against
// the other pivot rows.
using SparseRow = std::map<std::size_t, Rational>;

void axpy(SparseRow& row, const Rational& s, const SparseRow& other) {
  for (const auto& [c, v] : other) {
    auto [it, inserted] = row.try_emplace(c, 0);
    it->second -= s * v;
    if (it->second == 0) row.erase(it);
  }
}

}  // namespace

CohomologyRing::CohomologyRing(const Fan& fan) : fan_(fan) {
  require_accepted(fan_);
  require_tier(fan_, Tier::Fano);
  shelling_ = qtoric::shelling(fan_);

  const auto census = shelling_.census();
  if (census.size() != dim() + 1 || census.front() != 1 || census.back() != 1) {
    throw Error(ErrorKind::PreconditionFailed, "shelling does not have a unique unit and point class");
  }
  for (std::size_t i = 0; i < basis_size(); ++i) {
    if (basis_degree(i) == 0) unit_index_ = i;
    if (basis_degree(i) == dim()) point_index_ = i;
  }
  tables_.resize(dim() + 1);
  for (std::size_t d = 0; d <= dim(); ++d) build_table(d);
}

std::vector<std::vector<Integer>> CohomologyRing::linear_relations() const {
  std::vector<std::vector<Integer>> out(dim(), std::vector<Integer>(fan_.num_rays()));
  for (std::size_t k = 0; k < dim(); ++k)
    for (std::size_t i = 0; i < fan_.num_rays(); ++i) out[k][i] = fan_.ray(i)[k];
  return out;
}

void CohomologyRing::build_table(std::size_t d) {
  DegreeTable& table = tables_[d];

  for (std::size_t i = 0; i < basis_size(); ++i)
    if (basis_degree(i) == d) table.basis_of.emplace(basis_tau(i), i);

  // Cone-supported monomials, non-basis first so pivots avoid basis columns.
  std::vector<Monomial> plain;
  std::vector<Monomial> pinned;
  Monomial current;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (current.size() == d) {
      (table.basis_of.count(current) ? pinned : plain).push_back(current);
      return;
    }
    for (std::size_t i = start; i < fan_.num_rays(); ++i) {
      current.push_back(i);
      if (fan_.is_cone(support(current))) extend(i);
      current.pop_back();
    }
  };
  extend(0);
  table.columns = plain;
  table.columns.insert(table.columns.end(), pinned.begin(), pinned.end());
  for (std::size_t c = 0; c < table.columns.size(); ++c) table.column_of.emplace(table.columns[c], c);

  std::map<std::size_t, SparseRow> pivots;
  if (d > 0) {
    std::set<Monomial> lower;
    for (const auto& m : table.columns) {
      for (std::size_t k = 0; k < m.size(); ++k) {
        Monomial u = m;
        u.erase(u.begin() + static_cast<std::ptrdiff_t>(k));
        lower.insert(std::move(u));
      }
    }
    for (const auto& u : lower) {
      for (std::size_t k = 0; k < dim(); ++k) {
        SparseRow row;
        for (std::size_t i = 0; i < fan_.num_rays(); ++i) {
          const Integer& coeff = fan_.ray(i)[k];
          if (coeff == 0) continue;
          auto it = table.column_of.find(multiply(u, Monomial{i}));
          if (it == table.column_of.end()) continue;
          row[it->second] += Rational(coeff);
        }
        for (auto& [c, v] : SparseRow(row))
          if (v == 0) row.erase(c);
        std::vector<std::pair<std::size_t, Rational>> hits;
        for (const auto& [c, v] : row)
          if (pivots.count(c)) hits.emplace_back(c, v);
        for (const auto& [c, v] : hits) axpy(row, v, pivots.at(c));
        if (row.empty()) continue;
        const std::size_t p = row.begin()->first;
        const Rational lead = row.begin()->second;
        for (auto& [c, v] : row) v /= lead;
        for (auto& [q, other] : pivots) {
          auto it = other.find(p);
          if (it == other.end()) continue;
          const Rational s = it->second;
          axpy(other, s, row);
        }
        pivots.emplace(p, std::move(row));
      }
    }
  }
  table.rank = pivots.size();

  table.reduced.resize(table.columns.size());
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const Monomial& m = table.columns[c];
    auto b = table.basis_of.find(m);
    if (b != table.basis_of.end()) {
      if (pivots.count(c)) {
        throw Error(ErrorKind::PreconditionFailed,
                    "basis monomial " + to_string(m) + " is dependent on the other basis monomials");
      }
      table.reduced[c] = CohomologyClass::basis(b->second);
      continue;
    }
    auto p = pivots.find(c);
    if (p == pivots.end()) {
      throw Error(ErrorKind::PreconditionFailed,
                  "monomial " + to_string(m) + " is not reducible to the shelling basis");
    }
    CohomologyClass cls;
    for (const auto& [col, v] : p->second) {
      if (col == c) continue;
      auto basis = table.basis_of.find(table.columns[col]);
      if (basis == table.basis_of.end()) {
        throw Error(ErrorKind::PreconditionFailed,
                    "monomial " + to_string(m) + " is not reducible to the shelling basis");
      }
      cls.add(basis->second, -v);
    }
    table.reduced[c] = std::move(cls);
  }
}

CohomologyClass CohomologyRing::normal_form(const Monomial& m) const {
  for (auto i : m)
    if (i >= fan_.num_rays()) throw Error(ErrorKind::IndexOutOfRange, "divisor index out of range");
  if (m.size() > dim()) return {};
  const DegreeTable& table = tables_[m.size()];
  auto it = table.column_of.find(m);
  if (it == table.column_of.end()) return {};  // support is not a cone
  return table.reduced[it->second];
}

CohomologyClass CohomologyRing::normal_form(const DivisorPolynomial& p) const {
  CohomologyClass out;
  for (const auto& [m, c] : p.terms()) out += c * normal_form(m);
  return out;
}

DivisorPolynomial CohomologyRing::lift(const CohomologyClass& a) const {
  DivisorPolynomial out;
  for (const auto& [i, c] : a.coords()) out.add_term(basis_tau(i), c);
  return out;
}

CohomologyClass CohomologyRing::cup(const CohomologyClass& a, const CohomologyClass& b) const {
  return normal_form(lift(a) * lift(b));
}

CohomologyClass CohomologyRing::stratum_class(const IndexSet& sigma) const {
  const IndexSet s = make_index_set(sigma);
  if (!fan_.is_cone(s)) throw Error(ErrorKind::NotACone, to_string_1based(s) + " is not a cone");
  return normal_form(Monomial(s));
}

Rational CohomologyRing::integrate(const CohomologyClass& a) const { return a.coefficient(point_index_); }

std::optional<std::size_t> CohomologyRing::homogeneous_degree(const CohomologyClass& a) const {
  std::optional<std::size_t> deg;
  for (const auto& [i, c] : a.coords()) {
    if (deg && *deg != basis_degree(i)) return std::nullopt;
    deg = basis_degree(i);
  }
  return deg;
}

}  // namespace qtoric
