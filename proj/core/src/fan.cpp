#include "qtoric/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "qtoric/error.hpp"

namespace qtoric {

IndexSet make_index_set(std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return indices;
}

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool contains(const IndexSet& set, std::size_t index) {
  return std::binary_search(set.begin(), set.end(), index);
}

std::string to_string_1based(const IndexSet& set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) os << ',';
    os << set[i] + 1;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// CurveClass

CurveClass CurveClass::from_ints(std::initializer_list<long> values) {
  std::vector<Integer> p;
  for (long v : values) p.emplace_back(v);
  return CurveClass(std::move(p));
}

Integer CurveClass::degree() const {
  Integer s = 0;
  for (const auto& b : pairings_) s += b;
  return s;
}

bool CurveClass::is_zero() const { return qtoric::is_zero(pairings_); }

CurveClass& CurveClass::operator+=(const CurveClass& other) {
  if (other.size() != size()) throw Error(ErrorKind::DimensionMismatch, "curve classes of different length");
  for (std::size_t i = 0; i < size(); ++i) pairings_[i] += other.pairings_[i];
  return *this;
}

CurveClass& CurveClass::operator-=(const CurveClass& other) {
  if (other.size() != size()) throw Error(ErrorKind::DimensionMismatch, "curve classes of different length");
  for (std::size_t i = 0; i < size(); ++i) pairings_[i] -= other.pairings_[i];
  return *this;
}

CurveClass operator*(const Integer& s, const CurveClass& c) {
  return CurveClass(scale(s, c.pairings()));
}

std::string CurveClass::to_string() const { return qtoric::to_string(pairings_); }

// ---------------------------------------------------------------------------
// Fan

Fan::Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<IndexSet> max_cones)
    : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
  for (auto& c : max_cones_) std::sort(c.begin(), c.end());
  for (const auto& c : max_cones_) {
    if (c.size() > 24) continue;  // malformed; validate() reports it
    const std::size_t count = std::size_t{1} << c.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
      IndexSet face;
      for (std::size_t b = 0; b < c.size(); ++b)
        if (mask & (std::size_t{1} << b)) face.push_back(c[b]);
      cone_lookup_.insert(std::move(face));
    }
  }
  if (max_cones_.empty()) cone_lookup_.insert(IndexSet{});
  cones_.assign(cone_lookup_.begin(), cone_lookup_.end());
  std::stable_sort(cones_.begin(), cones_.end(),
                   [](const IndexSet& a, const IndexSet& b) { return a.size() < b.size(); });
}

bool Fan::is_cone(const IndexSet& rays) const {
  for (auto i : rays)
    if (i >= rays_.size()) throw Error(ErrorKind::IndexOutOfRange, "ray index out of range");
  IndexSet sorted = make_index_set(rays);
  if (sorted.size() != rays.size()) return false;
  return cone_lookup_.count(sorted) > 0;
}

std::vector<LatticeVector> Fan::generators(const IndexSet& cone) const {
  std::vector<LatticeVector> out;
  out.reserve(cone.size());
  for (auto i : cone) out.push_back(ray(i));
  return out;
}

LatticeVector Fan::ray_sum(const IndexSet& rays) const {
  LatticeVector s(dim_, Integer(0));
  for (auto i : rays) s = add(s, ray(i));
  return s;
}

std::optional<std::size_t> Fan::max_cone_index(const IndexSet& cone) const {
  IndexSet sorted = make_index_set(cone);
  for (std::size_t i = 0; i < max_cones_.size(); ++i)
    if (max_cones_[i] == sorted) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// validation

ValidationReport validate(const Fan& fan) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.failures.push_back(std::move(msg)); };
  const std::size_t n = fan.dim();
  const std::size_t m = fan.num_rays();

  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = fan.ray(i);
    const std::string name = "ray " + std::to_string(i + 1);
    if (r.size() != n) {
      fail(name + " has length " + std::to_string(r.size()) + ", expected " + std::to_string(n));
      continue;
    }
    if (is_zero(r)) {
      fail(name + " is zero");
      continue;
    }
    if (gcd_of(r) != 1) fail(name + " " + to_string(r) + " is not primitive");
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (fan.ray(i) == fan.ray(j))
        fail("rays " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are equal");

  bool cones_well_formed = true;
  std::set<IndexSet> seen;
  std::vector<bool> used(m, false);
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto& cone = fan.max_cones()[c];
    const std::string name = "maximal cone " + std::to_string(c + 1);
    bool ok = true;
    if (cone.size() != n) {
      fail(name + " has " + std::to_string(cone.size()) + " rays, expected " + std::to_string(n));
      ok = false;
    }
    for (auto i : cone) {
      if (i >= m) {
        fail(name + " references missing ray " + std::to_string(i + 1));
        ok = false;
      } else {
        used[i] = true;
      }
    }
    if (std::adjacent_find(cone.begin(), cone.end()) != cone.end()) {
      fail(name + " repeats a ray");
      ok = false;
    }
    if (!seen.insert(cone).second) {
      fail(name + " is listed twice");
      ok = false;
    }
    cones_well_formed = cones_well_formed && ok;
  }
  if (fan.max_cones().empty()) {
    fail("fan has no maximal cones");
    cones_well_formed = false;
  }
  if (!report.failures.empty() || !cones_well_formed) {
    report.accepted = false;
    return report;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!used[i]) fail("ray " + std::to_string(i + 1) + " lies in no maximal cone");

  bool all_unimodular = true;
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto gens = fan.generators(fan.max_cones()[c]);
    const Integer det = determinant(IntMatrix::from_columns(gens, n));
    if (abs(det) != 1) {
      fail("maximal cone " + to_string_1based(fan.max_cones()[c]) + " has determinant " +
           det.get_str() + " (not unimodular)");
      all_unimodular = false;
    }
  }

  // facet pairing
  std::map<IndexSet, std::vector<std::size_t>> facets;
  if (n > 0) {
    for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
      const auto& cone = fan.max_cones()[c];
      for (std::size_t drop = 0; drop < n; ++drop) {
        IndexSet facet;
        for (std::size_t k = 0; k < n; ++k)
          if (k != drop) facet.push_back(cone[k]);
        facets[facet].push_back(c);
      }
    }
  }
  bool paired = true;
  for (const auto& [facet, owners] : facets) {
    if (owners.size() != 2) {
      fail("facet " + to_string_1based(facet) + " occurs in " + std::to_string(owners.size()) +
           " maximal cone(s), expected 2");
      paired = false;
    }
  }

  // the two cones at a wall must lie on opposite sides of it
  if (paired && all_unimodular) {
    for (const auto& [facet, owners] : facets) {
      const auto& a = fan.max_cones()[owners[0]];
      const auto& b = fan.max_cones()[owners[1]];
      std::size_t a_pos = 0;
      while (contains(facet, a[a_pos])) ++a_pos;
      std::size_t b_extra = 0;
      for (auto i : b)
        if (!contains(facet, i)) b_extra = i;
      auto coords = coordinates_in_basis(fan.generators(a), fan.ray(b_extra));
      if (coords[a_pos] >= 0)
        fail("maximal cones " + to_string_1based(a) + " and " + to_string_1based(b) +
             " lie on the same side of their common facet");
    }
  }

  // connectivity of the dual graph
  {
    const std::size_t s = fan.max_cones().size();
    std::vector<std::size_t> parent(s);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [facet, owners] : facets)
      for (std::size_t k = 1; k < owners.size(); ++k) parent[find(owners[k])] = find(owners[0]);
    std::set<std::size_t> roots;
    for (std::size_t c = 0; c < s; ++c) roots.insert(find(c));
    if (roots.size() != 1) fail("dual graph of maximal cones is disconnected");
  }

  // No maximal cone may contain the interior point of another one.
  if (all_unimodular) {
    const auto& cones = fan.max_cones();
    for (std::size_t c = 0; c < cones.size(); ++c) {
      const LatticeVector centre = fan.ray_sum(cones[c]);
      for (std::size_t d = 0; d < cones.size(); ++d) {
        if (d == c) continue;
        if (express_in_cone(centre, fan.generators(cones[d]))) {
          fail("maximal cones " + to_string_1based(cones[c]) + " and " + to_string_1based(cones[d]) +
               " overlap");
        }
      }
    }
  }

  report.accepted = report.failures.empty();
  return report;
}

void require_accepted(const Fan& fan) {
  auto report = validate(fan);
  if (!report.accepted) throw Error(ErrorKind::ValidationFailed, report.failures.front());
}

// ---------------------------------------------------------------------------
// primitive sets and relations

namespace {

void for_each_combination(std::size_t m, std::size_t k,
                          const std::function<void(const IndexSet&)>& visit) {
  if (k > m) return;
  IndexSet idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool is_primitive_set(const Fan& fan, const IndexSet& set) {
  if (set.size() < 2 || fan.is_cone(set)) return false;
  for (std::size_t skip = 0; skip < set.size(); ++skip) {
    IndexSet sub;
    for (std::size_t k = 0; k < set.size(); ++k)
      if (k != skip) sub.push_back(set[k]);
    if (!fan.is_cone(sub)) return false;
  }
  return true;
}

}  // namespace

std::vector<IndexSet> primitive_sets(const Fan& fan) {
  std::vector<IndexSet> out;
  const std::size_t m = fan.num_rays();
  const std::size_t max_size = std::min(m, fan.dim() + 1);
  for (std::size_t k = 2; k <= max_size; ++k)
    for_each_combination(m, k, [&](const IndexSet& set) {
      if (is_primitive_set(fan, set)) out.push_back(set);
    });
  std::sort(out.begin(), out.end());
  return out;
}

Integer PrimitiveData::coefficient_sum() const {
  Integer s = 0;
  for (const auto& a : rhs_coeffs) s += a;
  return s;
}

PrimitiveData primitive_relation(const Fan& fan, const IndexSet& pset) {
  const IndexSet set = make_index_set(pset);
  if (!is_primitive_set(fan, set)) {
    throw Error(ErrorKind::InvalidArgument, to_string_1based(set) + " is not a primitive set");
  }
  const LatticeVector sum = fan.ray_sum(set);
  for (const auto& cone : fan.cones()) {
    auto coords = express_in_cone(sum, fan.generators(cone));
    if (!coords || !coords->interior) continue;
    PrimitiveData out;
    out.set = set;
    out.rhs_cone = cone;
    out.cls = CurveClass(fan.num_rays());
    for (auto i : set) out.cls[i] += 1;
    for (std::size_t j = 0; j < cone.size(); ++j) {
      const Rational& a = coords->coefficients[j];
      if (a.get_den() != 1) {
        throw Error(ErrorKind::LocateFailure, "non-integral primitive relation; fan is not smooth");
      }
      out.rhs_coeffs.push_back(a.get_num());
      out.cls[cone[j]] -= a.get_num();
    }
    return out;
  }
  throw Error(ErrorKind::LocateFailure,
              "no cone contains the ray sum of " + to_string_1based(set) + " in its relative interior");
}

std::vector<PrimitiveData> primitive_relations(const Fan& fan) {
  std::vector<PrimitiveData> out;
  for (const auto& p : primitive_sets(fan)) out.push_back(primitive_relation(fan, p));
  return out;
}

bool is_curve_class(const Fan& fan, const CurveClass& beta) {
  if (beta.size() != fan.num_rays()) return false;
  LatticeVector s(fan.dim(), Integer(0));
  for (std::size_t i = 0; i < beta.size(); ++i) s = add(s, scale(beta[i], fan.ray(i)));
  return is_zero(s);
}

// ---------------------------------------------------------------------------
// star

std::vector<std::size_t> star_ray_sources(const Fan& fan, const IndexSet& sigma) {
  const IndexSet s = make_index_set(sigma);
  if (!fan.is_cone(s)) throw Error(ErrorKind::NotACone, to_string_1based(s) + " is not a cone");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < fan.num_rays(); ++j) {
    if (contains(s, j)) continue;
    IndexSet t = s;
    t.push_back(j);
    if (fan.is_cone(make_index_set(t))) out.push_back(j);
  }
  return out;
}

Fan star(const Fan& fan, const IndexSet& sigma) {
  const IndexSet s = make_index_set(sigma);
  const auto sources = star_ray_sources(fan, s);

  // Functionals annihilating sigma; their Z-basis gives a surjection
  // N -> Z^{n-k} with kernel <sigma>.
  const auto gens = fan.generators(s);
  const IntMatrix annihilated = IntMatrix::from_rows(gens, fan.dim());
  const auto projection = integer_kernel(annihilated);

  std::vector<LatticeVector> rays;
  for (auto j : sources) {
    LatticeVector image;
    for (const auto& p : projection) image.push_back(dot(p, fan.ray(j)));
    const Integer g = gcd_of(image);
    if (g > 1)
      for (auto& x : image) x /= g;
    rays.push_back(std::move(image));
  }
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t k = 0; k < sources.size(); ++k) renumber[sources[k]] = k;

  std::vector<IndexSet> cones;
  for (const auto& mu : fan.max_cones()) {
    if (!is_subset(s, mu)) continue;
    IndexSet rest;
    for (auto i : mu)
      if (!contains(s, i)) rest.push_back(renumber.at(i));
    cones.push_back(make_index_set(rest));
  }
  return Fan(projection.size(), std::move(rays), std::move(cones));
}

// ---------------------------------------------------------------------------
// effective classes

namespace {

IndexSet negative_support(const CurveClass& beta) {
  IndexSet out;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (beta[i] < 0) out.push_back(i);
  return out;
}

std::vector<EffectiveTerm> merge_terms(const std::vector<PrimitiveData>& relations,
                                       const std::vector<Integer>& counts) {
  std::vector<EffectiveTerm> out;
  for (std::size_t i = 0; i < relations.size(); ++i)
    if (counts[i] != 0) out.push_back({relations[i], counts[i]});
  return out;
}

bool exhaustive_search(const std::vector<PrimitiveData>& relations, std::size_t index,
                       const CurveClass& remaining, const Integer& remaining_degree,
                       std::vector<Integer>& counts) {
  if (remaining.is_zero()) return true;
  if (remaining_degree <= 0 || index == relations.size()) return false;
  const CurveClass& c = relations[index].cls;
  const Integer d = c.degree();
  Integer x = remaining_degree / d;
  for (; x >= 0; --x) {
    counts[index] = x;
    if (exhaustive_search(relations, index + 1, remaining - x * c, remaining_degree - x * d, counts))
      return true;
  }
  counts[index] = 0;
  return false;
}

}  // namespace

std::vector<EffectiveTerm> decompose_effective(const Fan& fan, const CurveClass& beta) {
  if (!is_curve_class(fan, beta)) {
    throw Error(ErrorKind::InvalidArgument, beta.to_string() + " does not satisfy sum b_i rho_i = 0");
  }
  if (beta.is_zero()) return {};
  const auto relations = primitive_relations(fan);
  std::vector<Integer> counts(relations.size(), Integer(0));

  if (fan.is_cone(negative_support(beta))) {
    // Each step subtracts a primitive class whose set lies in the positive
    // support; the negative support can only shrink, so the precondition
    // persists and the ample degree drops.
    CurveClass rest = beta;
    constexpr std::size_t kStepLimit = 1'000'000;
    for (std::size_t step = 0; !rest.is_zero(); ++step) {
      if (step == kStepLimit) throw Error(ErrorKind::LocateFailure, "greedy decomposition did not terminate");
      std::size_t chosen = relations.size();
      for (std::size_t r = 0; r < relations.size() && chosen == relations.size(); ++r) {
        bool inside = std::all_of(relations[r].set.begin(), relations[r].set.end(),
                                  [&](std::size_t i) { return rest[i] > 0; });
        if (inside) chosen = r;
      }
      if (chosen == relations.size()) {
        throw Error(ErrorKind::NotEffective, beta.to_string() + " is not effective");
      }
      rest -= relations[chosen].cls;
      counts[chosen] += 1;
    }
    return merge_terms(relations, counts);
  }

  for (const auto& r : relations)
    if (r.cls.degree() <= 0) {
      throw Error(ErrorKind::PreconditionFailed,
                  "exhaustive effectivity search needs positive-degree primitive classes (Fano fan)");
    }
  if (!exhaustive_search(relations, 0, beta, beta.degree(), counts)) {
    throw Error(ErrorKind::NotEffective, beta.to_string() + " is not effective");
  }
  return merge_terms(relations, counts);
}

bool is_effective(const Fan& fan, const CurveClass& beta) {
  try {
    decompose_effective(fan, beta);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotEffective) return false;
    throw;
  }
}

// ---------------------------------------------------------------------------
// isomorphism

std::optional<std::vector<std::size_t>> find_isomorphism(const Fan& a, const Fan& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "fans have different dimensions");
  if (a.num_rays() != b.num_rays() || a.max_cones().size() != b.max_cones().size()) return std::nullopt;
  if (a.max_cones().empty()) return std::nullopt;
  const std::size_t n = a.dim();

  std::map<LatticeVector, std::size_t> b_rays;
  for (std::size_t i = 0; i < b.num_rays(); ++i) b_rays[b.ray(i)] = i;
  const std::set<IndexSet> b_cones(b.max_cones().begin(), b.max_cones().end());

  const auto anchor = a.max_cones().front();
  const auto anchor_dual = dual_basis(a.generators(anchor));
  // inverse of the anchor basis matrix: rows are the dual functionals
  IntMatrix anchor_inverse(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) anchor_inverse(r, c) = anchor_dual[r].coefficients[c];

  for (const auto& target : b.max_cones()) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<LatticeVector> images;
      for (std::size_t j = 0; j < n; ++j) images.push_back(b.ray(target[perm[j]]));
      const IntMatrix map = IntMatrix::from_columns(images, n) * anchor_inverse;

      std::vector<std::size_t> image_of(a.num_rays());
      std::vector<bool> hit(b.num_rays(), false);
      bool ok = true;
      for (std::size_t i = 0; i < a.num_rays() && ok; ++i) {
        auto it = b_rays.find(map.apply(a.ray(i)));
        if (it == b_rays.end() || hit[it->second]) {
          ok = false;
        } else {
          image_of[i] = it->second;
          hit[it->second] = true;
        }
      }
      for (std::size_t c = 0; c < a.max_cones().size() && ok; ++c) {
        IndexSet img;
        for (auto i : a.max_cones()[c]) img.push_back(image_of[i]);
        if (!b_cones.count(make_index_set(img))) ok = false;
      }
      if (ok) return image_of;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return std::nullopt;
}

bool is_isomorphic(const Fan& a, const Fan& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace qtoric
