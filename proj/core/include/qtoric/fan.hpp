#pragma once

// Complete nonsingular fans: validation, face queries, primitive sets and
// relations, stars, effective curve classes and isomorphism.
//
// Ray and cone indices are 0-based in the API; the JSON/CLI surface is
// 1-based.

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qtoric/lattice.hpp"

namespace qtoric {

/// Sorted, duplicate-free list of ray indices.
using IndexSet = std::vector<std::size_t>;

IndexSet make_index_set(std::vector<std::size_t> indices);
bool is_subset(const IndexSet& small, const IndexSet& big);
bool contains(const IndexSet& set, std::size_t index);
std::string to_string_1based(const IndexSet& set);

/// A class in H_2(X, Z), stored as its pairings b_i with every toric divisor.
/// The pairings satisfy sum_i b_i * rho_i = 0.
class CurveClass {
 public:
  CurveClass() = default;
  explicit CurveClass(std::size_t num_divisors) : pairings_(num_divisors, Integer(0)) {}
  explicit CurveClass(std::vector<Integer> pairings) : pairings_(std::move(pairings)) {}

  static CurveClass from_ints(std::initializer_list<long> values);

  std::size_t size() const { return pairings_.size(); }
  const Integer& operator[](std::size_t i) const { return pairings_[i]; }
  Integer& operator[](std::size_t i) { return pairings_[i]; }
  const std::vector<Integer>& pairings() const { return pairings_; }

  /// Anticanonical degree, the sum of all pairings.
  Integer degree() const;
  bool is_zero() const;

  CurveClass& operator+=(const CurveClass& other);
  CurveClass& operator-=(const CurveClass& other);
  friend CurveClass operator+(CurveClass a, const CurveClass& b) { return a += b; }
  friend CurveClass operator-(CurveClass a, const CurveClass& b) { return a -= b; }
  friend CurveClass operator*(const Integer& s, const CurveClass& c);

  bool operator==(const CurveClass& other) const { return pairings_ == other.pairings_; }
  bool operator<(const CurveClass& other) const { return pairings_ < other.pairings_; }

  std::string to_string() const;

 private:
  std::vector<Integer> pairings_;
};

class Fan {
 public:
  Fan() = default;
  /// Stores the data as given (each cone is sorted). No validation happens
  /// here; see validate().
  Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<IndexSet> max_cones);

  std::size_t dim() const { return dim_; }
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
  const std::vector<IndexSet>& max_cones() const { return max_cones_; }

  /// True iff the index set is a face of some maximal cone. Throws
  /// IndexOutOfRange for indices >= num_rays().
  bool is_cone(const IndexSet& rays) const;

  /// All cones, sorted by dimension and then lexicographically; starts with
  /// the zero cone.
  const std::vector<IndexSet>& cones() const { return cones_; }

  std::vector<LatticeVector> generators(const IndexSet& cone) const;
  LatticeVector ray_sum(const IndexSet& rays) const;

  /// Position of a maximal cone in max_cones(), if present.
  std::optional<std::size_t> max_cone_index(const IndexSet& cone) const;

  bool operator==(const Fan& other) const {
    return dim_ == other.dim_ && rays_ == other.rays_ && max_cones_ == other.max_cones_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<IndexSet> max_cones_;
  std::vector<IndexSet> cones_;
  std::set<IndexSet> cone_lookup_;
};

struct ValidationReport {
  bool accepted = false;
  std::vector<std::string> failures;
};

/// Checks primitivity and distinctness of rays, unimodularity of maximal
/// cones, and completeness (facet pairing across opposite sides, a connected
/// dual graph, and no overlapping maximal cones). Never throws for bad data.
ValidationReport validate(const Fan& fan);

/// Throws ValidationFailed with the first failure unless the fan is accepted.
void require_accepted(const Fan& fan);

/// Minimal non-faces, sorted lexicographically.
std::vector<IndexSet> primitive_sets(const Fan& fan);

struct PrimitiveData {
  IndexSet set;
  /// The cone whose relative interior contains the sum of the set's rays.
  IndexSet rhs_cone;
  /// Positive coefficients a_j, aligned with rhs_cone.
  std::vector<Integer> rhs_coeffs;
  CurveClass cls;

  Integer coefficient_sum() const;
  bool operator==(const PrimitiveData&) const = default;
};

/// Locates sum(rho_i, i in pset) = sum a_j rho'_j by scanning cones in
/// increasing dimension. Throws InvalidArgument if pset is not primitive and
/// LocateFailure if no cone contains the sum in its relative interior.
PrimitiveData primitive_relation(const Fan& fan, const IndexSet& pset);

std::vector<PrimitiveData> primitive_relations(const Fan& fan);

/// True when sum_i b_i rho_i = 0.
bool is_curve_class(const Fan& fan, const CurveClass& beta);

/// The star of a cone: the fan in N / <sigma> whose cones correspond to the
/// cones containing sigma. Rays keep the relative order of their source rays.
Fan star(const Fan& fan, const IndexSet& sigma);

/// Source ray index in `fan` of every ray of star(fan, sigma).
std::vector<std::size_t> star_ray_sources(const Fan& fan, const IndexSet& sigma);

struct EffectiveTerm {
  PrimitiveData primitive;
  Integer multiplicity;
};

/// Writes beta as a nonnegative integer combination of primitive classes.
/// Uses the greedy induction when the divisors beta meets negatively span a
/// cone; otherwise a degree-bounded exhaustive search (needs every primitive
/// class to have positive anticanonical degree). Throws NotEffective.
std::vector<EffectiveTerm> decompose_effective(const Fan& fan, const CurveClass& beta);

bool is_effective(const Fan& fan, const CurveClass& beta);

/// A ray bijection induced by a unimodular lattice map carrying cones to
/// cones: result[i] is the image in b of ray i of a.
std::optional<std::vector<std::size_t>> find_isomorphism(const Fan& a, const Fan& b);

/// Throws DimensionMismatch if the fans live in lattices of different rank.
bool is_isomorphic(const Fan& a, const Fan& b);

}  // namespace qtoric
