#pragma once

// The classical ring H*(X, Q): shelling basis, graded normal form of divisor
// polynomials, cup product and integration.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtoric/fan.hpp"

namespace qtoric {

/// A product of toric divisors with multiplicity, as a sorted multiset of
/// ray indices.
using Monomial = std::vector<std::size_t>;

Monomial make_monomial(std::vector<std::size_t> factors);
Monomial multiply(const Monomial& a, const Monomial& b);
/// Distinct indices of a monomial.
IndexSet support(const Monomial& m);
std::string to_string(const Monomial& m);  // "D1*D2^2", "1" for the empty monomial

/// Rational combination of monomials; zero coefficients are never stored.
class DivisorPolynomial {
 public:
  DivisorPolynomial() = default;
  static DivisorPolynomial monomial(Monomial m, Rational coeff = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  void add_term(const Monomial& m, const Rational& coeff);

  DivisorPolynomial& operator+=(const DivisorPolynomial& other);
  friend DivisorPolynomial operator*(const DivisorPolynomial& a, const DivisorPolynomial& b);

  bool operator==(const DivisorPolynomial&) const = default;

 private:
  std::map<Monomial, Rational> terms_;
};

/// Coordinates in the shelling basis, keyed by 0-based basis index; zero
/// coordinates are never stored.
class CohomologyClass {
 public:
  CohomologyClass() = default;
  static CohomologyClass basis(std::size_t index, Rational coeff = 1);

  const std::map<std::size_t, Rational>& coords() const { return coords_; }
  Rational coefficient(std::size_t index) const;
  bool is_zero() const { return coords_.empty(); }
  void add(std::size_t index, const Rational& coeff);

  CohomologyClass& operator+=(const CohomologyClass& other);
  CohomologyClass& operator-=(const CohomologyClass& other);
  friend CohomologyClass operator+(CohomologyClass a, const CohomologyClass& b) { return a += b; }
  friend CohomologyClass operator-(CohomologyClass a, const CohomologyClass& b) { return a -= b; }
  friend CohomologyClass operator*(const Rational& s, const CohomologyClass& c);

  bool operator==(const CohomologyClass&) const = default;

 private:
  std::map<std::size_t, Rational> coords_;
};

struct Shelling {
  /// order[i] is the index in fan.max_cones() of mu_{i+1}.
  std::vector<std::size_t> order;
  /// tau[i] is the face of mu_{i+1} labelling the (i+1)-th basis class.
  std::vector<IndexSet> tau;
  LatticeVector perturbation;
  /// y_i(perturbation), strictly decreasing.
  std::vector<Integer> heights;

  /// Number of tau_i of each dimension 0..n.
  std::vector<std::size_t> census() const;
};

/// Deterministic shelling: the perturbation is the first vector, scanning
/// max-norm shells around the sum of all rays, on which the functionals
/// y_i (equal to 1 on every generator of mu_i) take distinct values.
Shelling shelling(const Fan& fan);

/// Normal-form tables are built once per fan; afterwards every query is a
/// const lookup.
class CohomologyRing {
 public:
  /// Requires an accepted fan of tier at least Fano (throws ValidationFailed
  /// or NotFano).
  explicit CohomologyRing(const Fan& fan);

  const Fan& fan() const { return fan_; }
  const Shelling& shelling() const { return shelling_; }
  std::size_t dim() const { return fan_.dim(); }

  std::size_t basis_size() const { return shelling_.tau.size(); }
  const IndexSet& basis_tau(std::size_t i) const { return shelling_.tau.at(i); }
  std::size_t basis_degree(std::size_t i) const { return shelling_.tau.at(i).size(); }
  std::size_t unit_index() const { return unit_index_; }
  std::size_t point_index() const { return point_index_; }

  CohomologyClass unit() const { return CohomologyClass::basis(unit_index_); }
  CohomologyClass point() const { return CohomologyClass::basis(point_index_); }

  /// Linear relations sum_i <e_k, rho_i> D_i, one per coordinate k.
  std::vector<std::vector<Integer>> linear_relations() const;

  CohomologyClass normal_form(const Monomial& m) const;
  CohomologyClass normal_form(const DivisorPolynomial& p) const;

  /// The square-free monomial D_tau lifting a basis class.
  DivisorPolynomial lift(const CohomologyClass& a) const;

  CohomologyClass cup(const CohomologyClass& a, const CohomologyClass& b) const;

  /// Class of the orbit closure of sigma. Throws NotACone.
  CohomologyClass stratum_class(const IndexSet& sigma) const;

  /// Coefficient of the point class.
  Rational integrate(const CohomologyClass& a) const;

  /// Degree of a nonzero homogeneous class, or nullopt if it mixes degrees
  /// (the zero class reports nullopt as well).
  std::optional<std::size_t> homogeneous_degree(const CohomologyClass& a) const;

  /// Number of cone-supported monomials of degree d, and the rank of the
  /// relations among them. Their difference is dim H^{2d}.
  std::size_t monomial_count(std::size_t d) const { return tables_.at(d).columns.size(); }
  std::size_t relation_rank(std::size_t d) const { return tables_.at(d).rank; }

 private:
  struct DegreeTable {
    std::vector<Monomial> columns;
    std::map<Monomial, std::size_t> column_of;
    std::map<Monomial, std::size_t> basis_of;  // basis monomial -> basis index
    std::size_t rank = 0;
    /// Normal form of every column.
    std::vector<CohomologyClass> reduced;
  };

  void build_table(std::size_t d);

  Fan fan_;
  Shelling shelling_;
  std::size_t unit_index_ = 0;
  std::size_t point_index_ = 0;
  std::vector<DegreeTable> tables_;
};

}  // namespace qtoric
