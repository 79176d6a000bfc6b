#pragma once

// The small quantum cohomology ring QH*(X) = Q[C] (x) H*(X, Q): presentation,
// quantum Giambelli, terminating reduction of divisor monomials, quantum
// products and three-point Gromov-Witten invariants.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qtoric/cohomology.hpp"
#include "qtoric/fan.hpp"
#include "qtoric/fano.hpp"

namespace qtoric {

/// Finite sum of q^beta * alpha; exponents with a zero class are dropped.
class QuantumClass {
 public:
  QuantumClass() = default;
  static QuantumClass classical(std::size_t num_rays, CohomologyClass alpha);
  static QuantumClass term(CurveClass beta, CohomologyClass alpha);

  const std::map<CurveClass, CohomologyClass>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const CurveClass& beta, const CohomologyClass& alpha);

  /// Coefficient of q^beta (the zero class if absent).
  CohomologyClass coefficient(const CurveClass& beta) const;

  QuantumClass& operator+=(const QuantumClass& other);
  QuantumClass& operator-=(const QuantumClass& other);
  friend QuantumClass operator+(QuantumClass a, const QuantumClass& b) { return a += b; }
  friend QuantumClass operator-(QuantumClass a, const QuantumClass& b) { return a -= b; }
  friend QuantumClass operator*(const Rational& s, const QuantumClass& c);
  /// Multiplies by q^beta.
  QuantumClass shifted(const CurveClass& beta) const;

  bool operator==(const QuantumClass&) const = default;

 private:
  std::map<CurveClass, CohomologyClass> terms_;
};

/// Finite sum of c * q^beta * (monomial in the divisors).
class QuantumPolynomial {
 public:
  using Key = std::pair<CurveClass, Monomial>;

  const std::map<Key, Rational>& terms() const { return terms_; }
  void add_term(const CurveClass& beta, const Monomial& m, const Rational& coeff);

  QuantumPolynomial& operator+=(const QuantumPolynomial& other);
  friend QuantumPolynomial operator*(const QuantumPolynomial& a, const QuantumPolynomial& b);
  friend QuantumPolynomial operator*(const Rational& s, const QuantumPolynomial& p);

  bool operator==(const QuantumPolynomial&) const = default;

 private:
  std::map<Key, Rational> terms_;
};

struct DeformedRelation {
  IndexSet set;
  IndexSet rhs;                 // possibly empty
  std::vector<Integer> rhs_coeffs;
  CurveClass beta;
};

struct Presentation {
  std::size_t num_generators = 0;
  /// Coefficient vectors of sum_i phi(rho_i) D_i for the standard dual basis.
  std::vector<std::vector<Integer>> linear_relations;
  std::vector<DeformedRelation> deformed_relations;
};

/// Throws NotFano below tier Fano.
Presentation presentation(const Fan& fan);

/// Which choices reduce_monomial makes at each rewrite step.
enum class ReductionStrategy {
  Canonical,  // smallest primitive set, smallest repeated index, smallest maximal cone
  Random,     // uniformly random among the admissible choices
};

class QuantumRing {
 public:
  /// Requires an accepted fan of tier FullClass (throws NotInClass).
  explicit QuantumRing(const Fan& fan);

  const Fan& fan() const { return cohomology_.fan(); }
  const CohomologyRing& cohomology() const { return cohomology_; }
  std::size_t num_rays() const { return fan().num_rays(); }

  /// The quantum Giambelli polynomial of the orbit closure of sigma. Throws
  /// NotACone.
  QuantumPolynomial giambelli(const IndexSet& sigma) const;

  /// The quantum product of the divisors of sigma in closed form. Throws
  /// NotACone.
  QuantumClass divisor_product_closed_form(const IndexSet& sigma) const;

  /// Quantum product of the divisors listed (with multiplicity). The
  /// canonical strategy is memoized.
  QuantumClass reduce_monomial(const Monomial& m) const;
  QuantumClass reduce_monomial(const Monomial& m, std::mt19937_64& rng) const;

  QuantumClass evaluate(const QuantumPolynomial& p) const;

  /// Giambelli lift of a classical class: sum of c_i * giambelli(tau_i).
  QuantumPolynomial lift(const CohomologyClass& a) const;

  QuantumClass product(const QuantumClass& a, const QuantumClass& b) const;
  QuantumClass product(const CohomologyClass& a, const CohomologyClass& b) const;

  /// <a, b, c>_beta. Throws NotEffective for a nonzero non-effective beta.
  Rational gw3(const CohomologyClass& a, const CohomologyClass& b, const CohomologyClass& c,
               const CurveClass& beta) const;

  /// Drops every term with nonzero exponent.
  CohomologyClass classical_part(const QuantumClass& a) const;

  /// Throws NotEffective unless beta is zero or a nonnegative combination of
  /// primitive classes.
  void require_effective(const CurveClass& beta) const;

 private:
  QuantumClass reduce(const Monomial& m, std::mt19937_64* rng) const;

  CohomologyRing cohomology_;
  std::vector<PrimitiveData> relations_;
  std::vector<ExceptionalData> exceptional_;
  CurveClass zero_;

  mutable std::mutex cache_mutex_;
  mutable std::map<Monomial, QuantumClass> memo_;
  mutable std::set<CurveClass> effective_;
};

std::string to_string(const QuantumPolynomial& p);

}  // namespace qtoric
