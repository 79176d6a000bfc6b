#pragma once

// Exact linear algebra over Z and Q for the lattices N = Z^n and M = Hom(N, Z).
// Everything is arbitrary precision (GMP); nothing in here touches floating
// point.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qtoric {

using Integer = mpz_class;
using Rational = mpq_class;

/// A point of N (length n) or of Z^m (length m).
using LatticeVector = std::vector<Integer>;

/// An element of M; pairs with a LatticeVector by the integer dot product.
struct DualFunctional {
  std::vector<Integer> coefficients;

  Integer operator()(const LatticeVector& v) const;
  bool operator==(const DualFunctional&) const = default;
};

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix from_rows(std::span<const LatticeVector> rows, std::size_t cols);
  /// Column j of the result is columns[j]; every column must have length `rows`.
  static IntMatrix from_columns(std::span<const LatticeVector> columns, std::size_t rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const;
  LatticeVector column(std::size_t c) const;
  IntMatrix transposed() const;
  LatticeVector apply(const LatticeVector& v) const;
  IntMatrix operator*(const IntMatrix& rhs) const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Integer dot(const LatticeVector& a, const LatticeVector& b);
Integer gcd_of(const LatticeVector& v);
bool is_zero(const LatticeVector& v);
LatticeVector add(const LatticeVector& a, const LatticeVector& b);
LatticeVector subtract(const LatticeVector& a, const LatticeVector& b);
LatticeVector scale(const Integer& s, const LatticeVector& v);
std::string to_string(const LatticeVector& v);

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& square);

/// Rank over Q, by Bareiss elimination.
std::size_t rank(const IntMatrix& m);
std::size_t rank_of(std::span<const LatticeVector> vectors, std::size_t length);

/// Row Hermite normal form of the row lattice: nonzero rows only, positive
/// pivots, entries above each pivot reduced into [0, pivot).
std::vector<LatticeVector> hermite_normal_form(std::span<const LatticeVector> rows,
                                               std::size_t length);

/// Nonzero invariant factors d_1 | d_2 | ... of the Smith normal form.
std::vector<Integer> smith_invariants(const IntMatrix& m);

/// A Z-basis of {x in Z^cols : m x = 0}, returned in Hermite normal form.
/// The basis is empty when m is injective.
std::vector<LatticeVector> integer_kernel(const IntMatrix& m);

/// The functional phi in M with phi(gens[index]) = 1 and phi(gens[j]) = 0 for
/// j != index. Throws NonUnimodular unless the n generators form a Z-basis.
DualFunctional dual_basis_functional(std::span<const LatticeVector> gens, std::size_t index);

/// All n dual functionals of a unimodular basis at once (the rows of the
/// inverse matrix).
std::vector<DualFunctional> dual_basis(std::span<const LatticeVector> gens);

/// Integer coordinates of v in a unimodular basis.
std::vector<Integer> coordinates_in_basis(std::span<const LatticeVector> gens,
                                          const LatticeVector& v);

/// Solves sum_j x_j * columns[j] = rhs over Q by fraction-free elimination.
/// Returns nullopt when the system is inconsistent. Throws DependentGenerators
/// when the columns are linearly dependent.
std::optional<std::vector<Rational>> solve_independent(std::span<const LatticeVector> columns,
                                                       const LatticeVector& rhs);

struct ConeCoordinates {
  std::vector<Rational> coefficients;
  /// True when every coefficient is strictly positive, i.e. v lies in the
  /// relative interior of the cone.
  bool interior = false;
};

/// Coefficients a_i >= 0 with v = sum a_i gens[i], or nullopt if v is not in
/// the cone spanned by the (linearly independent) generators.
std::optional<ConeCoordinates> express_in_cone(const LatticeVector& v,
                                               std::span<const LatticeVector> gens);

}  // namespace qtoric
