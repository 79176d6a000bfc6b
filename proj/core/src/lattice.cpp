#include "qtoric/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

#include "qtoric/error.hpp"

namespace qtoric {

Integer DualFunctional::operator()(const LatticeVector& v) const {
  if (v.size() != coefficients.size()) {
    throw Error(ErrorKind::DimensionMismatch, "functional and vector lengths differ");
  }
  return dot(coefficients, v);
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::from_rows(std::span<const LatticeVector> rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw Error(ErrorKind::DimensionMismatch, "row length mismatch");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const LatticeVector> columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      throw Error(ErrorKind::DimensionMismatch, "column length mismatch");
    }
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

LatticeVector IntMatrix::row(std::size_t r) const {
  return LatticeVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

LatticeVector IntMatrix::column(std::size_t c) const {
  LatticeVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

LatticeVector IntMatrix::apply(const LatticeVector& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
  LatticeVector out(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product size mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(r, k) == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += (*this)(r, k) * rhs(k, c);
    }
  return out;
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer gcd_of(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

bool is_zero(const LatticeVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector sum size mismatch");
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

LatticeVector subtract(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector difference size mismatch");
  LatticeVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

LatticeVector scale(const Integer& s, const LatticeVector& v) {
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

namespace {

// Bareiss forward elimination in place. Returns the pivot columns; the sign of
// the row permutation is accumulated in `sign`.
std::vector<std::size_t> bareiss(IntMatrix& a, int& sign) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t r = 0;
  sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(p, k), a(r, k));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        Integer t = a(r, c) * a(i, k) - a(i, c) * a(r, k);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, k) = t;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void swap_rows(std::vector<LatticeVector>& m, std::size_t a, std::size_t b) {
  if (a != b) std::swap(m[a], m[b]);
}

// floor division with a positive or negative divisor
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Unimodular row reduction of `rows` (each of width `width` in the leading
// block) to integer row echelon form. Operations are mirrored on the whole row,
// so trailing columns beyond `width` act as a transform record. Returns the
// number of nonzero leading-block rows.
std::size_t integer_echelon(std::vector<LatticeVector>& rows, std::size_t width) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    while (true) {
      // smallest nonzero |entry| in column c at or below row r
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      swap_rows(rows, r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = floor_div(rows[i][c], rows[r][c]);
        for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] -= q * rows[r][k];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) {
        ++r;
        break;
      }
    }
  }
  return r;
}

}  // namespace

Integer determinant(const IntMatrix& square) {
  if (square.rows() != square.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = square.rows();
  if (n == 0) return 1;
  IntMatrix a = square;
  int sign = 1;
  auto pivots = bareiss(a, sign);
  if (pivots.size() < n) return 0;
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  int sign = 1;
  return bareiss(a, sign).size();
}

std::size_t rank_of(std::span<const LatticeVector> vectors, std::size_t length) {
  return rank(IntMatrix::from_rows(vectors, length));
}

std::vector<LatticeVector> hermite_normal_form(std::span<const LatticeVector> input,
                                               std::size_t length) {
  std::vector<LatticeVector> rows(input.begin(), input.end());
  for (const auto& r : rows)
    if (r.size() != length) throw Error(ErrorKind::DimensionMismatch, "row length mismatch");
  const std::size_t nonzero = integer_echelon(rows, length);
  rows.resize(nonzero);
  // positive pivots, reduce entries above pivots
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t c = 0;
    while (rows[i][c] == 0) ++c;
    if (rows[i][c] < 0)
      for (auto& x : rows[i]) x = -x;
    for (std::size_t j = 0; j < i; ++j) {
      Integer q = floor_div(rows[j][c], rows[i][c]);
      if (q == 0) continue;
      for (std::size_t k = 0; k < length; ++k) rows[j][k] -= q * rows[i][k];
    }
  }
  return rows;
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  std::vector<LatticeVector> a;
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(m.row(r));
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // pick the smallest nonzero entry in the trailing block as pivot
    bool found = false;
    std::size_t pr = t, pc = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (!found || abs(a[i][j]) < abs(a[pr][pc]))) {
          found = true;
          pr = i;
          pc = j;
        }
    if (!found) break;
    std::swap(a[t], a[pr]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pc]);
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = floor_div(a[i][t], a[t][t]);
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = floor_div(a[t][j], a[t][t]);
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
          dirty = true;
        }
      }
      if (dirty) continue;
      // divisibility: the pivot must divide the rest of the trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

std::vector<LatticeVector> integer_kernel(const IntMatrix& m) {
  // Row-reduce [m^T | I]; rows whose m^T block vanishes carry kernel vectors.
  const std::size_t n = m.rows();
  const std::size_t width = m.cols();
  std::vector<LatticeVector> rows(width, LatticeVector(n + width, Integer(0)));
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t r = 0; r < n; ++r) rows[i][r] = m(r, i);
    rows[i][n + i] = 1;
  }
  const std::size_t rk = integer_echelon(rows, n);
  std::vector<LatticeVector> kernel;
  for (std::size_t i = rk; i < rows.size(); ++i)
    kernel.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(n), rows[i].end());
  return hermite_normal_form(kernel, width);
}

std::vector<DualFunctional> dual_basis(std::span<const LatticeVector> gens) {
  const std::size_t n = gens.size();
  for (const auto& g : gens)
    if (g.size() != n) throw Error(ErrorKind::NonUnimodular, "generators do not form a square basis");
  IntMatrix basis = IntMatrix::from_columns(gens, n);
  const Integer det = determinant(basis);
  if (abs(det) != 1) {
    throw Error(ErrorKind::NonUnimodular, "generators have determinant " + det.get_str());
  }
  // Gauss-Jordan on [basis | I]; exact because the inverse is integral.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = basis(r, c);
    a[r][n + r] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a[p][c] == 0) ++p;
    std::swap(a[p], a[c]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<DualFunctional> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    out[r].coefficients.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
      assert(a[r][n + c].get_den() == 1);
      out[r].coefficients[c] = a[r][n + c].get_num();
    }
  }
  return out;
}

DualFunctional dual_basis_functional(std::span<const LatticeVector> gens, std::size_t index) {
  if (index >= gens.size()) throw Error(ErrorKind::IndexOutOfRange, "generator index out of range");
  return dual_basis(gens)[index];
}

std::vector<Integer> coordinates_in_basis(std::span<const LatticeVector> gens,
                                          const LatticeVector& v) {
  auto duals = dual_basis(gens);
  std::vector<Integer> out;
  out.reserve(duals.size());
  for (const auto& phi : duals) out.push_back(phi(v));
  return out;
}

std::optional<std::vector<Rational>> solve_independent(std::span<const LatticeVector> columns,
                                                       const LatticeVector& rhs) {
  const std::size_t n = rhs.size();
  const std::size_t k = columns.size();
  IntMatrix a(n, k + 1);
  for (std::size_t c = 0; c < k; ++c) {
    if (columns[c].size() != n) throw Error(ErrorKind::DimensionMismatch, "generator length mismatch");
    for (std::size_t r = 0; r < n; ++r) a(r, c) = columns[c][r];
  }
  for (std::size_t r = 0; r < n; ++r) a(r, k) = rhs[r];

  int sign = 1;
  auto pivots = bareiss(a, sign);
  std::size_t generator_rank = 0;
  for (auto p : pivots)
    if (p < k) ++generator_rank;
  if (generator_rank < k) throw Error(ErrorKind::DependentGenerators, "cone generators are linearly dependent");
  if (pivots.size() > k) return std::nullopt;  // pivot in the rhs column

  // back substitution on the upper-triangular k x k block
  std::vector<Rational> x(k);
  for (std::size_t i = k; i-- > 0;) {
    Rational s = Rational(a(i, k));
    for (std::size_t j = i + 1; j < k; ++j) s -= Rational(a(i, j)) * x[j];
    x[i] = s / Rational(a(i, i));
    x[i].canonicalize();
  }
  return x;
}

std::optional<ConeCoordinates> express_in_cone(const LatticeVector& v,
                                               std::span<const LatticeVector> gens) {
  auto solved = solve_independent(gens, v);
  if (!solved) return std::nullopt;
  ConeCoordinates out;
  out.interior = true;
  for (const auto& x : *solved) {
    if (x < 0) return std::nullopt;
    if (x == 0) out.interior = false;
  }
  out.coefficients = std::move(*solved);
  return out;
}

}  // namespace qtoric
