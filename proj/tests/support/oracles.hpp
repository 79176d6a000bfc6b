#pragma once

// Reference computations that share no code with the library: brute-force
// enumeration over bitmasks and textbook elimination over Q.

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

#include "qtoric/cohomology.hpp"
#include "qtoric/fan.hpp"

namespace qtoric::testing {

inline std::set<IndexSet> faces_by_powerset(const Fan& fan) {
  std::set<IndexSet> faces;
  for (const auto& mu : fan.max_cones()) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << mu.size()); ++mask) {
      IndexSet face;
      for (std::size_t k = 0; k < mu.size(); ++k)
        if (mask >> k & 1) face.push_back(mu[k]);
      faces.insert(face);
    }
  }
  return faces;
}

inline std::vector<IndexSet> minimal_nonfaces(const Fan& fan) {
  const auto faces = faces_by_powerset(fan);
  std::vector<IndexSet> out;
  const std::size_t m = fan.num_rays();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    IndexSet s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (faces.count(s)) continue;
    bool minimal = true;
    for (std::size_t k = 0; k < s.size() && minimal; ++k) {
      IndexSet sub = s;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
      if (!faces.count(sub)) minimal = false;
    }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Betti numbers b_0, b_2, ..., b_2n from the f-vector (the h-vector of the
/// simplicial sphere).
inline std::vector<long> h_vector(const Fan& fan) {
  const long n = static_cast<long>(fan.dim());
  std::vector<long> f(n + 1, 0);
  for (const auto& s : faces_by_powerset(fan)) ++f[static_cast<long>(s.size())];
  std::vector<long> h(n + 1, 0);
  for (long k = 0; k <= n; ++k)
    for (long i = k; i <= n; ++i) h[k] += ((i - k) % 2 ? -1 : 1) * binomial(i, k) * f[n - i];
  return h;
}

/// Rank of a dense rational matrix by plain Gauss-Jordan elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t basis_index(const CohomologyRing& ring, const IndexSet& tau) {
  for (std::size_t i = 0; i < ring.basis_size(); ++i)
    if (ring.basis_tau(i) == tau) return i;
  throw std::out_of_range("no basis class with that tau");
}

}  // namespace qtoric::testing
