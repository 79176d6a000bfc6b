#pragma once

// Trees of torus-invariant rational curves: minimal trees joining a fixed
// point to a toric divisor, and tree representatives of curve classes.

#include <cstddef>
#include <vector>

#include "qtoric/fan.hpp"

namespace qtoric {

/// 1 minus the sum of the coordinates of ray rho in the basis of the
/// maximal cone mu. Throws NotACone unless mu is a maximal cone.
Integer signed_distance(const Fan& fan, const IndexSet& mu, std::size_t rho);

/// The class of the orbit closure X(wall) of an (n-1)-cone: 1 on the two
/// rays completing it to maximal cones, minus the wall coefficients of their
/// sum on the rays of the wall, 0 elsewhere. Throws NotACone.
CurveClass wall_curve_class(const Fan& fan, const IndexSet& wall);

/// The class 0 if rho is in mu, and otherwise 1 on D_rho, minus the
/// coordinates of rho on the generators of mu, 0 elsewhere.
CurveClass specified_class(const Fan& fan, const IndexSet& mu, std::size_t rho);

struct TreeEdge {
  IndexSet wall;  // an (n-1)-cone; the edge is the curve X(wall)
  Integer multiplicity;
  CurveClass cls;  // class of one copy of X(wall)
  IndexSet from;   // maximal cones joined by the curve
  IndexSet to;
};

struct ToricTree {
  IndexSet start;  // maximal cone of the fixed point
  std::size_t divisor = 0;
  std::vector<TreeEdge> edges;
  CurveClass cls;
  /// Set when built with the general multiplicity rule on a fan below tier
  /// SubvarietiesFano, where the degree bound is not guaranteed.
  bool unverified_degree = false;

  Integer degree() const { return cls.degree(); }
};

struct TreeOptions {
  /// Below tier SubvarietiesFano, use multiplicity -rho^(k) on each crossed
  /// wall instead of raising NotInTier.
  bool allow_general = false;
};

/// A chain of wall crossings from X(mu) to a point of D_rho. Each step
/// crosses the wall opposite the smallest-index generator on which rho has
/// coordinate -1. Throws NotInTier below SubvarietiesFano unless
/// options.allow_general is set.
ToricTree min_tree(const Fan& fan, const IndexSet& mu, std::size_t rho, TreeOptions options = {});

struct ToricForest {
  IndexSet root;  // a maximal cone containing every ray beta meets negatively
  /// (tree, number of copies)
  std::vector<std::pair<ToricTree, Integer>> trees;
  CurveClass cls;
};

/// a_rho copies of min_tree(mu, rho) for every rho outside mu, where mu is
/// the first maximal cone containing the negative support of beta. Throws
/// InvalidArgument if beta is not a curve class, PreconditionFailed when no
/// maximal cone contains the negative support, and NotInTier as min_tree.
ToricForest tree_for_class(const Fan& fan, const CurveClass& beta, TreeOptions options = {});

}  // namespace qtoric
