#include "qtoric/curves.hpp"

#include <algorithm>

#include "qtoric/error.hpp"
#include "qtoric/fano.hpp"

namespace qtoric {

namespace {

void require_max_cone(const Fan& fan, const IndexSet& mu) {
  if (!fan.max_cone_index(mu)) throw Error(ErrorKind::NotACone, to_string_1based(mu) + " is not a maximal cone");
}

std::vector<Integer> coordinates(const Fan& fan, const IndexSet& mu, std::size_t rho) {
  if (rho >= fan.num_rays()) throw Error(ErrorKind::IndexOutOfRange, "ray index out of range");
  return coordinates_in_basis(fan.generators(mu), fan.ray(rho));
}

// The other maximal cone containing the wall mu minus mu[k].
IndexSet neighbor(const Fan& fan, const IndexSet& mu, std::size_t k) {
  IndexSet wall = mu;
  wall.erase(wall.begin() + static_cast<std::ptrdiff_t>(k));
  for (const auto& other : fan.max_cones())
    if (other != mu && is_subset(wall, other)) return other;
  throw Error(ErrorKind::LocateFailure, "wall " + to_string_1based(wall) + " has only one side");
}

bool tier_ok(const Fan& fan) { return classify(fan).tier >= Tier::SubvarietiesFano; }

}  // namespace

Integer signed_distance(const Fan& fan, const IndexSet& mu, std::size_t rho) {
  require_max_cone(fan, mu);
  Integer d = 1;
  for (const auto& c : coordinates(fan, mu, rho)) d -= c;
  return d;
}

CurveClass wall_curve_class(const Fan& fan, const IndexSet& wall) {
  std::vector<IndexSet> sides;
  for (const auto& mu : fan.max_cones())
    if (is_subset(wall, mu)) sides.push_back(mu);
  if (wall.size() + 1 != fan.dim() || sides.size() != 2) {
    throw Error(ErrorKind::NotACone, to_string_1based(wall) + " is not a wall between two maximal cones");
  }
  std::size_t a = 0;
  std::size_t b = 0;
  for (auto i : sides[0])
    if (!contains(wall, i)) a = i;
  for (auto i : sides[1])
    if (!contains(wall, i)) b = i;
  // rho_b = -rho_a + sum_i c_i rho_i over the wall
  const auto coords = coordinates(fan, sides[0], b);
  CurveClass cls(fan.num_rays());
  cls[a] = 1;
  cls[b] = 1;
  for (std::size_t k = 0; k < sides[0].size(); ++k)
    if (sides[0][k] != a) cls[sides[0][k]] = -coords[k];
  return cls;
}

CurveClass specified_class(const Fan& fan, const IndexSet& mu, std::size_t rho) {
  require_max_cone(fan, mu);
  CurveClass cls(fan.num_rays());
  if (contains(mu, rho)) return cls;
  const auto coords = coordinates(fan, mu, rho);
  cls[rho] = 1;
  for (std::size_t k = 0; k < mu.size(); ++k) cls[mu[k]] = -coords[k];
  return cls;
}

ToricTree min_tree(const Fan& fan, const IndexSet& mu, std::size_t rho, TreeOptions options) {
  require_max_cone(fan, mu);
  if (rho >= fan.num_rays()) throw Error(ErrorKind::IndexOutOfRange, "ray index out of range");
  ToricTree tree;
  tree.start = mu;
  tree.divisor = rho;
  tree.cls = CurveClass(fan.num_rays());
  if (!tier_ok(fan)) {
    if (!options.allow_general) {
      throw Error(ErrorKind::NotInTier, "minimal trees need tier SubvarietiesFano or better");
    }
    tree.unverified_degree = true;
  }

  const std::size_t max_steps = fan.max_cones().size() * fan.num_rays() + 1;
  IndexSet current = mu;
  while (!contains(current, rho)) {
    if (tree.edges.size() >= max_steps) {
      throw Error(ErrorKind::PreconditionFailed, "wall-crossing chain did not reach the divisor");
    }
    const auto coords = coordinates(fan, current, rho);
    std::optional<std::size_t> k;
    for (std::size_t j = 0; j < coords.size() && !k; ++j) {
      if (tree.unverified_degree ? coords[j] < 0 : coords[j] == -1) k = j;
    }
    if (!k) throw Error(ErrorKind::PreconditionFailed, "no wall to cross toward the divisor");
    TreeEdge edge;
    edge.wall = current;
    edge.wall.erase(edge.wall.begin() + static_cast<std::ptrdiff_t>(*k));
    edge.multiplicity = -coords[*k];
    edge.cls = wall_curve_class(fan, edge.wall);
    edge.from = current;
    edge.to = neighbor(fan, current, *k);
    tree.cls += edge.multiplicity * edge.cls;
    current = edge.to;
    tree.edges.push_back(std::move(edge));
  }
  return tree;
}

ToricForest tree_for_class(const Fan& fan, const CurveClass& beta, TreeOptions options) {
  if (beta.size() != fan.num_rays() || !is_curve_class(fan, beta)) {
    throw Error(ErrorKind::InvalidArgument, beta.to_string() + " is not a curve class");
  }
  IndexSet negative;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (beta[i] < 0) negative.push_back(i);
  const auto it = std::find_if(fan.max_cones().begin(), fan.max_cones().end(),
                               [&](const IndexSet& mu) { return is_subset(negative, mu); });
  if (it == fan.max_cones().end()) {
    throw Error(ErrorKind::PreconditionFailed,
                "the divisors met negatively, " + to_string_1based(negative) + ", do not span a cone");
  }
  if (!tier_ok(fan) && !options.allow_general) {
    throw Error(ErrorKind::NotInTier, "curve trees need tier SubvarietiesFano or better");
  }
  ToricForest forest;
  forest.root = *it;
  forest.cls = CurveClass(fan.num_rays());
  for (std::size_t rho = 0; rho < fan.num_rays(); ++rho) {
    if (contains(forest.root, rho) || beta[rho] == 0) continue;
    ToricTree tree = min_tree(fan, forest.root, rho, options);
    forest.cls += beta[rho] * tree.cls;
    forest.trees.emplace_back(std::move(tree), beta[rho]);
  }
  return forest;
}

}  // namespace qtoric
