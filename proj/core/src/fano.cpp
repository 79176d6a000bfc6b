#include "qtoric/fano.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "qtoric/error.hpp"

namespace qtoric {

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::NotFano: return "NotFano";
    case Tier::Fano: return "Fano";
    case Tier::SubvarietiesFano: return "SubvarietiesFano";
    case Tier::FullClass: return "FullClass";
  }
  return "Unknown";
}

ClassTier classify(const Fan& fan) {
  ClassTier out;
  std::map<std::size_t, std::size_t> rhs_count;
  bool fano = true;
  bool subvarieties = true;
  for (auto& rel : primitive_relations(fan)) {
    RelationCertificate cert;
    cert.coefficient_sum = rel.coefficient_sum();
    if (cert.coefficient_sum >= static_cast<long>(rel.set.size())) fano = false;
    if (cert.coefficient_sum > 1) subvarieties = false;
    if (rel.rhs_cone.size() == 1 && rel.rhs_coeffs.front() == 1) {
      cert.rhs_ray = rel.rhs_cone.front();
      ++rhs_count[*cert.rhs_ray];
    }
    cert.relation = std::move(rel);
    out.certificates.push_back(std::move(cert));
  }
  bool unique_rhs = true;
  for (auto& cert : out.certificates) {
    if (!cert.rhs_ray) continue;
    cert.rhs_multiplicity = rhs_count[*cert.rhs_ray];
    if (cert.rhs_multiplicity > 1) unique_rhs = false;
  }
  if (!fano) {
    out.tier = Tier::NotFano;
  } else if (!subvarieties) {
    out.tier = Tier::Fano;
  } else if (!unique_rhs) {
    out.tier = Tier::SubvarietiesFano;
  } else {
    out.tier = Tier::FullClass;
  }
  return out;
}

void require_tier(const Fan& fan, Tier minimum) {
  const Tier tier = classify(fan).tier;
  if (tier >= minimum) return;
  const std::string msg = "fan classifies as " + std::string(to_string(tier)) + ", need " +
                          std::string(to_string(minimum));
  throw Error(minimum == Tier::Fano ? ErrorKind::NotFano : ErrorKind::NotInClass, msg);
}

ConditionResult check_condition_iii(const Fan& fan) {
  for (std::size_t c = 0; c < fan.max_cones().size(); ++c) {
    const auto duals = dual_basis(fan.generators(fan.max_cones()[c]));
    for (std::size_t r = 0; r < fan.num_rays(); ++r) {
      std::vector<Integer> coords;
      int ones = 0;
      bool ok = true;
      for (const auto& phi : duals) {
        coords.push_back(phi(fan.ray(r)));
        const Integer& b = coords.back();
        if (b < -1 || b > 1) ok = false;
        if (b == 1) ++ones;
      }
      if (!ok || ones > 1) return {false, ConditionWitness{c, r, std::move(coords)}};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// exceptional sets

namespace {

CurveClass exceptional_class(std::size_t num_rays, const IndexSet& set, std::size_t exc) {
  CurveClass cls(num_rays);
  for (auto i : set) cls[i] += 1;
  cls[exc] -= 1;
  return cls;
}

void subsets_up_to(std::size_t m, std::size_t max_size,
                   const std::function<void(const IndexSet&)>& visit) {
  IndexSet current;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (current.size() >= 2) visit(current);
    if (current.size() == max_size) return;
    for (std::size_t i = start; i < m; ++i) {
      current.push_back(i);
      extend(i + 1);
      current.pop_back();
    }
  };
  extend(0);
}

}  // namespace

std::vector<ExceptionalData> exceptional_sets(const Fan& fan) {
  std::map<LatticeVector, std::size_t> ray_index;
  for (std::size_t i = 0; i < fan.num_rays(); ++i) ray_index[fan.ray(i)] = i;
  const auto psets = primitive_sets(fan);

  std::vector<ExceptionalData> out;
  subsets_up_to(fan.num_rays(), fan.dim(), [&](const IndexSet& set) {
    auto it = ray_index.find(fan.ray_sum(set));
    if (it == ray_index.end()) return;
    if (rank_of(fan.generators(set), fan.dim()) != set.size()) return;
    ExceptionalData e;
    e.set = set;
    e.exc_divisor = it->second;
    e.cls = exceptional_class(fan.num_rays(), set, e.exc_divisor);
    e.primitive = std::binary_search(psets.begin(), psets.end(), set);
    out.push_back(std::move(e));
  });
  std::sort(out.begin(), out.end(),
            [](const ExceptionalData& a, const ExceptionalData& b) { return a.set < b.set; });
  return out;
}

std::vector<ExceptionalData> special_exceptional_sets(const Fan& fan, const IndexSet& sigma) {
  const IndexSet s = make_index_set(sigma);
  if (!fan.is_cone(s)) throw Error(ErrorKind::NotACone, to_string_1based(s) + " is not a cone");
  std::vector<ExceptionalData> out;
  for (auto& e : exceptional_sets(fan)) {
    if (!contains(s, e.exc_divisor)) continue;
    std::size_t inside = 0;
    for (auto i : e.set)
      if (contains(s, i)) ++inside;
    if (inside + 1 == e.set.size()) out.push_back(std::move(e));
  }
  return out;
}

FamilyPredicates family_predicates(std::span<const ExceptionalData> family) {
  FamilyPredicates out;
  const std::size_t t = family.size();
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j)
      if (family[i].exc_divisor == family[j].exc_divisor) out.distinct_exc = false;

  // edge i -> j when the exceptional divisor of S_j lies in S_i
  std::vector<std::vector<std::size_t>> edges(t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      if (contains(family[i].set, family[j].exc_divisor)) {
        out.no_overlaps = false;
        edges[i].push_back(j);
      }

  std::vector<int> state(t, 0);  // 0 unvisited, 1 on stack, 2 done
  std::function<bool(std::size_t)> has_cycle = [&](std::size_t v) {
    state[v] = 1;
    for (auto w : edges[v]) {
      if (state[w] == 1) return true;
      if (state[w] == 0 && has_cycle(w)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < t && out.no_cycles; ++v)
    if (state[v] == 0 && has_cycle(v)) out.no_cycles = false;
  return out;
}

// ---------------------------------------------------------------------------
// blow-downs

std::vector<ExceptionalData> primitive_exceptional_sets(const Fan& fan) {
  std::vector<ExceptionalData> out;
  for (const auto& rel : primitive_relations(fan)) {
    if (rel.rhs_cone.size() != 1 || rel.rhs_coeffs.front() != 1) continue;
    ExceptionalData e;
    e.set = rel.set;
    e.exc_divisor = rel.rhs_cone.front();
    e.cls = rel.cls;
    e.primitive = true;
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const ExceptionalData& a, const ExceptionalData& b) {
    return a.exc_divisor < b.exc_divisor;
  });
  return out;
}

Fan blow_down(const Fan& fan, const ExceptionalData& exc) {
  require_tier(fan, Tier::FullClass);
  const auto candidates = primitive_exceptional_sets(fan);
  const bool known = std::any_of(candidates.begin(), candidates.end(), [&](const ExceptionalData& e) {
    return e.set == exc.set && e.exc_divisor == exc.exc_divisor;
  });
  if (!known) {
    throw Error(ErrorKind::BlowDownInvalid,
                to_string_1based(exc.set) + " -> " + std::to_string(exc.exc_divisor + 1) +
                    " is not a primitive exceptional relation");
  }
  const std::size_t hat = exc.exc_divisor;

  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < fan.num_rays(); ++i)
    if (i != hat) rays.push_back(fan.ray(i));
  auto renumber = [hat](std::size_t i) { return i > hat ? i - 1 : i; };

  std::vector<IndexSet> cones;
  std::set<IndexSet> seen;
  for (const auto& mu : fan.max_cones()) {
    IndexSet merged;
    if (contains(mu, hat)) {
      for (auto i : mu)
        if (i != hat) merged.push_back(i);
      merged.insert(merged.end(), exc.set.begin(), exc.set.end());
      merged = make_index_set(merged);
    } else {
      merged = mu;
    }
    IndexSet renamed;
    for (auto i : merged) renamed.push_back(renumber(i));
    if (seen.insert(renamed).second) cones.push_back(std::move(renamed));
  }
  Fan out(fan.dim(), std::move(rays), std::move(cones));
  auto report = validate(out);
  if (!report.accepted) {
    throw Error(ErrorKind::BlowDownInvalid, "contracted fan is invalid: " + report.failures.front());
  }
  return out;
}

std::vector<TowerStage> blow_down_tower(const Fan& fan, std::optional<std::vector<std::size_t>> order) {
  require_tier(fan, Tier::FullClass);
  std::vector<TowerStage> tower;
  TowerStage start{fan, std::nullopt, {}};
  start.ray_origin.resize(fan.num_rays());
  std::iota(start.ray_origin.begin(), start.ray_origin.end(), 0);
  tower.push_back(std::move(start));

  std::vector<std::size_t> requested = order.value_or(std::vector<std::size_t>{});
  std::size_t next_request = 0;
  while (true) {
    const TowerStage& current = tower.back();
    const auto candidates = primitive_exceptional_sets(current.fan);
    const ExceptionalData* chosen = nullptr;
    if (next_request < requested.size()) {
      const std::size_t original = requested[next_request++];
      auto pos = std::find(current.ray_origin.begin(), current.ray_origin.end(), original);
      if (pos == current.ray_origin.end()) {
        throw Error(ErrorKind::BlowDownInvalid,
                    "ray " + std::to_string(original + 1) + " is not present at this stage");
      }
      const auto local = static_cast<std::size_t>(pos - current.ray_origin.begin());
      for (const auto& e : candidates)
        if (e.exc_divisor == local) chosen = &e;
      if (!chosen) {
        throw Error(ErrorKind::BlowDownInvalid,
                    "ray " + std::to_string(original + 1) + " is not an exceptional divisor at this stage");
      }
    } else if (!candidates.empty()) {
      chosen = &candidates.front();
    } else {
      break;
    }
    TowerStage next{blow_down(current.fan, *chosen), current.ray_origin[chosen->exc_divisor], {}};
    next.ray_origin = current.ray_origin;
    next.ray_origin.erase(next.ray_origin.begin() + static_cast<std::ptrdiff_t>(chosen->exc_divisor));
    if (classify(next.fan).tier != Tier::FullClass) {
      throw Error(ErrorKind::BlowDownInvalid, "an intermediate blow-down left the class");
    }
    tower.push_back(std::move(next));
  }
  return tower;
}

ProductTest is_product_of_projective_spaces(const Fan& fan) {
  ProductTest out;
  std::vector<int> covered(fan.num_rays(), 0);
  for (const auto& rel : primitive_relations(fan)) {
    if (!rel.rhs_cone.empty()) return {};
    for (auto i : rel.set) ++covered[i];
    out.factor_dims.push_back(rel.set.size() - 1);
  }
  for (int c : covered)
    if (c != 1) return {};
  out.is_product = true;
  return out;
}

}  // namespace qtoric
