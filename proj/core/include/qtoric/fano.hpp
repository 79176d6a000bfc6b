#pragma once

// Fano-type certification from primitive relations, exceptional sets, and
// blow-downs toward a product of projective spaces.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qtoric/fan.hpp"

namespace qtoric {

/// Ordered from weakest to strongest.
enum class Tier {
  NotFano,
  Fano,              // sum a_i < k in every primitive relation
  SubvarietiesFano,  // sum a_i <= 1 in every primitive relation
  FullClass,         // ... and each ray is on at most one right-hand side
};

std::string_view to_string(Tier tier);

struct RelationCertificate {
  PrimitiveData relation;
  Integer coefficient_sum;
  /// Set when the right-hand side is a single ray with coefficient 1.
  std::optional<std::size_t> rhs_ray;
  /// Number of primitive relations having rhs_ray as their right-hand side.
  std::size_t rhs_multiplicity = 0;
};

struct ClassTier {
  Tier tier = Tier::NotFano;
  std::vector<RelationCertificate> certificates;
};

ClassTier classify(const Fan& fan);

/// Throws NotInClass (or NotFano when `minimum` is Tier::Fano) if the fan
/// classifies below `minimum`.
void require_tier(const Fan& fan, Tier minimum);

struct ConditionWitness {
  std::size_t max_cone;  // index into fan.max_cones()
  std::size_t ray;
  std::vector<Integer> coords;
};

struct ConditionResult {
  bool holds = true;
  std::optional<ConditionWitness> witness;
};

/// Every ray, written in the basis of every maximal cone, has coordinates in
/// [-1, 1] with at most one coordinate equal to 1.
ConditionResult check_condition_iii(const Fan& fan);

struct ExceptionalData {
  IndexSet set;
  std::size_t exc_divisor = 0;
  CurveClass cls;
  /// Whether `set` is itself a primitive set (only those can be blown down).
  bool primitive = false;

  bool operator==(const ExceptionalData&) const = default;
};

/// Sets of linearly independent rays whose sum is a ray generator.
std::vector<ExceptionalData> exceptional_sets(const Fan& fan);

/// Exceptional sets with k-1 members and the exceptional ray inside sigma.
/// Throws NotACone.
std::vector<ExceptionalData> special_exceptional_sets(const Fan& fan, const IndexSet& sigma);

struct FamilyPredicates {
  bool distinct_exc = true;
  bool no_overlaps = true;
  bool no_cycles = true;
};

FamilyPredicates family_predicates(std::span<const ExceptionalData> family);

/// Contracts the exceptional divisor of a primitive exceptional relation.
/// Rays keep their order with exc.exc_divisor removed. Throws NotInClass if
/// the fan is not FullClass and BlowDownInvalid if `exc` is not a primitive
/// exceptional relation or the contracted fan fails validation.
Fan blow_down(const Fan& fan, const ExceptionalData& exc);

/// The primitive exceptional data of a fan (candidates for blow_down),
/// ordered by exceptional ray index.
std::vector<ExceptionalData> primitive_exceptional_sets(const Fan& fan);

struct TowerStage {
  Fan fan;
  /// Original index of the ray contracted to reach this stage; empty for the
  /// starting fan.
  std::optional<std::size_t> removed_ray;
  /// Original index of each ray of `fan`.
  std::vector<std::size_t> ray_origin;
};

/// Blows down exceptional divisors until none remain. `order` lists original
/// ray indices to contract first; afterwards the smallest exceptional ray is
/// taken. Throws BlowDownInvalid if a requested ray is not blow-down-able at
/// its turn or an intermediate fan leaves the class.
std::vector<TowerStage> blow_down_tower(const Fan& fan,
                                        std::optional<std::vector<std::size_t>> order = std::nullopt);

struct ProductTest {
  bool is_product = false;
  std::vector<std::size_t> factor_dims;
};

/// Primitive sets partition the rays and every primitive relation has an
/// empty right-hand side.
ProductTest is_product_of_projective_spaces(const Fan& fan);

}  // namespace qtoric
