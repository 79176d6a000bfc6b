#pragma once

// Command implementations behind the qtoric executable. Every command returns
// its exit code and the text it prints, so tests can drive them directly.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtoric/error.hpp"
#include "qtoric/fan.hpp"
#include "qtoric/quantum.hpp"

namespace qtoric::cli {

struct Output {
  int exit_code = 0;
  std::string out;  // standard output
  std::string err;  // standard error
};

int exit_code_for(ErrorKind kind);

/// Evaluates a class expression over a fan:
///   expr   := term (('+' | '-') term)*
///   term   := scalar? factor ('*' factor)* | scalar
///   factor := 'D' int | '[' int (',' int)* ']' | '(' expr ')'
///   scalar := int ('/' int)?
/// D<i> and [i,...] are the classical classes of the divisor and of the
/// orbit closure of a cone (1-based indices, "[]" is the unit); '*' is the
/// quantum product. Throws ParseError, IndexOutOfRange or NotACone.
QuantumClass evaluate_expression(const QuantumRing& ring, std::string_view text);

/// "1,2,3" -> {1, 2, 3}. Throws ParseError.
std::vector<long> parse_int_list(std::string_view text);

/// 1-based list -> 0-based index set. Throws ParseError or IndexOutOfRange.
IndexSet parse_cone(std::string_view text, std::size_t num_rays);

/// Exactly num_rays integers. Throws ParseError.
CurveClass parse_curve_class(std::string_view text, std::size_t num_rays);

Output cmd_validate(const std::string& fan_path, bool json);
Output cmd_classify(const std::string& fan_path, bool json);
Output cmd_primitive(const std::string& fan_path, bool json);
Output cmd_present(const std::string& fan_path, bool json);
Output cmd_giambelli(const std::string& fan_path, const std::string& cone, bool json);
Output cmd_multiply(const std::string& fan_path, const std::string& a, const std::string& b, bool json);
Output cmd_gw(const std::string& fan_path, const std::string& a, const std::string& b, const std::string& c,
              const std::string& beta, bool json);
Output cmd_tower(const std::string& fan_path, const std::optional<std::string>& order, bool json);
Output cmd_tree(const std::string& fan_path, const std::optional<std::string>& beta,
                const std::optional<std::string>& cone, const std::optional<long>& divisor, bool json);
Output cmd_census(std::size_t dim, std::size_t max_rays, bool json);

/// Complete fans in dimension 2 with at most max_rays rays and tier
/// FullClass, one per isomorphism class, ordered by ray count.
std::vector<Fan> census_2d(std::size_t max_rays);

/// "P2", "P1xP1", "Bl1P2", "Bl2P2", "Bl3P2" when the fan is isomorphic to
/// one of the hand-built surfaces, empty otherwise.
std::string surface_name(const Fan& fan);

}  // namespace qtoric::cli
