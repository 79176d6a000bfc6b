#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace qtoric::cli;

  CLI::App app{"Quantum cohomology of toric varieties from their fans"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Print machine-readable JSON");

  std::string fan;
  auto fan_command = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--fan", fan, "Fan file")->required();
    return sub;
  };

  CLI::App* validate = fan_command("validate", "Check that a fan is complete and nonsingular");
  CLI::App* classify = fan_command("classify", "Tier, primitive relations, condition (iii), exceptional sets");
  CLI::App* primitive = fan_command("primitive", "Primitive sets and relations");
  CLI::App* present = fan_command("present", "Presentation of the quantum cohomology ring");

  std::string cone;
  CLI::App* giambelli = fan_command("giambelli", "Quantum Giambelli polynomial of an orbit closure");
  giambelli->add_option("--cone", cone, "1-based ray list, e.g. 1,4")->required();

  std::string a, b, c;
  CLI::App* multiply = fan_command("multiply", "Quantum product of two class expressions");
  multiply->add_option("a", a)->required();
  multiply->add_option("b", b)->required();

  std::string beta;
  CLI::App* gw = fan_command("gw", "Three-point Gromov-Witten invariant");
  gw->add_option("a", a)->required();
  gw->add_option("b", b)->required();
  gw->add_option("c", c)->required();
  gw->add_option("--beta", beta, "Curve class as m integers")->required();

  std::optional<std::string> order;
  CLI::App* tower = fan_command("tower", "Blow-down tower to a product of projective spaces");
  tower->add_option("--order", order, "1-based rays to blow down first, e.g. 4,5");

  std::optional<std::string> tree_beta, tree_cone;
  std::optional<long> divisor;
  CLI::App* tree = fan_command("tree", "Tree of toric curves for a class, or a minimal tree");
  tree->add_option("--beta", tree_beta, "Curve class as m integers");
  tree->add_option("--cone", tree_cone, "Maximal cone of the starting fixed point");
  tree->add_option("--divisor", divisor, "1-based target divisor");

  std::size_t dim = 2;
  std::size_t max_rays = 6;
  CLI::App* census = app.add_subcommand("census", "Isomorphism classes of surfaces in the class");
  census->add_option("--dim", dim, "Dimension (2 only)");
  census->add_option("--max-rays", max_rays, "Largest number of rays");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out;
  if (*validate) out = cmd_validate(fan, json);
  else if (*classify) out = cmd_classify(fan, json);
  else if (*primitive) out = cmd_primitive(fan, json);
  else if (*present) out = cmd_present(fan, json);
  else if (*giambelli) out = cmd_giambelli(fan, cone, json);
  else if (*multiply) out = cmd_multiply(fan, a, b, json);
  else if (*gw) out = cmd_gw(fan, a, b, c, beta, json);
  else if (*tower) out = cmd_tower(fan, order, json);
  else if (*tree) out = cmd_tree(fan, tree_beta, tree_cone, divisor, json);
  else if (*census) out = cmd_census(dim, max_rays, json);

  std::cout << out.out << std::flush;
  std::cerr << out.err << std::flush;
  return out.exit_code;
}
