#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qlogic/cli.hpp"
#include "qlogic/errors.hpp"

int main(int argc, char** argv) {
  using namespace qlogic::cli;

  CLI::App app{"Evaluate propositions about quantum systems under three-valued, total and partial bivaluation semantics"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string semantics = "partial";
  std::string variant = "kleene";
  std::uint64_t seed = 0;
  std::string out_path;
  app.add_option("--semantics", semantics, "three | bvn-tf | bvn-lattice | partial")
      ->check(CLI::IsMember({"three", "bvn-tf", "bvn-lattice", "partial"}));
  app.add_option("--variant", variant, "three-valued connectives: kleene | bochvar")
      ->check(CLI::IsMember({"kleene", "bochvar"}));
  auto* seed_opt = app.add_option("--seed", seed, "collapse seed, overrides the scenario file");
  auto* out_opt = app.add_option("--out", out_path, "output path for the interference CSV");

  std::string scenario_path;
  std::string formula;
  std::string formulas_path;
  double t = 0.0;

  auto* eval = app.add_subcommand("eval", "evaluate one formula");
  eval->add_option("scenario", scenario_path, "scenario file")->required();
  eval->add_option("formula", formula, "formula, e.g. 'P1 ^ P2'")->required();

  auto* table = app.add_subcommand("table", "tabulate formulas under every semantics");
  table->add_option("scenario", scenario_path, "scenario file")->required();
  table->add_option("formulas", formulas_path, "file with one formula per line")->required();

  auto* interference = app.add_subcommand("interference", "screen intensity with and without which-way detector");
  interference->add_option("scenario", scenario_path, "scenario file")->required();
  interference->add_option("t", t, "evolution time (hbar = m = 1)")->required();

  auto* distributivity = app.add_subcommand("distributivity", "distributive law on span{Psi}, P1, P2");
  distributivity->add_option("scenario", scenario_path, "scenario file")->required();

  auto* wigner = app.add_subcommand("wigner", "friend and Wigner valuations");
  wigner->add_option("scenario", scenario_path, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  Options opt;
  opt.semantics = parse_semantics_flag(semantics);
  opt.variant = parse_variant_flag(variant);
  if (seed_opt->count() > 0) opt.seed = seed;
  if (out_opt->count() > 0) opt.out = out_path;

  if (*eval) return cmd_eval(scenario_path, formula, opt, std::cout, std::cerr);
  if (*table) return cmd_table(scenario_path, formulas_path, opt, std::cout, std::cerr);
  if (*interference) return cmd_interference(scenario_path, t, opt, std::cout, std::cerr);
  if (*distributivity) return cmd_distributivity(scenario_path, opt, std::cout, std::cerr);
  if (*wigner) return cmd_wigner(scenario_path, opt, std::cout, std::cerr);
  return 1;
}
