#pragma once

// Command implementations behind the qlogic executable. Each command writes its
// result to `out`, diagnostics to `err`, and returns the process exit code.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qlogic/scenarios.hpp"
#include "qlogic/semantics.hpp"

namespace qlogic::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kFormulaError = 2,
  kConfigError = 3,
  kNumericError = 4,
};

enum class SemanticsFlag { ThreeValued, BvnTruthFunctional, BvnLattice, Partial };

SemanticsFlag parse_semantics_flag(const std::string& text);        // three|bvn-tf|bvn-lattice|partial
ThreeValuedVariant parse_variant_flag(const std::string& text);     // kleene|bochvar

struct Options {
  SemanticsFlag semantics = SemanticsFlag::Partial;
  ThreeValuedVariant variant = ThreeValuedVariant::KleeneStrong;
  std::optional<std::uint64_t> seed;  // overrides the scenario file
  std::optional<std::string> out;     // interference CSV destination; stdout when absent
};

/// Scenario file: UTF-8 `key = value` lines, `#` comments. Unknown keys and malformed values
/// raise ConfigError; absent keys keep the DoubleSlitConfig defaults.
DoubleSlitConfig parse_scenario(std::istream& in);
DoubleSlitConfig load_scenario(const std::string& path);

/// Renders one formula under the selected semantics ("T", "F", "U", "GAP", "NDF").
std::string evaluate(const Formula& f, const Scenario& s, SemanticsFlag semantics, ThreeValuedVariant variant);

int cmd_eval(const std::string& scenario_path, const std::string& formula_text, const Options& opt,
             std::ostream& out, std::ostream& err);
int cmd_table(const std::string& scenario_path, const std::string& formulas_path, const Options& opt,
              std::ostream& out, std::ostream& err);
int cmd_interference(const std::string& scenario_path, double t, const Options& opt, std::ostream& out,
                     std::ostream& err);
int cmd_distributivity(const std::string& scenario_path, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_wigner(const std::string& scenario_path, const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace qlogic::cli
