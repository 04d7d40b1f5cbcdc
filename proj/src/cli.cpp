#include "qlogic/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "qlogic/errors.hpp"
#include "qlogic/formula.hpp"
#include "qlogic/lattice.hpp"

namespace qlogic::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

/// A formula that failed to parse or bind, tagged with its line in a formulas file.
class FormulaLineError : public Error {
 public:
  using Error::Error;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& value) {
  double out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw ConfigError("key '" + key + "': '" + value + "' is not a finite number");
  return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "': '" + value + "' is not an unsigned integer");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + value + "'");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DoubleSlitConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file '" + path + "'");
  return parse_scenario(in);
}

Scenario load_built(const std::string& path, const Options& opt) {
  DoubleSlitConfig cfg = read_config(path);
  if (opt.seed) cfg.seed = *opt.seed;
  return build_double_slit(cfg);
}

/// Maps library exceptions onto exit codes.
int guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kFormulaError;
  } catch (const UnboundAtom& e) {
    err << "error: " << e.what() << '\n';
    return kFormulaError;
  } catch (const FormulaLineError& e) {
    err << "error: " << e.what() << '\n';
    return kFormulaError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const InvariantViolation& e) {
    err << "numerical invariant violated: " << e.what() << '\n';
    return kNumericError;
  } catch (const DimensionMismatch& e) {
    err << "numerical invariant violated: " << e.what() << '\n';
    return kNumericError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace

SemanticsFlag parse_semantics_flag(const std::string& text) {
  if (text == "three") return SemanticsFlag::ThreeValued;
  if (text == "bvn-tf") return SemanticsFlag::BvnTruthFunctional;
  if (text == "bvn-lattice") return SemanticsFlag::BvnLattice;
  if (text == "partial") return SemanticsFlag::Partial;
  throw ConfigError("unknown semantics '" + text + "'");
}

ThreeValuedVariant parse_variant_flag(const std::string& text) {
  if (text == "kleene") return ThreeValuedVariant::KleeneStrong;
  if (text == "bochvar") return ThreeValuedVariant::BochvarInternal;
  throw ConfigError("unknown three-valued variant '" + text + "'");
}

DoubleSlitConfig parse_scenario(std::istream& in) {
  DoubleSlitConfig cfg;
  double c1_re = cfg.c1.real(), c1_im = cfg.c1.imag();
  double c2_re = cfg.c2.real(), c2_im = cfg.c2.imag();

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"grid.x_min", [&](auto& k, auto& v) { cfg.x_min = parse_real(k, v); }},
      {"grid.x_max", [&](auto& k, auto& v) { cfg.x_max = parse_real(k, v); }},
      {"grid.n_points", [&](auto& k, auto& v) { cfg.n_points = static_cast<Index>(parse_unsigned(k, v)); }},
      {"slit.d", [&](auto& k, auto& v) { cfg.d = parse_real(k, v); }},
      {"slit.half_width", [&](auto& k, auto& v) { cfg.half_width = parse_real(k, v); }},
      {"slit.sigma", [&](auto& k, auto& v) { cfg.sigma = parse_real(k, v); }},
      {"amp.c1_re", [&](auto& k, auto& v) { c1_re = parse_real(k, v); }},
      {"amp.c1_im", [&](auto& k, auto& v) { c1_im = parse_real(k, v); }},
      {"amp.c2_re", [&](auto& k, auto& v) { c2_re = parse_real(k, v); }},
      {"amp.c2_im", [&](auto& k, auto& v) { c2_im = parse_real(k, v); }},
      {"detector", [&](auto& k, auto& v) { cfg.detector_present = parse_bool(k, v); }},
      {"seed", [&](auto& k, auto& v) { cfg.seed = parse_unsigned(k, v); }},
      {"evolve.max_wrap", [&](auto& k, auto& v) { cfg.max_wrap = parse_real(k, v); }},
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second(key, value);
  }
  cfg.c1 = Complex(c1_re, c1_im);
  cfg.c2 = Complex(c2_re, c2_im);
  cfg.validate();
  return cfg;
}

DoubleSlitConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file '" + path + "'");
  return parse_scenario(in);
}

std::string evaluate(const Formula& f, const Scenario& s, SemanticsFlag semantics, ThreeValuedVariant variant) {
  SemanticsConfig cfg;
  cfg.three_valued_variant = variant;
  switch (semantics) {
    case SemanticsFlag::ThreeValued: return to_string(valuate_three_valued(f, s.binding, s.logic_state, cfg));
    case SemanticsFlag::BvnTruthFunctional:
      cfg.bvn_mode = BvnMode::TruthFunctional;
      return to_string(valuate_bvn(f, s.binding, s.logic_state, cfg));
    case SemanticsFlag::BvnLattice:
      cfg.bvn_mode = BvnMode::Lattice;
      return to_string(valuate_bvn(f, s.binding, s.logic_state, cfg));
    case SemanticsFlag::Partial: return to_string(valuate_partial(f, s.binding, s.logic_state));
  }
  return "?";
}

int cmd_eval(const std::string& scenario_path, const std::string& formula_text, const Options& opt,
             std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Formula f = parse(formula_text);
    const Scenario s = load_built(scenario_path, opt);
    out << trim(formula_text) << " = " << evaluate(f, s, opt.semantics, opt.variant) << '\n';
  });
}

int cmd_table(const std::string& scenario_path, const std::string& formulas_path, const Options& opt,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_built(scenario_path, opt);
    std::ifstream in(formulas_path);
    if (!in) throw IoError("cannot read formulas file '" + formulas_path + "'");

    std::vector<std::pair<std::string, Formula>> formulas;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string text = trim(line);
      if (text.empty()) continue;
      try {
        Formula f = parse(text);
        s.binding.require_atoms(f);
        formulas.emplace_back(text, std::move(f));
      } catch (const Error& e) {
        throw FormulaLineError(formulas_path + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }

    std::ostringstream table;
    table << "formula\tthree_valued\tbvn_tf\tbvn_lattice\tpartial\n";
    for (const auto& [text, f] : formulas) {
      table << text << '\t' << evaluate(f, s, SemanticsFlag::ThreeValued, opt.variant) << '\t'
            << evaluate(f, s, SemanticsFlag::BvnTruthFunctional, opt.variant) << '\t'
            << evaluate(f, s, SemanticsFlag::BvnLattice, opt.variant) << '\t'
            << evaluate(f, s, SemanticsFlag::Partial, opt.variant) << '\n';
    }
    out << table.str();
  });
}

int cmd_interference(const std::string& scenario_path, double t, const Options& opt, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    if (!(t >= 0) || !std::isfinite(t)) throw ConfigError("evolution time must be a finite t >= 0");
    const Scenario s = load_built(scenario_path, opt);
    const auto rows = interference_table(s, t);

    std::ostringstream csv;
    csv << "x,intensity_no_detector,intensity_with_detector,cross_term\n";
    for (const auto& r : rows)
      csv << format_real(r.x) << ',' << format_real(r.no_detector) << ',' << format_real(r.with_detector) << ','
          << format_real(r.cross_term) << '\n';

    if (!opt.out) {
      out << csv.str();
      return;
    }
    std::ofstream file(*opt.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write '" + *opt.out + "'");
    file << csv.str();
    if (!file.flush()) throw IoError("write to '" + *opt.out + "' failed");
  });
}

int cmd_distributivity(const std::string& scenario_path, const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_built(scenario_path, opt);
    const auto report =
        distributivity_report(s.binding.subspace("Q"), s.binding.subspace(s.atom_names[0]),
                              s.binding.subspace(s.atom_names[1]));
    out << "ambient_dim " << s.logic_dim() << '\n'
        << "lhs !Q | (P1 & P2) rank " << report.lhs.rank() << '\n'
        << "rhs (!Q | P1) & (!Q | P2) rank " << report.rhs.rank() << '\n'
        << (report.equal ? "EQUAL" : "NOT-EQUAL") << '\n';
  });
}

int cmd_wigner(const std::string& scenario_path, const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    DoubleSlitConfig cfg = read_config(scenario_path);
    if (opt.seed) cfg.seed = *opt.seed;
    const WignerReport r = WignerExperiment(cfg).report(cfg.seed);

    std::ostringstream os;
    auto block = [&](const std::string& title, const auto& values) {
      os << title << '\n';
      for (const auto& text : WignerExperiment::formulas()) os << "  " << text << " = " << to_string(values.at(text)) << '\n';
    };
    block("FRIEND (inside, detector reported slit " + std::to_string(r.friend_outcome) + ")", r.friend_values);
    block("WIGNER (outside, entangled lab)", r.wigner_values);
    block("INSTRUMENTALIST+CLASSICAL (outside, lattice bivaluation)", r.classical_values);
    os << "OIT=" << (r.oit ? 1 : 0) << " OIP=" << (r.oip ? 1 : 0) << '\n';
    out << os.str();
  });
}

}  // namespace qlogic::cli
