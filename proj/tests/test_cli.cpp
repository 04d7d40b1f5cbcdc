#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "qlogic/cli.hpp"
#include "qlogic/errors.hpp"

namespace qlogic::cli {
namespace {

const std::string kData = QLOGIC_TEST_DATA;
const std::string kDefault = kData + "/default.scenario";
const std::string kDetector = kData + "/detector.scenario";
const std::string kFormulas = kData + "/formulas.txt";

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + "qlogic_" + name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Scenario file with the default keys plus overrides appended (later keys win).
std::string scenario_with(const std::string& name, const std::string& extra) {
  return temp_file(name, read_file(kDefault) + extra);
}

Options with(SemanticsFlag semantics) {
  Options o;
  o.semantics = semantics;
  return o;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

template <typename F>
Outcome run(F&& command) {
  std::ostringstream out, err;
  const int code = command(out, err);
  return {code, out.str(), err.str()};
}

Outcome eval(const std::string& scenario, const std::string& formula, const Options& opt = {}) {
  return run([&](auto& o, auto& e) { return cmd_eval(scenario, formula, opt, o, e); });
}

struct Process {
  int code;
  std::string out;
};

Process spawn(const std::string& args) {
  const std::string command = std::string(QLOGIC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(ScenarioFile, DefaultsCommentsAndErrors) {
  std::istringstream empty("");
  const DoubleSlitConfig d = parse_scenario(empty);
  EXPECT_EQ(d.n_points, 4096);
  EXPECT_EQ(d.d, 6.0);
  EXPECT_FALSE(d.detector_present);

  std::istringstream text("# comment\n  slit.d = 8   # trailing\n\ndetector = true\nseed = 42\nevolve.max_wrap = 0.2\n");
  const DoubleSlitConfig c = parse_scenario(text);
  EXPECT_EQ(c.d, 8.0);
  EXPECT_TRUE(c.detector_present);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.max_wrap, 0.2);

  for (const char* bad : {"colour = red\n", "slit.d = six\n", "slit.d\n", "detector = yes\n", "seed = -1\n",
                          "slit.d = 1.5\n", "amp.c2_re = 0.1\n", "grid.n_points = 1e3\n", "slit.sigma = nan\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(parse_scenario(in), ConfigError) << bad;
  }
  EXPECT_EQ(load_scenario(kDefault).seed, 7u);
  EXPECT_THROW(load_scenario(kData + "/missing.scenario"), ConfigError);
}

TEST(Flags, Parse) {
  EXPECT_EQ(parse_semantics_flag("bvn-lattice"), SemanticsFlag::BvnLattice);
  EXPECT_EQ(parse_variant_flag("bochvar"), ThreeValuedVariant::BochvarInternal);
  EXPECT_THROW(parse_semantics_flag("fuzzy"), ConfigError);
  EXPECT_THROW(parse_variant_flag("lukasiewicz"), ConfigError);
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(kDefault, "P1 ^ P2").out, "P1 ^ P2 = T\n");
  EXPECT_EQ(eval(kDefault, "P1").out, "P1 = GAP\n");
  EXPECT_EQ(eval(kDefault, "  P1 & P2 ", with(SemanticsFlag::BvnTruthFunctional)).out, "P1 & P2 = T\n");
  EXPECT_EQ(eval(kDefault, "P1 & P2", with(SemanticsFlag::BvnLattice)).out, "P1 & P2 = F\n");
  EXPECT_EQ(eval(kDefault, "P1", with(SemanticsFlag::ThreeValued)).out, "P1 = U\n");
  EXPECT_EQ(eval(kDefault, "(!Q | P1) & (!Q | P2)").out, "(!Q | P1) & (!Q | P2) = NDF\n");
  EXPECT_EQ(eval(kDefault, "!Q | (P1 & P2)").out, "!Q | (P1 & P2) = F\n");

  Options bochvar = with(SemanticsFlag::ThreeValued);
  bochvar.variant = ThreeValuedVariant::BochvarInternal;
  const std::string eigen = scenario_with("eigen_variant", "amp.c1_re = 1\namp.c2_re = 0\n");
  // On an eigenstate every atom is defined, so the Bochvar connectives act classically.
  EXPECT_EQ(eval(eigen, "P2 & Q", bochvar).out, "P2 & Q = F\n");
  EXPECT_EQ(eval(kDefault, "P1 & !P1", bochvar).out, "P1 & !P1 = U\n");
}

TEST(Eval, ExitCodes) {
  Outcome r = eval(kDefault, "P1 &");
  EXPECT_EQ(r.code, kFormulaError);
  EXPECT_NE(r.err.find("at byte 4"), std::string::npos) << r.err;
  EXPECT_EQ(eval(kDefault, "R1 | P1").code, kFormulaError);
  EXPECT_EQ(eval(kData + "/missing.scenario", "P1").code, kIoError);
  EXPECT_EQ(eval(scenario_with("bad_key", "colour = red\n"), "P1").code, kConfigError);
  EXPECT_EQ(eval(scenario_with("overlap", "slit.d = 1\n"), "P1").code, kConfigError);
  EXPECT_TRUE(eval(kDefault, "P1").err.empty());
}

TEST(Table, MatchesEvalCellByCell) {
  for (const std::string& scenario : {kDefault, scenario_with("eigen", "amp.c1_re = 0\namp.c2_re = 1\n")}) {
    const Outcome table = run([&](auto& o, auto& e) { return cmd_table(scenario, kFormulas, Options{}, o, e); });
    ASSERT_EQ(table.code, kOk) << table.err;
    std::istringstream rows(table.out);
    std::string line;
    std::getline(rows, line);
    EXPECT_EQ(line, "formula\tthree_valued\tbvn_tf\tbvn_lattice\tpartial");
    int count = 0;
    const std::array<SemanticsFlag, 4> columns{SemanticsFlag::ThreeValued, SemanticsFlag::BvnTruthFunctional,
                                               SemanticsFlag::BvnLattice, SemanticsFlag::Partial};
    while (std::getline(rows, line)) {
      std::vector<std::string> cells;
      std::istringstream split(line);
      for (std::string cell; std::getline(split, cell, '\t');) cells.push_back(cell);
      ASSERT_EQ(cells.size(), 5u) << line;
      for (std::size_t c = 0; c < columns.size(); ++c)
        EXPECT_EQ(eval(scenario, cells[0], with(columns[c])).out, cells[0] + " = " + cells[c + 1] + "\n");
      ++count;
    }
    EXPECT_EQ(count, 8);
  }
}

TEST(Table, SuperpositionRows) {
  const std::string formulas = temp_file("three.txt", "P1\n\nP2\nP1 ^ P2\n");
  const Outcome r = run([&](auto& o, auto& e) { return cmd_table(kDefault, formulas, Options{}, o, e); });
  EXPECT_EQ(r.out,
            "formula\tthree_valued\tbvn_tf\tbvn_lattice\tpartial\n"
            "P1\tU\tT\tT\tGAP\n"
            "P2\tU\tT\tT\tGAP\n"
            "P1 ^ P2\tU\tF\tT\tT\n");
}

TEST(Table, EigenstateColumnsAgree) {
  const std::string eigen = scenario_with("eigen_rows", "amp.c1_re = 1\namp.c2_re = 0\n");
  const std::string formulas = temp_file("classical.txt", "P1\nP2\n!P1\nP1 & P2\nP1 | P2\nP1 ^ P2\n!(P1 ^ !P2)\n");
  const Outcome r = run([&](auto& o, auto& e) { return cmd_table(eigen, formulas, Options{}, o, e); });
  ASSERT_EQ(r.code, kOk);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) {
    std::vector<std::string> cells;
    std::istringstream split(line);
    for (std::string cell; std::getline(split, cell, '\t');) cells.push_back(cell);
    for (std::size_t c = 2; c < cells.size(); ++c) EXPECT_EQ(cells[c], cells[1]) << line;
  }
}

TEST(Table, EmptyFileAndErrors) {
  const Outcome empty = run([&](auto& o, auto& e) { return cmd_table(kDefault, temp_file("empty.txt", ""), Options{}, o, e); });
  EXPECT_EQ(empty.code, kOk);
  EXPECT_EQ(empty.out, "formula\tthree_valued\tbvn_tf\tbvn_lattice\tpartial\n");

  const std::string bad = temp_file("bad.txt", "P1\nP1 &\n");
  const Outcome r = run([&](auto& o, auto& e) { return cmd_table(kDefault, bad, Options{}, o, e); });
  EXPECT_EQ(r.code, kFormulaError);
  EXPECT_NE(r.err.find(bad + ":2:"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  const Outcome missing = run([&](auto& o, auto& e) { return cmd_table(kDefault, kData + "/nope.txt", Options{}, o, e); });
  EXPECT_EQ(missing.code, kIoError);
}

std::vector<std::array<double, 4>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,intensity_no_detector,intensity_with_detector,cross_term");
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    std::array<double, 4> row{};
    EXPECT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &row[0], &row[1], &row[2], &row[3]), 4);
    rows.push_back(row);
  }
  return rows;
}

TEST(Interference, CsvIdentities) {
  const Outcome r = run([&](auto& o, auto& e) { return cmd_interference(kDefault, 1.5, Options{}, o, e); });
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4096u);
  const double dx = 40.0 / 4095.0;
  double none = 0, with = 0, largest = 0;
  for (const auto& row : rows) {
    none += row[1];
    with += row[2];
    EXPECT_LE(std::abs(row[3] - (row[1] - row[2])), 1e-12);
    largest = std::max(largest, std::abs(row[3]));
  }
  EXPECT_NEAR(none * dx, 1.0, 1e-9);
  EXPECT_NEAR(with * dx, 1.0, 1e-9);
  EXPECT_GE(largest, 1e-3);
}

TEST(Interference, DetectorColumnIgnoresRelativePhase) {
  const std::string flipped = scenario_with("flipped", "amp.c2_re = -0.70710678118654752\n");
  const auto a = parse_csv(run([&](auto& o, auto& e) { return cmd_interference(kDefault, 1.0, Options{}, o, e); }).out);
  const auto b = parse_csv(run([&](auto& o, auto& e) { return cmd_interference(flipped, 1.0, Options{}, o, e); }).out);
  ASSERT_EQ(a.size(), b.size());
  bool cross_differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i][2], b[i][2]);
    cross_differs = cross_differs || a[i][3] != b[i][3];
  }
  EXPECT_TRUE(cross_differs);
}

TEST(Interference, OutFileAndErrors) {
  Options opt;
  opt.out = ::testing::TempDir() + "qlogic_curve.csv";
  const Outcome r = run([&](auto& o, auto& e) { return cmd_interference(kDefault, 0.5, opt, o, e); });
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  const Outcome direct = run([&](auto& o, auto& e) { return cmd_interference(kDefault, 0.5, Options{}, o, e); });
  EXPECT_EQ(read_file(*opt.out), direct.out);

  EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_interference(kDefault, -1.0, Options{}, o, e); }).code, kConfigError);
  const std::string strict = scenario_with("strict", "evolve.max_wrap = 1e-6\n");
  const Outcome wrapped = run([&](auto& o, auto& e) { return cmd_interference(strict, 1.5, Options{}, o, e); });
  EXPECT_EQ(wrapped.code, kNumericError);
  EXPECT_NE(wrapped.err.find("wrap"), std::string::npos) << wrapped.err;
  Options unwritable;
  unwritable.out = kData + "/no/such/dir/curve.csv";
  EXPECT_EQ(run([&](auto& o, auto& e) { return cmd_interference(kDefault, 0.5, unwritable, o, e); }).code, kIoError);
}

TEST(Distributivity, Reports) {
  const Outcome r = run([&](auto& o, auto& e) { return cmd_distributivity(kDefault, Options{}, o, e); });
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream in(r.out);
  std::string label;
  Index dim = 0;
  in >> label >> dim;
  std::ostringstream expected;
  expected << "ambient_dim " << dim << "\nlhs !Q | (P1 & P2) rank " << dim - 1 << "\nrhs (!Q | P1) & (!Q | P2) rank "
           << dim << "\nNOT-EQUAL\n";
  EXPECT_EQ(r.out, expected.str());

  const std::string eigen = scenario_with("eigen_dist", "amp.c1_re = 1\namp.c2_re = 0\n");
  const Outcome e = run([&](auto& o, auto& err) { return cmd_distributivity(eigen, Options{}, o, err); });
  EXPECT_NE(e.out.find("\nEQUAL\n"), std::string::npos) << e.out;
}

TEST(Wigner, Reports) {
  const Outcome r = run([&](auto& o, auto& e) { return cmd_wigner(kDefault, Options{}, o, e); });
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("OIT=1 OIP=1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("WIGNER (outside, entangled lab)\n  P1 = GAP\n  P2 = GAP\n  P1 ^ P2 = T\n"), std::string::npos);

  const std::string eigen = scenario_with("eigen_wigner", "amp.c1_re = 1\namp.c2_re = 0\n");
  EXPECT_NE(run([&](auto& o, auto& e) { return cmd_wigner(eigen, Options{}, o, e); }).out.find("OIT=1 OIP=0\n"),
            std::string::npos);

  // The friend's slit may change with the seed; the tautology never does.
  std::set<std::string> slits;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Options opt;
    opt.seed = seed;
    const Outcome s = run([&](auto& o, auto& e) { return cmd_wigner(kDefault, opt, o, e); });
    EXPECT_NE(s.out.find("OIT=1 OIP=1\n"), std::string::npos) << seed;
    slits.insert(s.out.substr(0, s.out.find('\n')));
  }
  EXPECT_EQ(slits.size(), 2u);
}

TEST(Binary, ExitCodesAndDeterminism) {
  const std::string ok = "eval " + kDefault + " 'P1 ^ P2'";
  const Process first = spawn(ok);
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, "P1 ^ P2 = T\n");
  EXPECT_EQ(spawn("--semantics bvn-tf eval " + kDefault + " 'P1 & P2'").out, "P1 & P2 = T\n");
  EXPECT_EQ(spawn("eval " + kDefault + " 'P1 &'").code, 2);
  EXPECT_EQ(spawn("eval " + scenario_with("bin_bad", "slit.d = 0\n") + " P1").code, 3);
  EXPECT_EQ(spawn("interference " + scenario_with("bin_wrap", "evolve.max_wrap = 0\n") + " 1").code, 4);
  EXPECT_EQ(spawn("eval /nonexistent/file P1").code, 1);
  EXPECT_EQ(spawn("--semantics fuzzy eval " + kDefault + " P1").code, 3);

  for (const std::string& args :
       {std::string("table ") + kDefault + " " + kFormulas, "interference " + kDefault + " 1.5",
        "wigner " + kDefault, "--seed 3 wigner " + kDetector, "distributivity " + kDefault}) {
    const Process a = spawn(args), b = spawn(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_FALSE(a.out.empty()) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

}  // namespace
}  // namespace qlogic::cli
