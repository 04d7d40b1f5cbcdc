#pragma once

// Executable thought experiments: the double slit with and without a which-way
// detector, detector collapse, interference curves, Schrödinger's cat and the
// two-observer (friend inside the lab, Wigner outside) valuation report.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qlogic/hilbert.hpp"
#include "qlogic/semantics.hpp"

namespace qlogic {

struct DoubleSlitConfig {
  double x_min = -20.0;
  double x_max = 20.0;
  Index n_points = 4096;
  double d = 6.0;           // slits centred at 0 and d
  double half_width = 1.0;  // each slit is [x_n - half_width, x_n + half_width]
  double sigma = 0.5;
  Complex c1{M_SQRT1_2, 0.0};
  Complex c2{M_SQRT1_2, 0.0};
  bool detector_present = false;
  std::uint64_t seed = 0;
  /// Largest wrapped amplitude tolerated when curves are propagated (see wrap_around_amplitude).
  double max_wrap = 0.1;

  /// Throws ConfigError when an invariant fails.
  void validate() const;
};

/// Time at which the two default packets overlap well between the slits.
inline constexpr double kDefaultOverlapTime = 1.5;

/// A prepared experiment. Propositions are evaluated in the logic space: the slit-supported
/// part of the grid (the plate), tensored with the detector once one is attached.
struct Scenario {
  std::optional<PositionGrid> grid;  // absent for abstract scenarios
  StateVector phi1;
  StateVector phi2;
  Complex c1;
  Complex c2;
  /// Particle state on the grid, or particle (x) detector once a detector is attached.
  std::variant<StateVector, CompositeState> psi;
  /// Grid indices kept by the logic space (empty for abstract scenarios).
  std::vector<Index> plate;
  /// The state every valuation sees.
  StateVector logic_state;
  Binding binding;
  std::array<std::string, 2> atom_names{"P1", "P2"};
  std::optional<int> outcome;  // set after a collapse
  /// Limit passed to the wrap-around check when curves are propagated.
  double max_wrap = tol::kWrap;

  bool detector_attached() const { return std::holds_alternative<CompositeState>(psi); }
  const Projector& p1_hat() const { return binding.projector(atom_names[0]); }
  const Projector& p2_hat() const { return binding.projector(atom_names[1]); }
  Index logic_dim() const { return logic_state.dim(); }
};

/// Restricts a grid state to the plate; exact when the state vanishes off the plate.
StateVector to_plate(const StateVector& v, const std::vector<Index>& plate);

Scenario build_double_slit(const DoubleSlitConfig& cfg);

/// Entangles the particle with a two-state pointer and re-binds P1, P2 to P_n (x) |d_n><d_n|.
Scenario attach_which_way_detector(const Scenario& s);

/// Seeded outcome source: outcome 1 with probability p1, else 2.
class BornSampler {
 public:
  explicit BornSampler(std::uint64_t seed);
  int draw(double p1);
  /// Uniform on [0, 1) from the top 53 bits of the engine output.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

struct CollapseResult {
  int outcome;
  Scenario scenario;
};

CollapseResult collapse(const Scenario& s, std::uint64_t rng_seed);

struct CurvePoint {
  double x;
  double intensity;
};

/// |Psi(x,t)|^2 without a detector; the detector-traced sum of branch intensities with one.
std::vector<CurvePoint> intensity_curve(const Scenario& s, double t);

struct InterferenceRow {
  double x;
  double no_detector;
  double with_detector;
  double cross_term;  // no_detector - with_detector
};

/// Both readings of the screen pattern at time t from the scenario's slit states and amplitudes.
std::vector<InterferenceRow> interference_table(const Scenario& s, double t);

Scenario schrodinger_cat();

/// Replaces the evaluated state by the normalized projection onto the named atom's subspace.
Scenario project_onto(const Scenario& s, const std::string& atom);

struct WignerReport {
  std::map<std::string, PartialTruth> friend_values;
  std::map<std::string, PartialTruth> wigner_values;
  /// Outside observer reading the entangled state with the lattice bivaluation, for contrast.
  std::map<std::string, Bit> classical_values;
  int friend_outcome = 0;
  bool oit = false;
  bool oip = false;
};

/// The entangled lab with formulas compiled once; report() only draws the friend's outcome.
class WignerExperiment {
 public:
  explicit WignerExperiment(const DoubleSlitConfig& cfg);
  WignerReport report(std::uint64_t rng_seed) const;

  static const std::vector<std::string>& formulas();

 private:
  Scenario lab_;
  std::vector<std::pair<std::string, PartialEvaluator>> partial_;
  std::vector<std::pair<std::string, LatticeEvaluator>> lattice_;
};

WignerReport wigner_friend_report(const DoubleSlitConfig& cfg, std::uint64_t rng_seed);

}  // namespace qlogic
