#include "qlogic/scenarios.hpp"

#include <cmath>
#include <sstream>

#include "qlogic/errors.hpp"
#include "qlogic/lattice.hpp"

namespace qlogic {

namespace {

constexpr Index kDetectorDim = 2;

bool in_window(double x, double center, double half_width) {
  return center - half_width <= x && x <= center + half_width;
}

/// Grid composite state restricted to plate (x) detector.
StateVector composite_to_plate(const CompositeState& c, const std::vector<Index>& plate) {
  const Index dd = c.detector_dim();
  VectorXc out(static_cast<Index>(plate.size()) * dd);
  const double w = std::sqrt(c.particle_space().weight());
  for (std::size_t j = 0; j < plate.size(); ++j)
    for (Index d = 0; d < dd; ++d) out[static_cast<Index>(j) * dd + d] = c.amplitude(plate[j], d) * w;
  const StateVector v(std::move(out));
  if (std::abs(v.squared_norm() - c.squared_norm()) > tol::kNumeric)
    throw InvariantViolation("composite state has weight off the slits");
  return v;
}

void rebind_logic(Scenario& s, const Projector& p1, const Projector& p2) {
  Binding b;
  b.bind(s.atom_names[0], p1);
  b.bind(s.atom_names[1], p2);
  b.bind("Q", Subspace::line(s.logic_state.amplitudes()));
  s.binding = std::move(b);
}

}  // namespace

void DoubleSlitConfig::validate() const {
  std::ostringstream why;
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) why << "grid bounds must satisfy x_min < x_max; ";
  if (n_points < 2) why << "grid needs at least two points; ";
  if (!(d > 0)) why << "slit separation d must be positive; ";
  if (!(half_width > 0)) why << "slit half width must be positive; ";
  if (!(2 * half_width < d)) why << "slits overlap: need 2*half_width < d; ";
  if (!(sigma > 0) || !std::isfinite(sigma)) why << "sigma must be positive; ";
  if (-half_width < x_min || d + half_width > x_max) why << "slit windows must lie inside the grid; ";
  if (std::abs(std::norm(c1) + std::norm(c2) - 1.0) > tol::kNorm) why << "|c1|^2 + |c2|^2 must equal 1; ";
  if (!(max_wrap >= 0)) why << "max_wrap must be non-negative; ";
  const std::string msg = why.str();
  if (!msg.empty()) throw ConfigError(msg.substr(0, msg.size() - 2));
}

StateVector to_plate(const StateVector& v, const std::vector<Index>& plate) {
  VectorXc out(static_cast<Index>(plate.size()));
  const double w = std::sqrt(v.weight());
  for (std::size_t j = 0; j < plate.size(); ++j) out[static_cast<Index>(j)] = v[plate[j]] * w;
  StateVector r(std::move(out));
  if (std::abs(r.squared_norm() - v.squared_norm()) > tol::kNumeric)
    throw InvariantViolation("state has weight off the slits");
  return r;
}

Scenario build_double_slit(const DoubleSlitConfig& cfg) {
  cfg.validate();
  const PositionGrid grid(cfg.x_min, cfg.x_max, cfg.n_points);
  StateVector phi1 = gaussian_slit_state(grid, 0.0, cfg.half_width, cfg.sigma);
  StateVector phi2 = gaussian_slit_state(grid, cfg.d, cfg.half_width, cfg.sigma);
  StateVector psi = (cfg.c1 * phi1 + cfg.c2 * phi2).normalized();

  std::vector<Index> plate;
  std::vector<bool> in1;
  std::vector<bool> in2;
  for (Index i = 0; i < grid.n_points(); ++i) {
    const bool a = in_window(grid.x(i), 0.0, cfg.half_width);
    const bool b = in_window(grid.x(i), cfg.d, cfg.half_width);
    if (!a && !b) continue;
    plate.push_back(i);
    in1.push_back(a);
    in2.push_back(b);
  }

  StateVector logic = to_plate(psi, plate);
  Scenario s{grid, std::move(phi1), std::move(phi2), cfg.c1, cfg.c2, std::move(psi), std::move(plate),
             std::move(logic), {}, {"P1", "P2"}, std::nullopt, cfg.max_wrap};
  rebind_logic(s, Projector::diagonal(in1), Projector::diagonal(in2));
  if (cfg.detector_present) return attach_which_way_detector(s);
  return s;
}

Scenario attach_which_way_detector(const Scenario& s) {
  if (s.detector_attached()) throw InvalidArgument("a which-way detector is already attached");
  if (!s.grid) throw InvalidArgument("which-way detector needs a double-slit scenario");
  const auto& particle = std::get<StateVector>(s.psi);
  const std::vector<DetectorComponent> parts{{s.c1 * s.phi1, 0}, {s.c2 * s.phi2, 1}};
  CompositeState composite = attach_detector<double>(particle, parts, kDetectorDim);

  Scenario out = s;
  out.logic_state = composite_to_plate(composite, s.plate);
  out.psi = std::move(composite);
  const Projector p1 = tensor_with_pointer(s.p1_hat(), kDetectorDim, 0);
  const Projector p2 = tensor_with_pointer(s.p2_hat(), kDetectorDim, 1);
  rebind_logic(out, p1, p2);
  return out;
}

BornSampler::BornSampler(std::uint64_t seed) : engine_(seed) {}

double BornSampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int BornSampler::draw(double p1) { return uniform() < p1 ? 1 : 2; }

CollapseResult collapse(const Scenario& s, std::uint64_t rng_seed) {
  if (!s.detector_attached()) throw InvalidArgument("collapse needs an attached which-way detector");
  const auto& composite = std::get<CompositeState>(s.psi);
  const double p1 = composite.branch(0).squared_norm() / composite.squared_norm();
  BornSampler sampler(rng_seed);
  const int outcome = sampler.draw(p1);
  const Index d = outcome - 1;

  const StateVector& phi = outcome == 1 ? s.phi1 : s.phi2;
  const std::vector<DetectorComponent> part{{phi, d}};
  CompositeState post = attach_detector<double>(phi, part, kDetectorDim);

  Scenario out = s;
  out.logic_state = composite_to_plate(post, s.plate);
  out.psi = std::move(post);
  out.outcome = outcome;
  // Q keeps naming the prepared (entangled) state; P1, P2 stay on the pointer-dressed projectors.
  return {outcome, std::move(out)};
}

std::vector<CurvePoint> intensity_curve(const Scenario& s, double t) {
  if (!s.grid) throw InvalidArgument("intensity curves need a position grid");
  RVector<double> intensity;
  if (const auto* particle = std::get_if<StateVector>(&s.psi)) {
    intensity = free_evolve_checked(*particle, t, s.max_wrap).intensity();
  } else {
    const auto& composite = std::get<CompositeState>(s.psi);
    intensity = RVector<double>::Zero(s.grid->n_points());
    for (Index d = 0; d < composite.detector_dim(); ++d) {
      const StateVector branch = composite.branch(d);
      if (branch.is_zero()) continue;
      intensity += free_evolve_checked(branch, t, s.max_wrap).intensity();
    }
  }
  std::vector<CurvePoint> out(static_cast<std::size_t>(s.grid->n_points()));
  for (Index i = 0; i < s.grid->n_points(); ++i) out[static_cast<std::size_t>(i)] = {s.grid->x(i), intensity[i]};
  return out;
}

std::vector<InterferenceRow> interference_table(const Scenario& s, double t) {
  if (!s.grid) throw InvalidArgument("interference needs a position grid");
  const StateVector a = free_evolve_checked(s.c1 * s.phi1, t, s.max_wrap);
  const StateVector b = free_evolve_checked(s.c2 * s.phi2, t, s.max_wrap);
  const StateVector superposed = free_evolve_checked(s.c1 * s.phi1 + s.c2 * s.phi2, t, s.max_wrap);
  std::vector<InterferenceRow> rows(static_cast<std::size_t>(s.grid->n_points()));
  for (Index i = 0; i < s.grid->n_points(); ++i) {
    const double none = std::norm(superposed[i]);
    const double with = std::norm(a[i]) + std::norm(b[i]);
    rows[static_cast<std::size_t>(i)] = {s.grid->x(i), none, with, none - with};
  }
  return rows;
}

Scenario schrodinger_cat() {
  const StateVector dead = StateVector::basis(2, 0);
  const StateVector alive = StateVector::basis(2, 1);
  StateVector psi = (M_SQRT1_2 * dead + M_SQRT1_2 * alive).normalized();
  Scenario s{std::nullopt, dead, alive, Complex(M_SQRT1_2), Complex(M_SQRT1_2), psi, {}, psi, {},
             {"DEAD", "ALIVE"}, std::nullopt, tol::kWrap};
  rebind_logic(s, Projector::diagonal({true, false}), Projector::diagonal({false, true}));
  return s;
}

Scenario project_onto(const Scenario& s, const std::string& atom) {
  const StateVector projected = apply(s.binding.projector(atom), s.logic_state);
  if (projected.squared_norm() <= tol::kMembership) throw InvalidArgument("projection annihilates the state");
  Scenario out = s;
  out.logic_state = projected.normalized();
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& WignerExperiment::formulas() {
  static const std::vector<std::string> list{"P1", "P2", "P1 ^ P2"};
  return list;
}

namespace {

Scenario entangled_lab(const DoubleSlitConfig& cfg) {
  DoubleSlitConfig lab = cfg;
  lab.detector_present = false;
  return attach_which_way_detector(build_double_slit(lab));
}

}  // namespace

WignerExperiment::WignerExperiment(const DoubleSlitConfig& cfg) : lab_(entangled_lab(cfg)) {
  for (const auto& text : formulas()) {
    const Formula f = parse(text);
    partial_.emplace_back(text, PartialEvaluator(f, lab_.binding));
    lattice_.emplace_back(text, LatticeEvaluator(f, lab_.binding));
  }
}

WignerReport WignerExperiment::report(std::uint64_t rng_seed) const {
  const CollapseResult inside = collapse(lab_, rng_seed);
  WignerReport r;
  r.friend_outcome = inside.outcome;
  for (const auto& [text, evaluator] : partial_) {
    r.friend_values[text] = evaluator.evaluate(inside.scenario.logic_state);
    r.wigner_values[text] = evaluator.evaluate(lab_.logic_state);
  }
  for (const auto& [text, evaluator] : lattice_) r.classical_values[text] = evaluator.evaluate(lab_.logic_state);

  const std::string xor_text = "P1 ^ P2";
  r.oit = r.friend_values.at(xor_text) == PartialTruth::True && r.wigner_values.at(xor_text) == PartialTruth::True;

  auto defined = [](PartialTruth v) { return v == PartialTruth::True || v == PartialTruth::False; };
  const bool friend_defined = defined(r.friend_values.at("P1")) && defined(r.friend_values.at("P2"));
  const bool wigner_gaps =
      r.wigner_values.at("P1") == PartialTruth::Gap && r.wigner_values.at("P2") == PartialTruth::Gap;
  r.oip = friend_defined && wigner_gaps;
  return r;
}

WignerReport wigner_friend_report(const DoubleSlitConfig& cfg, std::uint64_t rng_seed) {
  return WignerExperiment(cfg).report(rng_seed);
}

}  // namespace qlogic
