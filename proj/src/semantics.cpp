#include "qlogic/semantics.hpp"

#include <algorithm>
#include <cmath>

#include "qlogic/errors.hpp"

namespace qlogic {

// ---------------------------------------------------------------------------
// Binding

void Binding::insert(const std::string& name, Entry entry) {
  if (!is_identifier(name)) throw InvalidArgument("invalid atom name '" + name + "'");
  const Index n = entry.projector->dim();
  if (!entries_.empty() && n != dim_) throw DimensionMismatch("binding for '" + name + "' has a different dimension");
  dim_ = n;
  entries_[name] = std::move(entry);
}

void Binding::bind(const std::string& name, const Projector& p) {
  auto subspace = std::make_shared<const Subspace>(subspace_from_projector(p));
  insert(name, Entry{std::make_shared<const Projector>(p), std::move(subspace)});
}

void Binding::bind(const std::string& name, const Subspace& s) {
  insert(name, Entry{std::make_shared<const Projector>(s.projector()), std::make_shared<const Subspace>(s)});
}

const Projector& Binding::projector(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnboundAtom(name);
  return *it->second.projector;
}

const Subspace& Binding::subspace(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw UnboundAtom(name);
  return *it->second.subspace;
}

std::vector<std::string> Binding::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

void Binding::require_atoms(const Formula& f) const {
  for (const auto& name : atoms(f))
    if (!contains(name)) throw UnboundAtom(name);
}

namespace {

void require_state(const Binding& b, const StateVector& v) {
  if (b.dim() != 0 && v.dim() != b.dim()) throw DimensionMismatch("state and binding dimensions differ");
  if (v.is_zero()) throw InvalidArgument("valuation of the zero vector");
}

}  // namespace

// ---------------------------------------------------------------------------
// Values

double numeric(TruthValue3 v) {
  switch (v) {
    case TruthValue3::False: return 0.0;
    case TruthValue3::Unknown: return 0.5;
    case TruthValue3::True: return 1.0;
  }
  return 0.0;
}

TruthValue3 from_numeric(double v) {
  if (v == 0.0) return TruthValue3::False;
  if (v == 1.0) return TruthValue3::True;
  if (v == 0.5) return TruthValue3::Unknown;
  throw InvalidArgument("not a three-valued truth value");
}

const char* to_string(Bit b) { return is_one(b) ? "T" : "F"; }

const char* to_string(TruthValue3 v) {
  switch (v) {
    case TruthValue3::False: return "F";
    case TruthValue3::Unknown: return "U";
    case TruthValue3::True: return "T";
  }
  return "?";
}

const char* to_string(PartialTruth v) {
  switch (v) {
    case PartialTruth::True: return "T";
    case PartialTruth::False: return "F";
    case PartialTruth::Gap: return "GAP";
    case PartialTruth::Ndf: return "NDF";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Evidence

EvidencePair evidence_pair(const StateVector& v, const Subspace& s_pos, const Subspace& s_neg) {
  if (v.is_zero()) throw InvalidArgument("evidence for the zero vector");
  const bool positive = membership(v, s_pos) == Membership::In;
  const bool negative = membership(v, s_neg) == Membership::In;
  if (positive && negative) throw InvariantViolation("positive and negative evidence hold together");
  return {positive, negative};
}

EvidencePair atom_evidence(const StateVector& v, const Subspace& s) {
  const Membership m = membership(v, s);
  return {m == Membership::In, m == Membership::InComplement};
}

// ---------------------------------------------------------------------------
// Three-valued connectives

TruthValue3 negate(TruthValue3 a, ThreeValuedVariant) { return from_numeric(1.0 - numeric(a)); }

TruthValue3 conjoin(TruthValue3 a, TruthValue3 b, ThreeValuedVariant variant) {
  if (variant == ThreeValuedVariant::BochvarInternal && (a == TruthValue3::Unknown || b == TruthValue3::Unknown))
    return TruthValue3::Unknown;
  return from_numeric(std::min(numeric(a), numeric(b)));
}

TruthValue3 disjoin(TruthValue3 a, TruthValue3 b, ThreeValuedVariant variant) {
  if (variant == ThreeValuedVariant::BochvarInternal && (a == TruthValue3::Unknown || b == TruthValue3::Unknown))
    return TruthValue3::Unknown;
  return from_numeric(std::max(numeric(a), numeric(b)));
}

TruthValue3 exclusive_disjoin(TruthValue3 a, TruthValue3 b, ThreeValuedVariant variant) {
  if (variant == ThreeValuedVariant::BochvarInternal && (a == TruthValue3::Unknown || b == TruthValue3::Unknown))
    return TruthValue3::Unknown;
  const double either = std::max(numeric(a), numeric(b));
  const double both = std::min(numeric(a), numeric(b));
  return from_numeric(std::min(either, 1.0 - both));
}

// ---------------------------------------------------------------------------
// Three-valued engine

namespace {

TruthValue3 three_valued(const Formula& f, const Binding& b, const StateVector& v, ThreeValuedVariant variant) {
  switch (f.connective()) {
    case Connective::Atom: {
      const EvidencePair e = atom_evidence(v, b.subspace(f.name()));
      if (e.positive) return TruthValue3::True;
      if (e.negative) return TruthValue3::False;
      return TruthValue3::Unknown;
    }
    case Connective::Not: return negate(three_valued(f.child(), b, v, variant), variant);
    case Connective::And:
      return conjoin(three_valued(f.left(), b, v, variant), three_valued(f.right(), b, v, variant), variant);
    case Connective::Or:
      return disjoin(three_valued(f.left(), b, v, variant), three_valued(f.right(), b, v, variant), variant);
    case Connective::Xor:
      return exclusive_disjoin(three_valued(f.left(), b, v, variant), three_valued(f.right(), b, v, variant),
                               variant);
  }
  throw InvalidArgument("unknown connective");
}

bool truth_functional(const Formula& f, const Binding& b, const StateVector& v) {
  switch (f.connective()) {
    // No negative evidence means true: b(0,0) = 1.
    case Connective::Atom: return !atom_evidence(v, b.subspace(f.name())).negative;
    case Connective::Not: return !truth_functional(f.child(), b, v);
    case Connective::And: return truth_functional(f.left(), b, v) && truth_functional(f.right(), b, v);
    case Connective::Or: return truth_functional(f.left(), b, v) || truth_functional(f.right(), b, v);
    case Connective::Xor: {
      const bool l = truth_functional(f.left(), b, v);
      const bool r = truth_functional(f.right(), b, v);
      return (l || r) && !(l && r);
    }
  }
  throw InvalidArgument("unknown connective");
}

Subspace xor_subspace(const Subspace& a, const Subspace& b) {
  return meet(join(a, b), complement(meet(a, b)));
}

}  // namespace

TruthValue3 valuate_three_valued(const Formula& f, const Binding& b, const StateVector& v, const SemanticsConfig& cfg) {
  b.require_atoms(f);
  require_state(b, v);
  return three_valued(f, b, v, cfg.three_valued_variant);
}

// ---------------------------------------------------------------------------
// Total bivaluation

Subspace lattice_subspace(const Formula& f, const Binding& b) {
  switch (f.connective()) {
    case Connective::Atom: return b.subspace(f.name());
    case Connective::Not: return complement(lattice_subspace(f.child(), b));
    case Connective::And: return meet(lattice_subspace(f.left(), b), lattice_subspace(f.right(), b));
    case Connective::Or: return join(lattice_subspace(f.left(), b), lattice_subspace(f.right(), b));
    case Connective::Xor: return xor_subspace(lattice_subspace(f.left(), b), lattice_subspace(f.right(), b));
  }
  throw InvalidArgument("unknown connective");
}

LatticeEvaluator::LatticeEvaluator(const Formula& f, const Binding& b)
    : subspace_((b.require_atoms(f), lattice_subspace(f, b))) {}

Bit LatticeEvaluator::evaluate(const StateVector& v) const {
  if (v.dim() != subspace_.ambient_dim()) throw DimensionMismatch("state and binding dimensions differ");
  if (v.is_zero()) throw InvalidArgument("valuation of the zero vector");
  // False only when the state lies in the orthogonal complement.
  return to_bit(membership(v, subspace_) != Membership::InComplement);
}

Bit valuate_bvn(const Formula& f, const Binding& b, const StateVector& v, const SemanticsConfig& cfg) {
  b.require_atoms(f);
  require_state(b, v);
  if (cfg.bvn_mode == BvnMode::TruthFunctional) return to_bit(truth_functional(f, b, v));
  return LatticeEvaluator(f, b).evaluate(v);
}

BvnDualityReport bvn_duality_report(const StateVector& v, const Binding& b) {
  static const Formula conj = parse("P1 & P2");
  const Bit tf = valuate_bvn(conj, b, v, {ThreeValuedVariant::KleeneStrong, BvnMode::TruthFunctional});
  const Bit lat = valuate_bvn(conj, b, v, {ThreeValuedVariant::KleeneStrong, BvnMode::Lattice});
  return {tf, lat, tf != lat};
}

// ---------------------------------------------------------------------------
// Partial bivaluation

PartialEvaluator::PartialEvaluator(const Formula& f, const Binding& b) {
  b.require_atoms(f);
  dim_ = b.dim();
  root_ = compile(f, b);
}

std::size_t PartialEvaluator::compile(const Formula& f, const Binding& b) {
  Node node{f.connective(), true, nullptr, nullptr, nullptr};
  switch (f.connective()) {
    case Connective::Atom:
      node.subspace = std::make_shared<const Subspace>(b.subspace(f.name()));
      break;
    case Connective::Not: {
      const Node& child = nodes_[compile(f.child(), b)];
      node.defined = child.defined;
      if (node.defined) node.subspace = std::make_shared<const Subspace>(complement(*child.subspace));
      break;
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Xor: {
      const std::size_t li = compile(f.left(), b);
      const std::size_t ri = compile(f.right(), b);
      const Node& l = nodes_[li];
      const Node& r = nodes_[ri];
      // Meet and join exist only inside a Boolean block.
      node.defined = l.defined && r.defined && commutes(*l.subspace, *r.subspace);
      if (!node.defined) break;
      if (f.connective() == Connective::And) {
        node.subspace = std::make_shared<const Subspace>(meet(*l.subspace, *r.subspace));
      } else if (f.connective() == Connective::Or) {
        node.subspace = std::make_shared<const Subspace>(join(*l.subspace, *r.subspace));
      } else {
        node.join = std::make_shared<const Subspace>(join(*l.subspace, *r.subspace));
        node.meet = std::make_shared<const Subspace>(meet(*l.subspace, *r.subspace));
        node.subspace = std::make_shared<const Subspace>(meet(*node.join, complement(*node.meet)));
      }
      break;
    }
  }
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

bool PartialEvaluator::defined() const { return nodes_[root_].defined; }

PartialTruth PartialEvaluator::evaluate(const StateVector& v) const {
  if (v.dim() != dim_) throw DimensionMismatch("state and binding dimensions differ");
  if (v.is_zero()) throw InvalidArgument("valuation of the zero vector");
  const Node& node = nodes_[root_];
  if (!node.defined) return PartialTruth::Ndf;
  switch (node.op) {
    case Connective::Atom:
    case Connective::Not: {
      // Evidence rule: membership in the subspace or in its complement, otherwise a gap.
      const Membership m = membership(v, *node.subspace);
      if (m == Membership::In) return PartialTruth::True;
      if (m == Membership::InComplement) return PartialTruth::False;
      return PartialTruth::Gap;
    }
    case Connective::And:
    case Connective::Or:
      // Positive evidence only.
      return membership(v, *node.subspace) == Membership::In ? PartialTruth::True : PartialTruth::False;
    case Connective::Xor: {
      const bool either = membership(v, *node.join) == Membership::In;
      const bool both = membership(v, *node.meet) == Membership::In;
      return either && !both ? PartialTruth::True : PartialTruth::False;
    }
  }
  throw InvalidArgument("unknown connective");
}

PartialTruth valuate_partial(const Formula& f, const Binding& b, const StateVector& v) {
  b.require_atoms(f);
  require_state(b, v);
  return PartialEvaluator(f, b).evaluate(v);
}

// ---------------------------------------------------------------------------

PartialTruth valuate_comparability(const Projector& q, const Projector& p, ComparabilityMode mode) {
  if (q.dim() != p.dim()) throw DimensionMismatch("projector dimensions differ");
  const Relation rel = relation(subspace_from_projector(q), subspace_from_projector(p));
  if (mode == ComparabilityMode::Bvn) return rel.w() ? PartialTruth::False : PartialTruth::True;
  if (rel.z()) return PartialTruth::True;
  if (rel.w()) return PartialTruth::False;
  return PartialTruth::Gap;
}

double verification_probability(const Projector& p, const StateVector& v) {
  if (v.is_zero()) throw InvalidArgument("verification probability of the zero vector");
  return born_probability(p, v.normalized());
}

}  // namespace qlogic
