#pragma once

// Valuation engines for formulas about a quantum state:
//   * three-valued (strong Kleene or internal Bochvar connectives),
//   * total bivaluation with b(0,0) = 1, truth-functional or through the subspace lattice,
//   * partial bivaluation with truth-value gaps (GAP) and undefined formulas (NDF).
//
// Atoms are read off evidence pairs: positive evidence is "the state lies in the
// atom's subspace", negative evidence is "the state lies in its orthogonal complement".

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qlogic/formula.hpp"
#include "qlogic/hilbert.hpp"
#include "qlogic/lattice.hpp"

namespace qlogic {

// ---------------------------------------------------------------------------
// Binding

/// Atom name -> projector (and its subspace), all in one ambient dimension. Entries are shared and immutable.
class Binding {
 public:
  Binding() = default;

  void bind(const std::string& name, const Projector& p);
  /// Binds by subspace, skipping the eigendecomposition.
  void bind(const std::string& name, const Subspace& s);

  bool contains(const std::string& name) const { return entries_.count(name) > 0; }
  const Projector& projector(const std::string& name) const;
  const Subspace& subspace(const std::string& name) const;
  std::vector<std::string> names() const;
  /// Ambient dimension; 0 while empty.
  Index dim() const { return dim_; }

  /// Throws UnboundAtom for the first atom of f without an entry.
  void require_atoms(const Formula& f) const;

 private:
  struct Entry {
    std::shared_ptr<const Projector> projector;
    std::shared_ptr<const Subspace> subspace;
  };
  void insert(const std::string& name, Entry entry);

  std::map<std::string, Entry> entries_;
  Index dim_ = 0;
};

// ---------------------------------------------------------------------------
// Value types

enum class Bit : std::uint8_t { Zero = 0, One = 1 };

constexpr Bit to_bit(bool b) { return b ? Bit::One : Bit::Zero; }
constexpr bool is_one(Bit b) { return b == Bit::One; }

enum class TruthValue3 : std::uint8_t { False, Unknown, True };

/// 0, 1/2, 1.
double numeric(TruthValue3 v);
TruthValue3 from_numeric(double v);

enum class PartialTruth : std::uint8_t { True, False, Gap, Ndf };

enum class ThreeValuedVariant { KleeneStrong, BochvarInternal };
enum class BvnMode { TruthFunctional, Lattice };
enum class ComparabilityMode { Bvn, Partial };

struct SemanticsConfig {
  ThreeValuedVariant three_valued_variant = ThreeValuedVariant::KleeneStrong;
  BvnMode bvn_mode = BvnMode::TruthFunctional;
  // The unmatched evidence pair (0,0) always maps to 1 under the total bivaluation.
};

// Rendering used by the command-line tool.
const char* to_string(Bit b);           // "T" / "F"
const char* to_string(TruthValue3 v);   // "T" / "F" / "U"
const char* to_string(PartialTruth v);  // "T" / "F" / "GAP" / "NDF"

// ---------------------------------------------------------------------------
// Evidence

struct EvidencePair {
  bool positive;
  bool negative;

  bool operator==(const EvidencePair&) const = default;
};

/// (v ∈ s_pos, v ∈ s_neg). Both holding at once is an invariant violation.
EvidencePair evidence_pair(const StateVector& v, const Subspace& s_pos, const Subspace& s_neg);

/// Evidence pair of an atom bound to s: (v ∈ s, v ∈ s⊥).
EvidencePair atom_evidence(const StateVector& v, const Subspace& s);

// ---------------------------------------------------------------------------
// Three-valued connectives

TruthValue3 negate(TruthValue3 a, ThreeValuedVariant variant);
TruthValue3 conjoin(TruthValue3 a, TruthValue3 b, ThreeValuedVariant variant);
TruthValue3 disjoin(TruthValue3 a, TruthValue3 b, ThreeValuedVariant variant);
TruthValue3 exclusive_disjoin(TruthValue3 a, TruthValue3 b, ThreeValuedVariant variant);

// ---------------------------------------------------------------------------
// Engines

TruthValue3 valuate_three_valued(const Formula& f, const Binding& b, const StateVector& v, const SemanticsConfig& cfg);

Bit valuate_bvn(const Formula& f, const Binding& b, const StateVector& v, const SemanticsConfig& cfg);

PartialTruth valuate_partial(const Formula& f, const Binding& b, const StateVector& v);

/// Subspace the lattice reading assigns to f: atoms map to their subspaces, ! to complement,
/// & to meet, | to join and ^ to meet(join, complement(meet)).
Subspace lattice_subspace(const Formula& f, const Binding& b);

/// Formula pre-mapped onto the subspace lattice; evaluates the lattice reading against many states.
class LatticeEvaluator {
 public:
  LatticeEvaluator(const Formula& f, const Binding& b);
  Bit evaluate(const StateVector& v) const;
  const Subspace& subspace() const { return subspace_; }

 private:
  Subspace subspace_;
};

/// Formula pre-compiled for partial bivaluation: subspaces and definedness of every node
/// depend only on the binding, so they are computed once.
class PartialEvaluator {
 public:
  PartialEvaluator(const Formula& f, const Binding& b);
  PartialTruth evaluate(const StateVector& v) const;
  /// False when some binary node combines non-commuting subspaces.
  bool defined() const;

 private:
  struct Node {
    Connective op;
    bool defined;
    std::shared_ptr<const Subspace> subspace;  // null when undefined
    std::shared_ptr<const Subspace> join;      // Xor only
    std::shared_ptr<const Subspace> meet;      // Xor only
  };
  std::size_t compile(const Formula& f, const Binding& b);

  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  Index dim_ = 0;
};

struct BvnDualityReport {
  Bit tf;
  Bit lat;
  bool dual;
};

/// "P1 & P2" under both total-bivaluation modes.
BvnDualityReport bvn_duality_report(const StateVector& v, const Binding& b);

/// Can Q and P be true together? BVN: 1 - [[w]]. PARTIAL: z -> T, w -> F, neither -> GAP.
PartialTruth valuate_comparability(const Projector& q, const Projector& p, ComparabilityMode mode);

/// Probability that the proposition bound to p is verified in state v.
double verification_probability(const Projector& p, const StateVector& v);

}  // namespace qlogic
