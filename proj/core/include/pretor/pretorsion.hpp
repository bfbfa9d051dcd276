#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pretor/category.hpp"
#include "pretor/functor.hpp"
#include "pretor/ideal.hpp"

namespace pretor {

// One object's canonical short preexact sequence
//   t(X) --counit--> X --unit--> f(X).
struct Decomposition {
  ObjId torsion_part;  // t(X)
  ObjId free_part;     // f(X)
  MorId counit;        // eps_X : t(X) -> X
  MorId unit;          // eta_X : X -> f(X)
  PreexactWitness witness;
};

// A fully verified pretorsion theory: the two classes, their intersection,
// per-object canonical sequences normalized to identity legs on members of
// the classes, and the synthesized (co)reflections.
struct PretorsionData {
  const FinCategory* category = nullptr;
  FullSub torsion;       // T
  FullSub torsion_free;  // F
  FullSub trivials;      // Z = T n F, always derived
  TrivialIdeal ideal;    // morphisms factoring through Z
  std::vector<Decomposition> decomp;  // indexed by object

  Functor coreflector;  // E_T : C -> C, X |-> t(X)
  Functor reflector;    // E_F : C -> C, X |-> f(X)
  NatTrans unit;        // 1 -> E_F, components eta_X
  NatTrans counit;      // E_T -> 1, components eps_X

  ObjId t_of(ObjId x) const { return decomp[x.v].torsion_part; }
  ObjId f_of(ObjId x) const { return decomp[x.v].free_part; }
};

struct Axiom1Counterexample {
  ObjId torsion_obj, free_obj;
  MorId morphism;  // non-trivial member of hom(torsion_obj, free_obj)
};

struct CandidateAttempt {
  MorId counit_cand, unit_cand;
  std::string reason;
};

struct Axiom2Counterexample {
  ObjId object;  // no short preexact sequence T -> object -> F exists
  std::vector<CandidateAttempt> transcript;
};

struct PretorsionCheck {
  std::optional<PretorsionData> data;
  std::optional<Axiom1Counterexample> axiom1;
  std::optional<Axiom2Counterexample> axiom2;

  bool valid() const { return data.has_value(); }
};

// Decides whether (torsion, torsion_free) is a pretorsion theory. Axiom 1 is
// scanned first; axiom 2 is decided per object by trying normalized candidate
// sequences (identity legs) before the general lexicographic search. On
// success the returned data carries verified certificates, functors and
// adjunction units; on failure a concrete counterexample with the search
// transcript. Throws mismatched_categories / precondition_failed (repleteness).
PretorsionCheck check_pretorsion(const FullSub& torsion,
                                 const FullSub& torsion_free);

// The per-object searches used by check_pretorsion, plus a full uniqueness
// pass: every preexact sequence of each object is collected and any two are
// verified to be linked by unique isomorphisms on both outer objects.
// Throws hypothesis_not_met if some object has no sequence,
// mediator_not_unique if a linking isomorphism is missing or ambiguous.
std::vector<Decomposition> canonical_decompositions(
    const FullSub& torsion, const FullSub& torsion_free);

struct SequenceLink {
  MorId torsion_iso;  // dom(a.f) -> dom(b.f) with b.f . torsion_iso = a.f
  MorId free_iso;     // cod(a.g) -> cod(b.g) with free_iso . a.g = b.g
};

// The unique isomorphisms linking two short preexact sequences around the
// same middle object. Throws hypothesis_not_met when the middles differ,
// mediator_not_unique when either linking iso count is not exactly one.
SequenceLink link_sequences(const FinCategory& c, const PreexactWitness& a,
                            const PreexactWitness& b);

struct Synthesis {
  Functor coreflector, reflector;
  NatTrans unit, counit;
};

// Builds E_T and E_F by unique-mediator search over the decompositions,
// then re-verifies functor laws, naturality, both adjunction universal
// properties, and the restriction laws (t fixes T, f fixes F pointwise,
// which the canonical normalized decompositions guarantee).
// Throws mediator_not_unique if a mediator count is not exactly one.
Synthesis synthesize_functors(const FinCategory& c, const FullSub& torsion,
                              const FullSub& torsion_free,
                              const std::vector<Decomposition>& decomp);

// The canonical comparison E_F E_T -> E_T E_F with components
// f(t(X)) -> t(f(X)), each the unique mediator with
// t(eta_X) = component . eta_{t(X)}. Components land in Z and naturality is
// verified; components need not be iso.
NatTrans comparison_transformation(const PretorsionData& data);

enum class CharacterizeWhich { torsion, torsion_free, trivials };

struct CharacterizeResult {
  std::vector<ObjId> computed;
  bool matches_declared = false;
};

// torsion: objects X isomorphic to t(X); torsion_free: X isomorphic to f(X);
// trivials: objects X isomorphic to t(f(X)).
CharacterizeResult characterize(const PretorsionData& data,
                                CharacterizeWhich which);

struct PerpResult {
  std::vector<ObjId> perp;           // {X : hom(X, F) trivial for all F}
  std::vector<ObjId> via_reflector;  // {X : f(X) in trivials}
  bool equal = false;
};

// Computes the left orthogonal class of torsion_free relative to trivials and
// the reflector-based description, recording whether they agree.
// Preconditions: both classes replete, trivials inside torsion_free and
// closed under retracts, torsion_free epireflective. Throws
// precondition_failed naming the failing one.
PerpResult perp_class(const FullSub& torsion_free, const FullSub& trivials);

enum class ClosureStatus { verified, hypothesis_not_met, violated };

struct ClosureItem {
  std::string name;
  ClosureStatus status = ClosureStatus::verified;
  std::string detail;
};

struct ClosureReport {
  std::vector<ClosureItem> items;

  bool no_violations() const;
  const ClosureItem* find(const std::string& name) const;
};

// Stability properties of a verified theory: retract closure, closure under
// extensions by preexact sequences, (co)product closure relative to the
// trivial class, and the projectivity-conditional claims (precokernels
// regular epi, torsion closed under extremal quotients, torsion-free closed
// under subobjects). Each claim reports verified / hypothesis-not-met /
// violated with details.
ClosureReport closure_report(const PretorsionData& data);

struct ZNormalVerdict {
  bool reflective = false;          // every object has a reflection into F
  bool units_are_precokernels = false;
  bool units_have_prekernels = false;
  bool counit_on_torsion_iso = false;
  bool normal_epireflective = false;  // conjunction of the above
  bool pretorsion_side = false;       // some T makes (T, F) a pretorsion
                                      // theory with T n F = trivials
  bool equivalent = false;
  std::vector<ObjId> reconstructed_torsion;  // {A : eta_A trivial} when built
  std::string detail;
};

// Decides both sides of the torsion-free recognition theorem for the pair
// (trivials, torsion_free) and checks they agree. Preconditions: trivials
// non-empty, closed under retracts and inside torsion_free, torsion_free
// replete. Throws precondition_failed naming the failing one.
ZNormalVerdict z_normal_epireflective_check(const FullSub& trivials,
                                            const FullSub& torsion_free);

// The full bundle of structural laws a verified theory must satisfy:
// leg flags, trivial-iff-iso on every sequence, orthogonality both ways,
// class characterizations, reflected parts landing in the trivial class,
// comparison components through the trivial class with naturality, the
// recognition-theorem equivalence, and the closure report's claims.
// An empty report means every law checked out.
Report verify_theorems(const PretorsionData& data);

}  // namespace pretor
