#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pretor/category.hpp"

namespace pretor {

// A full subcategory given by its object set. Repleteness (closure under
// isomorphism) is checked where an operation requires it, not at creation,
// so candidate sets can be built freely during enumeration.
struct FullSub {
  const FinCategory* category = nullptr;
  std::vector<ObjId> objects;  // sorted, unique
  std::vector<char> mask;      // size object_count

  static FullSub of(const FinCategory& c, std::vector<ObjId> objs);
  static FullSub of_names(const FinCategory& c,
                          const std::vector<std::string>& names);

  bool contains(ObjId a) const { return mask[a.v] != 0; }
  bool empty() const { return objects.empty(); }
  int size() const { return static_cast<int>(objects.size()); }
  bool replete() const;
  FullSub iso_closure() const;
  FullSub intersect(const FullSub& other) const;
  std::vector<std::string> names() const;

  friend bool operator==(const FullSub& a, const FullSub& b) {
    return a.category == b.category && a.objects == b.objects;
  }
};

struct TrivialWitness {
  MorId morphism;
  ObjId through;
  MorId left;   // dom(morphism) -> through
  MorId right;  // through -> cod(morphism)
};

// The two-sided ideal of morphisms factoring through an object of zee, with
// one canonical witness per trivial morphism (smallest zee object, then
// lexicographically smallest (left, right)).
class TrivialIdeal {
 public:
  TrivialIdeal(const FinCategory& c, FullSub zee);

  const FinCategory& category() const { return *cat_; }
  const FullSub& zee() const { return zee_; }
  bool trivial(MorId m) const { return trivial_[m.v] != 0; }
  std::optional<TrivialWitness> witness(MorId m) const;

 private:
  const FinCategory* cat_;
  FullSub zee_;
  std::vector<char> trivial_;
  std::vector<ObjId> through_;
  std::vector<MorId> left_, right_;
};

// All trivial morphisms a -> b with their canonical witnesses.
// Throws empty_trivial_class when zee is empty.
std::vector<TrivialWitness> trivial_hom(const FullSub& zee, ObjId a, ObjId b);

struct Mediator {
  MorId given;     // the test morphism
  MorId mediator;  // its unique factorization
};

struct PrekernelCert {
  MorId of;     // g, the morphism whose prekernel this is
  MorId arrow;  // eps : X -> dom(g)
  std::vector<Mediator> mediators;  // every qualifying test morphism, in order
};

struct PrecokernelCert {
  MorId of;     // f
  MorId arrow;  // eta : cod(f) -> X
  std::vector<Mediator> mediators;
};

struct UniversalFailure {
  MorId offender;      // test morphism with the wrong mediator count
  int mediator_count;  // 0 or >= 2
};

// Universal-property checks for a single candidate arrow. On success,
// mediators (if requested) receives the full test-morphism table; on failure
// the first offender in scan order is returned.
std::optional<UniversalFailure> prekernel_failure(
    const TrivialIdeal& ideal, MorId eps, MorId g,
    std::vector<Mediator>* mediators = nullptr);
std::optional<UniversalFailure> precokernel_failure(
    const TrivialIdeal& ideal, MorId eta, MorId f,
    std::vector<Mediator>* mediators = nullptr);

// Every prekernel (resp. precokernel) of the morphism, as verified
// certificates. An empty result is the normal report that none exists.
// Each returned arrow is checked mono (resp. epi) and any two results are
// checked to be linked by exactly one compatible isomorphism.
std::vector<PrekernelCert> prekernels(const FullSub& zee, MorId g);
std::vector<PrecokernelCert> precokernels(const FullSub& zee, MorId f);
std::vector<PrekernelCert> prekernels(const TrivialIdeal& ideal, MorId g);
std::vector<PrecokernelCert> precokernels(const TrivialIdeal& ideal, MorId f);

struct PreexactWitness {
  MorId f, g;
  PrekernelCert prekernel;      // f as prekernel of g
  PrecokernelCert precokernel;  // g as precokernel of f
};

// Short preexactness of the composable pair (f, g): f is a prekernel of g
// and g is a precokernel of f. Throws not_composable on a shape mismatch.
std::optional<PreexactWitness> is_preexact(const FullSub& zee, MorId f, MorId g);
std::optional<PreexactWitness> is_preexact(const TrivialIdeal& ideal, MorId f,
                                           MorId g);

// (f, g) preexact gives (f . alpha, beta . g) preexact for isos alpha, beta.
// The rebuilt witness is re-verified from scratch. Throws not_iso.
PreexactWitness transport_preexact(const FullSub& zee, const PreexactWitness& w,
                                   MorId alpha, MorId beta);

// For a composable pair in pre(co)kernel position, one leg being trivial is
// equivalent to the other being iso.
struct TrivialIffIso {
  bool precokernel_case = false;  // g is a precokernel of f
  bool prekernel_case = false;    // f is a prekernel of g
  bool f_trivial = false, g_trivial = false;
  bool f_iso = false, g_iso = false;
  // precokernel case: f trivial <=> g iso; prekernel case: g trivial <=> f iso
  bool consistent = true;
};
// Throws hypothesis_not_met when neither position holds.
TrivialIffIso trivial_iff_iso(const FullSub& zee, MorId f, MorId g);

// If p is a precokernel (of q when given, otherwise of the first morphism
// found by search) and p has a prekernel e, then (e, p) is short preexact.
// Returns nullopt when p has no prekernel; throws hypothesis_not_met when
// p is not a precokernel of anything.
std::optional<PreexactWitness> cokernel_of_its_kernel(
    const FullSub& zee, MorId p, std::optional<MorId> q = std::nullopt);

}  // namespace pretor
