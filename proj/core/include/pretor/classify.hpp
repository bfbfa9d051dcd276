#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pretor/category.hpp"

namespace pretor {

struct MorphismFlags {
  bool mono = false;
  bool epi = false;
  bool iso = false;
  bool split_mono = false;
  bool split_epi = false;
  bool regular_epi = false;
  bool extremal_epi = false;
};

// All seven flags, each decided by exhaustive search over the category.
MorphismFlags morphism_class(const FinCategory& c, MorId m);

// m is the coequalizer of the parallel pair (u, v): it merges them and every
// cocone factors through it exactly once.
bool is_coequalizer_of(const FinCategory& c, MorId m, MorId u, MorId v);

// Coequalizer of some parallel pair into dom(m). Coequalizers are epis, so
// non-epis are rejected without the pair search.
bool is_regular_epi(const FinCategory& c, MorId m);

// Epi whose every factorization m = n . e with n mono forces n iso.
bool is_extremal_epi(const FinCategory& c, MorId m);

// p lifts against every epimorphism: for each epi e : X -> Y and each
// g : p -> Y some l : p -> X satisfies e . l = g.
bool is_projective(const FinCategory& c, ObjId p);

enum class LimitKind { product, coproduct };

struct LimitResult {
  ObjId apex;
  std::vector<MorId> legs;  // one per input object, in input order
};

// Finite (co)products decided by exhaustive universal-property search.
// Returns the verified apex with the smallest ObjId, or nullopt when the
// category has no such (co)limit.
std::optional<LimitResult> find_limit(const FinCategory& c,
                                      std::span<const ObjId> objs,
                                      LimitKind kind);

}  // namespace pretor
