#pragma once

#include <vector>

#include "pretor/base.hpp"
#include "pretor/category.hpp"

namespace pretor {

// Object/morphism assignment between finite categories. The categories are
// referenced, not owned; keep them alive and unmoved while the functor is.
struct Functor {
  const FinCategory* source = nullptr;
  const FinCategory* target = nullptr;
  std::vector<ObjId> obj_map;  // indexed by source object
  std::vector<MorId> mor_map;  // indexed by source morphism

  ObjId on(ObjId a) const { return obj_map[a.v]; }
  MorId on(MorId m) const { return mor_map[m.v]; }
};

Functor identity_functor(const FinCategory& c);

// outer . inner; requires inner.target == outer.source.
Functor compose_functors(const Functor& outer, const Functor& inner);

// Exhaustive functor-law check: totality, endpoint preservation, identities,
// and composition over every composable pair.
Report verify_functor(const Functor& f);

struct NatTrans {
  Functor source;  // F
  Functor target;  // G, parallel to F
  std::vector<MorId> components;  // indexed by source-category object
};

NatTrans identity_nat(const Functor& f);

// Checks component endpoints and every naturality square
// t_B . F(phi) = G(phi) . t_A.
Report verify_natural(const NatTrans& t);

}  // namespace pretor
