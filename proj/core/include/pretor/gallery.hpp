#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pretor/category.hpp"
#include "pretor/ideal.hpp"

namespace pretor {

// Thin category of a finite poset. The relation is the reflexive transitive
// closure of the cover rows; morphisms are named "a<=b". Throws
// not_a_partial_order when the closure has a two-way pair of distinct
// elements, unknown_name/duplicate_id on bad input.
FinCategory poset_category(
    const std::vector<std::string>& names,
    const std::vector<std::pair<std::string, std::string>>& covers);

// The linear order on objects "1" .. "n".
FinCategory chain(int n);

// Five objects T, C, Z, Z', F ordered by T < Z < Z' < F and T < C < F.
FinCategory n5();

// A set {1..size} with a total map on it, images 1-based.
struct EndoObj {
  int size = 0;
  std::vector<int> map;

  bool operator==(const EndoObj&) const = default;
};

// A set {1..size} with a reflexive transitive relation, row-major.
struct PreordObj {
  int size = 0;
  std::vector<char> rel;

  bool related(int a, int b) const {
    return rel[static_cast<std::size_t>(a - 1) * size + (b - 1)] != 0;
  }
  bool operator==(const PreordObj&) const = default;
};

// Object names: "e0" for the empty carrier, otherwise "e<size>_<images>".
std::string endo_name(const EndoObj& x);
// "p0" for the empty carrier, otherwise "p<size>_<row-major bits>".
std::string preord_name(const PreordObj& a);

struct NamedSub {
  std::string name;
  std::vector<std::string> objects;

  bool operator==(const NamedSub&) const = default;
};

struct GalleryResult {
  FinCategory category;
  std::vector<NamedSub> subs;
};

// All sets of size <= k with an endomap, with equivariant maps between them.
// Morphisms are named "<dom>><cod>:<images>" ("0" for the empty map).
// Attached subs: T = bijections, F = maps with f^m = f^(m+1), Z = identities.
GalleryResult endomap_category(int k);

// All preorders on carriers of size <= k, with monotone maps between them.
// Attached subs: Equiv = symmetric preorders, ParOrd = antisymmetric ones,
// Discrete = equality relations.
GalleryResult preord_category(int k);

struct DirectSequence {
  ObjId torsion_part;
  ObjId whole;
  ObjId free_part;
  MorId counit;  // torsion_part -> whole
  MorId unit;    // whole -> free_part
};

// Sequence for x computed from the functional graph alone: the torsion part
// is the set of cyclic points with the restricted map, the free part the
// quotient collapsing each cycle to a point, both relabelled by ascending
// minimal element. gallery must contain x and the two derived objects.
DirectSequence endomap_decomposition(const FinCategory& gallery,
                                     const EndoObj& x);

// Sequence for a computed from the relation alone: the torsion part keeps
// the carrier with the symmetric core of the relation, the free part is the
// quotient by that core with the induced order.
DirectSequence preord_decomposition(const FinCategory& gallery,
                                    const PreordObj& a);

// Sequence for position p (1-based) of chain(n) under the theory with the
// given 1-based torsion / torsion-free position sets: shared positions are
// fixed, others attach to the nearest shared position on the appropriate
// side. Throws hypothesis_not_met when the sets do not describe a theory
// covering p.
DirectSequence chain_decomposition(const FinCategory& chain_cat,
                                   const std::vector<int>& torsion,
                                   const std::vector<int>& torsion_free,
                                   int p);

}  // namespace pretor
