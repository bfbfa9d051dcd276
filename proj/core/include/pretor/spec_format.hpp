#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pretor/category.hpp"
#include "pretor/gallery.hpp"

namespace pretor {

// Textual category document. Line oriented, whitespace separated, comments
// from '#' to end of line. Either one shorthand directive
//   chain N | endomap K | preord K
// alone in the file, or a poset block
//   poset
//   objects: a b ...
//   covers:
//     a < b
// or explicit sections
//   objects: a b ...
//   morphisms:
//     name : dom -> cod
//   identities:
//     obj = mor
//   compose:
//     g * f = h
// Composites with an identity on either side may be omitted; all other
// composable pairs need a row. Any kind may carry named object sets:
//   sub NAME: a b ...
// (directive kinds get their sets attached when built instead).
struct CategorySpec {
  enum class Kind { explicit_rows, chain, endomap, preord, poset };

  struct MorRow {
    std::string name, dom, cod;
    bool operator==(const MorRow&) const = default;
  };
  struct IdRow {
    std::string object, morphism;
    bool operator==(const IdRow&) const = default;
  };
  struct CompRow {
    std::string g, f, h;
    bool operator==(const CompRow&) const = default;
  };

  Kind kind = Kind::explicit_rows;
  int param = 0;
  std::vector<std::string> objects;
  std::vector<MorRow> morphisms;
  std::vector<IdRow> identities;
  std::vector<CompRow> compose;
  std::vector<std::pair<std::string, std::string>> covers;
  std::vector<NamedSub> subs;

  bool operator==(const CategorySpec&) const = default;
};

// Throws Error(parse_error) with line and col set on malformed input.
CategorySpec parse_spec(const std::string& text);

// Canonical text for a spec; parse_spec(serialize(s)) == s.
std::string serialize(const CategorySpec& s);

// Explicit-rows spec for a built category, rows in id order, identity
// composites omitted.
CategorySpec to_spec(const FinCategory& c, const std::vector<NamedSub>& subs);

std::string serialize(const FinCategory& c, const std::vector<NamedSub>& subs);

struct SpecBuild {
  BuildOutcome outcome;
  std::vector<NamedSub> subs;
};

// Builds the category a spec describes. Directive kinds call the gallery
// builders (endomap and preord attach their standard subs); explicit rows
// go through build_category with name resolution problems reported rather
// than thrown.
SpecBuild build_from_spec(const CategorySpec& s);

}  // namespace pretor
