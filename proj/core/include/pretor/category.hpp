#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pretor/base.hpp"

namespace pretor {

// Construction input for build_category. Morphisms may arrive in any order;
// composition comes as explicit rows, as a total rule, or both (rows win).
struct RawMorphism {
  std::string name;
  std::int32_t dom = -1;
  std::int32_t cod = -1;
};

struct RawCompose {
  // Indices into RawCategory::morphisms: after = g, first = f, result = h,
  // meaning g . f = h.
  std::int32_t g = -1;
  std::int32_t f = -1;
  std::int32_t h = -1;
};

struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawMorphism> morphisms;
  std::vector<std::pair<std::int32_t, std::int32_t>> identities;  // (obj, mor)
  std::vector<RawCompose> compose_rows;
  // Optional total rule (g, f) -> h over raw indices; -1 means undefined.
  std::function<std::int32_t(std::int32_t, std::int32_t)> compose_rule;
};

// A finite category with a total, validated composition table plus cached
// first-order analysis (mono/epi/split/iso flags and iso-classes of objects).
// Values are immutable once built and safe to share across threads.
class FinCategory {
 public:
  // Contiguous block of morphism ids.
  struct MorRange {
    std::int32_t first = 0;
    std::int32_t count = 0;

    struct iterator {
      std::int32_t v;
      MorId operator*() const { return MorId{v}; }
      iterator& operator++() {
        ++v;
        return *this;
      }
      bool operator!=(const iterator& o) const { return v != o.v; }
    };

    iterator begin() const { return iterator{first}; }
    iterator end() const { return iterator{first + count}; }
    int size() const { return count; }
    bool empty() const { return count == 0; }
    MorId operator[](int i) const { return MorId{first + i}; }
  };

  int object_count() const { return static_cast<int>(obj_names_.size()); }
  int morphism_count() const { return static_cast<int>(mor_names_.size()); }

  const std::string& object_name(ObjId a) const { return obj_names_[a.v]; }
  const std::string& morphism_name(MorId m) const { return mor_names_[m.v]; }
  std::optional<ObjId> object_by_name(std::string_view name) const;
  std::optional<MorId> morphism_by_name(std::string_view name) const;

  ObjId dom(MorId m) const { return dom_[m.v]; }
  ObjId cod(MorId m) const { return cod_[m.v]; }
  MorId identity(ObjId a) const { return identity_[a.v]; }
  bool is_identity(MorId m) const { return identity_[dom_[m.v].v] == m && dom_[m.v] == cod_[m.v]; }

  // g after f; requires dom(g) == cod(f).
  MorId compose(MorId g, MorId f) const {
    return comp_[comp_off_[f.v] + (g.v - out_first_[cod_[f.v].v])];
  }

  MorRange hom(ObjId a, ObjId b) const {
    int idx = a.v * object_count() + b.v;
    return MorRange{hom_first_[idx], hom_count_[idx]};
  }
  int hom_size(ObjId a, ObjId b) const {
    return hom_count_[a.v * object_count() + b.v];
  }
  // All morphisms with dom == a, ordered by codomain.
  MorRange from(ObjId a) const {
    return MorRange{out_first_[a.v], out_count_[a.v]};
  }

  bool mono(MorId m) const { return mono_[m.v] != 0; }
  bool epi(MorId m) const { return epi_[m.v] != 0; }
  bool split_mono(MorId m) const { return split_mono_[m.v] != 0; }
  bool split_epi(MorId m) const { return split_epi_[m.v] != 0; }
  bool iso(MorId m) const { return iso_[m.v] != 0; }
  MorId inverse(MorId m) const { return inverse_[m.v]; }

  // Smallest object isomorphic to a; two objects are isomorphic iff equal reps.
  ObjId iso_class(ObjId a) const { return iso_class_[a.v]; }
  bool isomorphic(ObjId a, ObjId b) const {
    return iso_class_[a.v] == iso_class_[b.v];
  }

  friend bool operator==(const FinCategory& x, const FinCategory& y) {
    return x.obj_names_ == y.obj_names_ && x.mor_names_ == y.mor_names_ &&
           x.dom_ == y.dom_ && x.cod_ == y.cod_ &&
           x.identity_ == y.identity_ && x.comp_ == y.comp_;
  }

 private:
  friend class CategoryBuilder;

  std::vector<std::string> obj_names_;
  std::vector<std::string> mor_names_;
  std::vector<ObjId> dom_, cod_;
  std::vector<MorId> identity_;  // per object

  // Morphisms are sorted by (dom, cod, declaration order), so every hom-set
  // and every out-set is a contiguous id range.
  std::vector<std::int32_t> hom_first_, hom_count_;  // object_count^2
  std::vector<std::int32_t> out_first_, out_count_;  // per object

  // comp_[comp_off_[f] + (g - out_first_[cod f])] = g . f
  std::vector<MorId> comp_;
  std::vector<std::int64_t> comp_off_;

  std::vector<std::uint8_t> mono_, epi_, split_mono_, split_epi_, iso_;
  std::vector<MorId> inverse_;
  std::vector<ObjId> iso_class_;

  std::unordered_map<std::string, std::int32_t> obj_index_;
  std::unordered_map<std::string, std::int32_t> mor_index_;
};

struct BuildOutcome {
  std::optional<FinCategory> category;
  Report report;

  bool ok() const { return category.has_value(); }
};

// Validates eagerly and totally: duplicate ids, dangling references, identity
// assignment, totality of composition over composable pairs, identity laws,
// and associativity by full scan. Every violated law is reported.
BuildOutcome build_category(const RawCategory& raw);

struct OppositeCategory {
  FinCategory category;
  std::vector<MorId> to_op;    // original morphism id -> opposite morphism id
  std::vector<MorId> from_op;  // opposite morphism id -> original morphism id
};

// The formal dual: dom/cod swapped, composition reversed. Object ids are
// preserved; morphism ids are re-sorted for the swapped dom/cod order.
OppositeCategory opposite(const FinCategory& c);

}  // namespace pretor
