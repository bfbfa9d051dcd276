#include "pretor/classify.hpp"

#include <algorithm>

namespace pretor {

bool is_coequalizer_of(const FinCategory& c, MorId m, MorId u, MorId v) {
  ObjId a = c.dom(m);
  ObjId b = c.cod(m);
  if (c.cod(u) != a || c.cod(v) != a || c.dom(u) != c.dom(v)) return false;
  if (c.compose(m, u) != c.compose(m, v)) return false;
  const int n = c.object_count();
  for (int y = 0; y < n; ++y) {
    for (MorId q : c.hom(a, ObjId{y})) {
      if (c.compose(q, u) != c.compose(q, v)) continue;
      int count = 0;
      for (MorId h : c.hom(b, ObjId{y})) {
        if (c.compose(h, m) == q && ++count > 1) break;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool is_regular_epi(const FinCategory& c, MorId m) {
  // Any coequalizer is epi, so the pair search can be limited to epis.
  if (!c.epi(m)) return false;
  ObjId a = c.dom(m);
  const int n = c.object_count();
  for (int x = 0; x < n; ++x) {
    auto pairs = c.hom(ObjId{x}, a);
    for (int i = 0; i < pairs.size(); ++i) {
      for (int j = i; j < pairs.size(); ++j) {
        if (is_coequalizer_of(c, m, pairs[i], pairs[j])) return true;
      }
    }
  }
  return false;
}

bool is_extremal_epi(const FinCategory& c, MorId m) {
  if (!c.epi(m)) return false;
  ObjId a = c.dom(m);
  ObjId b = c.cod(m);
  const int n = c.object_count();
  for (int i = 0; i < n; ++i) {
    for (MorId mid : c.hom(ObjId{i}, b)) {
      if (!c.mono(mid) || c.iso(mid)) continue;
      for (MorId e : c.hom(a, ObjId{i})) {
        if (c.compose(mid, e) == m) return false;
      }
    }
  }
  return true;
}

MorphismFlags morphism_class(const FinCategory& c, MorId m) {
  MorphismFlags flags;
  flags.mono = c.mono(m);
  flags.epi = c.epi(m);
  flags.iso = c.iso(m);
  flags.split_mono = c.split_mono(m);
  flags.split_epi = c.split_epi(m);
  flags.regular_epi = is_regular_epi(c, m);
  flags.extremal_epi = is_extremal_epi(c, m);
  return flags;
}

bool is_projective(const FinCategory& c, ObjId p) {
  const int mor_count = c.morphism_count();
  for (int e = 0; e < mor_count; ++e) {
    if (!c.epi(MorId{e})) continue;
    ObjId x = c.dom(MorId{e});
    ObjId y = c.cod(MorId{e});
    for (MorId g : c.hom(p, y)) {
      bool lifted = false;
      for (MorId l : c.hom(p, x)) {
        if (c.compose(MorId{e}, l) == g) {
          lifted = true;
          break;
        }
      }
      if (!lifted) return false;
    }
  }
  return true;
}

namespace {

// Walks all tuples from the given ranges in lexicographic order.
class TupleOdometer {
 public:
  explicit TupleOdometer(std::vector<FinCategory::MorRange> ranges)
      : ranges_(std::move(ranges)), pos_(ranges_.size(), 0) {
    done_ = false;
    for (const auto& r : ranges_)
      if (r.count == 0) done_ = true;
  }

  bool done() const { return done_; }
  MorId at(std::size_t i) const { return ranges_[i][pos_[i]]; }
  std::vector<MorId> current() const {
    std::vector<MorId> t(ranges_.size());
    for (std::size_t i = 0; i < ranges_.size(); ++i) t[i] = at(i);
    return t;
  }

  void advance() {
    for (std::size_t i = ranges_.size(); i-- > 0;) {
      if (++pos_[i] < ranges_[i].count) return;
      pos_[i] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<FinCategory::MorRange> ranges_;
  std::vector<std::int32_t> pos_;
  bool done_;
};

bool product_universal(const FinCategory& c, ObjId apex,
                       std::span<const ObjId> objs,
                       const std::vector<MorId>& legs) {
  const int n = c.object_count();
  for (int y = 0; y < n; ++y) {
    std::vector<FinCategory::MorRange> cone_ranges;
    cone_ranges.reserve(objs.size());
    for (ObjId o : objs) cone_ranges.push_back(c.hom(ObjId{y}, o));
    for (TupleOdometer cones(cone_ranges); !cones.done(); cones.advance()) {
      int count = 0;
      for (MorId u : c.hom(ObjId{y}, apex)) {
        bool match = true;
        for (std::size_t i = 0; i < objs.size(); ++i) {
          if (c.compose(legs[i], u) != cones.at(i)) {
            match = false;
            break;
          }
        }
        if (match && ++count > 1) break;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

bool coproduct_universal(const FinCategory& c, ObjId apex,
                         std::span<const ObjId> objs,
                         const std::vector<MorId>& legs) {
  const int n = c.object_count();
  for (int y = 0; y < n; ++y) {
    std::vector<FinCategory::MorRange> cone_ranges;
    cone_ranges.reserve(objs.size());
    for (ObjId o : objs) cone_ranges.push_back(c.hom(o, ObjId{y}));
    for (TupleOdometer cones(cone_ranges); !cones.done(); cones.advance()) {
      int count = 0;
      for (MorId u : c.hom(apex, ObjId{y})) {
        bool match = true;
        for (std::size_t i = 0; i < objs.size(); ++i) {
          if (c.compose(u, legs[i]) != cones.at(i)) {
            match = false;
            break;
          }
        }
        if (match && ++count > 1) break;
      }
      if (count != 1) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<LimitResult> find_limit(const FinCategory& c,
                                      std::span<const ObjId> objs,
                                      LimitKind kind) {
  if (objs.empty())
    throw Error(Errc::precondition_failed, "find_limit needs a non-empty family");
  const int n = c.object_count();
  for (int p = 0; p < n; ++p) {
    ObjId apex{p};
    std::vector<FinCategory::MorRange> leg_ranges;
    leg_ranges.reserve(objs.size());
    for (ObjId o : objs)
      leg_ranges.push_back(kind == LimitKind::product ? c.hom(apex, o)
                                                      : c.hom(o, apex));
    for (TupleOdometer legs(leg_ranges); !legs.done(); legs.advance()) {
      std::vector<MorId> tuple = legs.current();
      bool ok = kind == LimitKind::product
                    ? product_universal(c, apex, objs, tuple)
                    : coproduct_universal(c, apex, objs, tuple);
      if (ok) return LimitResult{apex, std::move(tuple)};
    }
  }
  return std::nullopt;
}

}  // namespace pretor
