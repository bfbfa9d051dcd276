#include "pretor/functor.hpp"

namespace pretor {

Functor identity_functor(const FinCategory& c) {
  Functor f;
  f.source = &c;
  f.target = &c;
  f.obj_map.resize(c.object_count());
  f.mor_map.resize(c.morphism_count());
  for (int a = 0; a < c.object_count(); ++a) f.obj_map[a] = ObjId{a};
  for (int m = 0; m < c.morphism_count(); ++m) f.mor_map[m] = MorId{m};
  return f;
}

Functor compose_functors(const Functor& outer, const Functor& inner) {
  if (inner.target != outer.source)
    throw Error(Errc::mismatched_categories,
                "functor composition needs inner.target == outer.source");
  Functor f;
  f.source = inner.source;
  f.target = outer.target;
  f.obj_map.resize(inner.obj_map.size());
  f.mor_map.resize(inner.mor_map.size());
  for (std::size_t a = 0; a < inner.obj_map.size(); ++a)
    f.obj_map[a] = outer.obj_map[inner.obj_map[a].v];
  for (std::size_t m = 0; m < inner.mor_map.size(); ++m)
    f.mor_map[m] = outer.mor_map[inner.mor_map[m].v];
  return f;
}

Report verify_functor(const Functor& f) {
  Report report;
  if (f.source == nullptr || f.target == nullptr) {
    report.add("functor-unbound", {}, "source or target category missing");
    return report;
  }
  const FinCategory& s = *f.source;
  const FinCategory& t = *f.target;

  if (static_cast<int>(f.obj_map.size()) != s.object_count() ||
      static_cast<int>(f.mor_map.size()) != s.morphism_count()) {
    report.add("functor-partial", {}, "object or morphism assignment not total");
    return report;
  }
  for (int a = 0; a < s.object_count(); ++a) {
    if (f.obj_map[a].v < 0 || f.obj_map[a].v >= t.object_count()) {
      report.add("functor-range", {s.object_name(ObjId{a})},
                 "object image out of range");
      return report;
    }
  }
  for (int m = 0; m < s.morphism_count(); ++m) {
    MorId fm = f.mor_map[m];
    if (fm.v < 0 || fm.v >= t.morphism_count()) {
      report.add("functor-range", {s.morphism_name(MorId{m})},
                 "morphism image out of range");
      return report;
    }
    if (t.dom(fm) != f.obj_map[s.dom(MorId{m}).v] ||
        t.cod(fm) != f.obj_map[s.cod(MorId{m}).v])
      report.add("functor-endpoints", {s.morphism_name(MorId{m})},
                 "image endpoints disagree with mapped dom/cod");
  }
  if (!report.ok()) return report;

  for (int a = 0; a < s.object_count(); ++a) {
    if (f.mor_map[s.identity(ObjId{a}).v] != t.identity(f.obj_map[a]))
      report.add("functor-identity", {s.object_name(ObjId{a})},
                 "identity not preserved");
  }

  for (int m = 0; m < s.morphism_count(); ++m) {
    MorId mor{m};
    ObjId b = s.cod(mor);
    for (MorId g : s.from(b)) {
      if (f.mor_map[s.compose(g, mor).v] !=
          t.compose(f.mor_map[g.v], f.mor_map[m])) {
        report.add("functor-composition",
                   {s.morphism_name(g), s.morphism_name(mor)},
                   "F(g.f) differs from F(g).F(f)");
        if (report.entries.size() > 64) return report;
      }
    }
  }
  return report;
}

NatTrans identity_nat(const Functor& f) {
  NatTrans t;
  t.source = f;
  t.target = f;
  t.components.resize(f.obj_map.size());
  for (std::size_t a = 0; a < f.obj_map.size(); ++a)
    t.components[a] = f.target->identity(f.obj_map[a]);
  return t;
}

Report verify_natural(const NatTrans& t) {
  Report report;
  const Functor& f = t.source;
  const Functor& g = t.target;
  if (f.source == nullptr || g.source == nullptr) {
    report.add("nat-unbound", {}, "component functor missing a category");
    return report;
  }
  if (f.source != g.source || f.target != g.target) {
    report.add("nat-not-parallel", {},
               "source and target functors are not parallel");
    return report;
  }
  const FinCategory& s = *f.source;
  const FinCategory& d = *f.target;
  if (static_cast<int>(t.components.size()) != s.object_count()) {
    report.add("nat-partial", {}, "one component per source object required");
    return report;
  }
  for (int a = 0; a < s.object_count(); ++a) {
    MorId comp = t.components[a];
    if (comp.v < 0 || comp.v >= d.morphism_count() ||
        d.dom(comp) != f.obj_map[a] || d.cod(comp) != g.obj_map[a]) {
      report.add("nat-component", {s.object_name(ObjId{a})},
                 "component is not F(A) -> G(A)");
      return report;
    }
  }
  for (int m = 0; m < s.morphism_count(); ++m) {
    MorId mor{m};
    ObjId a = s.dom(mor);
    ObjId b = s.cod(mor);
    if (d.compose(t.components[b.v], f.mor_map[m]) !=
        d.compose(g.mor_map[m], t.components[a.v])) {
      report.add("nat-square", {s.morphism_name(mor)},
                 "naturality square does not commute");
      if (report.entries.size() > 64) return report;
    }
  }
  return report;
}

}  // namespace pretor
