#include "pretor/gallery.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pretor {
namespace {

std::string digits_of(const std::vector<int>& images) {
  if (images.empty()) return "0";
  std::string s;
  for (int i : images) s += std::to_string(i);
  return s;
}

void require_endo(const EndoObj& x) {
  if (x.size < 0 || static_cast<int>(x.map.size()) != x.size)
    throw Error(Errc::precondition_failed,
                "endomap carrier and image list disagree");
  for (int v : x.map)
    if (v < 1 || v > x.size)
      throw Error(Errc::precondition_failed, "endomap image out of range");
}

void require_preord(const PreordObj& a) {
  if (a.size < 0 ||
      a.rel.size() != static_cast<std::size_t>(a.size) * a.size)
    throw Error(Errc::precondition_failed,
                "relation matrix does not match the carrier");
  for (int p = 1; p <= a.size; ++p)
    if (!a.related(p, p))
      throw Error(Errc::precondition_failed, "relation is not reflexive");
  for (int p = 1; p <= a.size; ++p)
    for (int q = 1; q <= a.size; ++q)
      for (int r = 1; r <= a.size; ++r)
        if (a.related(p, q) && a.related(q, r) && !a.related(p, r))
          throw Error(Errc::precondition_failed, "relation is not transitive");
}

// All image tuples [1..base]^len in ascending lexicographic order.
std::vector<std::vector<int>> all_tuples(int len, int base) {
  std::vector<std::vector<int>> out;
  if (len == 0) {
    out.emplace_back();
    return out;
  }
  if (base == 0) return out;
  std::vector<int> tup(len, 1);
  while (true) {
    out.push_back(tup);
    int i = len - 1;
    while (i >= 0 && tup[i] == base) {
      tup[i] = 1;
      --i;
    }
    if (i < 0) break;
    ++tup[i];
  }
  return out;
}

// Callers keep raw alive for the duration of the build; compose_rule
// lambdas may reference it and their surrounding locals.
FinCategory finish(const RawCategory& raw, const char* what) {
  BuildOutcome out = build_category(raw);
  if (!out.ok())
    throw Error(Errc::internal,
                std::string(what) + " construction failed:\n" +
                    out.report.to_string());
  return std::move(*out.category);
}

ObjId need_object(const FinCategory& c, const std::string& name) {
  auto id = c.object_by_name(name);
  if (!id)
    throw Error(Errc::unknown_name,
                "gallery does not contain object " + name);
  return *id;
}

MorId need_morphism(const FinCategory& c, const std::string& name) {
  auto id = c.morphism_by_name(name);
  if (!id)
    throw Error(Errc::internal, "gallery does not contain morphism " + name);
  return *id;
}

}  // namespace

FinCategory poset_category(
    const std::vector<std::string>& names,
    const std::vector<std::pair<std::string, std::string>>& covers) {
  const int n = static_cast<int>(names.size());
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < n; ++i)
    if (!index.emplace(names[i], i).second)
      throw Error(Errc::duplicate_id, "duplicate object name: " + names[i]);

  std::vector<char> le(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) le[static_cast<std::size_t>(i) * n + i] = 1;
  for (const auto& [a, b] : covers) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end())
      throw Error(Errc::unknown_name,
                  "cover row references an undeclared object");
    le[static_cast<std::size_t>(ia->second) * n + ib->second] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!le[static_cast<std::size_t>(i) * n + k]) continue;
      for (int j = 0; j < n; ++j)
        if (le[static_cast<std::size_t>(k) * n + j])
          le[static_cast<std::size_t>(i) * n + j] = 1;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (le[static_cast<std::size_t>(i) * n + j] &&
          le[static_cast<std::size_t>(j) * n + i])
        throw Error(Errc::not_a_partial_order,
                    names[i] + " and " + names[j] +
                        " are comparable both ways");

  RawCategory raw;
  raw.objects = names;
  std::vector<std::int32_t> mor_at(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!le[static_cast<std::size_t>(a) * n + b]) continue;
      mor_at[static_cast<std::size_t>(a) * n + b] =
          static_cast<std::int32_t>(raw.morphisms.size());
      raw.morphisms.push_back({names[a] + "<=" + names[b], a, b});
    }
  for (int a = 0; a < n; ++a)
    raw.identities.emplace_back(a, mor_at[static_cast<std::size_t>(a) * n + a]);
  std::vector<std::int32_t> doms, cods;
  for (const RawMorphism& m : raw.morphisms) {
    doms.push_back(m.dom);
    cods.push_back(m.cod);
  }
  raw.compose_rule = [&doms, &cods, &mor_at, n](std::int32_t g,
                                                std::int32_t f) {
    return mor_at[static_cast<std::size_t>(doms[f]) * n + cods[g]];
  };
  return finish(raw, "poset");
}

FinCategory chain(int n) {
  if (n < 1)
    throw Error(Errc::precondition_failed, "chain length must be >= 1");
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  for (int i = 1; i < n; ++i)
    covers.emplace_back(std::to_string(i), std::to_string(i + 1));
  return poset_category(names, covers);
}

FinCategory n5() {
  return poset_category({"T", "C", "Z", "Z'", "F"},
                        {{"T", "Z"},
                         {"Z", "Z'"},
                         {"Z'", "F"},
                         {"T", "C"},
                         {"C", "F"}});
}

std::string endo_name(const EndoObj& x) {
  if (x.size == 0) return "e0";
  return "e" + std::to_string(x.size) + "_" + digits_of(x.map);
}

std::string preord_name(const PreordObj& a) {
  if (a.size == 0) return "p0";
  std::string bits;
  for (char c : a.rel) bits += c ? '1' : '0';
  return "p" + std::to_string(a.size) + "_" + bits;
}

GalleryResult endomap_category(int k) {
  if (k < 0)
    throw Error(Errc::precondition_failed, "carrier bound must be >= 0");
  std::vector<EndoObj> objs;
  for (int m = 0; m <= k; ++m)
    for (std::vector<int>& tup : all_tuples(m, m))
      objs.push_back({m, std::move(tup)});
  const int n = static_cast<int>(objs.size());

  RawCategory raw;
  for (const EndoObj& x : objs) raw.objects.push_back(endo_name(x));
  struct MInfo {
    int dom, cod;
    std::vector<int> images;
  };
  std::vector<MInfo> minfo;
  std::unordered_map<std::string, std::int32_t> by_name;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (std::vector<int>& phi : all_tuples(objs[a].size, objs[b].size)) {
        bool equivariant = true;
        for (int x = 1; x <= objs[a].size; ++x)
          if (phi[objs[a].map[x - 1] - 1] != objs[b].map[phi[x - 1] - 1]) {
            equivariant = false;
            break;
          }
        if (!equivariant) continue;
        std::string name =
            raw.objects[a] + ">" + raw.objects[b] + ":" + digits_of(phi);
        by_name.emplace(name, static_cast<std::int32_t>(raw.morphisms.size()));
        raw.morphisms.push_back({std::move(name), a, b});
        minfo.push_back({a, b, std::move(phi)});
      }
  for (int a = 0; a < n; ++a) {
    std::vector<int> id_map(objs[a].size);
    for (int x = 1; x <= objs[a].size; ++x) id_map[x - 1] = x;
    raw.identities.emplace_back(
        a, by_name.at(raw.objects[a] + ">" + raw.objects[a] + ":" +
                      digits_of(id_map)));
  }
  raw.compose_rule = [&raw, &minfo, &by_name](std::int32_t g,
                                              std::int32_t f) -> std::int32_t {
    const MInfo& mg = minfo[g];
    const MInfo& mf = minfo[f];
    std::vector<int> h(mf.images.size());
    for (std::size_t i = 0; i < h.size(); ++i)
      h[i] = mg.images[mf.images[i] - 1];
    auto it = by_name.find(raw.objects[mf.dom] + ">" + raw.objects[mg.cod] +
                           ":" + digits_of(h));
    return it == by_name.end() ? -1 : it->second;
  };

  GalleryResult out;
  out.subs.resize(3);
  out.subs[0].name = "T";
  out.subs[1].name = "F";
  out.subs[2].name = "Z";
  for (int a = 0; a < n; ++a) {
    const EndoObj& x = objs[a];
    std::vector<char> hit(x.size + 1, 0);
    bool bijective = true;
    for (int v : x.map) {
      if (hit[v]) bijective = false;
      hit[v] = 1;
    }
    if (bijective) out.subs[0].objects.push_back(raw.objects[a]);

    std::vector<int> pow(x.size);
    for (int p = 1; p <= x.size; ++p) pow[p - 1] = p;
    for (int step = 0; step < x.size; ++step)
      for (int p = 1; p <= x.size; ++p) pow[p - 1] = x.map[pow[p - 1] - 1];
    bool settled = true;
    for (int p = 1; p <= x.size; ++p)
      if (x.map[pow[p - 1] - 1] != pow[p - 1]) {
        settled = false;
        break;
      }
    if (settled) out.subs[1].objects.push_back(raw.objects[a]);

    bool is_id = true;
    for (int p = 1; p <= x.size; ++p)
      if (x.map[p - 1] != p) {
        is_id = false;
        break;
      }
    if (is_id) out.subs[2].objects.push_back(raw.objects[a]);
  }
  out.category = finish(raw, "endomap gallery");
  return out;
}

GalleryResult preord_category(int k) {
  if (k < 0)
    throw Error(Errc::precondition_failed, "carrier bound must be >= 0");
  std::vector<PreordObj> objs;
  for (int m = 0; m <= k; ++m) {
    const int off_diag = m * m - m;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << off_diag);
         ++mask) {
      PreordObj a;
      a.size = m;
      a.rel.assign(static_cast<std::size_t>(m) * m, 0);
      int bit = 0;
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
          if (p == q)
            a.rel[static_cast<std::size_t>(p) * m + q] = 1;
          else
            a.rel[static_cast<std::size_t>(p) * m + q] =
                (mask >> bit++ & 1) ? 1 : 0;
        }
      bool transitive = true;
      for (int p = 1; p <= m && transitive; ++p)
        for (int q = 1; q <= m && transitive; ++q)
          for (int r = 1; r <= m; ++r)
            if (a.related(p, q) && a.related(q, r) && !a.related(p, r)) {
              transitive = false;
              break;
            }
      if (transitive) objs.push_back(std::move(a));
    }
  }
  const int n = static_cast<int>(objs.size());

  RawCategory raw;
  for (const PreordObj& a : objs) raw.objects.push_back(preord_name(a));
  struct MInfo {
    int dom, cod;
    std::vector<int> images;
  };
  std::vector<MInfo> minfo;
  std::unordered_map<std::string, std::int32_t> by_name;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (std::vector<int>& phi : all_tuples(objs[a].size, objs[b].size)) {
        bool monotone = true;
        for (int p = 1; p <= objs[a].size && monotone; ++p)
          for (int q = 1; q <= objs[a].size; ++q)
            if (objs[a].related(p, q) &&
                !objs[b].related(phi[p - 1], phi[q - 1])) {
              monotone = false;
              break;
            }
        if (!monotone) continue;
        std::string name =
            raw.objects[a] + ">" + raw.objects[b] + ":" + digits_of(phi);
        by_name.emplace(name, static_cast<std::int32_t>(raw.morphisms.size()));
        raw.morphisms.push_back({std::move(name), a, b});
        minfo.push_back({a, b, std::move(phi)});
      }
  for (int a = 0; a < n; ++a) {
    std::vector<int> id_map(objs[a].size);
    for (int x = 1; x <= objs[a].size; ++x) id_map[x - 1] = x;
    raw.identities.emplace_back(
        a, by_name.at(raw.objects[a] + ">" + raw.objects[a] + ":" +
                      digits_of(id_map)));
  }
  raw.compose_rule = [&raw, &minfo, &by_name](std::int32_t g,
                                              std::int32_t f) -> std::int32_t {
    const MInfo& mg = minfo[g];
    const MInfo& mf = minfo[f];
    std::vector<int> h(mf.images.size());
    for (std::size_t i = 0; i < h.size(); ++i)
      h[i] = mg.images[mf.images[i] - 1];
    auto it = by_name.find(raw.objects[mf.dom] + ">" + raw.objects[mg.cod] +
                           ":" + digits_of(h));
    return it == by_name.end() ? -1 : it->second;
  };

  GalleryResult out;
  out.subs.resize(3);
  out.subs[0].name = "Equiv";
  out.subs[1].name = "ParOrd";
  out.subs[2].name = "Discrete";
  for (int a = 0; a < n; ++a) {
    const PreordObj& x = objs[a];
    bool symmetric = true;
    bool antisymmetric = true;
    bool discrete = true;
    for (int p = 1; p <= x.size; ++p)
      for (int q = 1; q <= x.size; ++q) {
        if (x.related(p, q) != x.related(q, p)) symmetric = false;
        if (p != q && x.related(p, q) && x.related(q, p))
          antisymmetric = false;
        if (p != q && x.related(p, q)) discrete = false;
      }
    if (symmetric) out.subs[0].objects.push_back(raw.objects[a]);
    if (antisymmetric) out.subs[1].objects.push_back(raw.objects[a]);
    if (discrete) out.subs[2].objects.push_back(raw.objects[a]);
  }
  out.category = finish(raw, "preorder gallery");
  return out;
}

DirectSequence endomap_decomposition(const FinCategory& gallery,
                                     const EndoObj& x) {
  require_endo(x);
  const int m = x.size;

  // Eventual image of the carrier: exactly the points lying on cycles.
  std::vector<char> alive(m + 1, 1);
  while (true) {
    std::vector<char> next(m + 1, 0);
    for (int p = 1; p <= m; ++p)
      if (alive[p]) next[x.map[p - 1]] = 1;
    if (next == alive) break;
    alive = std::move(next);
  }

  std::vector<int> cyclic;
  for (int p = 1; p <= m; ++p)
    if (alive[p]) cyclic.push_back(p);
  std::vector<int> pos_in_a0(m + 1, 0);
  for (std::size_t i = 0; i < cyclic.size(); ++i)
    pos_in_a0[cyclic[i]] = static_cast<int>(i) + 1;

  EndoObj torsion;
  torsion.size = static_cast<int>(cyclic.size());
  for (int p : cyclic) torsion.map.push_back(pos_in_a0[x.map[p - 1]]);

  // Classes: whole cycles, plus a singleton per non-cyclic point, indexed by
  // ascending minimal member.
  std::vector<int> class_of(m + 1, 0);
  int classes = 0;
  for (int p = 1; p <= m; ++p) {
    if (class_of[p] != 0) continue;
    ++classes;
    class_of[p] = classes;
    if (!alive[p]) continue;
    for (int q = x.map[p - 1]; q != p; q = x.map[q - 1]) class_of[q] = classes;
  }

  EndoObj quotient;
  quotient.size = classes;
  quotient.map.assign(classes, 0);
  for (int p = 1; p <= m; ++p)
    if (quotient.map[class_of[p] - 1] == 0)
      quotient.map[class_of[p] - 1] = class_of[x.map[p - 1]];

  std::vector<int> unit_images(m);
  for (int p = 1; p <= m; ++p) unit_images[p - 1] = class_of[p];

  DirectSequence seq;
  seq.whole = need_object(gallery, endo_name(x));
  seq.torsion_part = need_object(gallery, endo_name(torsion));
  seq.free_part = need_object(gallery, endo_name(quotient));
  seq.counit = need_morphism(gallery, endo_name(torsion) + ">" + endo_name(x) +
                                          ":" + digits_of(cyclic));
  seq.unit = need_morphism(gallery, endo_name(x) + ">" + endo_name(quotient) +
                                        ":" + digits_of(unit_images));
  return seq;
}

DirectSequence preord_decomposition(const FinCategory& gallery,
                                    const PreordObj& a) {
  require_preord(a);
  const int m = a.size;

  PreordObj torsion;
  torsion.size = m;
  torsion.rel.assign(static_cast<std::size_t>(m) * m, 0);
  for (int p = 1; p <= m; ++p)
    for (int q = 1; q <= m; ++q)
      if (a.related(p, q) && a.related(q, p))
        torsion.rel[static_cast<std::size_t>(p - 1) * m + (q - 1)] = 1;

  std::vector<int> class_of(m + 1, 0);
  std::vector<int> rep;
  for (int p = 1; p <= m; ++p) {
    if (class_of[p] != 0) continue;
    rep.push_back(p);
    const int id = static_cast<int>(rep.size());
    for (int q = p; q <= m; ++q)
      if (a.related(p, q) && a.related(q, p)) class_of[q] = id;
  }
  const int classes = static_cast<int>(rep.size());
  if (classes > m)
    throw Error(Errc::quotient_exceeds_bound,
                "quotient larger than its carrier");

  PreordObj quotient;
  quotient.size = classes;
  quotient.rel.assign(static_cast<std::size_t>(classes) * classes, 0);
  for (int i = 0; i < classes; ++i)
    for (int j = 0; j < classes; ++j)
      if (a.related(rep[i], rep[j]))
        quotient.rel[static_cast<std::size_t>(i) * classes + j] = 1;

  std::vector<int> id_images(m), unit_images(m);
  for (int p = 1; p <= m; ++p) {
    id_images[p - 1] = p;
    unit_images[p - 1] = class_of[p];
  }

  DirectSequence seq;
  seq.whole = need_object(gallery, preord_name(a));
  seq.torsion_part = need_object(gallery, preord_name(torsion));
  seq.free_part = need_object(gallery, preord_name(quotient));
  seq.counit =
      need_morphism(gallery, preord_name(torsion) + ">" + preord_name(a) +
                                 ":" + digits_of(id_images));
  seq.unit =
      need_morphism(gallery, preord_name(a) + ">" + preord_name(quotient) +
                                 ":" + digits_of(unit_images));
  return seq;
}

DirectSequence chain_decomposition(const FinCategory& chain_cat,
                                   const std::vector<int>& torsion,
                                   const std::vector<int>& torsion_free,
                                   int p) {
  const int n = chain_cat.object_count();
  if (p < 1 || p > n)
    throw Error(Errc::precondition_failed, "position outside the chain");
  auto has = [](const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  const bool in_t = has(torsion, p);
  const bool in_f = has(torsion_free, p);
  if (!in_t && !in_f)
    throw Error(Errc::hypothesis_not_met,
                "position lies in neither class of the theory");

  int tpos = p, fpos = p;
  if (in_t && !in_f) {
    fpos = 0;
    for (int b = p; b <= n; ++b)
      if (has(torsion, b) && has(torsion_free, b)) {
        fpos = b;
        break;
      }
    if (fpos == 0)
      throw Error(Errc::hypothesis_not_met,
                  "no shared position above a torsion-only position");
  } else if (in_f && !in_t) {
    tpos = 0;
    for (int b = p; b >= 1; --b)
      if (has(torsion, b) && has(torsion_free, b)) {
        tpos = b;
        break;
      }
    if (tpos == 0)
      throw Error(Errc::hypothesis_not_met,
                  "no shared position below a free-only position");
  }

  auto obj = [&chain_cat](int pos) {
    return need_object(chain_cat, std::to_string(pos));
  };
  auto arrow = [&chain_cat](int lo, int hi) {
    auto id = chain_cat.morphism_by_name(std::to_string(lo) + "<=" +
                                         std::to_string(hi));
    if (!id)
      throw Error(Errc::precondition_failed,
                  "category is not a chain built by this gallery");
    return *id;
  };

  DirectSequence seq;
  seq.torsion_part = obj(tpos);
  seq.whole = obj(p);
  seq.free_part = obj(fpos);
  seq.counit = arrow(tpos, p);
  seq.unit = arrow(p, fpos);
  return seq;
}

}  // namespace pretor
