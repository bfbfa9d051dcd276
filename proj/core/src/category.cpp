#include "pretor/category.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <sstream>

#include "pretor/parallel.hpp"

namespace pretor {

namespace {

bool bad_name(const std::string& s) {
  if (s.empty()) return true;
  if (s == ":" || s == "->" || s == "=" || s == "*" || s == "<") return true;
  if (s.front() == '@' || s.front() == '#') return true;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == '#')
      return true;
  }
  return false;
}

// Caps pathological reports while keeping the deterministic prefix.
void cap_entries(Report& report, std::size_t cap) {
  if (report.entries.size() <= cap) return;
  std::size_t dropped = report.entries.size() - cap;
  report.entries.resize(cap);
  report.add("report-truncated", {},
             "further violations suppressed: " + std::to_string(dropped));
}

}  // namespace

std::optional<ObjId> FinCategory::object_by_name(std::string_view name) const {
  auto it = obj_index_.find(std::string(name));
  if (it == obj_index_.end()) return std::nullopt;
  return ObjId{it->second};
}

std::optional<MorId> FinCategory::morphism_by_name(std::string_view name) const {
  auto it = mor_index_.find(std::string(name));
  if (it == mor_index_.end()) return std::nullopt;
  return MorId{it->second};
}

class CategoryBuilder {
 public:
  static BuildOutcome run(const RawCategory& raw);
};

BuildOutcome build_category(const RawCategory& raw) {
  return CategoryBuilder::run(raw);
}

BuildOutcome CategoryBuilder::run(const RawCategory& raw) {
  BuildOutcome out;
  Report& report = out.report;

  const int n = static_cast<int>(raw.objects.size());
  const int m = static_cast<int>(raw.morphisms.size());

  // ----- names and endpoints -----
  std::unordered_map<std::string, std::int32_t> obj_index;
  for (int i = 0; i < n; ++i) {
    const std::string& name = raw.objects[i];
    if (bad_name(name)) {
      report.add("bad-name", {name}, "object name is empty or reserved");
      continue;
    }
    auto [it, inserted] = obj_index.emplace(name, i);
    if (!inserted) report.add("duplicate-id", {name}, "object declared twice");
  }

  std::unordered_map<std::string, std::int32_t> mor_index;
  for (int i = 0; i < m; ++i) {
    const RawMorphism& mor = raw.morphisms[i];
    if (bad_name(mor.name)) {
      report.add("bad-name", {mor.name}, "morphism name is empty or reserved");
      continue;
    }
    auto [it, inserted] = mor_index.emplace(mor.name, i);
    if (!inserted)
      report.add("duplicate-id", {mor.name}, "morphism declared twice");
    if (mor.dom < 0 || mor.dom >= n || mor.cod < 0 || mor.cod >= n)
      report.add("dangling-endpoint", {mor.name},
                 "domain or codomain is not a declared object");
  }

  if (!report.ok()) return out;

  // ----- sort morphisms by (dom, cod, declaration order) -----
  std::vector<std::int32_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int32_t a, std::int32_t b) {
                     const RawMorphism& x = raw.morphisms[a];
                     const RawMorphism& y = raw.morphisms[b];
                     if (x.dom != y.dom) return x.dom < y.dom;
                     return x.cod < y.cod;
                   });
  std::vector<MorId> raw_to_id(m);
  for (int i = 0; i < m; ++i) raw_to_id[order[i]] = MorId{i};

  FinCategory cat;
  cat.obj_names_ = raw.objects;
  cat.obj_index_ = std::move(obj_index);
  cat.mor_names_.resize(m);
  cat.dom_.resize(m);
  cat.cod_.resize(m);
  for (int i = 0; i < m; ++i) {
    const RawMorphism& mor = raw.morphisms[order[i]];
    cat.mor_names_[i] = mor.name;
    cat.dom_[i] = ObjId{mor.dom};
    cat.cod_[i] = ObjId{mor.cod};
    cat.mor_index_[mor.name] = i;
  }

  cat.hom_first_.assign(static_cast<std::size_t>(n) * n, 0);
  cat.hom_count_.assign(static_cast<std::size_t>(n) * n, 0);
  cat.out_first_.assign(n, 0);
  cat.out_count_.assign(n, 0);
  for (int i = 0; i < m; ++i) {
    ++cat.hom_count_[static_cast<std::size_t>(cat.dom_[i].v) * n + cat.cod_[i].v];
    ++cat.out_count_[cat.dom_[i].v];
  }
  {
    std::int32_t acc = 0;
    for (std::size_t idx = 0; idx < cat.hom_count_.size(); ++idx) {
      cat.hom_first_[idx] = acc;
      acc += cat.hom_count_[idx];
    }
    acc = 0;
    for (int a = 0; a < n; ++a) {
      cat.out_first_[a] = acc;
      acc += cat.out_count_[a];
    }
  }

  // ----- identities -----
  cat.identity_.assign(n, MorId{});
  {
    std::vector<char> have(n, 0);
    for (const auto& [obj, raw_mor] : raw.identities) {
      if (obj < 0 || obj >= n || raw_mor < 0 || raw_mor >= m) {
        report.add("dangling-endpoint", {},
                   "identity row references an undeclared object or morphism");
        continue;
      }
      MorId id = raw_to_id[raw_mor];
      if (cat.dom_[id.v].v != obj || cat.cod_[id.v].v != obj) {
        report.add("identity-endpoint",
                   {cat.obj_names_[obj], cat.mor_names_[id.v]},
                   "assigned identity is not an endomorphism of its object");
        continue;
      }
      if (have[obj]) {
        if (cat.identity_[obj] != id)
          report.add("identity-conflict", {cat.obj_names_[obj]},
                     "two different identities assigned");
        continue;
      }
      have[obj] = 1;
      cat.identity_[obj] = id;
    }
    for (int a = 0; a < n; ++a) {
      if (!have[a])
        report.add("missing-identity", {cat.obj_names_[a]},
                   "object has no assigned identity morphism");
    }
  }

  // ----- composition table -----
  cat.comp_off_.assign(m, 0);
  {
    std::int64_t acc = 0;
    for (int f = 0; f < m; ++f) {
      cat.comp_off_[f] = acc;
      acc += cat.out_count_[cat.cod_[f].v];
    }
    cat.comp_.assign(static_cast<std::size_t>(acc), MorId{});
  }
  auto slot = [&](std::int32_t g, std::int32_t f) -> MorId& {
    return cat.comp_[cat.comp_off_[f] + (g - cat.out_first_[cat.cod_[f].v])];
  };

  auto check_result = [&](std::int32_t g, std::int32_t f, std::int32_t h,
                          const char* rule) -> bool {
    if (h < 0 || h >= m) {
      report.add(rule, {cat.mor_names_[g], cat.mor_names_[f]},
                 "composite is not a declared morphism");
      return false;
    }
    if (cat.dom_[h] != cat.dom_[f] || cat.cod_[h] != cat.cod_[g]) {
      report.add(rule,
                 {cat.mor_names_[g], cat.mor_names_[f], cat.mor_names_[h]},
                 "composite lands in the wrong hom-set");
      return false;
    }
    return true;
  };

  for (const RawCompose& row : raw.compose_rows) {
    if (row.g < 0 || row.g >= m || row.f < 0 || row.f >= m) {
      report.add("dangling-endpoint", {},
                 "compose row references an undeclared morphism");
      continue;
    }
    MorId g = raw_to_id[row.g];
    MorId f = raw_to_id[row.f];
    if (cat.dom_[g.v] != cat.cod_[f.v]) {
      report.add("compose-row-not-composable",
                 {cat.mor_names_[g.v], cat.mor_names_[f.v]},
                 "dom(g) differs from cod(f)");
      continue;
    }
    std::int32_t h_raw = row.h;
    MorId h = (h_raw >= 0 && h_raw < m) ? raw_to_id[h_raw] : MorId{-1};
    if (!check_result(g.v, f.v, h.v, "compose-row-bad-result")) continue;
    MorId& cell = slot(g.v, f.v);
    if (cell.valid() && cell != h) {
      report.add("compose-row-conflict",
                 {cat.mor_names_[g.v], cat.mor_names_[f.v]},
                 "two rows give different composites");
      continue;
    }
    cell = h;
  }

  if (raw.compose_rule) {
    for (int f = 0; f < m; ++f) {
      std::int32_t b = cat.cod_[f].v;
      for (std::int32_t g = cat.out_first_[b];
           g < cat.out_first_[b] + cat.out_count_[b]; ++g) {
        MorId& cell = slot(g, f);
        if (cell.valid()) continue;
        std::int32_t h_raw = raw.compose_rule(order[g], order[f]);
        if (h_raw < 0) continue;  // leave missing; reported below
        if (h_raw >= m) {
          report.add("compose-rule-bad-result",
                     {cat.mor_names_[g], cat.mor_names_[f]},
                     "rule produced an out-of-range morphism");
          continue;
        }
        MorId h = raw_to_id[h_raw];
        if (!check_result(g, f, h.v, "compose-rule-bad-result")) continue;
        cell = h;
      }
    }
  }

  for (int f = 0; f < m && report.entries.size() < 2000; ++f) {
    std::int32_t b = cat.cod_[f].v;
    for (std::int32_t g = cat.out_first_[b];
         g < cat.out_first_[b] + cat.out_count_[b]; ++g) {
      if (!slot(g, f).valid())
        report.add("missing-composite",
                   {cat.mor_names_[g], cat.mor_names_[f]},
                   "no composite declared for a composable pair");
    }
  }

  if (!report.ok()) {
    cap_entries(report, 1000);
    return out;
  }

  // ----- identity laws -----
  for (int f = 0; f < m; ++f) {
    MorId idc = cat.identity_[cat.cod_[f].v];
    MorId idd = cat.identity_[cat.dom_[f].v];
    if (cat.compose(idc, MorId{f}) != MorId{f} ||
        cat.compose(MorId{f}, idd) != MorId{f})
      report.add("identity-law", {cat.mor_names_[f]},
                 "composing with the assigned identity changes the morphism");
  }

  // ----- associativity, full scan (parallel, merged in chunk order) -----
  {
    std::vector<std::vector<Violation>> found;
    std::mutex mu;
    int chunks = 0;
    auto work = [&](int chunk, std::int64_t lo, std::int64_t hi) {
      std::vector<Violation> local;
      for (std::int64_t f = lo; f < hi; ++f) {
        std::int32_t b = cat.cod_[f].v;
        for (std::int32_t g = cat.out_first_[b];
             g < cat.out_first_[b] + cat.out_count_[b]; ++g) {
          MorId gf = cat.compose(MorId{g}, MorId{static_cast<std::int32_t>(f)});
          std::int32_t c = cat.cod_[g].v;
          for (std::int32_t h = cat.out_first_[c];
               h < cat.out_first_[c] + cat.out_count_[c]; ++h) {
            MorId hg = cat.compose(MorId{h}, MorId{g});
            if (cat.compose(MorId{h}, gf) !=
                cat.compose(hg, MorId{static_cast<std::int32_t>(f)})) {
              if (local.size() < 256)
                local.push_back(Violation{
                    "associativity",
                    {cat.mor_names_[h], cat.mor_names_[g],
                     cat.mor_names_[f]},
                    "h.(g.f) differs from (h.g).f"});
            }
          }
        }
      }
      std::scoped_lock lock(mu);
      if (static_cast<int>(found.size()) <= chunk) found.resize(chunk + 1);
      found[chunk] = std::move(local);
    };
    chunks = parallel_chunks(m, work);
    for (int c = 0; c < chunks && c < static_cast<int>(found.size()); ++c)
      for (auto& v : found[c]) report.entries.push_back(std::move(v));
  }

  if (!report.ok()) {
    cap_entries(report, 1000);
    return out;
  }

  // ----- cached analysis: mono/epi by cancellation, split parts, isos -----
  cat.mono_.assign(m, 1);
  cat.epi_.assign(m, 1);
  cat.split_mono_.assign(m, 0);
  cat.split_epi_.assign(m, 0);
  cat.iso_.assign(m, 0);
  cat.inverse_.assign(m, MorId{});
  {
    std::vector<std::int32_t> seen(m, -1);
    std::int32_t epoch = 0;
    for (int mor = 0; mor < m; ++mor) {
      ObjId a = cat.dom_[mor];
      ObjId b = cat.cod_[mor];
      for (int y = 0; y < n && cat.mono_[mor]; ++y) {
        ++epoch;
        for (MorId u : cat.hom(ObjId{y}, a)) {
          MorId c = cat.compose(MorId{mor}, u);
          if (seen[c.v] == epoch) {
            cat.mono_[mor] = 0;
            break;
          }
          seen[c.v] = epoch;
        }
      }
      for (int y = 0; y < n && cat.epi_[mor]; ++y) {
        ++epoch;
        for (MorId u : cat.hom(b, ObjId{y})) {
          MorId c = cat.compose(u, MorId{mor});
          if (seen[c.v] == epoch) {
            cat.epi_[mor] = 0;
            break;
          }
          seen[c.v] = epoch;
        }
      }
      MorId ida = cat.identity_[a.v];
      MorId idb = cat.identity_[b.v];
      for (MorId s : cat.hom(b, a)) {
        bool right = cat.compose(MorId{mor}, s) == idb;  // m.s = id_b
        bool left = cat.compose(s, MorId{mor}) == ida;   // s.m = id_a
        if (right) cat.split_epi_[mor] = 1;
        if (left) cat.split_mono_[mor] = 1;
        if (right && left && !cat.iso_[mor]) {
          cat.iso_[mor] = 1;
          cat.inverse_[mor] = s;
        }
      }
    }
  }

  // ----- iso classes (smallest-id representative) -----
  {
    std::vector<std::int32_t> rep(n);
    std::iota(rep.begin(), rep.end(), 0);
    std::function<std::int32_t(std::int32_t)> find =
        [&](std::int32_t x) -> std::int32_t {
      while (rep[x] != x) {
        rep[x] = rep[rep[x]];
        x = rep[x];
      }
      return x;
    };
    for (int mor = 0; mor < m; ++mor) {
      if (!cat.iso_[mor]) continue;
      std::int32_t ra = find(cat.dom_[mor].v);
      std::int32_t rb = find(cat.cod_[mor].v);
      if (ra == rb) continue;
      if (ra < rb)
        rep[rb] = ra;
      else
        rep[ra] = rb;
    }
    cat.iso_class_.resize(n);
    for (int a = 0; a < n; ++a) cat.iso_class_[a] = ObjId{find(a)};
  }

  out.category = std::move(cat);
  return out;
}

OppositeCategory opposite(const FinCategory& c) {
  RawCategory raw;
  raw.objects.resize(c.object_count());
  for (int a = 0; a < c.object_count(); ++a)
    raw.objects[a] = c.object_name(ObjId{a});
  raw.morphisms.resize(c.morphism_count());
  for (int i = 0; i < c.morphism_count(); ++i) {
    raw.morphisms[i].name = c.morphism_name(MorId{i});
    raw.morphisms[i].dom = c.cod(MorId{i}).v;
    raw.morphisms[i].cod = c.dom(MorId{i}).v;
  }
  for (int a = 0; a < c.object_count(); ++a)
    raw.identities.emplace_back(a, c.identity(ObjId{a}).v);
  // Raw indices coincide with the original morphism ids, so the reversed
  // composition can be queried directly.
  raw.compose_rule = [&c](std::int32_t g, std::int32_t f) -> std::int32_t {
    return c.compose(MorId{f}, MorId{g}).v;
  };

  BuildOutcome built = build_category(raw);
  if (!built.ok())
    throw Error(Errc::internal,
                "opposite category failed validation: " +
                    built.report.to_string());

  OppositeCategory result;
  result.category = std::move(*built.category);
  result.to_op.resize(c.morphism_count());
  result.from_op.resize(c.morphism_count());
  for (int i = 0; i < c.morphism_count(); ++i) {
    MorId op = *result.category.morphism_by_name(c.morphism_name(MorId{i}));
    result.to_op[i] = op;
    result.from_op[op.v] = MorId{i};
  }
  return result;
}

}  // namespace pretor
