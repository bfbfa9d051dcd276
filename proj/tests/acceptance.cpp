#include <chrono>
#include <deque>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pretor/classify.hpp"
#include "pretor/cli.hpp"
#include "pretor/enumerate.hpp"
#include "pretor/gallery.hpp"
#include "pretor/pretorsion.hpp"
#include "pretor/spec_format.hpp"

using namespace pretor;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (ok && !cond) {
      ok = false;
      detail = what;
    }
  }
};

struct GalleryTheory {
  std::string label;
  const FinCategory* category;
  FullSub torsion, torsion_free;
};

struct Pool {
  std::deque<FinCategory> categories;
  std::vector<GalleryTheory> theories;
};

const NamedSub* find_sub(const GalleryResult& g, const std::string& name) {
  for (const NamedSub& ns : g.subs)
    if (ns.name == name) return &ns;
  return nullptr;
}

Pool gallery_theories() {
  Pool pool;

  pool.categories.push_back(poset_category({"0", "1"}, {{"0", "1"}}));
  {
    const FinCategory& two = pool.categories.back();
    pool.theories.push_back({"two", &two, FullSub::of_names(two, {"0", "1"}),
                             FullSub::of_names(two, {"1"})});
  }

  for (int n = 1; n <= 3; ++n) {
    pool.categories.push_back(chain(n));
    const FinCategory& c = pool.categories.back();
    for (const EnumeratedTheory& th : enumerate_pretorsion(c))
      pool.theories.push_back({"chain" + std::to_string(n), &c,
                               FullSub::of(c, th.torsion.objects),
                               FullSub::of(c, th.torsion_free.objects)});
  }

  pool.categories.push_back(n5());
  {
    const FinCategory& pent = pool.categories.back();
    pool.theories.push_back({"n5", &pent,
                             FullSub::of_names(pent, {"T", "Z", "Z'"}),
                             FullSub::of_names(pent, {"F", "Z", "Z'"})});
  }

  for (int k = 2; k <= 3; ++k) {
    GalleryResult g = endomap_category(k);
    pool.categories.push_back(std::move(g.category));
    const FinCategory& c = pool.categories.back();
    pool.theories.push_back({"endomap" + std::to_string(k), &c,
                             FullSub::of_names(c, find_sub(g, "T")->objects),
                             FullSub::of_names(c, find_sub(g, "F")->objects)});
  }

  for (int k = 2; k <= 3; ++k) {
    GalleryResult g = preord_category(k);
    pool.categories.push_back(std::move(g.category));
    const FinCategory& c = pool.categories.back();
    pool.theories.push_back(
        {"preord" + std::to_string(k), &c,
         FullSub::of_names(c, find_sub(g, "Equiv")->objects),
         FullSub::of_names(c, find_sub(g, "ParOrd")->objects)});
  }

  return pool;
}

Check pentagon_suite() {
  Check chk;
  FinCategory c = n5();
  FullSub t = FullSub::of_names(c, {"T", "Z", "Z'"});
  FullSub f = FullSub::of_names(c, {"F", "Z", "Z'"});
  PretorsionCheck pc = check_pretorsion(t, f);
  chk.expect(pc.valid(), "the pentagon theory did not verify");
  if (!pc.valid()) return chk;
  const PretorsionData& data = *pc.data;

  struct Row {
    const char* x;
    const char* tp;
    const char* eps;
    const char* fp;
    const char* eta;
  };
  const Row rows[] = {
      {"T", "T", "T<=T", "Z", "T<=Z"},
      {"C", "T", "T<=C", "F", "C<=F"},
      {"Z", "Z", "Z<=Z", "Z", "Z<=Z"},
      {"Z'", "Z'", "Z'<=Z'", "Z'", "Z'<=Z'"},
      {"F", "Z'", "Z'<=F", "F", "F<=F"},
  };
  for (const Row& r : rows) {
    const Decomposition& d = data.decomp[c.object_by_name(r.x)->v];
    chk.expect(c.object_name(d.torsion_part) == r.tp &&
                   c.morphism_name(d.counit) == r.eps &&
                   c.object_name(d.free_part) == r.fp &&
                   c.morphism_name(d.unit) == r.eta,
               std::string("canonical sequence of ") + r.x + " is off");
  }

  const ObjId cc = *c.object_by_name("C");
  chk.expect(c.object_name(data.f_of(data.t_of(cc))) == "Z", "f(t(C)) != Z");
  chk.expect(c.object_name(data.t_of(data.f_of(cc))) == "Z'", "t(f(C)) != Z'");
  NatTrans zeta = comparison_transformation(data);
  chk.expect(!c.iso(zeta.components[cc.v]),
             "the comparison component at C came out invertible");
  return chk;
}

Check two_chain_suite() {
  Check chk;
  FinCategory c = poset_category({"0", "1"}, {{"0", "1"}});
  FullSub whole = FullSub::of_names(c, {"0", "1"});
  FullSub top = FullSub::of_names(c, {"1"});
  chk.expect(check_pretorsion(whole, top).valid(),
             "(whole, top) did not verify on the two chain");
  const ObjId o0 = *c.object_by_name("0");
  const ObjId o1 = *c.object_by_name("1");
  chk.expect(prekernels(top, c.identity(o0)).empty(),
             "id_0 acquired a prekernel");
  chk.expect(c.hom_size(o1, o0) == 0, "hom(1, 0) is non-empty");
  return chk;
}

Check chain_closed_form() {
  Check chk;
  const int expected[] = {0, 1, 3, 8};
  for (int n = 1; n <= 3; ++n) {
    FinCategory c = chain(n);
    int found = 0;
    for (int tm = 0; tm < (1 << n); ++tm)
      for (int fm = 0; fm < (1 << n); ++fm) {
        std::vector<ObjId> ts, fs;
        for (int i = 0; i < n; ++i) {
          if (tm & (1 << i)) ts.push_back(ObjId{i});
          if (fm & (1 << i)) fs.push_back(ObjId{i});
        }
        if (check_pretorsion(FullSub::of(c, ts), FullSub::of(c, fs)).valid())
          ++found;
      }
    chk.expect(found == expected[n],
               "brute force count for n=" + std::to_string(n) + " is " +
                   std::to_string(found));
    if (!chk.ok) return chk;
  }
  for (int n = 1; n <= 8; ++n) {
    FinCategory c = chain(n);
    auto positions = [&c](const FullSub& s) {
      std::vector<int> out;
      for (ObjId o : s.objects) out.push_back(std::stoi(c.object_name(o)));
      return out;
    };
    std::set<std::pair<std::vector<int>, std::vector<int>>> streamed, closed;
    for (const EnumeratedTheory& th : enumerate_pretorsion(c))
      streamed.insert({positions(th.torsion), positions(th.torsion_free)});
    for (const ChainDatum& d : chain_oracle(n))
      closed.insert({d.torsion(), d.torsion_free()});
    chk.expect(streamed == closed, "n=" + std::to_string(n) +
                                       ": enumeration and closed form differ");
    if (!chk.ok) return chk;
  }
  return chk;
}

Check labeling_forms() {
  Check chk;
  for (int n = 1; n <= 10; ++n) {
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
      ChainDatum d;
      d.n = n;
      long rest = code;
      for (int i = 1; i <= n; ++i) {
        switch (rest % 3) {
          case 0:
            d.only_torsion.push_back(i);
            break;
          case 1:
            d.both.push_back(i);
            break;
          default:
            d.only_free.push_back(i);
            break;
        }
        rest /= 3;
      }
      if (chain_condition_b(d) != chain_condition_c(d)) {
        chk.expect(false,
                   "the forms disagree on a labeling with n=" + std::to_string(n));
        return chk;
      }
    }
  }
  return chk;
}

std::vector<EndoObj> all_endo(int k) {
  std::vector<EndoObj> out;
  out.push_back({0, {}});
  for (int s = 1; s <= k; ++s) {
    long total = 1;
    for (int i = 0; i < s; ++i) total *= s;
    for (long code = 0; code < total; ++code) {
      EndoObj x{s, std::vector<int>(s)};
      long rest = code;
      for (int i = 0; i < s; ++i) {
        x.map[i] = static_cast<int>(rest % s) + 1;
        rest /= s;
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<PreordObj> all_preord(int k) {
  std::vector<PreordObj> out;
  out.push_back({0, {}});
  for (int s = 1; s <= k; ++s) {
    const int cells = s * s;
    for (int code = 0; code < (1 << cells); ++code) {
      PreordObj a{s, std::vector<char>(cells)};
      for (int i = 0; i < cells; ++i)
        a.rel[i] = static_cast<char>((code >> i) & 1);
      bool good = true;
      for (int i = 1; i <= s && good; ++i) good = a.related(i, i);
      for (int i = 1; i <= s && good; ++i)
        for (int j = 1; j <= s && good; ++j)
          for (int l = 1; l <= s && good; ++l)
            if (a.related(i, j) && a.related(j, l) && !a.related(i, l))
              good = false;
      if (good) out.push_back(std::move(a));
    }
  }
  return out;
}

Check agree_with_canonical(const FinCategory& c, const PretorsionData& data,
                           const std::string& name, const DirectSequence& d) {
  Check chk;
  auto x = c.object_by_name(name);
  chk.expect(x.has_value() && d.whole == *x, name + " is not in the gallery");
  if (!chk.ok) return chk;
  auto w = is_preexact(data.ideal, d.counit, d.unit);
  chk.expect(w.has_value(), "direct sequence of " + name + " is not preexact");
  if (!chk.ok) return chk;
  try {
    SequenceLink link = link_sequences(c, *w, data.decomp[x->v].witness);
    chk.expect(c.iso(link.torsion_iso) && c.iso(link.free_iso),
               "the sequences of " + name + " are not linked by isomorphisms");
  } catch (const Error& e) {
    chk.expect(false,
               "no unique link for " + name + ": " + std::string(e.what()));
  }
  return chk;
}

Check endomap_suite() {
  Check chk;
  GalleryResult g = endomap_category(3);
  const FinCategory& c = g.category;
  chk.expect(c.object_count() == 33, "expected 33 objects");
  PretorsionCheck pc =
      check_pretorsion(FullSub::of_names(c, find_sub(g, "T")->objects),
                       FullSub::of_names(c, find_sub(g, "F")->objects));
  chk.expect(pc.valid(), "(bijections, eventually idempotent) did not verify");
  if (!chk.ok) return chk;
  for (const EndoObj& x : all_endo(3)) {
    Check one = agree_with_canonical(c, *pc.data, endo_name(x),
                                     endomap_decomposition(c, x));
    chk.expect(one.ok, one.detail);
    if (!chk.ok) return chk;
  }
  for (const std::string& zname : find_sub(g, "Z")->objects)
    chk.expect(is_projective(c, *c.object_by_name(zname)) == (zname == "e0"),
               "projectivity of " + zname + " is off");
  return chk;
}

Check preord_suite() {
  Check chk;
  GalleryResult g = preord_category(3);
  const FinCategory& c = g.category;
  chk.expect(c.object_count() == 35, "expected 35 objects");
  FullSub equiv = FullSub::of_names(c, find_sub(g, "Equiv")->objects);
  FullSub parord = FullSub::of_names(c, find_sub(g, "ParOrd")->objects);
  FullSub discrete = FullSub::of_names(c, find_sub(g, "Discrete")->objects);
  chk.expect(equiv.intersect(parord) == discrete,
             "Equiv and ParOrd do not intersect in the discrete objects");
  PretorsionCheck pc = check_pretorsion(equiv, parord);
  chk.expect(pc.valid(), "(Equiv, ParOrd) did not verify");
  if (!chk.ok) return chk;
  for (const PreordObj& a : all_preord(3)) {
    Check one = agree_with_canonical(c, *pc.data, preord_name(a),
                                     preord_decomposition(c, a));
    chk.expect(one.ok, one.detail);
    if (!chk.ok) return chk;
  }
  return chk;
}

Check theorem_suite(const Pool& pool) {
  Check chk;
  for (const GalleryTheory& gt : pool.theories) {
    PretorsionCheck pc = check_pretorsion(gt.torsion, gt.torsion_free);
    if (!pc.valid()) {
      chk.expect(false, gt.label + " did not verify");
      return chk;
    }
    Report rep = verify_theorems(*pc.data);
    if (!rep.ok()) {
      chk.expect(false, gt.label + " violates " + rep.entries.front().rule +
                            ": " + rep.entries.front().detail);
      return chk;
    }
  }
  return chk;
}

Check duality_suite(const Pool& pool) {
  Check chk;
  for (const GalleryTheory& gt : pool.theories) {
    OppositeCategory op = opposite(*gt.category);
    FullSub t_op = FullSub::of(op.category, gt.torsion_free.objects);
    FullSub f_op = FullSub::of(op.category, gt.torsion.objects);
    if (!check_pretorsion(t_op, f_op).valid()) {
      chk.expect(false,
                 gt.label + " does not re-verify on the opposite category");
      return chk;
    }
  }
  return chk;
}

Check determinism_suite() {
  Check chk;
  for (const char* name : {"two", "n5", "chain3", "chain8", "endomap2",
                           "endomap3", "preord2", "preord3"}) {
    CategorySpec s = *gallery_spec(name);
    chk.expect(parse_spec(serialize(s)) == s,
               std::string("document round trip failed for ") + name);
  }
  {
    FinCategory c = n5();
    std::vector<NamedSub> subs = {{"T", {"T", "Z", "Z'"}},
                                  {"F", {"F", "Z", "Z'"}}};
    SpecBuild b = build_from_spec(parse_spec(serialize(c, subs)));
    chk.expect(b.outcome.ok() && *b.outcome.category == c && b.subs == subs,
               "explicit rows changed the pentagon category");
  }
  {
    GalleryResult g = endomap_category(2);
    SpecBuild b = build_from_spec(parse_spec(serialize(g.category, g.subs)));
    chk.expect(b.outcome.ok() && *b.outcome.category == g.category,
               "explicit rows changed the endomap category");
  }

  auto golden = [](const char* name) {
    std::string file = std::string("acc_") + name + ".cat";
    std::ofstream out(file, std::ios::binary);
    out << serialize(*gallery_spec(name));
    return file;
  };
  const std::string two_f = golden("two"), n5_f = golden("n5"),
                    c3_f = golden("chain3"), e2_f = golden("endomap2"),
                    p2_f = golden("preord2");
  const std::vector<std::vector<std::string>> runs = {
      {"--format=lines", "validate", two_f},
      {"--format=lines", "validate", n5_f},
      {"--format=lines", "validate", e2_f},
      {"--format=lines", "check", n5_f, "--torsion", "@T", "--free", "@F"},
      {"--format=lines", "check", e2_f, "--torsion", "@T", "--free", "@F"},
      {"--format=lines", "check", p2_f, "--torsion", "@Equiv", "--free",
       "@ParOrd"},
      {"--format=lines", "enumerate", c3_f, "--oracle", "chain"},
      {"--format=lines", "enumerate", e2_f},
      {"--format=lines", "decompose", n5_f, "--torsion", "@T", "--free", "@F"},
      {"--format=lines", "closure", n5_f, "--torsion", "@T", "--free", "@F"},
      {"gallery", "endomap3"},
      {"gallery", "preord3"},
  };
  for (const auto& args : runs) {
    std::string joined;
    for (const std::string& a : args) joined += (joined.empty() ? "" : " ") + a;
    std::ostringstream out1, err1, out2, err2;
    const int code1 = run_cli(args, out1, err1);
    const int code2 = run_cli(args, out2, err2);
    chk.expect(code1 == 0, "'" + joined + "' did not exit cleanly");
    chk.expect(code1 == code2 && out1.str() == out2.str() &&
                   err1.str() == err2.str(),
               "output differs across runs of '" + joined + "'");
    if (!chk.ok) return chk;
  }
  return chk;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Check()> run;
  };

  Pool pool = gallery_theories();
  const std::vector<Criterion> criteria = {
      {"pentagon lattice suite", 1.0, pentagon_suite},
      {"two object chain suite", 1.0, two_chain_suite},
      {"chain enumeration matches the closed form for n=1..8", 60.0,
       chain_closed_form},
      {"adjacency and gap forms agree for n=1..10", 30.0, labeling_forms},
      {"endomap suite: direct against canonical sequences, k=3", 120.0,
       endomap_suite},
      {"preorder suite: direct against canonical sequences, k=3", 120.0,
       preord_suite},
      {"structural laws hold on every gallery theory", 0.0,
       [&pool] { return theorem_suite(pool); }},
      {"every gallery theory re-verifies on its opposite category", 0.0,
       [&pool] { return duality_suite(pool); }},
      {"round trips and line output are byte stable", 0.0,
       determinism_suite},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check chk;
    try {
      chk = cr.run();
    } catch (const Error& e) {
      chk.ok = false;
      chk.detail = std::string("unexpected error: ") + e.what();
    } catch (const std::exception& e) {
      chk.ok = false;
      chk.detail = std::string("unexpected exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (chk.ok && cr.budget_s > 0.0 && secs > cr.budget_s) {
      chk.ok = false;
      std::ostringstream b;
      b << "exceeded the " << cr.budget_s << " s budget";
      chk.detail = b.str();
    }
    std::cout << (chk.ok ? "[PASS] " : "[FAIL] ") << cr.name << " ("
              << std::fixed << std::setprecision(2) << secs << " s)";
    if (!chk.ok) std::cout << ": " << chk.detail;
    std::cout << "\n";
    if (!chk.ok) ++failures;
  }
  if (failures == 0) {
    std::cout << "all 9 criteria passed\n";
    return 0;
  }
  std::cout << failures << " of 9 criteria failed\n";
  return 1;
}
