#include "pretor/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pretor/enumerate.hpp"
#include "pretor/gallery.hpp"
#include "pretor/pretorsion.hpp"
#include "pretor/spec_format.hpp"

namespace pretor {
namespace {

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  bool lines = false;
};

struct Loaded {
  FinCategory category;
  std::vector<NamedSub> subs;
};

// Carries the law report of a file that parsed but failed validation.
struct InvalidCategory {
  Report report;
};

std::string read_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::bad_flag, "cannot read file: " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpecBuild load_raw(const std::string& file) {
  return build_from_spec(parse_spec(read_file(file)));
}

Loaded require_valid(const std::string& file) {
  SpecBuild b = load_raw(file);
  if (!b.outcome.ok()) throw InvalidCategory{std::move(b.outcome.report)};
  return Loaded{std::move(*b.outcome.category), std::move(b.subs)};
}

std::vector<std::string> split_list(const std::string& value,
                                    const std::string& flag) {
  std::vector<std::string> names;
  std::string cur;
  for (char ch : value + ",") {
    if (ch != ',') {
      cur += ch;
      continue;
    }
    if (cur.empty())
      throw Error(Errc::bad_flag, flag + " has an empty entry in its list");
    names.push_back(std::move(cur));
    cur.clear();
  }
  return names;
}

FullSub resolve_class(Ctx& ctx, const Loaded& loaded,
                      const std::string& value, const std::string& flag) {
  std::vector<std::string> names;
  if (!value.empty() && value[0] == '@') {
    const std::string want = value.substr(1);
    const NamedSub* hit = nullptr;
    for (const NamedSub& ns : loaded.subs)
      if (ns.name == want) {
        hit = &ns;
        break;
      }
    if (!hit)
      throw Error(Errc::bad_flag,
                  flag + " references a sub the file does not declare: " +
                      want);
    names = hit->objects;
  } else {
    names = split_list(value, flag);
  }
  FullSub sub = FullSub::of_names(loaded.category, names);
  FullSub closed = sub.iso_closure();
  if (closed.objects != sub.objects) {
    ctx.err << "note: " << flag << " closed under isomorphism; added";
    for (ObjId o : closed.objects)
      if (!sub.contains(o)) ctx.err << " " << loaded.category.object_name(o);
    ctx.err << "\n";
  }
  return closed;
}

std::string class_names(const FinCategory& c, const FullSub& sub,
                        const char* sep) {
  std::string out;
  for (ObjId o : sub.objects) {
    if (!out.empty()) out += sep;
    out += c.object_name(o);
  }
  return out;
}

void print_sequence(Ctx& ctx, const FinCategory& c, ObjId x,
                    const Decomposition& d) {
  if (ctx.lines) {
    ctx.out << "sequence=" << c.object_name(x) << " "
            << c.object_name(d.torsion_part) << " "
            << c.morphism_name(d.counit) << " " << c.object_name(d.free_part)
            << " " << c.morphism_name(d.unit) << "\n";
  } else {
    ctx.out << "  " << c.object_name(x) << ": "
            << c.object_name(d.torsion_part) << " --"
            << c.morphism_name(d.counit) << "--> " << c.object_name(x)
            << " --" << c.morphism_name(d.unit) << "--> "
            << c.object_name(d.free_part) << "\n";
  }
}

void print_invalid(Ctx& ctx, const FinCategory& c, const FullSub& trivials,
                   const PretorsionCheck& pc) {
  if (ctx.lines) ctx.out << "valid=false\n";
  if (pc.axiom1) {
    const Axiom1Counterexample& a = *pc.axiom1;
    if (ctx.lines) {
      ctx.out << "axiom1=" << c.object_name(a.torsion_obj) << " "
              << c.object_name(a.free_obj) << " "
              << c.morphism_name(a.morphism) << "\n";
      return;
    }
    ctx.out << "Invalid\n"
            << "axiom 1 violated: hom(" << c.object_name(a.torsion_obj)
            << ", " << c.object_name(a.free_obj)
            << ") contains the non-trivial morphism "
            << c.morphism_name(a.morphism) << "\n";
    if (trivials.empty()) {
      ctx.out << "  the classes share no object to factor through\n";
      return;
    }
    for (ObjId z : trivials.objects)
      ctx.out << "  through " << c.object_name(z) << ": "
              << c.hom_size(a.torsion_obj, z) * c.hom_size(z, a.free_obj)
              << " candidate factorizations, none compose to "
              << c.morphism_name(a.morphism) << "\n";
    return;
  }
  const Axiom2Counterexample& a = *pc.axiom2;
  if (ctx.lines) {
    ctx.out << "axiom2=" << c.object_name(a.object) << "\n";
    for (const CandidateAttempt& at : a.transcript)
      ctx.out << "attempt=" << c.morphism_name(at.counit_cand) << " "
              << c.morphism_name(at.unit_cand) << " " << at.reason << "\n";
    return;
  }
  ctx.out << "Invalid\n"
          << "axiom 2 violated: no short preexact sequence for object "
          << c.object_name(a.object) << "\n";
  for (const CandidateAttempt& at : a.transcript)
    ctx.out << "  counit " << c.morphism_name(at.counit_cand) << ", unit "
            << c.morphism_name(at.unit_cand) << ": " << at.reason << "\n";
}

int cmd_validate(Ctx& ctx, const std::string& file) {
  SpecBuild b = load_raw(file);
  const bool ok = b.outcome.ok();
  if (ctx.lines) {
    ctx.out << "command=validate\nvalid=" << (ok ? "true" : "false") << "\n";
    if (ok) {
      ctx.out << "objects=" << b.outcome.category->object_count() << "\n"
              << "morphisms=" << b.outcome.category->morphism_count() << "\n";
    } else {
      for (const Violation& v : b.outcome.report.entries) {
        ctx.out << "violation=" << v.rule << ":";
        for (const std::string& s : v.subjects) ctx.out << " " << s;
        ctx.out << ": " << v.detail << "\n";
      }
    }
    return ok ? 0 : 1;
  }
  if (ok) {
    ctx.out << "valid category: " << b.outcome.category->object_count()
            << " objects, " << b.outcome.category->morphism_count()
            << " morphisms\n";
    return 0;
  }
  ctx.out << "invalid category:\n" << b.outcome.report.to_string();
  return 1;
}

int cmd_check(Ctx& ctx, const std::string& file, const std::string& torsion,
              const std::string& free) {
  Loaded loaded = require_valid(file);
  const FinCategory& c = loaded.category;
  FullSub t = resolve_class(ctx, loaded, torsion, "--torsion");
  FullSub f = resolve_class(ctx, loaded, free, "--free");
  PretorsionCheck pc = check_pretorsion(t, f);
  if (ctx.lines) ctx.out << "command=check\n";
  if (!pc.valid()) {
    print_invalid(ctx, c, t.intersect(f), pc);
    return 1;
  }
  const PretorsionData& data = *pc.data;
  if (ctx.lines) {
    ctx.out << "valid=true\n"
            << "torsion=" << class_names(c, data.torsion, ",") << "\n"
            << "free=" << class_names(c, data.torsion_free, ",") << "\n"
            << "trivials=" << class_names(c, data.trivials, ",") << "\n";
  } else {
    ctx.out << "Valid\n"
            << "torsion: " << class_names(c, data.torsion, " ") << "\n"
            << "free: " << class_names(c, data.torsion_free, " ") << "\n"
            << "trivials: " << class_names(c, data.trivials, " ") << "\n"
            << "sequences:\n";
  }
  for (std::int32_t x = 0; x < c.object_count(); ++x)
    print_sequence(ctx, c, ObjId{x}, data.decomp[x]);
  return 0;
}

int cmd_decompose(Ctx& ctx, const std::string& file,
                  const std::string& torsion, const std::string& free,
                  const std::string& object) {
  Loaded loaded = require_valid(file);
  const FinCategory& c = loaded.category;
  FullSub t = resolve_class(ctx, loaded, torsion, "--torsion");
  FullSub f = resolve_class(ctx, loaded, free, "--free");
  PretorsionCheck pc = check_pretorsion(t, f);
  if (ctx.lines) ctx.out << "command=decompose\n";
  if (!pc.valid()) {
    print_invalid(ctx, c, t.intersect(f), pc);
    return 1;
  }
  std::vector<Decomposition> decomp = canonical_decompositions(t, f);
  if (!object.empty()) {
    auto x = c.object_by_name(object);
    if (!x) throw Error(Errc::unknown_name, "unknown object: " + object);
    if (!ctx.lines) ctx.out << "canonical sequence:\n";
    print_sequence(ctx, c, *x, decomp[x->v]);
    return 0;
  }
  if (!ctx.lines) ctx.out << "canonical sequences:\n";
  for (std::int32_t x = 0; x < c.object_count(); ++x)
    print_sequence(ctx, c, ObjId{x}, decomp[x]);
  return 0;
}

int cmd_enumerate(Ctx& ctx, const std::string& file,
                  const std::string& oracle) {
  Loaded loaded = require_valid(file);
  const FinCategory& c = loaded.category;
  std::vector<EnumeratedTheory> theories = enumerate_pretorsion(c);
  if (ctx.lines) {
    ctx.out << "command=enumerate\ncount=" << theories.size() << "\n";
    for (const EnumeratedTheory& th : theories)
      ctx.out << "theory=" << class_names(c, th.torsion, ",") << "|"
              << class_names(c, th.torsion_free, ",") << "\n";
  } else {
    ctx.out << "theories: " << theories.size() << "\n";
    for (const EnumeratedTheory& th : theories)
      ctx.out << "  torsion={" << class_names(c, th.torsion, ",")
              << "} free={" << class_names(c, th.torsion_free, ",") << "}\n";
  }
  if (oracle.empty()) return 0;

  const int n = c.object_count();
  std::vector<ObjId> pos(n + 1);
  for (int i = 1; i <= n; ++i) {
    auto o = c.object_by_name(std::to_string(i));
    if (!o)
      throw Error(Errc::bad_flag,
                  "--oracle chain needs objects named 1.." + std::to_string(n));
    pos[i] = *o;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (c.hom_size(pos[i], pos[j]) != (i <= j ? 1 : 0))
        throw Error(Errc::bad_flag,
                    "--oracle chain needs a chain-shaped category");

  using Pair = std::pair<std::vector<int>, std::vector<int>>;
  auto positions = [&c](const FullSub& sub) {
    std::vector<int> out;
    for (ObjId o : sub.objects) out.push_back(std::stoi(c.object_name(o)));
    std::sort(out.begin(), out.end());
    return out;
  };
  std::set<Pair> enumerated, closed_form;
  for (const EnumeratedTheory& th : theories)
    enumerated.insert({positions(th.torsion), positions(th.torsion_free)});
  for (const ChainDatum& d : chain_oracle(n))
    closed_form.insert({d.torsion(), d.torsion_free()});
  if (enumerated == closed_form) {
    if (ctx.lines)
      ctx.out << "oracle=agree\n";
    else
      ctx.out << "oracle agreement: " << closed_form.size() << " theories\n";
    return 0;
  }
  if (ctx.lines)
    ctx.out << "oracle=disagree\n";
  else
    ctx.out << "oracle mismatch: enumerated " << enumerated.size()
            << ", closed form " << closed_form.size() << "\n";
  return 1;
}

int cmd_closure(Ctx& ctx, const std::string& file, const std::string& torsion,
                const std::string& free) {
  Loaded loaded = require_valid(file);
  const FinCategory& c = loaded.category;
  FullSub t = resolve_class(ctx, loaded, torsion, "--torsion");
  FullSub f = resolve_class(ctx, loaded, free, "--free");
  PretorsionCheck pc = check_pretorsion(t, f);
  if (ctx.lines) ctx.out << "command=closure\n";
  if (!pc.valid()) {
    print_invalid(ctx, c, t.intersect(f), pc);
    return 1;
  }
  ClosureReport rep = closure_report(*pc.data);
  for (const ClosureItem& item : rep.items) {
    if (ctx.lines) {
      const char* status = item.status == ClosureStatus::verified
                               ? "verified"
                               : item.status == ClosureStatus::hypothesis_not_met
                                     ? "hypothesis-not-met"
                                     : "violated";
      ctx.out << "closure=" << item.name << "|" << status << "|"
              << item.detail << "\n";
    } else {
      switch (item.status) {
        case ClosureStatus::verified:
          ctx.out << item.name << ": verified\n";
          break;
        case ClosureStatus::hypothesis_not_met:
          ctx.out << item.name << ": hypothesis not met (" << item.detail
                  << ")\n";
          break;
        case ClosureStatus::violated:
          ctx.out << item.name << ": VIOLATED (" << item.detail << ")\n";
          break;
      }
    }
  }
  return rep.no_violations() ? 0 : 1;
}

int cmd_gallery(Ctx& ctx, const std::string& name) {
  auto spec = gallery_spec(name);
  if (!spec)
    throw Error(Errc::unknown_name, "no gallery category named " + name);
  ctx.out << serialize(*spec);
  return 0;
}

std::optional<int> suffix_number(const std::string& name,
                                 const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix))
    return std::nullopt;
  const std::string digits = name.substr(prefix.size());
  if (digits.size() > 3) return std::nullopt;
  for (char ch : digits)
    if (ch < '0' || ch > '9') return std::nullopt;
  return std::stoi(digits);
}

}  // namespace

std::optional<CategorySpec> gallery_spec(const std::string& name) {
  CategorySpec s;
  if (name == "two") {
    s.kind = CategorySpec::Kind::poset;
    s.objects = {"0", "1"};
    s.covers = {{"0", "1"}};
    s.subs = {{"T", {"0", "1"}}, {"F", {"1"}}, {"Z", {"1"}}};
    return s;
  }
  if (name == "n5") {
    s.kind = CategorySpec::Kind::poset;
    s.objects = {"T", "C", "Z", "Z'", "F"};
    s.covers = {{"T", "Z"}, {"Z", "Z'"}, {"Z'", "F"}, {"T", "C"}, {"C", "F"}};
    s.subs = {{"T", {"T", "Z", "Z'"}},
              {"F", {"F", "Z", "Z'"}},
              {"Z", {"Z", "Z'"}}};
    return s;
  }
  if (auto n = suffix_number(name, "chain")) {
    s.kind = CategorySpec::Kind::chain;
    s.param = *n;
    return s;
  }
  if (auto n = suffix_number(name, "endomap")) {
    s.kind = CategorySpec::Kind::endomap;
    s.param = *n;
    return s;
  }
  if (auto n = suffix_number(name, "preord")) {
    s.kind = CategorySpec::Kind::preord;
    s.param = *n;
    return s;
  }
  return std::nullopt;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"finite category engine for pretorsion theories"};
  app.name("pretor");
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text or lines")
      ->check(CLI::IsMember({"text", "lines"}));

  std::string v_file;
  CLI::App* validate =
      app.add_subcommand("validate", "check the category laws of a document");
  validate->add_option("file", v_file, "category document")->required();

  std::string c_file, c_torsion, c_free;
  CLI::App* check = app.add_subcommand(
      "check", "verify a candidate pretorsion theory on a category");
  check->add_option("file", c_file, "category document")->required();
  check->add_option("--torsion", c_torsion, "torsion class: names or @SUB")
      ->required();
  check->add_option("--free", c_free, "torsion-free class: names or @SUB")
      ->required();

  std::string e_file, e_oracle;
  CLI::App* enumerate_cmd = app.add_subcommand(
      "enumerate", "list every pretorsion theory of a category");
  enumerate_cmd->add_option("file", e_file, "category document")->required();
  enumerate_cmd
      ->add_option("--oracle", e_oracle,
                   "cross-check against a closed form (chain)")
      ->check(CLI::IsMember({"chain"}));

  std::string d_file, d_torsion, d_free, d_object;
  CLI::App* decompose = app.add_subcommand(
      "decompose", "print canonical short preexact sequences");
  decompose->add_option("file", d_file, "category document")->required();
  decompose->add_option("--torsion", d_torsion, "torsion class: names or @SUB")
      ->required();
  decompose->add_option("--free", d_free, "torsion-free class: names or @SUB")
      ->required();
  decompose->add_option("--object", d_object, "only this object");

  std::string k_file, k_torsion, k_free;
  CLI::App* closure = app.add_subcommand(
      "closure", "report stability properties of a verified theory");
  closure->add_option("file", k_file, "category document")->required();
  closure->add_option("--torsion", k_torsion, "torsion class: names or @SUB")
      ->required();
  closure->add_option("--free", k_free, "torsion-free class: names or @SUB")
      ->required();

  std::string g_name;
  CLI::App* gallery =
      app.add_subcommand("gallery", "emit a built-in category document");
  gallery->add_option("name", g_name, "two, n5, chainN, endomapK, preordK")
      ->required();

  for (CLI::App* sub : app.get_subcommands({}))
    sub->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("pretor");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Ctx ctx{out, err, format == "lines"};
  try {
    if (validate->parsed()) return cmd_validate(ctx, v_file);
    if (check->parsed()) return cmd_check(ctx, c_file, c_torsion, c_free);
    if (enumerate_cmd->parsed()) return cmd_enumerate(ctx, e_file, e_oracle);
    if (decompose->parsed())
      return cmd_decompose(ctx, d_file, d_torsion, d_free, d_object);
    if (closure->parsed()) return cmd_closure(ctx, k_file, k_torsion, k_free);
    if (gallery->parsed()) return cmd_gallery(ctx, g_name);
  } catch (const InvalidCategory& ic) {
    err << "invalid category:\n" << ic.report.to_string();
    return 2;
  } catch (const Error& e) {
    err << "error";
    if (e.code() == Errc::parse_error && e.line > 0)
      err << " at line " << e.line << ", column " << e.col;
    err << ": " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace pretor
