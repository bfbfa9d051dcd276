#include "pretor/spec_format.hpp"

#include <cctype>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pretor {
namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;
};

[[noreturn]] void fail(int line, int col, const std::string& msg) {
  Error e(Errc::parse_error, msg);
  e.line = line;
  e.col = col;
  throw e;
}

[[noreturn]] void fail(const Token& t, const std::string& msg) {
  fail(t.line, t.col, msg);
}

std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::vector<Token> current;
  int line = 1;
  int col = 1;
  std::string word;
  int word_col = 0;
  bool in_comment = false;
  auto flush_word = [&]() {
    if (!word.empty()) {
      current.push_back({std::move(word), line, word_col});
      word.clear();
    }
  };
  auto flush_line = [&]() {
    flush_word();
    if (!current.empty()) lines.push_back(std::move(current));
    current.clear();
  };
  for (char ch : text) {
    if (ch == '\n') {
      flush_line();
      ++line;
      col = 1;
      in_comment = false;
      continue;
    }
    if (!in_comment) {
      if (ch == '#') {
        flush_word();
        in_comment = true;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        flush_word();
      } else {
        if (word.empty()) word_col = col;
        word += ch;
      }
    }
    ++col;
  }
  flush_line();
  return lines;
}

int parse_int(const Token& t) {
  if (t.text.empty()) fail(t, "expected a number");
  for (char ch : t.text)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      fail(t, "expected a number, got '" + t.text + "'");
  if (t.text.size() > 6) fail(t, "number out of range");
  return std::stoi(t.text);
}

void expect_count(const std::vector<Token>& row, std::size_t want,
                  const char* shape) {
  if (row.size() != want)
    fail(row.size() > want ? row[want] : row.back(),
         std::string("expected '") + shape + "'");
}

void expect_word(const std::vector<Token>& row, std::size_t at,
                 const char* word, const char* shape) {
  if (row[at].text != word)
    fail(row[at], std::string("expected '") + shape + "'");
}

}  // namespace

CategorySpec parse_spec(const std::string& text) {
  enum class Section {
    none,
    objects,
    morphisms,
    identities,
    compose,
    covers,
    sub
  };
  CategorySpec spec;
  Section section = Section::none;
  bool any_content = false;
  bool directive_done = false;

  for (const std::vector<Token>& row : tokenize(text)) {
    const Token& head = row[0];
    if (directive_done)
      fail(head, "no content allowed after a shorthand directive");

    if (head.text == "chain" || head.text == "endomap" ||
        head.text == "preord") {
      if (any_content)
        fail(head, "a shorthand directive must be the only content");
      expect_count(row, 2, (head.text + " N").c_str());
      spec.kind = head.text == "chain"    ? CategorySpec::Kind::chain
                  : head.text == "endomap" ? CategorySpec::Kind::endomap
                                           : CategorySpec::Kind::preord;
      spec.param = parse_int(row[1]);
      any_content = true;
      directive_done = true;
      continue;
    }
    if (head.text == "poset") {
      if (any_content) fail(head, "'poset' must come before other content");
      expect_count(row, 1, "poset");
      spec.kind = CategorySpec::Kind::poset;
      any_content = true;
      continue;
    }

    any_content = true;
    const bool is_poset = spec.kind == CategorySpec::Kind::poset;
    std::size_t consumed = 0;
    if (head.text == "objects:") {
      section = Section::objects;
      consumed = 1;
    } else if (head.text == "morphisms:" || head.text == "identities:" ||
               head.text == "compose:") {
      if (is_poset)
        fail(head, "'" + head.text + "' is not allowed in a poset spec");
      section = head.text == "morphisms:"    ? Section::morphisms
                : head.text == "identities:" ? Section::identities
                                             : Section::compose;
      if (row.size() == 1) continue;
      consumed = 1;
    } else if (head.text == "covers:") {
      if (!is_poset) fail(head, "'covers:' needs a poset spec");
      section = Section::covers;
      if (row.size() == 1) continue;
      consumed = 1;
    } else if (head.text == "sub") {
      if (row.size() < 2) fail(head, "expected 'sub NAME:'");
      const std::string& tag = row[1].text;
      if (tag.size() < 2 || tag.back() != ':')
        fail(row[1], "expected 'sub NAME:'");
      spec.subs.push_back({tag.substr(0, tag.size() - 1), {}});
      section = Section::sub;
      consumed = 2;
    }

    std::vector<Token> rest(row.begin() + consumed, row.end());
    if (rest.empty()) continue;
    switch (section) {
      case Section::none:
        fail(head, "expected a section header or directive");
      case Section::objects:
        for (Token& t : rest) spec.objects.push_back(std::move(t.text));
        break;
      case Section::sub:
        for (Token& t : rest)
          spec.subs.back().objects.push_back(std::move(t.text));
        break;
      case Section::morphisms:
        expect_count(rest, 5, "name : dom -> cod");
        expect_word(rest, 1, ":", "name : dom -> cod");
        expect_word(rest, 3, "->", "name : dom -> cod");
        spec.morphisms.push_back(
            {std::move(rest[0].text), std::move(rest[2].text),
             std::move(rest[4].text)});
        break;
      case Section::identities:
        expect_count(rest, 3, "object = morphism");
        expect_word(rest, 1, "=", "object = morphism");
        spec.identities.push_back(
            {std::move(rest[0].text), std::move(rest[2].text)});
        break;
      case Section::compose:
        expect_count(rest, 5, "g * f = h");
        expect_word(rest, 1, "*", "g * f = h");
        expect_word(rest, 3, "=", "g * f = h");
        spec.compose.push_back({std::move(rest[0].text),
                                std::move(rest[2].text),
                                std::move(rest[4].text)});
        break;
      case Section::covers:
        expect_count(rest, 3, "a < b");
        expect_word(rest, 1, "<", "a < b");
        spec.covers.emplace_back(std::move(rest[0].text),
                                 std::move(rest[2].text));
        break;
    }
  }
  return spec;
}

std::string serialize(const CategorySpec& s) {
  std::string out;
  switch (s.kind) {
    case CategorySpec::Kind::chain:
      return "chain " + std::to_string(s.param) + "\n";
    case CategorySpec::Kind::endomap:
      return "endomap " + std::to_string(s.param) + "\n";
    case CategorySpec::Kind::preord:
      return "preord " + std::to_string(s.param) + "\n";
    case CategorySpec::Kind::poset:
      out += "poset\n";
      break;
    case CategorySpec::Kind::explicit_rows:
      break;
  }
  if (!s.objects.empty()) {
    out += "objects:";
    for (const std::string& o : s.objects) out += " " + o;
    out += "\n";
  }
  if (!s.covers.empty()) {
    out += "covers:\n";
    for (const auto& [a, b] : s.covers) out += "  " + a + " < " + b + "\n";
  }
  if (!s.morphisms.empty()) {
    out += "morphisms:\n";
    for (const CategorySpec::MorRow& r : s.morphisms)
      out += "  " + r.name + " : " + r.dom + " -> " + r.cod + "\n";
  }
  if (!s.identities.empty()) {
    out += "identities:\n";
    for (const CategorySpec::IdRow& r : s.identities)
      out += "  " + r.object + " = " + r.morphism + "\n";
  }
  if (!s.compose.empty()) {
    out += "compose:\n";
    for (const CategorySpec::CompRow& r : s.compose)
      out += "  " + r.g + " * " + r.f + " = " + r.h + "\n";
  }
  for (const NamedSub& sub : s.subs) {
    out += "sub " + sub.name + ":";
    for (const std::string& o : sub.objects) out += " " + o;
    out += "\n";
  }
  return out;
}

CategorySpec to_spec(const FinCategory& c, const std::vector<NamedSub>& subs) {
  CategorySpec s;
  for (int a = 0; a < c.object_count(); ++a)
    s.objects.push_back(c.object_name(ObjId{a}));
  for (int i = 0; i < c.morphism_count(); ++i) {
    const MorId m{i};
    s.morphisms.push_back({c.morphism_name(m), c.object_name(c.dom(m)),
                           c.object_name(c.cod(m))});
  }
  for (int a = 0; a < c.object_count(); ++a)
    s.identities.push_back(
        {c.object_name(ObjId{a}), c.morphism_name(c.identity(ObjId{a}))});
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(MorId{f})) continue;
    for (MorId g : c.from(c.cod(MorId{f}))) {
      if (c.is_identity(g)) continue;
      s.compose.push_back({c.morphism_name(g), c.morphism_name(MorId{f}),
                           c.morphism_name(c.compose(g, MorId{f}))});
    }
  }
  s.subs = subs;
  return s;
}

std::string serialize(const FinCategory& c,
                      const std::vector<NamedSub>& subs) {
  return serialize(to_spec(c, subs));
}

SpecBuild build_from_spec(const CategorySpec& s) {
  SpecBuild out;
  switch (s.kind) {
    case CategorySpec::Kind::chain:
      out.outcome.category = chain(s.param);
      return out;
    case CategorySpec::Kind::endomap: {
      GalleryResult r = endomap_category(s.param);
      out.outcome.category = std::move(r.category);
      out.subs = std::move(r.subs);
      return out;
    }
    case CategorySpec::Kind::preord: {
      GalleryResult r = preord_category(s.param);
      out.outcome.category = std::move(r.category);
      out.subs = std::move(r.subs);
      return out;
    }
    case CategorySpec::Kind::poset:
      out.outcome.category = poset_category(s.objects, s.covers);
      out.subs = s.subs;
      return out;
    case CategorySpec::Kind::explicit_rows:
      break;
  }

  Report problems;
  std::unordered_map<std::string, std::int32_t> obj_at, mor_at;
  for (std::size_t i = 0; i < s.objects.size(); ++i)
    obj_at.emplace(s.objects[i], static_cast<std::int32_t>(i));
  for (std::size_t i = 0; i < s.morphisms.size(); ++i)
    mor_at.emplace(s.morphisms[i].name, static_cast<std::int32_t>(i));
  auto obj = [&](const std::string& name, const std::string& where) {
    auto it = obj_at.find(name);
    if (it != obj_at.end()) return it->second;
    problems.add("unknown-object", {name},
                 where + " references an undeclared object");
    return std::int32_t{-1};
  };
  auto mor = [&](const std::string& name, const std::string& where) {
    auto it = mor_at.find(name);
    if (it != mor_at.end()) return it->second;
    problems.add("unknown-morphism", {name},
                 where + " references an undeclared morphism");
    return std::int32_t{-1};
  };

  RawCategory raw;
  raw.objects = s.objects;
  for (const CategorySpec::MorRow& r : s.morphisms)
    raw.morphisms.push_back({r.name, obj(r.dom, "morphism row"),
                             obj(r.cod, "morphism row")});
  std::vector<char> is_id(s.morphisms.size(), 0);
  for (const CategorySpec::IdRow& r : s.identities) {
    std::int32_t o = obj(r.object, "identity row");
    std::int32_t m = mor(r.morphism, "identity row");
    raw.identities.emplace_back(o, m);
    if (m >= 0) is_id[m] = 1;
  }
  for (const CategorySpec::CompRow& r : s.compose)
    raw.compose_rows.push_back({mor(r.g, "compose row"),
                                mor(r.f, "compose row"),
                                mor(r.h, "compose row")});
  for (const NamedSub& sub : s.subs)
    for (const std::string& name : sub.objects)
      obj(name, "sub " + sub.name);

  if (!problems.ok()) {
    out.outcome.report = std::move(problems);
    return out;
  }
  raw.compose_rule = [&is_id](std::int32_t g,
                              std::int32_t f) -> std::int32_t {
    if (is_id[g]) return f;
    if (is_id[f]) return g;
    return -1;
  };
  out.outcome = build_category(raw);
  out.subs = s.subs;
  return out;
}

}  // namespace pretor
