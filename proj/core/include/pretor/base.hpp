#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pretor {

// Object and morphism handles. Both are dense indices into their category,
// totally ordered; the order is the deterministic tie-breaker everywhere.
struct ObjId {
  std::int32_t v = -1;

  constexpr ObjId() = default;
  constexpr explicit ObjId(std::int32_t x) : v(x) {}
  constexpr bool valid() const { return v >= 0; }

  friend constexpr auto operator<=>(const ObjId&, const ObjId&) = default;
};

struct MorId {
  std::int32_t v = -1;

  constexpr MorId() = default;
  constexpr explicit MorId(std::int32_t x) : v(x) {}
  constexpr bool valid() const { return v >= 0; }

  friend constexpr auto operator<=>(const MorId&, const MorId&) = default;
};

enum class Errc {
  parse_error,
  duplicate_id,
  unknown_name,
  empty_trivial_class,
  not_composable,
  not_iso,
  hypothesis_not_met,
  mismatched_categories,
  precondition_failed,
  not_a_partial_order,
  quotient_exceeds_bound,
  mediator_not_unique,
  bad_flag,
  unknown_command,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}

  Errc code() const { return code_; }

  // Populated for Errc::parse_error only.
  int line = 0;
  int col = 0;

 private:
  Errc code_;
};

// One violated law, with the offending objects/morphisms by name.
struct Violation {
  std::string rule;
  std::vector<std::string> subjects;
  std::string detail;
};

struct Report {
  std::vector<Violation> entries;

  bool ok() const { return entries.empty(); }
  void add(std::string rule, std::vector<std::string> subjects,
           std::string detail);
  bool has_rule(const std::string& rule) const;
  std::string to_string() const;
};

}  // namespace pretor
