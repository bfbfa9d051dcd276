#include "pretor/base.hpp"

#include <sstream>

namespace pretor {

void Report::add(std::string rule, std::vector<std::string> subjects,
                 std::string detail) {
  entries.push_back(
      Violation{std::move(rule), std::move(subjects), std::move(detail)});
}

bool Report::has_rule(const std::string& rule) const {
  for (const auto& v : entries) {
    if (v.rule == rule) return true;
  }
  return false;
}

std::string Report::to_string() const {
  std::ostringstream os;
  for (const auto& v : entries) {
    os << v.rule;
    if (!v.subjects.empty()) {
      os << " [";
      for (std::size_t i = 0; i < v.subjects.size(); ++i) {
        if (i) os << ", ";
        os << v.subjects[i];
      }
      os << "]";
    }
    if (!v.detail.empty()) os << ": " << v.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace pretor
