#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pretor/spec_format.hpp"

namespace pretor {

// Command-line surface. args excludes the program name. Returns the exit
// status: 0 verified/valid, 1 definite negative verdict, 2 input or usage
// error. All reporting goes to out, warnings and errors to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Built-in documents served by the gallery command: "two", "n5", "chainN",
// "endomapK", "preordK". nullopt for anything else.
std::optional<CategorySpec> gallery_spec(const std::string& name);

}  // namespace pretor
