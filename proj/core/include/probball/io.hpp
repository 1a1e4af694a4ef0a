#pragma once

#include <string>
#include <string_view>

#include "probball/geometry.hpp"
#include "probball/probseb.hpp"

namespace probball::io {

enum class InstanceKind { kSetFamily, kProbabilistic };

/// Set family: {"d": 2, "sets": [[[x, y], ...], ...]}.
/// Probabilistic: {"d": 2, "distributions": [{"entries": [{"loc": [x, y], "p": 0.3},
/// {"loc": null, "p": 0.7}]}]}.
/// Every parser throws InstanceError naming the line or the offending field.
InstanceKind detect_kind(std::string_view json_text);
SetFamily parse_set_family(std::string_view json_text);
ProbInstance parse_prob_instance(std::string_view json_text);

std::string to_json_text(const SetFamily& family);
std::string to_json_text(const ProbInstance& instance);

/// Whole file as a string. Throws InstanceError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace probball::io
