#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "drlse/harness.hpp"

namespace drlse {

/// Flat `key = value` text, one pair per line, `#` starts a comment.
/// Unknown keys and malformed values are errors. Ranges default to the
/// problem's usual box when not given.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// "a..b" (inclusive) or a comma-separated list.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

}  // namespace drlse
