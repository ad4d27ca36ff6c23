#pragma once

#include <map>
#include <string>

namespace mrsc {

/// Parses UTF-8 `key = value` lines; '#' starts a comment, blank lines are
/// skipped. Later keys override earlier ones.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace mrsc
