#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace p2p::text {

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool istarts_with(std::string_view s, std::string_view prefix);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string trim(std::string_view s);

// Quote a string for s-expression output: wraps in double quotes and
// escapes backslash and double quote.
std::string quote(std::string_view s);

}  // namespace p2p::text
