#pragma once

#include <string>

namespace swarmalloc {

// Shortest round-trip decimal form, locale independent. Keeps repeated CSV
// and JSON emissions byte-identical for identical inputs.
std::string format_double(double value);

double parse_double(const std::string& text);
int parse_int(const std::string& text);
long long parse_int64(const std::string& text);

}  // namespace swarmalloc
