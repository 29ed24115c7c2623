#pragma once

// Text rendering of doubles with 17 significant digits, independent of the
// C locale.

#include <string>

namespace unitsurf {

// printf("%.17g") equivalent.
std::string format_double(double v);

void append_double(std::string& out, double v);

}  // namespace unitsurf
