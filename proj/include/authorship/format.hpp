#pragma once

#include <string>
#include <string_view>

namespace authorship {

// Fixed-point with `decimals` digits ("0.5960"). Infinity prints as "inf".
std::string fixed(double value, int decimals = 4);

// Shortest text that reads back to the same double ("1", "0.25").
std::string shortest(double value);

// RFC 4180 field: quoted only when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

} // namespace authorship
