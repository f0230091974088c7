#pragma once

#include <string>

namespace bellsim {

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double value);

}  // namespace bellsim
