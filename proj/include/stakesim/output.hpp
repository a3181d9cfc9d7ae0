#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stakesim {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shortest representation that parses back to the same double; non-zero
// precision switches to that many significant digits.
std::string format_double(double v, int precision = 0);

// Round-trips v through format_double so serialized and in-memory values
// agree when a precision override is active.
double apply_precision(double v, int precision);

// RFC-4180 quoting, applied only when the field needs it.
std::string csv_escape(std::string_view field);

}  // namespace stakesim
