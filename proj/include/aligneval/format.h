#pragma once

#include <optional>
#include <string>

namespace aligneval {

// Locale-independent fixed-point formatting used by every report. Negative
// zero prints as zero so that reports are stable across evaluation order.
std::string fixed6(double v);
std::string fixed1(double v);

// "NA" for absent values.
std::string fixed6(const std::optional<double>& v);
std::string fixed1(const std::optional<double>& v);

}  // namespace aligneval
