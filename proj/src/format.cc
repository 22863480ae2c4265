#include "aligneval/format.h"

#include <fmt/format.h>

namespace aligneval {

namespace {

std::string strip_negative_zero(std::string s) {
  if (s.size() > 1 && s.front() == '-' &&
      s.find_first_not_of("0.", 1) == std::string::npos)
    s.erase(0, 1);
  return s;
}

}  // namespace

std::string fixed6(double v) { return strip_negative_zero(fmt::format("{:.6f}", v)); }
std::string fixed1(double v) { return strip_negative_zero(fmt::format("{:.1f}", v)); }

std::string fixed6(const std::optional<double>& v) { return v ? fixed6(*v) : "NA"; }
std::string fixed1(const std::optional<double>& v) { return v ? fixed1(*v) : "NA"; }

}  // namespace aligneval
