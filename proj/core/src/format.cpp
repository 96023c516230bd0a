#include "recourse/format.hpp"

#include <charconv>
#include <cmath>

namespace recourse {

std::string format_g9(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace recourse
