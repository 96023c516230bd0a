#pragma once

#include <string>

namespace recourse {

/// Locale-independent %.9g-style formatting (std::to_chars, general form,
/// 9 significant digits). The single serialization used everywhere numbers
/// leave the library, so emitted files are byte-stable.
std::string format_g9(double v);

}  // namespace recourse
