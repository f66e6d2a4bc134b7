#pragma once

#include <string>

namespace tpa {

// Locale-independent shortest-general formatting with a fixed number of
// significant digits. Used by every CSV/JSON writer so that output is byte-stable.
std::string fmt_num(double v, int significant = 9);

}  // namespace tpa
