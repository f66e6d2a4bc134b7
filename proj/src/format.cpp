#include "tpa/format.hpp"

#include <charconv>
#include <system_error>

namespace tpa {

std::string fmt_num(double v, int significant) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

}  // namespace tpa
