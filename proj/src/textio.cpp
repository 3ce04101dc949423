#include "blowup/textio.hpp"

#include <charconv>

namespace blowup {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;  // 64 bytes always suffice for a double
    return std::string(buf, ptr);
}

}  // namespace blowup
