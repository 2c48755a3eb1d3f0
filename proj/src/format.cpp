#include "trident/format.hpp"

#include <cstdio>

namespace trident {

std::string fmt_sig(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

}  // namespace trident
