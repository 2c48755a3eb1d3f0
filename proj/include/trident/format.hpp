#pragma once

#include <string>

namespace trident {

// All report output uses 6 significant digits so golden files are stable.
std::string fmt_sig(double value);

}  // namespace trident
