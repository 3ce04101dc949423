#pragma once

#include <string>

namespace blowup {

/// Shortest round-trip decimal form of a double, locale independent
/// ('.' decimal point always). Used by every CSV writer so outputs are
/// byte-identical across runs and machines.
std::string format_double(double value);

}  // namespace blowup
