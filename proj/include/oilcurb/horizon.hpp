#pragma once

#include <string>

#include "oilcurb/errors.hpp"

namespace oilcurb {

/// Analysis horizon. In the short run field investment costs are sunk and
/// only operating costs matter; in the long run investment costs enter the
/// marginal cost of supply.
enum class Horizon { ShortRun, LongRun };

inline std::string to_string(Horizon horizon) {
    return horizon == Horizon::ShortRun ? "short" : "long";
}

inline Horizon parse_horizon(const std::string& text) {
    if (text == "short" || text == "short-run" || text == "sr") return Horizon::ShortRun;
    if (text == "long" || text == "long-run" || text == "lr") return Horizon::LongRun;
    throw ValidationError("unknown horizon '" + text + "' (expected 'short' or 'long')");
}

}  // namespace oilcurb
