#include "heatcert/extended_real.hpp"

#include <cstdio>

namespace heatcert {

std::string ExtendedReal::to_string() const {
    if (!finite_) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value_);
    return buf;
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) { return os << x.to_string(); }

}  // namespace heatcert
