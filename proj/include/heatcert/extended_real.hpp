#pragma once

#include <compare>
#include <limits>
#include <ostream>
#include <string>

#include "heatcert/errors.hpp"

namespace heatcert {

/// A real number or +infinity. Existence times and growth radii use this so
/// that "no blow-up" never travels through arithmetic as a sentinel double.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double v) : value_(v), finite_(true) {}  // NOLINT(implicit)

    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.finite_ = false;
        return r;
    }

    [[nodiscard]] constexpr bool is_finite() const { return finite_; }
    [[nodiscard]] constexpr bool is_infinite() const { return !finite_; }

    /// Finite value; throws DomainError on +infinity.
    [[nodiscard]] double value() const {
        if (!finite_) throw DomainError("ExtendedReal::value() on +infinity");
        return value_;
    }

    /// Finite value, or +inf as an IEEE double for plotting/serialization edges.
    [[nodiscard]] constexpr double to_double() const {
        return finite_ ? value_ : std::numeric_limits<double>::infinity();
    }

    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }

    // Total order: every finite value compares below +infinity.
    friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
        if (!a.finite_ && !b.finite_) return std::partial_ordering::equivalent;
        if (!a.finite_) return std::partial_ordering::greater;
        if (!b.finite_) return std::partial_ordering::less;
        return a.value_ <=> b.value_;
    }

    [[nodiscard]] std::string to_string() const;

private:
    double value_ = 0.0;
    bool finite_ = true;
};

inline constexpr ExtendedReal ext_min(const ExtendedReal& a, const ExtendedReal& b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

}  // namespace heatcert
