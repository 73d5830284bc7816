#pragma once

#include <cmath>
#include <limits>

#include "infconv/errors.hpp"

namespace infconv {

inline constexpr double kPlusInfinity = std::numeric_limits<double>::infinity();

/// Extended real value: a finite double or +inf. NaN and -inf are rejected
/// at construction, so arithmetic on stored values never produces NaN from
/// inf - inf style expressions (there is no -inf to collide with).
class ExtReal {
public:
    ExtReal() : value_(0.0) {}

    explicit ExtReal(double value) : value_(value) {
        if (std::isnan(value)) throw InvalidValue("ExtReal: NaN rejected");
        if (value == -kPlusInfinity) throw InvalidValue("ExtReal: -inf rejected");
    }

    static ExtReal infinity() {
        ExtReal r;
        r.value_ = kPlusInfinity;
        return r;
    }

    double get() const { return value_; }
    bool is_finite() const { return std::isfinite(value_); }
    bool is_infinite() const { return value_ == kPlusInfinity; }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        ExtReal r;
        r.value_ = a.value_ + b.value_;  // inf + finite = inf, inf + inf = inf
        return r;
    }

    friend bool operator==(ExtReal a, ExtReal b) { return a.value_ == b.value_; }
    friend bool operator<(ExtReal a, ExtReal b) { return a.value_ < b.value_; }
    friend bool operator<=(ExtReal a, ExtReal b) { return a.value_ <= b.value_; }

private:
    double value_;
};

/// True for values admissible as extended-real samples (finite or +inf).
inline bool is_ext_real(double v) { return !std::isnan(v) && v != -kPlusInfinity; }

}  // namespace infconv
