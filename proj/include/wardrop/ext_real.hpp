#pragma once

#include <string>

#include "wardrop/errors.hpp"

namespace wardrop {

/// Extended nonnegative real used by the index calculus: a finite value,
/// a +infinity marker, or an "undefined" marker for limits that do not
/// exist. Aggregation (min/max) is done case-wise rather than through
/// IEEE infinity arithmetic.
class ExtReal {
  public:
    ExtReal() : state_(State::Undef), value_(0.0) {}

    static ExtReal finite(double v) {
        if (v < 0.0) throw NumericError("ExtReal: negative value");
        ExtReal r;
        r.state_ = State::Finite;
        r.value_ = v;
        return r;
    }
    static ExtReal inf() {
        ExtReal r;
        r.state_ = State::Inf;
        return r;
    }
    static ExtReal undef() { return ExtReal(); }

    bool is_finite() const { return state_ == State::Finite; }
    bool is_inf() const { return state_ == State::Inf; }
    bool is_undef() const { return state_ == State::Undef; }
    bool is_zero() const { return state_ == State::Finite && value_ == 0.0; }

    double value() const {
        if (!is_finite()) throw NumericError("ExtReal: value() on non-finite");
        return value_;
    }

    // Order: finite < inf; undef poisons.
    friend ExtReal max(const ExtReal& a, const ExtReal& b) {
        if (a.is_undef() || b.is_undef()) return undef();
        if (a.is_inf() || b.is_inf()) return inf();
        return finite(a.value_ > b.value_ ? a.value_ : b.value_);
    }
    friend ExtReal min(const ExtReal& a, const ExtReal& b) {
        if (a.is_undef() || b.is_undef()) return undef();
        if (a.is_inf()) return b;
        if (b.is_inf()) return a;
        return finite(a.value_ < b.value_ ? a.value_ : b.value_);
    }

    bool operator==(const ExtReal& o) const {
        if (state_ != o.state_) return false;
        return state_ != State::Finite || value_ == o.value_;
    }

    std::string str() const {
        if (is_undef()) return "undefined";
        if (is_inf()) return "inf";
        return std::to_string(value_);
    }

  private:
    enum class State { Finite, Inf, Undef };
    State state_;
    double value_;
};

}  // namespace wardrop
