#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sscc {

// Exact nonnegative rational used for every simulation duration and for the
// global clock. Durations come from double-valued samples converted exactly
// (doubles are dyadic rationals), so sums never accumulate rounding error and
// equal-time scheduler ties are decided by structure, not by epsilons.
class TimeValue {
public:
    TimeValue() : v_(0) {}

    explicit TimeValue(mpq_class q) : v_(std::move(q)) {
        v_.canonicalize();
        if (v_ < 0)
            throw std::invalid_argument("TimeValue: negative rational");
    }

    TimeValue(long num, long den) : TimeValue(mpq_class(num, den)) {}

    // Exact conversion of a double; the caller is responsible for clamping
    // negative samples before constructing a duration.
    static TimeValue from_double(double d) {
        if (d < 0)
            throw std::invalid_argument("TimeValue: negative double");
        return TimeValue(mpq_class(d));
    }

    static TimeValue zero() { return TimeValue(); }

    TimeValue operator+(const TimeValue& o) const {
        TimeValue r;
        r.v_ = v_ + o.v_;
        return r;
    }

    TimeValue& operator+=(const TimeValue& o) {
        v_ += o.v_;
        return *this;
    }

    // Saturating subtraction: max(this - o, 0).
    TimeValue monus(const TimeValue& o) const {
        TimeValue r;
        if (v_ > o.v_)
            r.v_ = v_ - o.v_;
        return r;
    }

    // this * q for a nonnegative rational scale (store-size penalty).
    TimeValue scaled_by(const mpq_class& q) const {
        if (q < 0)
            throw std::invalid_argument("TimeValue: negative scale");
        TimeValue r;
        r.v_ = v_ * q;
        r.v_.canonicalize();
        return r;
    }

    bool operator==(const TimeValue& o) const { return v_ == o.v_; }
    bool operator!=(const TimeValue& o) const { return v_ != o.v_; }
    bool operator<(const TimeValue& o) const { return v_ < o.v_; }
    bool operator<=(const TimeValue& o) const { return v_ <= o.v_; }
    bool operator>(const TimeValue& o) const { return v_ > o.v_; }
    bool operator>=(const TimeValue& o) const { return v_ >= o.v_; }

    double to_double() const { return v_.get_d(); }
    const mpq_class& raw() const { return v_; }

    // Canonical text form: "p" when the denominator is 1, else "p/q".
    std::string str() const {
        if (v_.get_den() == 1)
            return v_.get_num().get_str();
        return v_.get_str();
    }

private:
    mpq_class v_;
};

// Parses "p", "p/q" or an exact decimal like "2.6" (= 13/5). Used by the
// spec-file reader for factor/maxtime/Const() values.
mpq_class parse_rational(const std::string& text);
std::string rational_str(const mpq_class& q);

} // namespace sscc
