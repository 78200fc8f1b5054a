#ifndef KREGULAR_LOGSCALED_HPP
#define KREGULAR_LOGSCALED_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <utility>
#include <stdexcept>
#include <string>

namespace kregular {

// Sign/mantissa/exponent triple representing s * m * e^E with m in [1, e).
// Covers magnitudes like e^{+-2000} that overflow IEEE doubles.  Addition
// absorbs the smaller operand once the exponent gap exceeds kAbsorbGap
// (documented behavior, keeps the sum exact to 1 ulp within range).
class LogScaled {
public:
    static constexpr double kAbsorbGap = 750.0;
    // Relative slack below which compare() refuses to order two values.
    static constexpr double kCompareSlack = 1e-13;

    constexpr LogScaled() : sign_(0), mantissa_(0.0), exponent_(0.0) {}

    static LogScaled zero() { return LogScaled(); }

    static LogScaled from_double(double v) {
        if (v == 0.0) return LogScaled();
        if (!std::isfinite(v)) throw std::invalid_argument("LogScaled: non-finite input");
        return from_log(v < 0 ? -1 : +1, std::log(std::fabs(v)));
    }

    // value = sign * e^logabs
    static LogScaled from_log(int sign, double logabs) {
        if (sign == 0) return LogScaled();
        LogScaled r;
        r.sign_ = sign < 0 ? -1 : +1;
        double e = std::floor(logabs);
        r.mantissa_ = std::exp(logabs - e);
        r.exponent_ = e;
        r.normalize();
        return r;
    }

    int sign() const { return sign_; }
    double mantissa() const { return mantissa_; }
    double exponent() const { return exponent_; }

    bool is_zero() const { return sign_ == 0; }

    // Natural log of |value|; -inf for zero.
    double log_abs() const {
        if (sign_ == 0) return -std::numeric_limits<double>::infinity();
        return exponent_ + std::log(mantissa_);
    }

    // Lossy conversion; +-inf outside double range.
    double to_double() const {
        if (sign_ == 0) return 0.0;
        double la = log_abs();
        if (la > 709.0) return sign_ > 0 ? std::numeric_limits<double>::infinity()
                                         : -std::numeric_limits<double>::infinity();
        return sign_ * std::exp(la);
    }

    LogScaled operator-() const {
        LogScaled r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend LogScaled operator+(const LogScaled& a, const LogScaled& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        const LogScaled* hi = &a;
        const LogScaled* lo = &b;
        if (lo->log_abs() > hi->log_abs()) std::swap(hi, lo);
        double gap = hi->log_abs() - lo->log_abs();
        if (gap > kAbsorbGap) return *hi;  // absorption
        // m = hi.m +- lo.m * e^{lo.E - hi.E}, evaluated at hi's exponent
        double m = hi->sign_ * hi->mantissa_ +
                   lo->sign_ * lo->mantissa_ * std::exp(lo->exponent_ - hi->exponent_);
        if (m == 0.0) return LogScaled();
        return from_log(m < 0 ? -1 : +1, hi->exponent_ + std::log(std::fabs(m)));
    }

    friend LogScaled operator-(const LogScaled& a, const LogScaled& b) { return a + (-b); }

    friend LogScaled operator*(const LogScaled& a, const LogScaled& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return LogScaled();
        return from_log(a.sign_ * b.sign_,
                        a.exponent_ + b.exponent_ + std::log(a.mantissa_ * b.mantissa_));
    }

    friend LogScaled operator*(const LogScaled& a, double b) { return a * from_double(b); }
    friend LogScaled operator*(double a, const LogScaled& b) { return from_double(a) * b; }

    friend LogScaled operator/(const LogScaled& a, const LogScaled& b) {
        if (b.sign_ == 0) throw std::domain_error("LogScaled: division by zero");
        if (a.sign_ == 0) return LogScaled();
        return from_log(a.sign_ * b.sign_,
                        a.log_abs() - b.log_abs());
    }

    LogScaled& operator+=(const LogScaled& o) { return *this = *this + o; }
    LogScaled& operator*=(const LogScaled& o) { return *this = *this * o; }

    // Total order up to the documented slack band.  Ties within relative
    // kCompareSlack are reported Indeterminate so callers can widen margins.
    enum class Order { Less, Indeterminate, Greater, Equal };

    static Order compare(const LogScaled& a, const LogScaled& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? Order::Less : Order::Greater;
        if (a.sign_ == 0) return Order::Equal;
        double la = a.log_abs(), lb = b.log_abs();
        if (la == lb) return Order::Equal;
        if (std::fabs(la - lb) <= kCompareSlack) return Order::Indeterminate;
        bool abs_less = la < lb;
        if (a.sign_ > 0) return abs_less ? Order::Less : Order::Greater;
        return abs_less ? Order::Greater : Order::Less;
    }

    // Strict comparison helpers; indeterminate counts as "not established".
    bool definitely_greater(const LogScaled& o) const {
        return compare(*this, o) == Order::Greater;
    }
    bool definitely_less(const LogScaled& o) const {
        return compare(*this, o) == Order::Less;
    }

    // "m e E" triple, plus a decimal value when in double range.
    std::string to_string() const {
        if (sign_ == 0) return "0 e 0";
        char buf[96];
        double la = log_abs();
        if (std::fabs(la) < 700.0)
            std::snprintf(buf, sizeof buf, "%.12g e %.12g (%.12g)",
                          sign_ * mantissa_, exponent_, to_double());
        else
            std::snprintf(buf, sizeof buf, "%.12g e %.12g", sign_ * mantissa_, exponent_);
        return buf;
    }

    friend std::ostream& operator<<(std::ostream& os, const LogScaled& v) {
        return os << v.to_string();
    }

private:
    void normalize() {
        // keep log(mantissa) in [0, 1)
        if (sign_ == 0) { mantissa_ = 0.0; exponent_ = 0.0; return; }
        double lm = std::log(mantissa_);
        if (lm < 0.0 || lm >= 1.0) {
            double la = exponent_ + lm;
            double e = std::floor(la);
            mantissa_ = std::exp(la - e);
            exponent_ = e;
        }
    }

    int sign_;
    double mantissa_;
    double exponent_;
};

// exp of a plain double as a LogScaled (argument may be far outside double range).
inline LogScaled logscaled_exp(double x) { return LogScaled::from_log(+1, x); }

}  // namespace kregular

#endif
