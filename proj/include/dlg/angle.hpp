#pragma once

// Circle values stored additively as angles in R/Z.
// Two backends: exact rational (group ops closed over Q) and floating double.
// Mixing backends demotes to floating.

#include <boost/rational.hpp>
#include <complex>

#include "dlg/base.hpp"

namespace dlg {

using Rational = boost::rational<long long>;

inline Rational frac_part(const Rational& q) {
    // representative in [0,1)
    long long fl = q.numerator() / q.denominator();
    if (q.numerator() % q.denominator() != 0 && q < 0) fl -= 1;
    return q - Rational(fl);
}

class Angle {
  public:
    Angle() : exact_(true), q_(0), x_(0) {}

    static Angle exact(long long num, long long den) { return Angle(frac_part(Rational(num, den))); }
    static Angle exact(const Rational& q) { return Angle(frac_part(q)); }
    static Angle real(double x) {
        Angle a;
        a.exact_ = false;
        a.x_ = x - std::floor(x);
        if (a.x_ >= 1.0) a.x_ = 0.0;  // guard against floor rounding
        return a;
    }

    bool is_exact() const { return exact_; }

    // representative in [0,1)
    double value() const { return exact_ ? boost::rational_cast<double>(q_) : x_; }
    const Rational& rational() const {
        require(exact_, "Angle: rational() on floating value");
        return q_;
    }

    Angle operator+(const Angle& o) const {
        if (exact_ && o.exact_) return Angle(frac_part(q_ + o.q_));
        return real(value() + o.value());
    }
    Angle operator-(const Angle& o) const {
        if (exact_ && o.exact_) return Angle(frac_part(q_ - o.q_));
        return real(value() - o.value());
    }
    Angle operator-() const {
        if (exact_) return Angle(frac_part(-q_));
        return real(-x_);
    }
    Angle scaled(long long n) const {
        if (exact_) return Angle(frac_part(q_ * Rational(n)));
        return real(x_ * double(n));
    }

    // distance from the zero angle, i.e. to the nearest integer representative
    double defect() const {
        double v = value();
        return std::min(v, 1.0 - v);
    }

    bool operator==(const Angle& o) const {
        if (exact_ && o.exact_) return q_ == o.q_;
        return value() == o.value();
    }
    bool operator<(const Angle& o) const {
        if (exact_ && o.exact_) return q_ < o.q_;
        return value() < o.value();
    }

    std::complex<double> unit() const {
        double t = 2.0 * M_PI * value();
        return {std::cos(t), std::sin(t)};
    }

    std::string str() const {
        if (exact_) {
            std::ostringstream os;
            os << q_.numerator() << "/" << q_.denominator();
            return os.str();
        }
        return format_double(x_);
    }

  private:
    explicit Angle(const Rational& q) : exact_(true), q_(q), x_(0) {}
    bool exact_;
    Rational q_;
    double x_;
};

// distance of a real number to the nearest integer
inline double int_defect(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

inline long long nearest_int(double x) { return (long long)std::llround(x); }

}  // namespace dlg
