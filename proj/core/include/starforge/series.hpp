#pragma once

#include "starforge/scalar.hpp"

#include <initializer_list>

namespace starforge {

// Element of K[t]/(t^q), dense: coefficient of t^k at index k.
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(int trunc);
    explicit TruncSeries(Vec coeffs);
    TruncSeries(std::initializer_list<Scalar> coeffs, int trunc);

    static TruncSeries monomial(int k, int trunc, const Scalar& c = 1);
    static TruncSeries constant(const Scalar& c, int trunc);

    int trunc() const { return static_cast<int>(c_.size()); }
    const Vec& coeffs() const { return c_; }
    const Scalar& operator[](int k) const { return c_[k]; }
    Scalar& operator[](int k) { return c_[k]; }

    bool is_zero() const;
    // trunc() for the zero series
    int valuation() const;
    const Scalar& at_zero() const { return c_.front(); }
    bool is_unit() const { return !c_.empty() && sgn(c_.front()) != 0; }

    TruncSeries inverse() const;
    // Change of truncation: lift pads with zeros, reduce drops terms.
    TruncSeries lift(int trunc) const;
    TruncSeries reduce(int trunc) const;
    TruncSeries resized(int trunc) const;
    // Multiplication by t^k, same truncation.
    TruncSeries shift(int k) const;
    // Exact division by t^k; the result has truncation trunc()-k.
    TruncSeries divide_t(int k) const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const Scalar& s);

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(TruncSeries a, const Scalar& s) { return a *= s; }
    friend TruncSeries operator*(const Scalar& s, TruncSeries a) { return a *= s; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    TruncSeries operator-() const;

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

private:
    Vec c_;
};

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_inverse(const TruncSeries& a);

std::string to_string(const TruncSeries& s);

}  // namespace starforge
