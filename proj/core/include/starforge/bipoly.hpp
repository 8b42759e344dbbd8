#pragma once

#include "starforge/series.hpp"

namespace starforge {

// Element of (K[x]/(x^D))[t]/(t^N); coefficient of x^a t^b stored at a*N + b.
class BiPoly {
public:
    BiPoly() = default;
    BiPoly(int xdeg, int trunc);

    static BiPoly monomial(int a, int b, int xdeg, int trunc, const Scalar& c = 1);
    static BiPoly from_series(const TruncSeries& s, int xdeg);
    // Polynomial in x alone (t-degree 0), coefficients indexed by x-degree.
    static BiPoly from_x_poly(const Vec& p, int trunc);

    int xdeg() const { return d_; }
    int trunc() const { return n_; }
    const Scalar& at(int a, int b) const { return c_[a * n_ + b]; }
    Scalar& at(int a, int b) { return c_[a * n_ + b]; }
    const Vec& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_unit() const { return !c_.empty() && sgn(c_.front()) != 0; }
    // Smallest b with some nonzero coefficient of t^b; trunc() when zero.
    int t_valuation() const;
    // No x^a t^b term with a >= 1.
    bool is_t_only() const;
    TruncSeries to_series() const;  // requires is_t_only()
    // Coefficient of t^b as a polynomial in x.
    Vec t_coeff(int b) const;

    BiPoly inverse() const;
    BiPoly derivative_x() const;
    BiPoly resized_t(int trunc) const;
    BiPoly resized_x(int xdeg) const;
    BiPoly shift_t(int k) const;
    BiPoly divide_t(int k) const;

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly& operator*=(const Scalar& s);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(BiPoly a, const Scalar& s) { return a *= s; }
    friend BiPoly operator*(const Scalar& s, BiPoly a) { return a *= s; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly operator-() const;

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.d_ == b.d_ && a.n_ == b.n_ && a.c_ == b.c_;
    }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

private:
    int d_ = 0;
    int n_ = 0;
    Vec c_;
};

// Polynomials in x truncated at degree D, used for restrictions to t = 0.
Vec xpoly_mul(const Vec& a, const Vec& b);
Vec xpoly_inverse(const Vec& a);
Vec xpoly_derivative(const Vec& a);

std::string to_string(const BiPoly& p);

}  // namespace starforge
