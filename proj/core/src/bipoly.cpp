#include "starforge/bipoly.hpp"

#include "starforge/errors.hpp"

namespace starforge {

namespace {

void check_same(const BiPoly& a, const BiPoly& b) {
    if (a.xdeg() != b.xdeg() || a.trunc() != b.trunc())
        fail(ErrorKind::Usage, "bivariate truncation mismatch");
}

}  // namespace

BiPoly::BiPoly(int xdeg, int trunc) : d_(xdeg), n_(trunc), c_(static_cast<size_t>(xdeg) * trunc) {
    if (xdeg < 1 || trunc < 1) fail(ErrorKind::Usage, "bivariate truncations must be positive");
}

BiPoly BiPoly::monomial(int a, int b, int xdeg, int trunc, const Scalar& c) {
    BiPoly p(xdeg, trunc);
    if (a < xdeg && b < trunc) p.at(a, b) = c;
    return p;
}

BiPoly BiPoly::from_series(const TruncSeries& s, int xdeg) {
    BiPoly p(xdeg, s.trunc());
    for (int b = 0; b < s.trunc(); ++b) p.at(0, b) = s[b];
    return p;
}

BiPoly BiPoly::from_x_poly(const Vec& poly, int trunc) {
    BiPoly p(static_cast<int>(poly.size()), trunc);
    for (int a = 0; a < p.d_; ++a) p.at(a, 0) = poly[a];
    return p;
}

bool BiPoly::is_zero() const { return starforge::is_zero(c_); }

int BiPoly::t_valuation() const {
    for (int b = 0; b < n_; ++b)
        for (int a = 0; a < d_; ++a)
            if (sgn(at(a, b)) != 0) return b;
    return n_;
}

bool BiPoly::is_t_only() const {
    for (int a = 1; a < d_; ++a)
        for (int b = 0; b < n_; ++b)
            if (sgn(at(a, b)) != 0) return false;
    return true;
}

TruncSeries BiPoly::to_series() const {
    if (!is_t_only()) fail(ErrorKind::Usage, "element has x-dependent terms");
    TruncSeries s(n_);
    for (int b = 0; b < n_; ++b) s[b] = at(0, b);
    return s;
}

Vec BiPoly::t_coeff(int b) const {
    Vec p(d_);
    for (int a = 0; a < d_; ++a) p[a] = at(a, b);
    return p;
}

BiPoly BiPoly::inverse() const {
    if (!is_unit()) fail(ErrorKind::NotAUnit, "bivariate element " + to_string(*this) + " is not a unit");
    // f = c00 (1 + nil) with nil nilpotent; sum the geometric series.
    Scalar inv0 = 1 / c_[0];
    BiPoly e = (*this) * inv0;  // e = 1 + n with n nilpotent
    BiPoly nil = e;
    nil.at(0, 0) -= 1;
    BiPoly r = monomial(0, 0, d_, n_);
    BiPoly power = r;
    for (int k = 1; k < d_ + n_; ++k) {
        power = power * nil;
        if (power.is_zero()) break;
        if (k % 2) r -= power; else r += power;
    }
    return r * inv0;
}

BiPoly BiPoly::derivative_x() const {
    BiPoly r(d_, n_);
    for (int a = 1; a < d_; ++a)
        for (int b = 0; b < n_; ++b)
            if (sgn(at(a, b)) != 0) r.at(a - 1, b) = at(a, b) * a;
    return r;
}

BiPoly BiPoly::resized_t(int trunc) const {
    BiPoly r(d_, trunc);
    for (int a = 0; a < d_; ++a)
        for (int b = 0; b < std::min(trunc, n_); ++b) r.at(a, b) = at(a, b);
    return r;
}

BiPoly BiPoly::resized_x(int xdeg) const {
    BiPoly r(xdeg, n_);
    for (int a = 0; a < std::min(xdeg, d_); ++a)
        for (int b = 0; b < n_; ++b) r.at(a, b) = at(a, b);
    return r;
}

BiPoly BiPoly::shift_t(int k) const {
    BiPoly r(d_, n_);
    for (int a = 0; a < d_; ++a)
        for (int b = 0; b + k < n_; ++b) r.at(a, b + k) = at(a, b);
    return r;
}

BiPoly BiPoly::divide_t(int k) const {
    if (t_valuation() < k) fail(ErrorKind::Usage, "element not divisible by t^" + std::to_string(k));
    if (k >= n_) fail(ErrorKind::Usage, "division leaves nothing of the element");
    BiPoly r(d_, n_ - k);
    for (int a = 0; a < d_; ++a)
        for (int b = 0; b < n_ - k; ++b) r.at(a, b) = at(a, b + k);
    return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    check_same(*this, o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    check_same(*this, o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

BiPoly& BiPoly::operator*=(const Scalar& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    check_same(a, b);
    const int d = a.d_, n = a.n_;
    BiPoly r(d, n);
    thread_local mpq_class tmp;
    for (int a1 = 0; a1 < d; ++a1)
        for (int b1 = 0; b1 < n; ++b1) {
            const Scalar& x = a.at(a1, b1);
            if (sgn(x) == 0) continue;
            for (int a2 = 0; a1 + a2 < d; ++a2)
                for (int b2 = 0; b1 + b2 < n; ++b2) {
                    const Scalar& y = b.at(a2, b2);
                    if (sgn(y) == 0) continue;
                    mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
                    Scalar& z = r.at(a1 + a2, b1 + b2);
                    mpq_add(z.get_mpq_t(), z.get_mpq_t(), tmp.get_mpq_t());
                }
        }
    return r;
}

Vec xpoly_mul(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; i + j < a.size() && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

Vec xpoly_inverse(const Vec& a) {
    if (a.empty() || sgn(a[0]) == 0) fail(ErrorKind::NotAUnit, "x-polynomial is not a unit");
    return BiPoly::from_x_poly(a, 1).inverse().t_coeff(0);
}

Vec xpoly_derivative(const Vec& a) {
    Vec r(a.size());
    for (size_t k = 1; k < a.size(); ++k) r[k - 1] = a[k] * static_cast<long>(k);
    return r;
}

std::string to_string(const BiPoly& p) {
    std::string out;
    for (int a = 0; a < p.xdeg(); ++a)
        for (int b = 0; b < p.trunc(); ++b) {
            if (sgn(p.at(a, b)) == 0) continue;
            if (!out.empty()) out += " + ";
            out += "(" + to_string(p.at(a, b)) + ")";
            if (a == 1) out += "x";
            if (a > 1) out += "x^" + std::to_string(a);
            if (b == 1) out += "t";
            if (b > 1) out += "t^" + std::to_string(b);
        }
    return out.empty() ? "0" : out;
}

}  // namespace starforge
