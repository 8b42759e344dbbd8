#include "starforge/series.hpp"

#include "starforge/errors.hpp"

namespace starforge {

namespace {

void check_same(const TruncSeries& a, const TruncSeries& b) {
    if (a.trunc() != b.trunc())
        fail(ErrorKind::Usage, "truncation mismatch " + std::to_string(a.trunc()) + " vs " +
                                   std::to_string(b.trunc()));
}

}  // namespace

TruncSeries::TruncSeries(int trunc) : c_(trunc) {
    if (trunc < 1) fail(ErrorKind::Usage, "truncation must be positive");
}

TruncSeries::TruncSeries(Vec coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) fail(ErrorKind::Usage, "truncation must be positive");
}

TruncSeries::TruncSeries(std::initializer_list<Scalar> coeffs, int trunc) : TruncSeries(trunc) {
    int k = 0;
    for (const auto& x : coeffs) {
        if (k < trunc) c_[k] = x;
        ++k;
    }
}

TruncSeries TruncSeries::monomial(int k, int trunc, const Scalar& c) {
    TruncSeries s(trunc);
    if (k < trunc) s.c_[k] = c;
    return s;
}

TruncSeries TruncSeries::constant(const Scalar& c, int trunc) { return monomial(0, trunc, c); }

bool TruncSeries::is_zero() const { return starforge::is_zero(c_); }

int TruncSeries::valuation() const {
    for (int k = 0; k < trunc(); ++k)
        if (sgn(c_[k]) != 0) return k;
    return trunc();
}

TruncSeries TruncSeries::inverse() const {
    if (!is_unit()) fail(ErrorKind::NotAUnit, "series " + to_string(*this) + " is not a unit");
    const int q = trunc();
    TruncSeries r(q);
    Scalar inv0 = 1 / c_[0];
    r.c_[0] = inv0;
    for (int k = 1; k < q; ++k) {
        Scalar acc;
        for (int j = 1; j <= k; ++j)
            if (sgn(c_[j]) != 0) acc += c_[j] * r.c_[k - j];
        r.c_[k] = -acc * inv0;
    }
    return r;
}

TruncSeries TruncSeries::lift(int trunc) const {
    if (trunc < this->trunc()) fail(ErrorKind::Usage, "lift to a smaller truncation");
    return resized(trunc);
}

TruncSeries TruncSeries::reduce(int trunc) const {
    if (trunc > this->trunc()) fail(ErrorKind::Usage, "reduce to a larger truncation");
    return resized(trunc);
}

TruncSeries TruncSeries::resized(int trunc) const {
    TruncSeries r(trunc);
    for (int k = 0; k < std::min(trunc, this->trunc()); ++k) r.c_[k] = c_[k];
    return r;
}

TruncSeries TruncSeries::shift(int k) const {
    TruncSeries r(trunc());
    for (int j = 0; j + k < trunc(); ++j) r.c_[j + k] = c_[j];
    return r;
}

TruncSeries TruncSeries::divide_t(int k) const {
    if (valuation() < k) fail(ErrorKind::Usage, "series not divisible by t^" + std::to_string(k));
    if (k >= trunc()) fail(ErrorKind::Usage, "division leaves nothing of the series");
    TruncSeries r(trunc() - k);
    for (int j = 0; j < r.trunc(); ++j) r.c_[j] = c_[j + k];
    return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    check_same(*this, o);
    for (int k = 0; k < trunc(); ++k) c_[k] += o.c_[k];
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
    check_same(*this, o);
    for (int k = 0; k < trunc(); ++k) c_[k] -= o.c_[k];
    return *this;
}

TruncSeries& TruncSeries::operator*=(const Scalar& s) {
    for (auto& x : c_) x *= s;
    return *this;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    check_same(a, b);
    const int q = a.trunc();
    TruncSeries r(q);
    for (int i = 0; i < q; ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (int j = 0; i + j < q; ++j)
            if (sgn(b.c_[j]) != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }
TruncSeries series_inverse(const TruncSeries& a) { return a.inverse(); }

std::string to_string(const TruncSeries& s) {
    std::string out;
    for (int k = 0; k < s.trunc(); ++k) {
        if (sgn(s[k]) == 0) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(s[k]) + ")";
        if (k == 1) out += "t";
        if (k > 1) out += "t^" + std::to_string(k);
    }
    if (out.empty()) out = "0";
    return out + " mod t^" + std::to_string(s.trunc());
}

}  // namespace starforge
