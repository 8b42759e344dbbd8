#include "starforge/linear_space.hpp"

#include "starforge/errors.hpp"

#include <algorithm>

namespace starforge {

LinearSpace LinearSpace::span(int ambient, const std::vector<Vec>& vectors) {
    LinearSpace s(ambient);
    s.insert_all(vectors);
    return s;
}

LinearSpace LinearSpace::full(int ambient) {
    LinearSpace s(ambient);
    for (int k = 0; k < ambient; ++k) {
        Vec e(ambient);
        e[k] = 1;
        s.rows_.push_back(std::move(e));
        s.piv_.push_back(k);
    }
    return s;
}

Vec LinearSpace::reduce(Vec v) const {
    if (static_cast<int>(v.size()) != d_)
        fail(ErrorKind::Usage, "vector of length " + std::to_string(v.size()) +
                                   " in ambient dimension " + std::to_string(d_));
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (sgn(v[piv_[i]]) == 0) continue;
        Scalar c = -v[piv_[i]];
        axpy(v, c, rows_[i]);
    }
    return v;
}

bool LinearSpace::insert(Vec v) {
    v = reduce(std::move(v));
    int p = 0;
    while (p < d_ && sgn(v[p]) == 0) ++p;
    if (p == d_) return false;
    Scalar inv = 1 / v[p];
    for (auto& x : v)
        if (sgn(x) != 0) x *= inv;
    for (auto& row : rows_) {
        if (sgn(row[p]) == 0) continue;
        Scalar c = -row[p];
        axpy(row, c, v);
    }
    auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
    piv_.insert(piv_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

void LinearSpace::insert_all(const std::vector<Vec>& vs) {
    for (const auto& v : vs) insert(v);
}

bool LinearSpace::member(const Vec& v) const { return is_zero(reduce(v)); }

bool LinearSpace::contains(const LinearSpace& o) const {
    if (o.d_ != d_) fail(ErrorKind::Usage, "ambient dimension mismatch");
    for (const auto& r : o.rows_)
        if (!member(r)) return false;
    return true;
}

std::optional<Vec> LinearSpace::coordinates(const Vec& v) const {
    if (!member(v)) return std::nullopt;
    Vec c(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i) c[i] = v[piv_[i]];
    return c;
}

LinearSpace LinearSpace::sum(const LinearSpace& o) const {
    if (o.d_ != d_) fail(ErrorKind::Usage, "ambient dimension mismatch");
    LinearSpace s = *this;
    s.insert_all(o.rows_);
    return s;
}

LinearSpace LinearSpace::intersect(const LinearSpace& o) const {
    if (o.d_ != d_) fail(ErrorKind::Usage, "ambient dimension mismatch");
    // Zassenhaus: rows (u, u) and (w, 0); rows with vanishing left half span the meet.
    LinearSpace z(2 * d_);
    for (const auto& u : rows_) {
        Vec r(2 * d_);
        std::copy(u.begin(), u.end(), r.begin());
        std::copy(u.begin(), u.end(), r.begin() + d_);
        z.insert(std::move(r));
    }
    for (const auto& w : o.rows_) {
        Vec r(2 * d_);
        std::copy(w.begin(), w.end(), r.begin());
        z.insert(std::move(r));
    }
    LinearSpace out(d_);
    for (size_t i = 0; i < z.rows_.size(); ++i)
        if (z.piv_[i] >= d_) out.insert(Vec(z.rows_[i].begin() + d_, z.rows_[i].end()));
    return out;
}

int LinearSpace::quotient_dim(const LinearSpace& sub) const {
    if (!contains(sub)) fail(ErrorKind::Usage, "quotient by a space that is not a subspace");
    return dim() - sub.dim();
}

LinearSpace LinearSpace::zero_on(const std::vector<int>& cols) const {
    std::vector<Vec> restricted;
    restricted.reserve(rows_.size());
    for (const auto& r : rows_) {
        Vec x(cols.size());
        for (size_t k = 0; k < cols.size(); ++k) x[k] = r[cols[k]];
        restricted.push_back(std::move(x));
    }
    LinearSpace out(d_);
    for (const auto& c : left_kernel(restricted)) {
        Vec v(d_);
        for (size_t i = 0; i < rows_.size(); ++i) axpy(v, c[i], rows_[i]);
        out.insert(std::move(v));
    }
    return out;
}

LinearSpace LinearSpace::project(const std::vector<int>& cols) const {
    LinearSpace out(static_cast<int>(cols.size()));
    for (const auto& r : rows_) {
        Vec x(cols.size());
        for (size_t k = 0; k < cols.size(); ++k) x[k] = r[cols[k]];
        out.insert(std::move(x));
    }
    return out;
}

LinearSpace span(int ambient, const std::vector<Vec>& vectors) {
    return LinearSpace::span(ambient, vectors);
}

namespace {

// Tags each row with a unit vector so eliminations record their combinations.
LinearSpace tagged(const std::vector<Vec>& rows, int d) {
    const int m = static_cast<int>(rows.size());
    LinearSpace s(d + m);
    for (int k = 0; k < m; ++k) {
        if (static_cast<int>(rows[k].size()) != d) fail(ErrorKind::Usage, "ragged row list");
        Vec r(d + m);
        std::copy(rows[k].begin(), rows[k].end(), r.begin());
        r[d + k] = 1;
        s.insert(std::move(r));
    }
    return s;
}

}  // namespace

std::optional<Vec> solve_in_span(const std::vector<Vec>& gens, const Vec& target) {
    const int d = static_cast<int>(target.size());
    const int m = static_cast<int>(gens.size());
    LinearSpace s = tagged(gens, d);
    Vec t(d + m);
    std::copy(target.begin(), target.end(), t.begin());
    t = s.reduce(std::move(t));
    for (int k = 0; k < d; ++k)
        if (sgn(t[k]) != 0) return std::nullopt;
    Vec c(m);
    for (int k = 0; k < m; ++k) c[k] = -t[d + k];
    return c;
}

std::vector<Vec> left_kernel(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    const int d = static_cast<int>(rows.front().size());
    LinearSpace s = tagged(rows, d);
    std::vector<Vec> out;
    for (size_t i = 0; i < s.rows().size(); ++i)
        if (s.pivots()[i] >= d) out.emplace_back(s.rows()[i].begin() + d, s.rows()[i].end());
    return out;
}

std::vector<Vec> nullspace(const std::vector<Vec>& rows, int ncols) {
    LinearSpace s = LinearSpace::span(ncols, rows);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : s.pivots()) is_pivot[p] = true;
    std::vector<Vec> out;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        Vec x(ncols);
        x[f] = 1;
        for (size_t i = 0; i < s.rows().size(); ++i) x[s.pivots()[i]] = -s.rows()[i][f];
        out.push_back(std::move(x));
    }
    return out;
}

int rank(const std::vector<Vec>& rows, int ncols) { return LinearSpace::span(ncols, rows).dim(); }

}  // namespace starforge
