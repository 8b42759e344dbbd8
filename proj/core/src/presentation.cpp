#include "starforge/presentation.hpp"

#include "starforge/errors.hpp"

namespace starforge {

Frame::Frame(int xdeg, std::vector<int> levels) : d_(xdeg), q_(std::move(levels)) {
    if (d_ < 1) fail(ErrorKind::Usage, "x-degree bound must be positive");
    if (q_.empty()) fail(ErrorKind::Usage, "at least one component is required");
    for (int q : q_) {
        if (q < 1) fail(ErrorKind::Usage, "levels must be positive");
        off_.push_back(dim_);
        dim_ += d_ * q;
    }
}

Vec Frame::one() const {
    Vec v = zero();
    for (int i = 0; i < n(); ++i) v[index(i, 0, 0)] = 1;
    return v;
}

Vec Frame::pi() const {
    Vec v = zero();
    for (int i = 0; i < n(); ++i)
        if (q_[i] > 1) v[index(i, 0, 1)] = 1;
    return v;
}

Vec Frame::xvar() const {
    Vec v = zero();
    if (d_ > 1)
        for (int i = 0; i < n(); ++i) v[index(i, 1, 0)] = 1;
    return v;
}

Vec Frame::unit(int i, int a, int b) const {
    Vec v = zero();
    if (a < d_ && b < q_[i]) v[index(i, a, b)] = 1;
    return v;
}

Vec Frame::mul(const Vec& u, const Vec& v) const {
    Vec r = zero();
    thread_local mpq_class tmp;
    for (int i = 0; i < n(); ++i) {
        const int q = q_[i];
        for (int a1 = 0; a1 < d_; ++a1)
            for (int b1 = 0; b1 < q; ++b1) {
                const Scalar& x = u[index(i, a1, b1)];
                if (sgn(x) == 0) continue;
                for (int a2 = 0; a1 + a2 < d_; ++a2)
                    for (int b2 = 0; b1 + b2 < q; ++b2) {
                        const Scalar& y = v[index(i, a2, b2)];
                        if (sgn(y) == 0) continue;
                        mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
                        Scalar& z = r[index(i, a1 + a2, b1 + b2)];
                        mpq_add(z.get_mpq_t(), z.get_mpq_t(), tmp.get_mpq_t());
                    }
            }
    }
    return r;
}

Vec Frame::power(const Vec& u, int k) const {
    Vec r = one();
    for (int j = 0; j < k; ++j) r = mul(r, u);
    return r;
}

BiPoly Frame::component(const Vec& v, int i) const {
    BiPoly p(d_, q_[i]);
    for (int a = 0; a < d_; ++a)
        for (int b = 0; b < q_[i]; ++b) p.at(a, b) = v[index(i, a, b)];
    return p;
}

MultiGerm Frame::germ(const Vec& v) const {
    MultiGerm g;
    for (int i = 0; i < n(); ++i) g.c.push_back(component(v, i));
    return g;
}

Vec Frame::flatten(const MultiGerm& g) const {
    if (g.size() != n())
        fail(ErrorKind::Usage, "germ has " + std::to_string(g.size()) + " components, expected " +
                                   std::to_string(n()));
    Vec v = zero();
    for (int i = 0; i < n(); ++i) {
        const BiPoly& c = g[i];
        if (c.xdeg() != d_) fail(ErrorKind::Usage, "germ x-degree bound does not match the frame");
        for (int a = 0; a < d_; ++a)
            for (int b = 0; b < std::min(c.trunc(), q_[i]); ++b) v[index(i, a, b)] = c.at(a, b);
    }
    return v;
}

Vec Frame::transfer(const Vec& v, const Frame& from) const {
    if (from.n() != n() || from.d_ != d_) fail(ErrorKind::Usage, "frame shape mismatch");
    Vec r = zero();
    for (int i = 0; i < n(); ++i)
        for (int a = 0; a < d_; ++a)
            for (int b = 0; b < std::min(q_[i], from.q_[i]); ++b) r[index(i, a, b)] = v[from.index(i, a, b)];
    return r;
}

int Frame::t_valuation(const Vec& v, int i) const {
    for (int b = 0; b < q_[i]; ++b)
        for (int a = 0; a < d_; ++a)
            if (sgn(v[index(i, a, b)]) != 0) return b;
    return q_[i];
}

bool Frame::component_zero(const Vec& v, int i) const { return t_valuation(v, i) == q_[i]; }

std::vector<int> Frame::columns_where(const std::function<bool(int, int, int)>& pred) const {
    std::vector<int> cols;
    for (int i = 0; i < n(); ++i)
        for (int a = 0; a < d_; ++a)
            for (int b = 0; b < q_[i]; ++b)
                if (pred(i, a, b)) cols.push_back(index(i, a, b));
    return cols;
}

std::vector<int> Frame::component_columns(int i) const {
    return columns_where([i](int j, int, int) { return j == i; });
}

Frame Frame::raised(int h) const { return raised(std::vector<int>(q_.size(), h)); }

Frame Frame::raised(const std::vector<int>& extra) const {
    std::vector<int> q = q_;
    for (size_t i = 0; i < q.size(); ++i) q[i] += extra.at(i);
    return Frame(d_, std::move(q));
}

Presentation::Presentation(Frame frame, LinearSpace basis) : frame_(std::move(frame)), basis_(std::move(basis)) {
    if (basis_.ambient() != frame_.dim()) fail(ErrorKind::Usage, "basis does not live in the frame");
}

Presentation Presentation::from_vectors(Frame frame, const std::vector<Vec>& vectors) {
    LinearSpace s = LinearSpace::span(frame.dim(), vectors);
    return Presentation(std::move(frame), std::move(s));
}

Presentation Presentation::from_germs(int xdeg, std::vector<int> levels, const std::vector<MultiGerm>& gens) {
    Frame f(xdeg, std::move(levels));
    std::vector<Vec> vs;
    for (const auto& g : gens) vs.push_back(f.flatten(g));
    return from_vectors(std::move(f), vs);
}

LinearSpace Presentation::lifted(const Frame& target) const {
    if (target.n() != n() || target.xdeg() != xdeg()) fail(ErrorKind::Usage, "frame shape mismatch");
    for (int i = 0; i < n(); ++i)
        if (target.level(i) < q()[i]) fail(ErrorKind::Usage, "lift to a lower level");
    LinearSpace s(target.dim());
    for (const auto& r : basis_.rows()) s.insert(target.transfer(r, frame_));
    for (int i = 0; i < n(); ++i)
        for (int a = 0; a < xdeg(); ++a)
            for (int b = q()[i]; b < target.level(i); ++b) s.insert(target.unit(i, a, b));
    return s;
}

Presentation Presentation::at_levels(const std::vector<int>& levels) const {
    Frame f(xdeg(), levels);
    LinearSpace s = lifted(f);
    return Presentation(std::move(f), std::move(s));
}

Presentation Presentation::headroom(int h) const {
    std::vector<int> lv = q();
    for (auto& x : lv) x += h;
    return at_levels(lv);
}

bool Presentation::member(const MultiGerm& g) const { return basis_.member(frame_.flatten(g)); }

}  // namespace starforge
