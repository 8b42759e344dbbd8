#include "starforge/germ.hpp"

#include "starforge/errors.hpp"

namespace starforge {

MultiGerm MultiGerm::from_series(const std::vector<TruncSeries>& s) {
    MultiGerm g;
    for (const auto& x : s) g.c.push_back(BiPoly::from_series(x, 1));
    return g;
}

namespace {

void check_size(const MultiGerm& a, const MultiGerm& b) {
    if (a.size() != b.size()) fail(ErrorKind::Usage, "component count mismatch");
}

}  // namespace

MultiGerm operator*(const MultiGerm& a, const MultiGerm& b) {
    check_size(a, b);
    MultiGerm r;
    for (int i = 0; i < a.size(); ++i) r.c.push_back(a[i] * b[i]);
    return r;
}

MultiGerm operator+(const MultiGerm& a, const MultiGerm& b) {
    check_size(a, b);
    MultiGerm r;
    for (int i = 0; i < a.size(); ++i) r.c.push_back(a[i] + b[i]);
    return r;
}

MultiGerm operator-(const MultiGerm& a, const MultiGerm& b) {
    check_size(a, b);
    MultiGerm r;
    for (int i = 0; i < a.size(); ++i) r.c.push_back(a[i] - b[i]);
    return r;
}

MultiGerm operator*(const Scalar& s, const MultiGerm& a) {
    MultiGerm r = a;
    for (auto& c : r.c) c *= s;
    return r;
}

std::string to_string(const MultiGerm& g) {
    std::string out = "(";
    for (int i = 0; i < g.size(); ++i) {
        if (i) out += ", ";
        out += to_string(g[i]);
    }
    return out + ")";
}

}  // namespace starforge
