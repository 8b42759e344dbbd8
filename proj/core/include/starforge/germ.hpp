#pragma once

#include "starforge/bipoly.hpp"

#include <vector>

namespace starforge {

// n-tuple of components with independent truncations. Star germs use xdeg 1.
struct MultiGerm {
    std::vector<BiPoly> c;

    MultiGerm() = default;
    explicit MultiGerm(std::vector<BiPoly> comps) : c(std::move(comps)) {}
    static MultiGerm from_series(const std::vector<TruncSeries>& s);

    int size() const { return static_cast<int>(c.size()); }
    const BiPoly& operator[](int i) const { return c[i]; }
    BiPoly& operator[](int i) { return c[i]; }
    TruncSeries series(int i) const { return c[i].to_series(); }

    friend bool operator==(const MultiGerm& a, const MultiGerm& b) { return a.c == b.c; }
    friend bool operator!=(const MultiGerm& a, const MultiGerm& b) { return !(a == b); }
};

MultiGerm operator*(const MultiGerm& a, const MultiGerm& b);
MultiGerm operator+(const MultiGerm& a, const MultiGerm& b);
MultiGerm operator-(const MultiGerm& a, const MultiGerm& b);
MultiGerm operator*(const Scalar& s, const MultiGerm& a);

std::string to_string(const MultiGerm& g);

}  // namespace starforge
