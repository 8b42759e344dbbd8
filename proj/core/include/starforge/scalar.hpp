#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace starforge {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

// Canonical "p/q" form; the denominator is always written, even when it is 1.
std::string to_string(const Scalar& s);
// num/den in lowest terms; mpq_class(num, den) alone does not reduce.
Scalar frac(long num, long den);
Scalar parse_scalar(std::string_view text);

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }
bool is_zero(const Vec& v);

// v += c * w, skipping zero entries of w.
void axpy(Vec& v, const Scalar& c, const Vec& w);

}  // namespace starforge
