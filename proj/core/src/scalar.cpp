#include "starforge/scalar.hpp"

#include "starforge/errors.hpp"

#include <cctype>

namespace starforge {

std::string to_string(const Scalar& s) {
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar frac(long num, long den) {
    if (den == 0) fail(ErrorKind::Usage, "zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    std::string_view num = text, den;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (!all_digits(den)) fail(ErrorKind::Usage, "bad scalar '" + std::string(text) + "'");
    }
    std::string_view digits = num;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
    if (!all_digits(digits)) fail(ErrorKind::Usage, "bad scalar '" + std::string(text) + "'");

    mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
    mpz_class d(den.empty() ? std::string("1") : std::string(den), 10);
    if (d == 0) fail(ErrorKind::Usage, "zero denominator in '" + std::string(text) + "'");
    Scalar q(n, d);
    q.canonicalize();
    return q;
}

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

void axpy(Vec& v, const Scalar& c, const Vec& w) {
    thread_local mpq_class tmp;
    if (sgn(c) == 0) return;
    for (size_t k = 0; k < w.size(); ++k) {
        if (sgn(w[k]) == 0) continue;
        mpq_mul(tmp.get_mpq_t(), c.get_mpq_t(), w[k].get_mpq_t());
        mpq_add(v[k].get_mpq_t(), v[k].get_mpq_t(), tmp.get_mpq_t());
    }
}

}  // namespace starforge
