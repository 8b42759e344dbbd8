#include "starforge/deform.hpp"

#include "starforge/compare.hpp"
#include "starforge/errors.hpp"

#include <random>

namespace starforge {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

std::vector<Vec> times_rows(const Frame& f, const Vec& g, const std::vector<Vec>& rows) {
    std::vector<Vec> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(f.mul(g, r));
    return out;
}

// Star vector into a deformation frame with the same levels, as an x-free element.
Vec embed_x_free(const Frame& fd, const Frame& fs, const Vec& v) {
    Vec r = fd.zero();
    for (int i = 0; i < fs.n(); ++i)
        for (int b = 0; b < std::min(fs.level(i), fd.level(i)); ++b) r[fd.index(i, 0, b)] = v[fs.index(i, 0, b)];
    return r;
}

std::vector<int> x_columns(const Frame& f) {
    return f.columns_where([](int, int a, int) { return a >= 1; });
}

BiPoly theta_raw(const BiPoly& mu, const BiPoly& f) {
    const int N = f.trunc();
    const BiPoly mt = mu.resized_t(N).shift_t(1);
    BiPoly out = f;
    BiPoly power = BiPoly::monomial(0, 0, f.xdeg(), N);
    BiPoly deriv = f;
    Scalar fact = 1;
    for (int m = 1; m < N; ++m) {
        power = power * mt;
        deriv = deriv.derivative_x();
        fact *= m;
        if (deriv.is_zero() || power.is_zero()) break;
        out += (power * deriv) * (Scalar(1) / fact);
    }
    return out;
}

void check_theta(const ThetaAutomorphism& a) {
    if (a.p < 1) fail(ErrorKind::Usage, "theta needs p >= 1");
    if (a.mu.trunc() != a.p) fail(ErrorKind::Usage, "mu must be truncated at t^p");
}

}  // namespace

Presentation make_product_deformation(const Presentation& star, int xdeg) {
    if (!star.is_star()) fail(ErrorKind::Usage, "product deformations start from a star");
    if (xdeg < 1) fail(ErrorKind::Usage, "x-degree bound must be positive");
    const Frame fs = star.frame();
    const Frame fd(xdeg, star.q());
    std::vector<Vec> rows;
    for (const auto& row : star.basis().rows()) {
        Vec v = embed_x_free(fd, fs, row);
        for (int a = 0; a < xdeg; ++a) {
            rows.push_back(v);
            v = fd.mul(v, fd.xvar());
        }
    }
    return Presentation::from_vectors(fd, rows);
}

bool curve_ideal_generated(const Presentation& d) {
    const Frame& f = d.frame();
    const Frame hf = d.headroom(1).frame();
    auto at_c = f.columns_where([](int, int, int b) { return b == 0; });
    const LinearSpace ideal = d.basis().zero_on(at_c);
    std::vector<Vec> gens{f.pi()};
    for (int i = 0; i < d.n(); ++i)
        for (int j = 0; j < d.n(); ++j)
            if (i != j) gens.push_back(f.transfer(pair_generator(d, i, j).v, hf));
    LinearSpace span(f.dim());
    for (const auto& g : gens) span.insert_all(times_rows(f, g, d.basis().rows()));
    return span == ideal;
}

DeformExtension extend_deformation(const Presentation& d, const ExtensionStep& step) {
    DeformExtension out;
    out.report = quotient(d, step);
    if (out.report.monomial_basis) out.completion = extend_star(d, step);
    return out;
}

BasicDecomposition is_basic(const Presentation& d, const MultiGerm& v, const std::vector<int>& order) {
    if (v.size() != d.n() || static_cast<int>(order.size()) != d.n())
        fail(ErrorKind::Usage, "element and order must have one entry per component");
    if (!d.member(v)) fail(ErrorKind::Usage, "element " + to_string(v) + " is not in the algebra");
    BasicDecomposition r;
    r.order = order;
    r.basic = true;
    for (int i = 0; i < d.n() && r.basic; ++i) {
        const BiPoly& c = v[i];
        const int m = order[i];
        if (m < 1) fail(ErrorKind::Usage, "orders must be positive");
        for (int b = 0; b < std::min(m, c.trunc()) && r.basic; ++b)
            for (int a = 1; a < c.xdeg(); ++a)
                if (sgn(c.at(a, b)) != 0) {
                    r.basic = false;
                    r.component = i;
                    r.xpow = a;
                    r.tpow = b;
                    r.coefficient = c.at(a, b);
                    break;
                }
        TruncSeries p(m);
        for (int b = 0; b < std::min(m, c.trunc()); ++b) p[b] = c.at(0, b);
        r.P.push_back(std::move(p));
    }
    if (!r.basic) r.P.clear();
    return r;
}

std::vector<int> basic_orders(const Presentation& d, const MultiGerm& v) {
    if (!d.member(v)) fail(ErrorKind::Usage, "element " + to_string(v) + " is not in the algebra");
    std::vector<int> out;
    for (int i = 0; i < v.size(); ++i) {
        const BiPoly& c = v[i];
        int m = c.trunc();
        for (int b = 0; b < c.trunc() && m == c.trunc(); ++b)
            for (int a = 1; a < c.xdeg(); ++a)
                if (sgn(c.at(a, b)) != 0) {
                    m = b;
                    break;
                }
        out.push_back(m);
    }
    return out;
}

TruncSeries check_basic_completion(const Presentation& d, const MultiGerm& v) {
    const int n = d.n();
    std::vector<int> order = d.q();
    std::vector<int> head(order.begin(), order.end());
    head[n - 1] = 1;
    const BasicDecomposition first = is_basic(d, v, head);
    if (!first.basic && first.component < n - 1)
        fail(ErrorKind::Usage, "coordinate " + idx(first.component) + " is not basic at its level");
    const BasicDecomposition all = is_basic(d, v, order);
    if (!all.basic)
        fail(ErrorKind::Contradiction, "coordinate " + idx(n - 1) + " has x^" + std::to_string(all.xpow) + " t^" +
                                           std::to_string(all.tpow) + " coefficient " + to_string(all.coefficient) +
                                           " below its level");
    return all.P.back();
}

MultiGerm reciprocal_element(const Presentation& d, const MultiGerm& v) {
    if (v.size() != d.n()) fail(ErrorKind::Usage, "element has the wrong number of components");
    if (!d.member(v)) fail(ErrorKind::Usage, "element " + to_string(v) + " is not in the algebra");
    std::vector<int> m;
    int total = 0;
    for (int i = 0; i < d.n(); ++i) {
        const int val = v[i].t_valuation();
        if (val >= v[i].trunc() || val >= d.q()[i])
            fail(ErrorKind::Usage, "coordinate " + idx(i) + " is not a unit times a power of t below the level");
        if (v[i].t_coeff(val)[0] == 0)
            fail(ErrorKind::Usage, "coordinate " + idx(i) + " does not factor as a unit times a power of t");
        m.push_back(val);
        total += val;
    }
    MultiGerm out;
    for (int i = 0; i < d.n(); ++i) {
        const int qi = d.q()[i];
        const int shift = total - m[i];
        BiPoly c(d.xdeg(), qi);
        if (shift < qi) {
            const BiPoly alpha = v[i].divide_t(m[i]).resized_t(qi - shift);
            c = alpha.inverse().resized_t(qi).shift_t(shift);
        }
        out.c.push_back(std::move(c));
    }
    if (!d.member(out))
        fail(ErrorKind::Contradiction, "reciprocal " + to_string(out) + " of " + to_string(v) + " is not a member");
    return out;
}

bool ExtractReport::ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

ExtractReport extract_star_report(const Presentation& d) {
    const Frame& fd = d.frame();
    const Frame fs(1, d.q());
    const LinearSpace slice = d.basis().zero_on(x_columns(fd));
    std::vector<Vec> rows;
    for (const auto& r : slice.rows()) {
        Vec v = fs.zero();
        for (int i = 0; i < d.n(); ++i)
            for (int b = 0; b < d.q()[i]; ++b) v[fs.index(i, 0, b)] = r[fd.index(i, 0, b)];
        rows.push_back(std::move(v));
    }
    ExtractReport rep;
    rep.star = Presentation::from_vectors(fs, rows);
    const Presentation& s = rep.star;

    const ValidationReport val = validate(s);
    const CheckEntry* bad = val.first_failure();
    rep.checks.push_back({"valid star", val.valid(), bad ? bad->name + ": " + bad->witness : ""});
    if (!val.valid()) return rep;
    const FiberReport fib = fiber_algebra(s);
    rep.checks.push_back({"oblate", fib.oblate, "cotangent dimension " + std::to_string(fib.cotangent_dim)});
    const bool same = raw_spectrum(s) == raw_spectrum(d);
    rep.checks.push_back({"spectrum", same, same ? "" : "extracted spectrum differs"});
    if (!fib.oblate) return rep;

    const Presentation hd = d.headroom(1);
    const Frame sh = s.headroom(1).frame();
    for (int i = 0; i < d.n(); ++i) {
        const SubstarIdeal si = substar_ideal_report(s, {i});
        const Vec g = embed_x_free(hd.frame(), sh, si.generator);
        const LinearSpace span = LinearSpace::span(hd.frame().dim(), times_rows(hd.frame(), g, hd.basis().rows()));
        const LinearSpace vanishing = hd.basis().zero_on(hd.frame().component_columns(i));
        const bool eq = si.equal && span == vanishing;
        rep.checks.push_back({"t-only generator of component " + idx(i), eq,
                              eq ? "" : "span " + std::to_string(span.dim()) + " vs ideal " +
                                            std::to_string(vanishing.dim())});
    }

    // Filtrations of the maximal ideal and of each component ideal.
    std::vector<std::vector<MultiGerm>> ideals;
    const auto phi = plane_branches(s);
    {
        std::vector<TruncSeries> t_series, y_series;
        for (int i = 0; i < s.n(); ++i) {
            t_series.push_back(TruncSeries::monomial(1, s.q()[i] + 1));
            y_series.push_back(phi[i]);
        }
        ideals.push_back({MultiGerm::from_series(t_series), MultiGerm::from_series(y_series)});
    }
    for (int i = 0; i < s.n(); ++i) ideals.push_back({sh.germ(substar_ideal_report(s, {i}).generator)});
    bool filt = true;
    std::string why;
    for (size_t k = 0; k < ideals.size() && filt; ++k) {
        const FiltrationReport fr = ideal_filtration(s, ideals[k]);
        if (!fr.ok()) {
            filt = false;
            why = k == 0 ? "maximal ideal" : "ideal of component " + idx(static_cast<int>(k) - 1);
        }
    }
    rep.checks.push_back({"filtrations", filt, why});
    return rep;
}

Presentation extract_star(const Presentation& d) {
    ExtractReport r = extract_star_report(d);
    for (const auto& c : r.checks)
        if (!c.ok) fail(ErrorKind::Contradiction, "extracted star fails '" + c.name + "' " + c.witness);
    return r.star;
}

DeformTower random_deform_tower(std::uint64_t seed, int n_max, int p_max, int xdeg) {
    const Tower t = random_tower(seed, n_max, p_max);
    DeformTower out;
    out.base = make_product_deformation(make_congruence_pair_star(t.base_p), xdeg);
    out.star = t.star;
    out.steps = t.steps;
    out.deformation = out.base;
    for (const auto& st : t.steps) {
        ExtensionStep lifted{st.p_new, {}};
        for (const auto& b : st.beta) lifted.beta.push_back(b.resized_x(xdeg));
        DeformExtension e = extend_deformation(out.deformation, lifted);
        if (!e.completion) fail(ErrorKind::Contradiction, "x-free step has no free completion");
        out.deformation = std::move(*e.completion);
    }
    return out;
}

BiPoly theta_apply(const ThetaAutomorphism& a, const BiPoly& f) {
    check_theta(a);
    if (f.trunc() != a.p + 1 || f.xdeg() != a.mu.xdeg())
        fail(ErrorKind::Usage, "theta acts on t-truncation p+1 with matching x-degree bound");
    return theta_raw(a.mu, f);
}

ThetaAutomorphism theta_inverse(const ThetaAutomorphism& a) {
    check_theta(a);
    BiPoly nu = -a.mu;
    for (int k = 0; k <= a.p; ++k) nu = -theta_raw(nu, a.mu);
    return {a.p, nu};
}

RibbonElement ribbon_mul(const RibbonElement& a, const RibbonElement& b) {
    RibbonElement r;
    r.g = xpoly_mul(a.g, b.g);
    r.h = xpoly_mul(a.g, b.h);
    axpy(r.h, 1, xpoly_mul(a.h, b.g));
    return r;
}

RibbonElement ribbon_quotient(int p, const BiPoly& a1, const BiPoly& a2) {
    if (p < 1) fail(ErrorKind::Usage, "ribbon quotient needs p >= 1");
    if (a1.trunc() != p + 1 || a2.trunc() != p + 1 || a1.xdeg() != a2.xdeg())
        fail(ErrorKind::Usage, "pair coordinates must be truncated at t^(p+1) with equal x-degree bounds");
    for (int b = 0; b < p; ++b)
        if (a1.t_coeff(b) != a2.t_coeff(b))
            fail(ErrorKind::Usage, "coordinates differ at t^" + std::to_string(b) + ", below t^p");
    RibbonElement r;
    r.g = a1.t_coeff(0);
    r.h = a2.t_coeff(p);
    axpy(r.h, -1, a1.t_coeff(p));
    return r;
}

CocycleReport induced_cocycle(int p, const BiPoly& mu1, const BiPoly& mu2) {
    if (p < 1) fail(ErrorKind::Usage, "cocycle needs p >= 1");
    if (mu1.trunc() != p || mu2.trunc() != p || mu1.xdeg() != mu2.xdeg())
        fail(ErrorKind::Usage, "mu must be truncated at t^p with equal x-degree bounds");
    const int D = mu1.xdeg();
    for (int b = 0; b + 1 < p; ++b)
        if (mu1.t_coeff(b) != mu2.t_coeff(b))
            fail(ErrorKind::Usage, "mu1 and mu2 differ at t^" + std::to_string(b) + ", below t^(p-1)");
    CocycleReport r;
    r.tau = mu2.t_coeff(p - 1);
    axpy(r.tau, -1, mu1.t_coeff(p - 1));

    const ThetaAutomorphism th1{p, mu1}, th2{p, mu2};
    std::vector<std::pair<BiPoly, BiPoly>> spanning;
    for (int e = 0; e < D; ++e) {
        for (int k = 0; k <= p; ++k) {
            BiPoly m = BiPoly::monomial(e, k, D, p + 1);
            spanning.emplace_back(m, m);
        }
        spanning.emplace_back(BiPoly::monomial(e, p, D, p + 1), BiPoly(D, p + 1));
    }
    r.ok = true;
    for (const auto& [a1, a2] : spanning) {
        ++r.checked;
        const RibbonElement lhs = ribbon_quotient(p, theta_apply(th1, a1), theta_apply(th2, a2));
        RibbonElement rhs = ribbon_quotient(p, a1, a2);
        axpy(rhs.h, 1, xpoly_mul(r.tau, xpoly_derivative(rhs.g)));
        if (!(lhs == rhs)) {
            r.ok = false;
            r.failure = "pair (" + to_string(a1) + ", " + to_string(a2) + ")";
            break;
        }
    }
    return r;
}

}  // namespace starforge
