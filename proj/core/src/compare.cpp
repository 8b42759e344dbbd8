#include "starforge/compare.hpp"

#include "starforge/errors.hpp"

#include <algorithm>
#include <limits>

namespace starforge {

namespace {

std::vector<Vec> times_rows(const Frame& f, const Vec& g, const std::vector<Vec>& rows) {
    std::vector<Vec> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(f.mul(g, r));
    return out;
}

std::vector<int> low_columns(const Frame& f, int j, int below) {
    return f.columns_where([&](int i, int, int b) { return i == j && b < below; });
}

// sum_k c_k pi^k in frame f.
Vec series_in_pi(const Frame& f, const TruncSeries& c) {
    Vec r = f.zero();
    Vec pw = f.one();
    for (int k = 0; k < c.trunc(); ++k) {
        if (sgn(c[k]) != 0) axpy(r, c[k], pw);
        pw = f.mul(pw, f.pi());
        if (is_zero(pw)) break;
    }
    return r;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Identical: return "identical";
        case Verdict::StrictlyIncluded: return "strictly-included";
        case Verdict::Incomparable: return "incomparable";
    }
    return "?";
}

ComparisonReport compare_stars(const Presentation& a, const Presentation& b) {
    if (a.n() != b.n())
        fail(ErrorKind::Usage, "cannot compare a " + std::to_string(a.n()) + "-star with a " +
                                   std::to_string(b.n()) + "-star");
    if (a.xdeg() != b.xdeg()) fail(ErrorKind::Usage, "x-degree bounds differ");
    const int n = a.n();
    std::vector<int> levels(n);
    for (int i = 0; i < n; ++i) levels[i] = std::max(a.q()[i], b.q()[i]);
    const Frame f(a.xdeg(), levels);
    const LinearSpace la = a.lifted(f);
    const LinearSpace lb = b.lifted(f);

    ComparisonReport r;
    r.spectrum_a = raw_spectrum(a);
    r.spectrum_b = raw_spectrum(b);
    r.a_in_b = lb.contains(la);
    r.b_in_a = la.contains(lb);
    r.spectra_equal = r.spectrum_a == r.spectrum_b;
    r.spans_equal = la == lb;
    if (r.a_in_b && r.b_in_a) {
        r.verdict = Verdict::Identical;
        r.dominance = true;
    } else if (r.a_in_b || r.b_in_a) {
        r.verdict = Verdict::StrictlyIncluded;
        r.smaller = r.a_in_b ? 0 : 1;
        const Spectrum& small = r.a_in_b ? r.spectrum_a : r.spectrum_b;
        const Spectrum& large = r.a_in_b ? r.spectrum_b : r.spectrum_a;
        r.dominance = true;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (small[i][j] < large[i][j]) r.dominance = false;
                if (small[i][j] > large[i][j] && !r.gap) r.gap = std::make_pair(i, j);
            }
    }
    return r;
}

NonflatnessWitness nonflatness_witness(const Presentation& sub, const Presentation& sup) {
    const ComparisonReport cmp = compare_stars(sub, sup);
    if (cmp.verdict != Verdict::StrictlyIncluded || cmp.smaller != 0)
        fail(ErrorKind::NotApplicable, std::string("first star is not strictly inside the second (verdict ") +
                                           verdict_name(cmp.verdict) + ")");
    const int n = sub.n();
    int i = 0;
    while (i < n && sup.q()[i] >= sub.q()[i]) ++i;
    if (i == n) fail(ErrorKind::NotApplicable, "no component has a level gap");

    NonflatnessWitness w;
    w.component = i;
    w.q_sup = sup.q()[i];
    w.q_sub = sub.q()[i];

    const SubstarIdeal ideal = substar_ideal(sub, {i});
    const Frame hf = sub.headroom(1).frame();
    const Vec u = ideal.generator;
    Vec v = hf.zero();
    v[hf.index(i, 0, w.q_sup)] = 1;
    w.u = hf.germ(u);
    w.v = hf.germ(v);
    w.product_zero = is_zero(hf.mul(u, v)) && hf.component_zero(u, i);
    w.phi = TruncSeries::monomial(w.q_sup, w.q_sub);
    w.phi_nonzero = !w.phi.is_zero();

    // Kernel of b -> b u, at levels deep enough that b_j u_j = 0 forces b_j = 0 mod t^{q_j}.
    std::vector<int> levels(n);
    for (int j = 0; j < n; ++j) {
        if (j == i) {
            levels[j] = sub.q()[j] + 1;
            continue;
        }
        const int val = hf.t_valuation(u, j);
        if (val >= hf.level(j)) return w;  // u vanishes on another component: not a generator
        levels[j] = sub.q()[j] + val;
    }
    const Frame g(1, levels);
    const Vec ug = g.transfer(u, hf);
    const LinearSpace b = sub.lifted(g);
    const std::vector<Vec> images = times_rows(g, ug, b.rows());
    w.well_defined = true;
    const auto low = low_columns(g, i, w.q_sub);
    for (const Vec& c : left_kernel(images)) {
        Vec lam = g.zero();
        for (size_t k = 0; k < c.size(); ++k)
            if (sgn(c[k]) != 0) axpy(lam, c[k], b.rows()[k]);
        for (int col : low)
            if (sgn(lam[col]) != 0) w.well_defined = false;
    }
    return w;
}

bool FiltrationReport::ok() const {
    if (!respans || !length_ok) return false;
    for (const auto& s : steps)
        if (!s.ok()) return false;
    return true;
}

FiltrationReport ideal_filtration(const Presentation& s, const std::vector<MultiGerm>& gens) {
    if (!s.is_star()) fail(ErrorKind::Usage, "ideal filtrations are computed on stars");
    if (gens.empty()) fail(ErrorKind::Usage, "no generators");
    const int n = s.n();
    constexpr int none = std::numeric_limits<int>::max();
    std::vector<int> w(n, none);
    for (const auto& g : gens) {
        if (g.size() != n) fail(ErrorKind::Usage, "generator has the wrong number of components");
        if (!s.member(g)) fail(ErrorKind::Usage, "generator " + to_string(g) + " is not in the algebra");
        if (sgn(g[0].at(0, 0)) != 0) fail(ErrorKind::NotAProperIdeal, "generator " + to_string(g) + " is a unit");
        for (int i = 0; i < n; ++i) {
            const int val = g[i].t_valuation();
            if (val < g[i].trunc()) w[i] = std::min(w[i], val);
        }
    }

    FiltrationReport r;
    std::vector<int> levels(n);
    for (int i = 0; i < n; ++i) levels[i] = w[i] == none ? s.q()[i] : s.q()[i] + w[i] + 1;
    r.frame = Frame(1, levels);
    const Frame& f = r.frame;
    const LinearSpace b = s.lifted(f);

    std::vector<Vec> span_rows;
    for (const auto& g : gens) {
        auto rows = times_rows(f, f.flatten(g), b.rows());
        span_rows.insert(span_rows.end(), rows.begin(), rows.end());
    }
    r.ideal = LinearSpace::span(f.dim(), span_rows);

    LinearSpace cur = r.ideal;
    LinearSpace reassembled(f.dim());
    for (int j = 0; j < n && cur.dim() > 0; ++j) {
        const auto cols = f.component_columns(j);
        LinearSpace next = cur.zero_on(cols);
        if (next == cur) continue;

        int m = 0;
        while (cur.zero_on(low_columns(f, j, m + 1)) == cur) ++m;
        const LinearSpace deep = cur.zero_on(low_columns(f, j, m + 1));
        const LinearSpace at_m = cur.zero_on(low_columns(f, j, m));
        Vec e;
        for (const auto& row : at_m.rows())
            if (!deep.member(row)) {
                e = row;
                break;
            }
        const TruncSeries lead = f.component(e, j).to_series().divide_t(m);
        Vec u = f.mul(e, series_in_pi(f, lead.inverse()));

        FiltrationStep st;
        st.component = j;
        st.level = m;
        st.u = u;
        st.germ = f.germ(u);
        st.ideal = cur;
        st.next = next;
        const LinearSpace ub = LinearSpace::span(f.dim(), times_rows(f, u, b.rows()));
        st.cyclic = ub.sum(next) == cur;
        const Frame hf = s.headroom(1).frame();
        const Vec gen = f.transfer(substar_ideal(s, {j}).generator, hf);
        st.annihilator = true;
        for (const Vec& x : times_rows(f, f.mul(gen, u), b.rows()))
            if (!next.member(x)) {
                st.annihilator = false;
                break;
            }
        st.not_inside = !f.component_zero(u, j);
        st.next_inside = next.zero_on(cols) == next;
        reassembled = reassembled.sum(ub);
        r.steps.push_back(std::move(st));
        cur = std::move(next);
    }
    r.respans = cur.dim() == 0 && reassembled == r.ideal;
    r.length_ok = static_cast<int>(r.steps.size()) <= n;
    return r;
}

std::vector<TruncSeries> plane_branches(const Presentation& s) {
    if (!s.is_star()) fail(ErrorKind::Usage, "plane branches are defined for stars");
    if (embedding_dimension(s) > 2) fail(ErrorKind::NotApplicable, "star is not oblate");
    const Frame hf = s.headroom(1).frame();
    const Vec y = substar_ideal(s, {0}).generator;
    std::vector<TruncSeries> phi;
    for (int i = 0; i < s.n(); ++i) phi.push_back(hf.component(y, i).to_series());
    return phi;
}

Presentation deepen(const Presentation& s, int e, const Scalar& c) {
    if (e < 0) fail(ErrorKind::Usage, "negative depth");
    const auto phi = plane_branches(s);
    int len = 0;
    for (const auto& p : phi) len = std::max(len, p.trunc());
    len = 2 * len + e;
    std::vector<TruncSeries> w;
    for (const auto& p : phi) {
        const TruncSeries y = p.resized(len);
        w.push_back(y.shift(e) + c * (y * y));
    }
    return make_branch_star(w);
}

}  // namespace starforge
