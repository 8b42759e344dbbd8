#include "starforge/build.hpp"

#include "starforge/errors.hpp"

#include <algorithm>

namespace starforge {

namespace {

using Matrix = std::vector<Vec>;

Matrix identity(int d) {
    Matrix m(d, Vec(d));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    const int d = static_cast<int>(a.size());
    Matrix r(d, Vec(b.empty() ? 0 : b.front().size()));
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
            if (!is_zero(a[i][k])) axpy(r[i], a[i][k], b[k]);
    return r;
}

Matrix transpose(const Matrix& a) {
    const int d = static_cast<int>(a.size());
    Matrix r(d, Vec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r[j][i] = a[i][j];
    return r;
}

std::string idx(int i) { return std::to_string(i + 1); }

void check_step_shape(const Presentation& s, const ExtensionStep& step) {
    if (static_cast<int>(step.p_new.size()) != s.n() || static_cast<int>(step.beta.size()) != s.n())
        fail(ErrorKind::Usage, "step must give one order and one unit per existing component");
    for (int i = 0; i < s.n(); ++i) {
        if (step.p_new[i] < 1) fail(ErrorKind::Usage, "contact orders must be positive");
        if (step.beta[i].xdeg() != s.xdeg()) fail(ErrorKind::Usage, "unit x-degree bound does not match");
        if (!step.beta[i].is_unit()) fail(ErrorKind::NotAUnit, "beta_" + idx(i) + " is not a unit");
    }
}

// Reduces (v, 0) modulo rows (w, 0) for w in `kill` and (m_k, -e_k) for the
// chosen basis m of the quotient; what is left is (0, coordinates of v).
class QuotientCoordinates {
public:
    QuotientCoordinates(const LinearSpace& kill, const std::vector<Vec>& basis, int ambient)
        : d_(ambient), r_(static_cast<int>(basis.size())), g_(ambient + r_) {
        for (const auto& w : kill.rows()) {
            Vec v = w;
            v.resize(d_ + r_);
            g_.insert(std::move(v));
        }
        for (int k = 0; k < r_; ++k) {
            Vec v = basis[k];
            v.resize(d_ + r_);
            v[d_ + k] = -1;
            g_.insert(std::move(v));
        }
    }

    Vec operator()(const Vec& v) const {
        Vec w = v;
        w.resize(d_ + r_);
        w = g_.reduce(std::move(w));
        for (int c = 0; c < d_; ++c)
            if (!is_zero(w[c])) fail(ErrorKind::Contradiction, "element outside the quotient's ambient algebra");
        return Vec(w.begin() + d_, w.end());
    }

private:
    int d_, r_;
    LinearSpace g_;
};

}  // namespace

bool QuotientReport::certified() const {
    return top_power_zero && below_top_nonzero && monomial_basis && flat &&
           dim_q == frame.xdeg() * q_n;
}

Frame extension_frame(const Presentation& s, const ExtensionStep& step) {
    check_step_shape(s, step);
    std::vector<int> lv = s.q();
    for (int i = 0; i < s.n(); ++i) lv[i] += step.p_new[i];
    return Frame(s.xdeg(), lv);
}

Vec step_element(const Presentation& s, const ExtensionStep& step) {
    const Frame f = extension_frame(s, step);
    Vec u = f.zero();
    for (int i = 0; i < s.n(); ++i) {
        const BiPoly& b = step.beta[i];
        for (int a = 0; a < f.xdeg(); ++a)
            for (int k = 0; k < b.trunc() && k + step.p_new[i] < f.level(i); ++k)
                u[f.index(i, a, k + step.p_new[i])] = b.at(a, k);
    }
    return u;
}

Vec nondegeneracy_function(const Presentation& s, const ExtensionStep& step) {
    check_step_shape(s, step);
    const std::vector<Scalar> lam = lambda(s);
    Vec sum(s.xdeg());
    for (int i = 0; i < s.n(); ++i) {
        Vec along_c(s.xdeg());
        for (int a = 0; a < s.xdeg(); ++a) along_c[a] = step.beta[i].at(a, 0);
        axpy(sum, lam[i], xpoly_inverse(along_c));
    }
    return sum;
}

Scalar nondegeneracy(const Presentation& s, const ExtensionStep& step) {
    return nondegeneracy_function(s, step).front();
}

QuotientReport analyze_quotient(const Presentation& s, const ExtensionStep& step) {
    QuotientReport r;
    r.frame = extension_frame(s, step);
    const Frame& f = r.frame;
    r.b_ext = s.lifted(f);
    r.u = step_element(s, step);
    if (!r.b_ext.member(r.u))
        fail(ErrorKind::DegenerateInput, "step element " + to_string(f.germ(r.u)) + " is not in the algebra");
    r.u_span = LinearSpace(f.dim());
    for (const auto& b : r.b_ext.rows()) r.u_span.insert(f.mul(r.u, b));
    r.dim_q = r.b_ext.dim() - r.u_span.dim();
    for (int p : step.p_new) r.q_n += p;
    r.nondegeneracy = nondegeneracy_function(s, step);

    const Vec pi = f.pi();
    {
        Vec pw = f.one();
        int k = 0;
        const int cap = *std::max_element(f.levels().begin(), f.levels().end());
        while (!r.u_span.member(pw) && k <= cap) {
            pw = f.mul(pw, pi);
            ++k;
        }
        r.nilpotency = k;
    }
    r.top_power_zero = r.nilpotency <= r.q_n;
    r.below_top_nonzero = r.nilpotency >= r.q_n;

    std::vector<Vec> monomials;
    {
        Vec xa = f.one();
        for (int a = 0; a < f.xdeg(); ++a) {
            Vec m = xa;
            for (int k = 0; k < r.q_n; ++k) {
                monomials.push_back(m);
                m = f.mul(m, pi);
            }
            xa = f.mul(xa, f.xvar());
        }
    }
    {
        LinearSpace acc = r.u_span;
        bool independent = true;
        for (const auto& m : monomials) independent = acc.insert(m) && independent;
        r.monomial_basis = independent && acc.dim() == r.b_ext.dim();
    }

    // pi acting on Q, in a basis drawn from B_ext rather than the monomials,
    // so the flatness test does not presuppose the basis certificate.
    std::vector<Vec> reps;
    {
        LinearSpace acc = r.u_span;
        for (const auto& b : r.b_ext.rows())
            if (acc.insert(b)) reps.push_back(b);
    }
    QuotientCoordinates coords(r.u_span, reps, f.dim());
    const int d = static_cast<int>(reps.size());
    Matrix t(d, Vec(d));
    for (int c = 0; c < d; ++c) {
        Vec col = coords(f.mul(pi, reps[c]));
        for (int row = 0; row < d; ++row) t[row][c] = col[row];
    }
    Matrix pw = identity(d);
    for (int k = 0; k < r.q_n; ++k) pw = matmul(pw, t);
    bool nilpotent = std::all_of(pw.begin(), pw.end(), [](const Vec& v) { return is_zero(v); });
    r.flat = nilpotent && flatness_over_line(t, r.q_n);
    return r;
}

bool generates_cotangent(const Presentation& s, const ExtensionStep& step) {
    const Presentation h = s.headroom(1);
    const Frame& f = h.frame();
    const Vec u = f.transfer(step_element(s, step), extension_frame(s, step));
    auto at_c = f.columns_where([](int, int, int b) { return b == 0; });
    const LinearSpace ideal = h.basis().zero_on(at_c);

    LinearSpace small(f.dim());
    for (const auto& b : h.basis().rows()) small.insert(f.mul(f.pi(), b));
    for (const auto& b : ideal.rows()) small.insert(f.mul(f.xvar(), b));
    std::vector<Vec> reps;
    {
        LinearSpace acc = small;
        for (const auto& b : ideal.rows())
            if (acc.insert(b)) reps.push_back(b);
    }
    for (size_t a = 0; a < reps.size(); ++a)
        for (size_t b = a; b < reps.size(); ++b) small.insert(f.mul(reps[a], reps[b]));
    return !small.member(u);
}

QuotientReport quotient(const Presentation& s, const ExtensionStep& step) {
    QuotientReport r = analyze_quotient(s, step);
    if (is_zero(r.nondegeneracy.front()))
        fail(ErrorKind::DegenerateExtension,
             "degenerate step: sum lambda_i/beta_i(P) = " + to_string(r.nondegeneracy.front()));
    if (!generates_cotangent(s, step))
        fail(ErrorKind::DegenerateInput, "step element " + to_string(r.frame.germ(r.u)) +
                                             " does not generate I_C/(I_C^2 + (pi))");
    if (!r.certified())
        fail(ErrorKind::Contradiction,
             "nondegenerate step fails the quotient certificates (dim Q = " + std::to_string(r.dim_q) +
                 ", q_n = " + std::to_string(r.q_n) + ", nilpotency " + std::to_string(r.nilpotency) +
                 (r.monomial_basis ? "" : ", monomials not a basis") + (r.flat ? "" : ", not flat") + ")");
    return r;
}

Presentation extend_star(const Presentation& s, const ExtensionStep& step) {
    const QuotientReport r = quotient(s, step);
    const Frame& fe = r.frame;
    const int n = s.n();
    const int D = s.xdeg();

    std::vector<Vec> monomials;
    Vec xa = fe.one();
    for (int a = 0; a < D; ++a) {
        Vec m = xa;
        for (int k = 0; k < r.q_n; ++k) {
            monomials.push_back(m);
            m = fe.mul(m, fe.pi());
        }
        xa = fe.mul(xa, fe.xvar());
    }
    QuotientCoordinates coords(r.u_span, monomials, fe.dim());

    std::vector<int> lv = fe.levels();
    lv.push_back(r.q_n);
    Frame fn(D, lv);
    std::vector<Vec> rows;
    for (const auto& alpha : r.b_ext.rows()) {
        Vec v = fn.zero();
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < D; ++a)
                for (int b = 0; b < fe.level(i); ++b) v[fn.index(i, a, b)] = alpha[fe.index(i, a, b)];
        Vec c = coords(alpha);
        for (int a = 0; a < D; ++a)
            for (int k = 0; k < r.q_n; ++k) v[fn.index(n, a, k)] = c[a * r.q_n + k];
        rows.push_back(std::move(v));
    }
    Presentation out = Presentation::from_vectors(std::move(fn), rows);

    const Spectrum sp = raw_spectrum(out);
    for (int i = 0; i < n; ++i)
        if (sp[i][n] != step.p_new[i])
            fail(ErrorKind::Contradiction, "extension has p" + idx(i) + idx(n) + " = " + std::to_string(sp[i][n]) +
                                               ", expected " + std::to_string(step.p_new[i]));
    return out;
}

bool flatness_over_line(const std::vector<Vec>& t_matrix, int q) {
    const int d = static_cast<int>(t_matrix.size());
    if (q < 1) fail(ErrorKind::Usage, "nilpotency order must be positive");
    std::vector<Matrix> pw{identity(d)};
    for (int k = 1; k <= q; ++k) pw.push_back(matmul(pw.back(), t_matrix));
    for (const auto& row : pw[q])
        if (!is_zero(row)) fail(ErrorKind::Usage, "t^q does not act as zero");
    for (int k = 1; k < q; ++k) {
        LinearSpace ker = LinearSpace::span(d, nullspace(pw[k], d));
        LinearSpace im = LinearSpace::span(d, transpose(pw[q - k]));
        if (ker != im) return false;
    }
    return true;
}

namespace {

int small_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

int nonzero_int(std::mt19937_64& rng, int bound) {
    int v = 0;
    while (v == 0) v = small_int(rng, -bound, bound);
    return v;
}

// 1 + a_1 pi + a_2 pi^2 in frame f.
Vec random_unit_in_pi(const Frame& f, std::mt19937_64& rng) {
    Vec u = f.one();
    Vec pw = f.pi();
    for (int e = 1; e <= 2; ++e) {
        axpy(u, Scalar(small_int(rng, -2, 2)), pw);
        pw = f.mul(pw, f.pi());
    }
    return u;
}

Vec random_member(const Presentation& s, const Frame& f, std::mt19937_64& rng, bool x_free) {
    Vec r = f.zero();
    for (const auto& row : s.basis().rows()) {
        Vec lifted = f.transfer(row, s.frame());
        if (x_free && !is_x_free(f, lifted)) continue;
        axpy(r, Scalar(small_int(rng, -2, 2)), lifted);
    }
    return r;
}

std::optional<ExtensionStep> step_from_element(const Frame& f, const Vec& u, const std::vector<int>& p_new,
                                               const std::vector<int>& q) {
    ExtensionStep step;
    step.p_new = p_new;
    for (int i = 0; i < f.n(); ++i) {
        if (f.t_valuation(u, i) != p_new[i]) return std::nullopt;
        BiPoly c = f.component(u, i).divide_t(p_new[i]);
        if (!c.is_unit()) return std::nullopt;
        step.beta.push_back(c.resized_t(q[i]));
    }
    return step;
}

}  // namespace

std::optional<ExtensionStep> random_step(const Presentation& s, std::mt19937_64& rng, int p_max, bool x_free) {
    const int n = s.n();
    const int k = small_int(rng, 0, n - 1);
    int j = small_int(rng, 0, n - 2);
    if (j >= k) ++j;
    const int d = small_int(rng, 1, p_max);
    const Spectrum sp = raw_spectrum(s);
    std::vector<int> p_new(n);
    for (int i = 0; i < n; ++i) p_new[i] = i == k ? d : std::min(sp[i][k], d);

    ExtensionStep shape{p_new, std::vector<BiPoly>(n, BiPoly::monomial(0, 0, s.xdeg(), 1))};
    const Frame f = extension_frame(s, shape);
    const Vec v = f.transfer(pair_generator(s, k, j).v, s.headroom(1).frame());
    const Vec pid = f.power(f.pi(), d);

    Vec u = f.mul(random_unit_in_pi(f, rng), pid);
    const Scalar sc = nonzero_int(rng, 3);
    for (auto& x : u) x *= sc;
    axpy(u, Scalar(small_int(rng, -3, 3)), f.mul(random_unit_in_pi(f, rng), v));
    Vec tail = f.mul(f.mul(pid, f.pi()), random_member(s, f, rng, x_free));
    for (size_t col = 0; col < tail.size(); ++col) u[col] += tail[col];
    auto step = step_from_element(f, u, p_new, s.q());
    if (step && !generates_cotangent(s, *step)) return std::nullopt;
    return step;
}

std::optional<ExtensionStep> degenerate_step(const Presentation& s, std::mt19937_64& rng) {
    const int n = s.n();
    const std::vector<int> q = s.q();
    if (n < 2 || q[0] % (n - 1) != 0) return std::nullopt;
    for (int level : q)
        if (level != q[0]) return std::nullopt;
    const int d = q[0] / (n - 1);

    // Every beta_i(P) equals the same constant and sum lambda_i = 0 when all
    // levels agree, so u = pi^d * unit is degenerate.
    ExtensionStep shape{std::vector<int>(n, d), std::vector<BiPoly>(n, BiPoly::monomial(0, 0, s.xdeg(), 1))};
    const Frame f = extension_frame(s, shape);
    const Vec pid = f.power(f.pi(), d);
    Vec u = f.mul(random_unit_in_pi(f, rng), pid);
    const Scalar sc = nonzero_int(rng, 3);
    for (auto& x : u) x *= sc;
    Vec tail = f.mul(f.mul(pid, f.pi()), random_member(s, f, rng, true));
    for (size_t col = 0; col < tail.size(); ++col) u[col] += tail[col];
    return step_from_element(f, u, shape.p_new, q);
}

Tower random_tower(std::uint64_t seed, int n_max, int p_max) {
    if (n_max < 2 || p_max < 1) fail(ErrorKind::Usage, "towers need n_max >= 2 and p_max >= 1");
    std::mt19937_64 rng(seed);
    Tower t;
    t.base_p = small_int(rng, 1, p_max);
    t.star = make_congruence_pair_star(t.base_p);
    constexpr int budget = 200;
    while (t.star.n() < n_max) {
        bool done = false;
        for (int attempt = 0; attempt < budget && !done; ++attempt) {
            ++t.draws;
            auto step = random_step(t.star, rng, p_max);
            if (!step) continue;
            if (is_zero(nondegeneracy(t.star, *step))) {
                ++t.degenerate_draws;
                continue;
            }
            t.star = extend_star(t.star, *step);
            t.steps.push_back(std::move(*step));
            done = true;
        }
        if (!done)
            fail(ErrorKind::GenerationFailed, "no admissible step after " + std::to_string(budget) + " draws (" +
                                                  std::to_string(t.degenerate_draws) + " of " +
                                                  std::to_string(t.draws) + " draws hit the degeneracy locus)");
    }
    return t;
}

Presentation replay(const Presentation& base, const std::vector<ExtensionStep>& steps) {
    Presentation s = base;
    for (const auto& step : steps) s = extend_star(s, step);
    return s;
}

}  // namespace starforge
