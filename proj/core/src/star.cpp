#include "starforge/star.hpp"

#include "starforge/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace starforge {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

std::vector<Vec> times_rows(const Frame& f, const Vec& u, const std::vector<Vec>& rows) {
    std::vector<Vec> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(f.mul(u, r));
    return out;
}

// Elements vanishing at P: all coordinates agree at t = 0, so the x^0 t^0
// entry of the first component is the value there.
LinearSpace maximal_ideal(const Presentation& h) {
    return h.basis().zero_on({h.frame().index(0, 0, 0)});
}

// m^2 = pi*m + span{r_a r_b} for representatives r of m / pi*m, since m is
// generated over K[pi] by the r.
LinearSpace square_of(const Frame& f, const LinearSpace& m) {
    const Vec pi = f.pi();
    LinearSpace pim(f.dim());
    for (const auto& r : m.rows()) pim.insert(f.mul(pi, r));
    LinearSpace acc = pim;
    std::vector<Vec> reps;
    for (const auto& r : m.rows())
        if (acc.insert(r)) reps.push_back(r);
    LinearSpace sq = pim;
    for (size_t a = 0; a < reps.size(); ++a)
        for (size_t b = a; b < reps.size(); ++b) sq.insert(f.mul(reps[a], reps[b]));
    return sq;
}

void check_distinct(const std::vector<Scalar>& c) {
    if (c.size() < 2) fail(ErrorKind::Usage, "at least two slopes are required");
    std::set<Scalar> seen(c.begin(), c.end());
    if (seen.size() != c.size()) fail(ErrorKind::DegenerateInput, "repeated slope");
}

Presentation lines_model(const std::vector<Scalar>& c, int xdeg) {
    check_distinct(c);
    const int n = static_cast<int>(c.size());
    Frame f(xdeg, std::vector<int>(n, n - 1));
    std::vector<Vec> rows;
    for (int e = 0; e < xdeg; ++e)
        for (int a = 0; a <= n - 2; ++a)
            for (int b = 0; a + b <= n - 2; ++b) {
                Vec v = f.zero();
                for (int i = 0; i < n; ++i) {
                    Scalar cb = 1;
                    for (int k = 0; k < b; ++k) cb *= c[i];
                    v[f.index(i, e, a + b)] = cb;
                }
                rows.push_back(std::move(v));
            }
    return Presentation::from_vectors(std::move(f), rows);
}

}  // namespace

bool ValidationReport::valid() const { return first_failure() == nullptr; }

const CheckEntry* ValidationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.ok) return &c;
    return nullptr;
}

ValidationReport validate(const Presentation& s, ValidateOptions opt) {
    ValidationReport rep;
    const Frame& f = s.frame();
    const LinearSpace& B = s.basis();
    const auto& rows = B.rows();
    auto add = [&](std::string name, bool ok, std::string witness = {}) {
        rep.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
    };

    add("contains one", B.member(f.one()), "(1,...,1) is not in the span");
    add("contains pi", B.member(f.pi()), "(t,...,t) is not in the span");
    if (f.xdeg() > 1) add("contains x", B.member(f.xvar()), "(x,...,x) is not in the span");

    {
        std::string w;
        for (size_t r = 0; r < rows.size() && w.empty(); ++r)
            for (int i = 1; i < f.n() && w.empty(); ++i)
                for (int a = 0; a < f.xdeg(); ++a)
                    if (rows[r][f.index(0, a, 0)] != rows[r][f.index(i, a, 0)]) {
                        w = "basis row " + std::to_string(r + 1) + ": components 1 and " + idx(i) +
                            " differ at t=0: " + to_string(f.germ(rows[r]));
                        break;
                    }
        add("agreement at P", w.empty(), w);
    }

    if (opt.closure) {
        std::string w;
        for (size_t a = 0; a < rows.size() && w.empty(); ++a)
            for (size_t b = a; b < rows.size(); ++b) {
                Vec p = f.mul(rows[a], rows[b]);
                if (!B.member(p)) {
                    w = "product of basis rows " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                        " = " + to_string(f.germ(p)) + " leaves the span";
                    break;
                }
            }
        add("multiplicative closure", w.empty(), w);
    }

    const Spectrum p = raw_spectrum(s);
    {
        std::string w;
        for (int i = 0; i < f.n() && w.empty(); ++i) {
            int sum = 0;
            for (int j = 0; j < f.n(); ++j) sum += p[i][j];
            if (sum != f.level(i))
                w = "component " + idx(i) + ": level " + std::to_string(f.level(i)) + " but spectrum row sums to " +
                    std::to_string(sum);
        }
        add("level consistency", w.empty(), w);
    }
    {
        auto v = ultrametric_violation(p);
        std::string w;
        if (v) {
            const int i = (*v)[0], j = (*v)[1], k = (*v)[2];
            w = "p" + idx(i) + idx(j) + "=" + std::to_string(p[i][j]) + " < p" + idx(j) + idx(k) + "=" +
                std::to_string(p[j][k]) + " but p" + idx(i) + idx(k) + "=" + std::to_string(p[i][k]);
        }
        add("ultrametric law", !v, w);
    }
    if (f.n() >= 2) {
        const auto& q = f.levels();
        const int qmax = *std::max_element(q.begin(), q.end());
        const auto count = std::count(q.begin(), q.end(), qmax);
        add("maximal level attained twice", count >= 2,
            "maximal level " + std::to_string(qmax) + " attained only once");
    }
    return rep;
}

void require_valid(const Presentation& s, ValidateOptions opt) {
    auto rep = validate(s, opt);
    if (const auto* c = rep.first_failure()) fail(ErrorKind::InvalidStar, c->name + ": " + c->witness);
}

Presentation make_congruence_pair_star(int p) {
    if (p < 1) fail(ErrorKind::Usage, "congruence order must be positive");
    Frame f(1, {p, p});
    std::vector<Vec> rows;
    for (int k = 0; k < p; ++k) {
        Vec v = f.zero();
        v[f.index(0, 0, k)] = 1;
        v[f.index(1, 0, k)] = 1;
        rows.push_back(std::move(v));
    }
    return Presentation::from_vectors(std::move(f), rows);
}

Presentation make_lines_star(const std::vector<Scalar>& c) { return lines_model(c, 1); }

Presentation make_planes_deformation(const std::vector<Scalar>& c, int xdeg) { return lines_model(c, xdeg); }

Presentation make_initial_star(int n) {
    if (n < 2) fail(ErrorKind::Usage, "initial star needs at least two components");
    Frame f(1, std::vector<int>(n, n - 1));
    std::vector<Vec> rows{f.one()};
    for (int i = 0; i < n; ++i)
        for (int k = 1; k < n - 1; ++k) rows.push_back(f.unit(i, 0, k));
    return Presentation::from_vectors(std::move(f), rows);
}

Presentation make_branch_star(const std::vector<TruncSeries>& phi) {
    const int n = static_cast<int>(phi.size());
    if (n < 2) fail(ErrorKind::Usage, "at least two branches are required");
    int len = 0;
    for (const auto& b : phi) {
        if (!b.is_zero() && b.valuation() == 0) fail(ErrorKind::DegenerateInput, "branch does not pass through P");
        len = std::max(len, b.trunc());
    }
    std::vector<TruncSeries> poly;
    for (const auto& b : phi) poly.push_back(b.resized(len));
    std::vector<int> q(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            TruncSeries d = poly[i] - poly[j];
            if (d.is_zero()) fail(ErrorKind::DegenerateInput, "branches " + idx(i) + " and " + idx(j) + " coincide");
            q[i] += d.valuation();
        }
    const int qmax = *std::max_element(q.begin(), q.end());
    Frame f(1, q);
    std::vector<Vec> rows;
    for (int b = 0; b < qmax; ++b) {
        std::vector<TruncSeries> yb;
        for (int i = 0; i < n; ++i) {
            TruncSeries y = TruncSeries::constant(1, q[i]);
            TruncSeries base = poly[i].resized(q[i]);
            for (int k = 0; k < b; ++k) y = y * base;
            yb.push_back(std::move(y));
        }
        for (int a = 0; a + b < qmax; ++a) {
            Vec v = f.zero();
            for (int i = 0; i < n; ++i)
                for (int k = 0; k + a < q[i]; ++k) v[f.index(i, 0, k + a)] = yb[i][k];
            rows.push_back(std::move(v));
        }
    }
    return Presentation::from_vectors(std::move(f), rows);
}

bool membership(const Presentation& s, const MultiGerm& g) { return s.member(g); }

Spectrum raw_spectrum(const Presentation& s) {
    const Frame& f = s.frame();
    const int n = f.n();
    Spectrum p(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int m = std::min(f.level(i), f.level(j));
            for (const auto& r : s.basis().rows())
                for (int b = 0; b < m; ++b)
                    for (int a = 0; a < f.xdeg(); ++a)
                        if (r[f.index(i, a, b)] != r[f.index(j, a, b)]) {
                            m = b;
                            break;
                        }
            p[i][j] = p[j][i] = m;
        }
    return p;
}

Spectrum spectrum(const Presentation& s) {
    Spectrum p = raw_spectrum(s);
    for (int i = 0; i < s.n(); ++i) {
        int sum = 0;
        for (int v : p[i]) sum += v;
        if (sum != s.q()[i])
            fail(ErrorKind::InvalidStar, "spectrum row " + idx(i) + " sums to " + std::to_string(sum) +
                                             " but the level is " + std::to_string(s.q()[i]));
    }
    return p;
}

std::optional<std::vector<int>> ultrametric_violation(const Spectrum& p) {
    const int n = static_cast<int>(p.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (p[i][j] < p[j][k] && p[i][k] != p[i][j]) return std::vector<int>{i, j, k};
            }
    return std::nullopt;
}

FiberReport fiber_algebra(const Presentation& s) {
    const Presentation h = s.headroom(1);
    const Frame& f = h.frame();
    const Vec pi = f.pi();
    LinearSpace piB(f.dim());
    for (const auto& r : h.basis().rows()) piB.insert(f.mul(pi, r));
    FiberReport rep;
    rep.dim = h.dim() - piB.dim();
    const LinearSpace m = maximal_ideal(h);
    const LinearSpace low = square_of(f, m).sum(piB);
    rep.cotangent_dim = m.dim() - low.dim();
    rep.principal = rep.cotangent_dim == 1;
    if (rep.principal) {
        for (const auto& r : m.rows())
            if (!low.member(r)) {
                rep.generator = r;
                break;
            }
        Vec pw = rep.generator;
        int k = 1;
        while (!piB.member(pw) && k <= rep.dim + 1) {
            pw = f.mul(pw, rep.generator);
            ++k;
        }
        rep.nilpotency = k;
    }
    rep.oblate = rep.principal && rep.dim == s.n() && rep.nilpotency == s.n();
    return rep;
}

int embedding_dimension(const Presentation& s) {
    const Presentation h = s.headroom(1);
    const LinearSpace m = maximal_ideal(h);
    return m.dim() - square_of(h.frame(), m).dim();
}

std::vector<Scalar> lambda(const Presentation& s) {
    const Frame& f = s.frame();
    const int n = f.n();
    std::vector<int> lower = f.columns_where([&](int i, int, int b) { return b != f.level(i) - 1; });
    const LinearSpace J = s.basis().zero_on(lower);
    if (J.dim() != (n - 1) * f.xdeg())
        fail(ErrorKind::InvalidStar, "top slice has dimension " + std::to_string(J.dim()) + ", expected " +
                                         std::to_string((n - 1) * f.xdeg()));
    std::vector<Vec> rows;
    for (const auto& r : J.rows())
        for (int a = 0; a < f.xdeg(); ++a) {
            Vec w(n);
            for (int i = 0; i < n; ++i) w[i] = r[f.index(i, a, f.level(i) - 1)];
            rows.push_back(std::move(w));
        }
    auto ns = nullspace(rows, n);
    if (ns.size() != 1)
        fail(ErrorKind::InvalidStar, "top slice has a " + std::to_string(ns.size()) + "-dimensional normal space");
    Vec lam = ns.front();
    for (int i = 0; i < n; ++i)
        if (is_zero(lam[i])) fail(ErrorKind::InvalidStar, "lambda vanishes at component " + idx(i));
    const Scalar c = lam[0];
    for (auto& x : lam) x /= c;
    return lam;
}

PairGenerator pair_generator(const Presentation& s, int i, int j) {
    const int n = s.n();
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::Usage, "pair generator needs distinct indices");
    const Spectrum sp = raw_spectrum(s);
    const int p = sp[i][j];
    const Presentation h = s.headroom(1);
    const Frame& f = h.frame();
    std::vector<int> cols = f.component_columns(i);
    const std::vector<int> cj = f.component_columns(j);
    cols.insert(cols.end(), cj.begin(), cj.end());

    const auto& rows = h.basis().rows();
    std::vector<Vec> proj;
    for (const auto& r : rows) {
        Vec w;
        for (int c : cols) w.push_back(r[c]);
        proj.push_back(std::move(w));
    }
    Vec target(cols.size());
    target[f.component_columns(i).size() + p] = 1;  // x^0 t^p of component j
    auto sol = solve_in_span(proj, target);
    if (!sol)
        fail(ErrorKind::InvalidStar, "no element vanishes on component " + idx(i) + " and equals t^" +
                                         std::to_string(p) + " on component " + idx(j));
    Vec v = f.zero();
    for (size_t k = 0; k < rows.size(); ++k)
        if (!is_zero((*sol)[k])) axpy(v, (*sol)[k], rows[k]);
    v = h.basis().zero_on(cols).reduce(std::move(v));

    PairGenerator g;
    g.i = i;
    g.j = j;
    g.germ = f.germ(v);
    g.v = std::move(v);
    g.beta.resize(n);
    g.b.assign(n, Scalar(0));
    for (int m = 0; m < n; ++m) {
        if (m == i) continue;
        g.beta[m] = g.germ[m].divide_t(sp[i][m]);
        g.b[m] = g.beta[m].at(0, 0);
    }
    return g;
}

bool UnitConstantTable::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.ok; });
}

UnitConstantTable unit_constant_table(const Presentation& s) {
    const int n = s.n();
    UnitConstantTable t;
    t.n = n;
    t.b.assign(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
    std::string units_w, const_w;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            PairGenerator g = pair_generator(s, i, j);
            t.b[i][j] = g.b;
            for (int m = 0; m < n; ++m) {
                if (m == i) continue;
                if (is_zero(g.b[m]) && units_w.empty())
                    units_w = "b" + idx(i) + idx(j) + "^(" + idx(m) + ") = 0";
                for (int a = 1; a < s.xdeg(); ++a)
                    if (!is_zero(g.beta[m].at(a, 0)) && const_w.empty())
                        const_w = "unit of v" + idx(i) + idx(j) + " on component " + idx(m) +
                                  " depends on x along C: " + to_string(g.beta[m]);
            }
        }
    t.checks.push_back({"unit constants nonzero", units_w.empty(), units_w});
    if (s.xdeg() > 1) t.checks.push_back({"unit constants constant along C", const_w.empty(), const_w});

    const auto& b = t.b;
    auto law = [&](const std::string& name, auto&& visit) {
        std::string w;
        visit(w);
        t.checks.push_back({name, w.empty(), w});
    };
    law("multiplicative law", [&](std::string& w) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (j == i || k == i) continue;
                    for (int m = 0; m < n; ++m)
                        for (int q = 0; q < n; ++q)
                            if (b[i][k][m] * b[i][j][q] != b[i][k][q] * b[i][j][m] && w.empty())
                                w = "b" + idx(i) + idx(k) + "^(" + idx(m) + ") b" + idx(i) + idx(j) + "^(" + idx(q) +
                                    ") != b" + idx(i) + idx(k) + "^(" + idx(q) + ") b" + idx(i) + idx(j) + "^(" +
                                    idx(m) + ")";
                }
    });
    law("reciprocal law", [&](std::string& w) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int m = 0; m < n; ++m) {
                    if (j == i || m == i) continue;
                    if (b[i][j][m] * b[i][m][j] != 1 && w.empty())
                        w = "b" + idx(i) + idx(j) + "^(" + idx(m) + ") b" + idx(i) + idx(m) + "^(" + idx(j) +
                            ") = " + to_string(b[i][j][m] * b[i][m][j]);
                }
    });
    law("sign law", [&](std::string& w) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (b[k][i][j] != -b[i][k][j] * b[j][i][k] && w.empty())
                        w = "b" + idx(k) + idx(i) + "^(" + idx(j) + ") != -b" + idx(i) + idx(k) + "^(" + idx(j) +
                            ") b" + idx(j) + idx(i) + "^(" + idx(k) + ")";
                }
    });
    try {
        t.lambda = lambda(s);
        law("lambda product law", [&](std::string& w) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    Scalar prod = -1;
                    for (int m = 0; m < n; ++m)
                        if (m != i && m != j) prod *= b[m][i][j];
                    if (t.lambda[i] / t.lambda[j] != prod && w.empty())
                        w = "lambda" + idx(i) + "/lambda" + idx(j) + " = " + to_string(t.lambda[i] / t.lambda[j]) +
                            " but -prod b_m" + idx(i) + "^(" + idx(j) + ") = " + to_string(prod);
                }
        });
    } catch (const Error& e) {
        t.checks.push_back({"lambda product law", false, e.what()});
    }
    return t;
}

UnitConstantTable unit_constants(const Presentation& s) {
    UnitConstantTable t = unit_constant_table(s);
    for (const auto& c : t.checks)
        if (!c.ok) fail(ErrorKind::InvalidStar, c.name + ": " + c.witness);
    return t;
}

SubstarIdeal substar_ideal_report(const Presentation& s, const std::vector<int>& indices) {
    const int n = s.n();
    std::set<int> I(indices.begin(), indices.end());
    if (I.empty() || static_cast<int>(I.size()) >= n || *I.begin() < 0 || *I.rbegin() >= n)
        fail(ErrorKind::Usage, "sub-star index set must be a proper nonempty subset");
    SubstarIdeal r;
    r.indices.assign(I.begin(), I.end());
    while (I.count(r.target)) ++r.target;
    const Presentation h = s.headroom(1);
    const Frame& f = h.frame();
    r.generator = f.one();
    for (int j : r.indices) r.generator = f.mul(r.generator, pair_generator(s, j, r.target).v);
    r.span = LinearSpace::span(f.dim(), times_rows(f, r.generator, h.basis().rows()));
    std::vector<int> cols;
    for (int j : r.indices) {
        auto c = f.component_columns(j);
        cols.insert(cols.end(), c.begin(), c.end());
    }
    r.vanishing = h.basis().zero_on(cols);
    r.equal = r.span == r.vanishing;
    return r;
}

SubstarIdeal substar_ideal(const Presentation& s, const std::vector<int>& indices) {
    SubstarIdeal r = substar_ideal_report(s, indices);
    if (!r.equal) {
        std::string set;
        for (int j : r.indices) set += (set.empty() ? "" : ",") + idx(j);
        fail(ErrorKind::InvalidStar, "ideal of the sub-star {" + set + "} has dimension " +
                                         std::to_string(r.vanishing.dim()) + " but the generator spans " +
                                         std::to_string(r.span.dim()));
    }
    return r;
}

namespace {

// Graph of B with the kept columns first: reducing (k, 0) leaves (0, -Psi(k)).
LinearSpace connector_graph(const Presentation& s, const std::vector<int>& kept, const std::vector<int>& own) {
    std::vector<Vec> rows;
    for (const auto& r : s.basis().rows()) {
        Vec w;
        for (int c : kept) w.push_back(r[c]);
        for (int c : own) w.push_back(r[c]);
        rows.push_back(std::move(w));
    }
    return LinearSpace::span(static_cast<int>(kept.size() + own.size()), rows);
}

}  // namespace

Vec ConnectorMap::project(const Vec& v) const {
    Vec w;
    for (int c : kept) w.push_back(v[c]);
    return w;
}

BiPoly ConnectorMap::apply(const Vec& k) const {
    const Frame& f = star.frame();
    const std::vector<int> own = f.component_columns(i);
    LinearSpace g = connector_graph(star, kept, own);
    Vec w = k;
    w.resize(kept.size() + own.size());
    w = g.reduce(std::move(w));
    for (size_t c = 0; c < kept.size(); ++c)
        if (!is_zero(w[c])) fail(ErrorKind::Usage, "element is not in the projected algebra");
    BiPoly out(f.xdeg(), f.level(i));
    for (int a = 0; a < f.xdeg(); ++a)
        for (int b = 0; b < f.level(i); ++b) out.at(a, b) = -w[kept.size() + a * f.level(i) + b];
    return out;
}

bool ConnectorMap::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.ok; });
}

ConnectorMap connector(const Presentation& s, int i) {
    const Frame& f = s.frame();
    if (i < 0 || i >= f.n()) fail(ErrorKind::Usage, "component index out of range");
    if (f.n() < 2) fail(ErrorKind::Usage, "connector needs at least two components");
    ConnectorMap c;
    c.i = i;
    c.star = s;
    c.kept = f.columns_where([i](int j, int, int) { return j != i; });
    c.domain = s.basis().project(c.kept);

    const bool well_defined = c.domain.dim() == s.dim();
    c.checks.push_back({"well defined", well_defined,
                        "projection forgetting component " + idx(i) + " has a kernel of dimension " +
                            std::to_string(s.dim() - c.domain.dim())});
    if (!well_defined) fail(ErrorKind::InvalidStar, c.checks.back().name + ": " + c.checks.back().witness);

    const int other = i == 0 ? 1 : 0;
    std::string w;
    for (const auto& r : s.basis().rows()) {
        BiPoly val = c.apply(c.project(r));
        for (int a = 0; a < f.xdeg(); ++a)
            if (val.at(a, 0) != r[f.index(other, a, 0)] && w.empty())
                w = "value at P differs for " + to_string(f.germ(r));
    }
    c.checks.push_back({"value at P", w.empty(), w});

    BiPoly t = f.level(i) > 1 ? BiPoly::monomial(0, 1, f.xdeg(), f.level(i)) : BiPoly(f.xdeg(), f.level(i));
    BiPoly psi_pi = c.apply(c.project(f.pi()));
    c.checks.push_back({"pi maps to t", psi_pi == t, "Psi(pi) = " + to_string(psi_pi)});

    int j = i == 0 ? 1 : 0;
    const Presentation h = s.headroom(1);
    Vec v = f.transfer(pair_generator(s, i, j).v, h.frame());
    LinearSpace gen(static_cast<int>(c.kept.size()));
    for (const auto& r : s.basis().rows()) gen.insert(c.project(f.mul(v, r)));
    LinearSpace ker = s.basis().zero_on(f.component_columns(i)).project(c.kept);
    c.checks.push_back({"kernel generated by v" + idx(i) + idx(j), gen == ker,
                        "kernel has dimension " + std::to_string(ker.dim()) + ", multiples of v" + idx(i) + idx(j) +
                            " span " + std::to_string(gen.dim())});
    return c;
}

bool is_x_free(const Frame& f, const Vec& v) {
    for (int i = 0; i < f.n(); ++i)
        for (int a = 1; a < f.xdeg(); ++a)
            for (int b = 0; b < f.level(i); ++b)
                if (!is_zero(v[f.index(i, a, b)])) return false;
    return true;
}

}  // namespace starforge
