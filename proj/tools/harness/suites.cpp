#include "harness/suites.hpp"

#include "harness/oracles.hpp"
#include "starforge/compare.hpp"
#include "starforge/deform.hpp"
#include "starforge/errors.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace starforge::harness {

namespace {

using Check = std::function<std::string(const Presentation&)>;

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Scalar nonzero_fraction(std::mt19937_64& rng) {
    int num = 0;
    while (num == 0) num = uniform(rng, -5, 5);
    return frac(num, uniform(rng, 1, 7));
}

std::vector<Scalar> distinct_slopes(std::mt19937_64& rng, int n) {
    std::set<Scalar> seen;
    std::vector<Scalar> c;
    while (static_cast<int>(c.size()) < n) {
        Scalar s = frac(uniform(rng, -9, 9), uniform(rng, 1, 3));
        if (seen.insert(s).second) c.push_back(s);
    }
    return c;
}

std::string run_check(const Check& check, const Presentation& p) {
    try {
        return check(p);
    } catch (const Error& e) {
        return std::string(kind_name(e.kind())) + ": " + e.what();
    }
}

struct DrawnTower {
    Tower tower;
    BuilderScript script;
};

// Thrown by draw_tower with a script that replays the failed draw.
struct TowerDrawFailure {
    std::string message;
    json script;
};

DrawnTower draw_tower(std::uint64_t seed, int n_lo, int n_hi, int p_max) {
    std::mt19937_64 rng(seed);
    const int n = uniform(rng, n_lo, n_hi);
    const std::uint64_t inner = rng();
    DrawnTower d;
    try {
        d.tower = random_tower(inner, n, p_max);
    } catch (const Error& e) {
        BuilderScript s;
        s.seed = inner;
        s.random = RandomSpec{n, p_max};
        throw TowerDrawFailure{std::string(kind_name(e.kind())) + ": " + e.what(), emit_script(s)};
    }
    d.script.seed = inner;
    d.script.base.fixture = "pair";
    d.script.base.p = d.tower.base_p;
    d.script.steps = d.tower.steps;
    return d;
}

std::string join_failed(const std::vector<CheckEntry>& checks) {
    for (const auto& c : checks)
        if (!c.ok) return c.name + (c.witness.empty() ? "" : ": " + c.witness);
    return {};
}

// Trials on random towers with n in [n_lo, n_hi]; failures are shrunk.
SuiteResult tower_suite(const std::string& name, const SuiteOptions& o, int default_trials, int n_lo, int n_hi,
                        int p_max, const Check& check) {
    SuiteResult r;
    r.name = name;
    r.trials = o.trials < 0 ? default_trials : o.trials;
    std::atomic<int> max_n{0}, total_dim{0};
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        const std::uint64_t seed = trial_seed(o.seed, name, k);
        DrawnTower d;
        try {
            d = draw_tower(seed, n_lo, n_hi, p_max);
        } catch (const TowerDrawFailure& e) {
            return TrialFailure{k, "tower generation: " + e.message, e.script};
        }
        int cur = max_n.load();
        while (d.tower.star.n() > cur && !max_n.compare_exchange_weak(cur, d.tower.star.n())) {
        }
        total_dim += d.tower.star.dim();
        std::string msg = run_check(check, d.tower.star);
        if (msg.empty()) return std::nullopt;
        BuilderScript small = shrink_script(d.script, [&](const Presentation& p) { return !run_check(check, p).empty(); });
        return TrialFailure{k, msg, emit_script(small)};
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    r.stats["max_n"] = max_n.load();
    r.stats["total_dim"] = total_dim.load();
    return r;
}

void fixture(SuiteResult& r, std::string name, const std::function<std::string()>& body) {
    std::string detail;
    try {
        detail = body();
    } catch (const Error& e) {
        detail = std::string(kind_name(e.kind())) + ": " + e.what();
    }
    r.fixtures.push_back({std::move(name), detail.empty(), detail});
}

Presentation tower_fixture() {
    ExtensionStep st{{1, 1}, {BiPoly::monomial(0, 0, 1, 1, 1), BiPoly::monomial(0, 0, 1, 1, 2)}};
    return extend_star(make_congruence_pair_star(1), st);
}

std::string vec_text(const std::vector<Scalar>& v) {
    std::string s = "(";
    for (size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + to_string(v[k]);
    return s + ")";
}

MultiGerm random_maximal(const Presentation& s, std::mt19937_64& rng) {
    const Frame& f = s.frame();
    Vec v = f.zero();
    for (const auto& row : s.basis().rows()) axpy(v, Scalar(uniform(rng, -2, 2)), row);
    const Scalar at_p = v[f.index(0, 0, 0)];
    axpy(v, -at_p, f.one());
    return f.germ(v);
}

BiPoly random_bipoly(std::mt19937_64& rng, int xdeg, int trunc, int max_x) {
    BiPoly b(xdeg, trunc);
    for (int a = 0; a <= std::min(max_x, xdeg - 1); ++a)
        for (int k = 0; k < trunc; ++k) b.at(a, k) = uniform(rng, -3, 3);
    return b;
}

// ---- suites ----

SuiteResult suite_ultrametric(const SuiteOptions& o) {
    return tower_suite("ultrametric", o, 500, 2, 5, 4, [](const Presentation& s) -> std::string {
        const Spectrum sp = spectrum(s);
        if (auto v = ultrametric_violation(sp))
            return "ultrametric law fails at (" + std::to_string((*v)[0] + 1) + "," + std::to_string((*v)[1] + 1) +
                   "," + std::to_string((*v)[2] + 1) + ")";
        int sum = 0;
        for (int i = 0; i < s.n(); ++i)
            for (int j = i + 1; j < s.n(); ++j) sum += sp[i][j];
        if (sum != s.dim()) return "dim B = " + std::to_string(s.dim()) + " but sum p_ij = " + std::to_string(sum);
        return {};
    });
}

std::string lambda_check(const Presentation& s) {
    lambda(s);  // throws unless dim J = n-1 and every entry is nonzero
    for (const auto& c : unit_constant_table(s).checks)
        if (c.name == "lambda product law" && !c.ok) return c.name + ": " + c.witness;
    return {};
}

SuiteResult suite_lambda(const SuiteOptions& o) {
    SuiteResult r = tower_suite("lambda-laws", o, 200, 2, 5, 3, lambda_check);
    fixture(r, "lines c=(0,1,2): lambda = (1,-2,1)", [] {
        auto l = lambda(make_lines_star({0, 1, 2}));
        return l == std::vector<Scalar>{1, -2, 1} ? std::string() : "got " + vec_text(l);
    });
    fixture(r, "planes c=(0,1,2), D=3: lambda = (1,-2,1)", [] {
        auto l = lambda(make_planes_deformation({0, 1, 2}, 3));
        return l == std::vector<Scalar>{1, -2, 1} ? std::string() : "got " + vec_text(l);
    });
    for (int p = 1; p <= 4; ++p)
        fixture(r, "pair p=" + std::to_string(p), [p] { return lambda_check(make_congruence_pair_star(p)); });
    fixture(r, "tower fixture", [] { return lambda_check(tower_fixture()); });
    fixture(r, "lines c=(0,1,3,-2)", [] { return lambda_check(make_lines_star({0, 1, 3, -2})); });
    fixture(r, "planes c=(0,1,3,-2), D=2", [] { return lambda_check(make_planes_deformation({0, 1, 3, -2}, 2)); });
    fixture(r, "lines stars against the cross-product oracle", [&o] {
        std::mt19937_64 rng(trial_seed(o.seed, "lambda-oracle", 0));
        for (int k = 0; k < 20; ++k) {
            const auto c = distinct_slopes(rng, 3);
            // lambda is normal to (1,1,1) and (c1,c2,c3).
            std::vector<Scalar> cross{c[2] - c[1], c[0] - c[2], c[1] - c[0]};
            const Scalar lead = cross[0];
            for (auto& x : cross) x /= lead;
            const auto got = lambda(make_lines_star(c));
            if (got != cross) return "c = " + vec_text(c) + ": lambda " + vec_text(got) + ", oracle " + vec_text(cross);
        }
        return std::string();
    });
    return r;
}

SuiteResult suite_unit_constants(const SuiteOptions& o) {
    SuiteResult r = tower_suite("unit-constants", o, 200, 2, 5, 3, [](const Presentation& s) {
        return join_failed(unit_constant_table(s).checks);
    });
    fixture(r, "planes c=(0,1,2), D=3: b_31^(2) = 1/2", [] {
        auto t = unit_constant_table(make_planes_deformation({0, 1, 2}, 3));
        if (!t.ok()) return join_failed(t.checks);
        return t.b[2][0][1] == frac(1, 2) ? std::string() : "got " + to_string(t.b[2][0][1]);
    });
    fixture(r, "lines c=(0,1,3,-2)", [] { return join_failed(unit_constant_table(make_lines_star({0, 1, 3, -2})).checks); });
    return r;
}

// Bases whose levels all equal (n-1) d, where root attachments are degenerate.
Presentation equal_level_base(std::mt19937_64& rng, int k) {
    switch (k % 3) {
        case 0: return make_congruence_pair_star(uniform(rng, 1, 4));
        case 1: return make_lines_star(distinct_slopes(rng, uniform(rng, 3, 4)));
        default: {
            const int n = uniform(rng, 3, 4), d = uniform(rng, 1, 2);
            std::vector<TruncSeries> phi;
            for (const auto& a : distinct_slopes(rng, n)) phi.push_back(TruncSeries::monomial(d, d + 1, a));
            return make_branch_star(phi);
        }
    }
}

SuiteResult suite_constructor(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "constructor";
    const int nondeg = o.trials < 0 ? 200 : o.trials;
    const int deg = std::max(1, nondeg / 4);
    r.trials = nondeg + deg;
    std::atomic<int> seen_nondeg{0}, seen_deg{0};
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        const std::uint64_t seed = trial_seed(o.seed, "constructor", k);
        std::mt19937_64 rng(seed);
        if (k < nondeg) {
            DrawnTower d;
            try {
                d = draw_tower(seed, 2, 4, 3);
            } catch (const TowerDrawFailure& e) {
                return TrialFailure{k, "tower generation: " + e.message, e.script};
            }
            const Presentation& s = d.tower.star;
            std::optional<ExtensionStep> step;
            for (int a = 0; a < 200 && !step; ++a) {
                step = random_step(s, rng, 3);
                if (step && is_zero(nondegeneracy(s, *step))) step.reset();
            }
            if (!step) return TrialFailure{k, "no nondegenerate step drawn", emit_script(d.script)};
            BuilderScript repro = d.script;
            repro.steps.push_back(*step);
            try {
                const QuotientReport q = quotient(s, *step);
                ++seen_nondeg;
                std::string bad;
                if (q.dim_q != q.q_n) bad = "dim Q = " + std::to_string(q.dim_q) + " != q_n = " + std::to_string(q.q_n);
                else if (!q.top_power_zero) bad = "t_n^{q_n} != 0";
                else if (!q.below_top_nonzero) bad = "t_n^{q_n - 1} = 0";
                else if (!q.flat) bad = "kernel-image flatness criterion fails";
                if (!bad.empty()) return TrialFailure{k, bad, emit_script(repro)};
            } catch (const Error& e) {
                return TrialFailure{k, std::string(kind_name(e.kind())) + ": " + e.what(), emit_script(repro)};
            }
            return std::nullopt;
        }
        const Presentation s = equal_level_base(rng, k);
        auto step = degenerate_step(s, rng);
        if (!step) return TrialFailure{k, "no degenerate step on an equal-level base", emit_document(s)};
        const QuotientReport q = analyze_quotient(s, *step);
        ++seen_deg;
        json repro = json{{"base", emit_document(s)}, {"step", emit_step(*step)}};
        if (!is_zero(nondegeneracy(s, *step)))
            return TrialFailure{k, "crafted step has sum " + to_string(nondegeneracy(s, *step)), repro};
        if (q.below_top_nonzero) return TrialFailure{k, "t_n^{q_n - 1} != 0 on a degenerate step", repro};
        return std::nullopt;
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    r.stats["nondegenerate"] = seen_nondeg.load();
    r.stats["degenerate"] = seen_deg.load();
    fixture(r, "both branches exercised", [&] {
        return seen_nondeg > 0 && seen_deg > 0 ? std::string() : "one branch never ran";
    });
    fixture(r, "worked step: pair p=1, beta=(1,2)", [] {
        ExtensionStep st{{1, 1}, {BiPoly::monomial(0, 0, 1, 1, 1), BiPoly::monomial(0, 0, 1, 1, 2)}};
        auto q = quotient(make_congruence_pair_star(1), st);
        return q.certified() ? std::string() : "certificates fail";
    });
    fixture(r, "refusal: pair p=1, beta=(1,1)", [] {
        ExtensionStep st{{1, 1}, {BiPoly::monomial(0, 0, 1, 1, 1), BiPoly::monomial(0, 0, 1, 1, 1)}};
        try {
            extend_star(make_congruence_pair_star(1), st);
        } catch (const Error& e) {
            return e.kind() == ErrorKind::DegenerateExtension ? std::string() : std::string("wrong error: ") + e.what();
        }
        return std::string("step accepted");
    });
    return r;
}

SuiteResult suite_oblateness(const SuiteOptions& o) {
    SuiteResult r = tower_suite("oblateness", o, 200, 2, 5, 3, [](const Presentation& s) -> std::string {
        const FiberReport f = fiber_algebra(s);
        const int e = embedding_dimension(s);
        if (f.oblate != (e <= 2))
            return "fiber verdict " + std::string(f.oblate ? "oblate" : "not oblate") + " but embedding dimension " +
                   std::to_string(e);
        if (!f.oblate) return "tower is not oblate";
        return {};
    });
    for (int n = 3; n <= 6; ++n)
        fixture(r, "initial star n=" + std::to_string(n), [n] {
            const Presentation s = make_initial_star(n);
            const FiberReport f = fiber_algebra(s);
            const int e = embedding_dimension(s);
            if (e != n) return "dim m/m^2 = " + std::to_string(e);
            if (f.oblate) return std::string("fiber test passes");
            return std::string();
        });
    fixture(r, "lines c=(0,1,3,-2) is oblate", [] {
        auto s = make_lines_star({0, 1, 3, -2});
        return fiber_algebra(s).oblate && embedding_dimension(s) == 2 ? std::string() : "verdicts disagree";
    });
    return r;
}

std::string ideals_check(const Presentation& s) {
    const int n = s.n();
    for (int mask = 1; mask + 1 < (1 << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) idx.push_back(i);
        const SubstarIdeal id = substar_ideal_report(s, idx);
        if (!id.equal) {
            std::string set;
            for (int i : idx) set += (set.empty() ? "" : ",") + std::to_string(i + 1);
            return "I = {" + set + "}: span of u_I B (dim " + std::to_string(id.span.dim()) +
                   ") differs from the vanishing ideal (dim " + std::to_string(id.vanishing.dim()) + ")";
        }
    }
    return {};
}

SuiteResult suite_ideals(const SuiteOptions& o) {
    SuiteResult r = tower_suite("ideals", o, 60, 2, 5, 3, ideals_check);
    for (int p = 1; p <= 3; ++p)
        fixture(r, "pair p=" + std::to_string(p), [p] { return ideals_check(make_congruence_pair_star(p)); });
    fixture(r, "lines c=(0,1,2)", [] { return ideals_check(make_lines_star({0, 1, 2})); });
    fixture(r, "lines c=(0,1,3,-2)", [] { return ideals_check(make_lines_star({0, 1, 3, -2})); });
    fixture(r, "lines c=(0,1,2,4,-1)", [] { return ideals_check(make_lines_star({0, 1, 2, 4, -1})); });
    fixture(r, "tower fixture", [] { return ideals_check(tower_fixture()); });
    fixture(r, "branch star (t, t^2, 0, -t)", [] {
        return ideals_check(make_branch_star({TruncSeries({0, 1}, 3), TruncSeries({0, 0, 1}, 3), TruncSeries(3),
                                              TruncSeries({0, -1}, 3)}));
    });
    return r;
}

SuiteResult suite_morphisms(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "morphisms";
    r.trials = o.trials < 0 ? 100 : o.trials;
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        const std::uint64_t seed = trial_seed(o.seed, "morphisms", k);
        std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
        DrawnTower d;
        try {
            d = draw_tower(seed, 2, 4, 3);
        } catch (const TowerDrawFailure& e) {
            return TrialFailure{k, "tower generation: " + e.message, e.script};
        }
        const Presentation& t = d.tower.star;
        Scalar c;
        std::optional<Presentation> sub;
        for (int attempt = 0; attempt < 8 && !sub; ++attempt) {
            c = nonzero_fraction(rng);
            try {
                sub = deepen(t, 1, c);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DegenerateInput) throw;
            }
        }
        json repro = json{{"tower", emit_script(d.script)}, {"deepen", json{{"e", 1}, {"c", emit_scalar(c)}}}};
        if (!sub) return TrialFailure{k, "every drawn c merges two branches", repro};
        try {
            if (compare_stars(deepen(t, 0, c), t).verdict != Verdict::Identical)
                return TrialFailure{k, "deepening by 0 changed the algebra", repro};
            const ComparisonReport cmp = compare_stars(*sub, t);
            if (cmp.verdict != Verdict::StrictlyIncluded || cmp.smaller != 0)
                return TrialFailure{k, std::string("verdict ") + verdict_name(cmp.verdict), repro};
            if (!cmp.dominance) return TrialFailure{k, "spectrum dominance fails", repro};
            if (!cmp.gap) return TrialFailure{k, "no strict spectrum gap", repro};
            const NonflatnessWitness w = nonflatness_witness(*sub, t);
            if (!w.ok()) return TrialFailure{k, "non-flatness witness fails", repro};
        } catch (const Error& e) {
            return TrialFailure{k, std::string(kind_name(e.kind())) + ": " + e.what(), repro};
        }
        return std::nullopt;
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    fixture(r, "pair p=2 inside pair p=1: witness", [] {
        const auto w = nonflatness_witness(make_congruence_pair_star(2), make_congruence_pair_star(1));
        const MultiGerm u_expected = MultiGerm::from_series({TruncSeries(3), TruncSeries::monomial(2, 3)});
        const MultiGerm v_expected = MultiGerm::from_series({TruncSeries::monomial(1, 3), TruncSeries(3)});
        if (w.u != u_expected) return "u = " + to_string(w.u);
        if (w.v != v_expected) return "v = " + to_string(w.v);
        if (!w.product_zero) return std::string("uv != 0");
        if (w.phi != TruncSeries({0, 1}, 2)) return "phi(u (x) v) = " + to_string(w.phi);
        if (!w.well_defined) return std::string("phi is not well defined");
        return std::string();
    });
    fixture(r, "pair p=1 vs p=2: strict inclusion with gap (1,2)", [] {
        auto c = compare_stars(make_congruence_pair_star(1), make_congruence_pair_star(2));
        return c.verdict == Verdict::StrictlyIncluded && c.smaller == 1 && c.gap == std::make_pair(0, 1)
                   ? std::string()
                   : std::string("unexpected comparison");
    });
    return r;
}

SuiteResult suite_filtration(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "filtration";
    r.trials = o.trials < 0 ? 200 : o.trials;
    std::atomic<int> longest{0};
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        const std::uint64_t seed = trial_seed(o.seed, "filtration", k);
        std::mt19937_64 rng(seed ^ 0x2545f491ULL);
        DrawnTower d;
        try {
            d = draw_tower(seed, 2, 5, 3);
        } catch (const TowerDrawFailure& e) {
            return TrialFailure{k, "tower generation: " + e.message, e.script};
        }
        const Presentation& s = d.tower.star;
        std::vector<MultiGerm> gens;
        const int count = uniform(rng, 1, 3);
        for (int g = 0; g < count; ++g) {
            MultiGerm m = random_maximal(s, rng);
            if (uniform(rng, 0, 2) == 0) m = m * random_maximal(s, rng);
            gens.push_back(std::move(m));
        }
        json gj = json::array();
        for (const auto& g : gens) gj.push_back(emit_germ(g));
        json repro = json{{"tower", emit_script(d.script)}, {"generators", gj}};
        bool all_zero = true;
        for (const auto& g : gens)
            for (int i = 0; i < g.size(); ++i) all_zero = all_zero && g[i].is_zero();
        if (all_zero) return std::nullopt;
        try {
            const FiltrationReport f = ideal_filtration(s, gens);
            int cur = longest.load();
            const int len = static_cast<int>(f.steps.size());
            while (len > cur && !longest.compare_exchange_weak(cur, len)) {
            }
            if (!f.length_ok) return TrialFailure{k, "filtration longer than n", repro};
            for (const auto& st : f.steps) {
                const std::string at = "step at component " + std::to_string(st.component + 1) + ": ";
                if (!st.cyclic) return TrialFailure{k, at + "quotient is not cyclic", repro};
                if (!st.annihilator) return TrialFailure{k, at + "annihilator condition fails", repro};
                if (!st.not_inside) return TrialFailure{k, at + "I_i inside I_S", repro};
                if (!st.next_inside) return TrialFailure{k, at + "I_{i+1} not inside I_S", repro};
            }
            if (!f.respans) return TrialFailure{k, "filtration does not re-span the ideal", repro};
        } catch (const Error& e) {
            return TrialFailure{k, std::string(kind_name(e.kind())) + ": " + e.what(), repro};
        }
        return std::nullopt;
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    r.stats["longest"] = longest.load();
    return r;
}

// Random member of d whose coordinates 1..n-1 carry no x terms.
Vec random_t_only_head(const Presentation& d, std::mt19937_64& rng) {
    const Frame& f = d.frame();
    const int n = d.n();
    auto cols = f.columns_where([&](int i, int a, int) { return i < n - 1 && a >= 1; });
    const LinearSpace space = d.basis().zero_on(cols);
    Vec v = f.zero();
    for (const auto& row : space.rows()) axpy(v, Scalar(uniform(rng, -2, 2)), row);
    return v;
}

std::string cancellation_triple(const Presentation& d, std::mt19937_64& rng) {
    const Frame& f = d.frame();
    const int n = d.n();
    auto xcols = f.columns_where([](int, int a, int) { return a >= 1; });
    const LinearSpace slice = d.basis().zero_on(xcols);
    for (int attempt = 0; attempt < 50; ++attempt) {
        Vec u = f.zero(), v = f.zero(), r = f.zero();
        for (const auto& row : slice.rows()) axpy(u, Scalar(uniform(rng, -2, 2)), row);
        bool full = true;
        for (int i = 0; i < n; ++i) full = full && !f.component_zero(u, i);
        if (!full) continue;
        for (const auto& row : slice.rows()) axpy(v, Scalar(uniform(rng, -2, 2)), row);
        for (const auto& row : d.basis().rows()) axpy(r, Scalar(uniform(rng, -2, 2)), row);
        axpy(v, Scalar(1), f.mul(f.mul(f.xvar(), f.power(f.pi(), uniform(rng, 1, 2))), r));
        const auto ov = basic_orders(d, f.germ(v));
        const auto ow = basic_orders(d, f.germ(f.mul(u, v)));
        for (int i = 0; i < n; ++i) {
            const int want = std::min(ov[i] + f.t_valuation(u, i), d.q()[i]);
            if (ow[i] != want)
                return "component " + std::to_string(i + 1) + ": ord(uv) = " + std::to_string(ow[i]) + ", expected " +
                       std::to_string(want);
        }
        return {};
    }
    return "no t-only element with all coordinates nonzero";
}

SuiteResult suite_basic(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "basic-elements";
    r.trials = o.trials < 0 ? 100 : o.trials;
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        const std::uint64_t seed = trial_seed(o.seed, "basic-elements", k);
        std::mt19937_64 rng(seed);
        const int xdeg = uniform(rng, 2, 3);
        Presentation d;
        json source;
        if (k % 2 == 0) {
            const auto c = distinct_slopes(rng, uniform(rng, 2, 4));
            d = make_planes_deformation(c, xdeg);
            json cj = json::array();
            for (const auto& s : c) cj.push_back(emit_scalar(s));
            source = json{{"planes", cj}, {"xdeg", xdeg}};
        } else {
            BuilderScript s;
            s.seed = rng();
            s.xdeg = xdeg;
            s.random = RandomSpec{uniform(rng, 2, 4), 2};
            source = emit_script(s);
            try {
                d = run_script(s).result;
            } catch (const Error& e) {
                return TrialFailure{k, std::string("tower generation: ") + e.what(), source};
            }
        }
        try {
            const Vec v = random_t_only_head(d, rng);
            check_basic_completion(d, d.frame().germ(v));
            const std::string c = cancellation_triple(d, rng);
            if (!c.empty()) return TrialFailure{k, "cancellation: " + c, source};
        } catch (const Error& e) {
            return TrialFailure{k, std::string(kind_name(e.kind())) + ": " + e.what(), source};
        }
        return std::nullopt;
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    fixture(r, "planes c=(0,1,2): y completes with P_3 = 2t", [] {
        const int D = 3;
        auto comp = [&](std::initializer_list<Scalar> t) {
            BiPoly b(D, 2);
            int k = 0;
            for (const auto& c : t) b.at(0, k++) = c;
            return b;
        };
        MultiGerm y({comp({0, 0}), comp({0, 1}), comp({0, 2})});
        auto p = check_basic_completion(make_planes_deformation({0, 1, 2}, D), y);
        return p == TruncSeries({0, 2}, 2) ? std::string() : "P_3 = " + to_string(p);
    });
    fixture(r, "planes c=(0,1,2): x is refused", [] {
        const int D = 3;
        BiPoly x(D, 2);
        x.at(1, 0) = 1;
        auto b = is_basic(make_planes_deformation({0, 1, 2}, D), MultiGerm({x, x, x}), {2, 2, 2});
        return !b.basic && b.xpow == 1 && b.tpow == 0 ? std::string() : std::string("x accepted as basic");
    });
    return r;
}

SuiteResult suite_extraction(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "extraction";
    r.trials = o.trials < 0 ? 50 : o.trials;
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        const std::uint64_t seed = trial_seed(o.seed, "extraction", k);
        std::mt19937_64 rng(seed);
        BuilderScript s;
        s.seed = rng();
        s.xdeg = uniform(rng, 2, 3);
        s.random = RandomSpec{uniform(rng, 2, 4), 3};
        const json source = emit_script(s);
        try {
            const BuildResult built = run_script(s);
            BuilderScript star_script = built.resolved;
            star_script.xdeg = 1;
            for (auto& st : star_script.steps)
                for (auto& b : st.beta) b = b.resized_x(1);
            const Presentation base_star = extract_star(base_presentation(built.resolved.base, s.xdeg));
            const Presentation via_star = replay(base_star, star_script.steps);
            const ExtractReport rep = extract_star_report(built.result);
            if (!rep.ok()) return TrialFailure{k, "extraction check fails: " + join_failed(rep.checks), source};
            if (rep.star != via_star) return TrialFailure{k, "extract(extend) != extend(extract)", source};
        } catch (const Error& e) {
            return TrialFailure{k, std::string(kind_name(e.kind())) + ": " + e.what(), source};
        }
        return std::nullopt;
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    fixture(r, "extract(planes c) = lines c for 20 slope vectors", [&o] {
        std::mt19937_64 rng(trial_seed(o.seed, "extraction-slopes", 0));
        for (int k = 0; k < 20; ++k) {
            const auto c = distinct_slopes(rng, uniform(rng, 2, 4));
            const int D = uniform(rng, 2, 3);
            if (extract_star(make_planes_deformation(c, D)) != make_lines_star(c)) return "c = " + vec_text(c);
        }
        return std::string();
    });
    return r;
}

SuiteResult suite_theta(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "theta-mult";
    r.trials = o.trials < 0 ? 500 : o.trials;
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        std::mt19937_64 rng(trial_seed(o.seed, "theta-mult", k));
        const int p = uniform(rng, 1, 4), D = uniform(rng, p + 2, p + 4);
        const int df = uniform(rng, 0, D - 2);
        const int dg = uniform(rng, 0, D - 2 - df);
        const ThetaAutomorphism th{p, random_bipoly(rng, D, p, D - 1)};
        const BiPoly f = random_bipoly(rng, D, p + 1, df), g = random_bipoly(rng, D, p + 1, dg);
        json repro{{"p", p}, {"mu", emit_bipoly(th.mu)}, {"f", emit_bipoly(f)}, {"g", emit_bipoly(g)}};
        try {
            if (theta_apply(th, f * g) != theta_apply(th, f) * theta_apply(th, g))
                return TrialFailure{k, "theta(fg) != theta(f) theta(g)", repro};
            const BiPoly t = BiPoly::monomial(0, 1, D, p + 1);
            if (theta_apply(th, t) != t) return TrialFailure{k, "theta moves t", repro};
            // Terms cut at x^D feed back into degrees >= D - p under the inverse.
            const BiPoly back = theta_apply(theta_inverse(th), theta_apply(th, f));
            for (int a = 0; a < D - p; ++a)
                for (int b = 0; b <= p; ++b)
                    if (back.at(a, b) != f.at(a, b)) return TrialFailure{k, "inverse does not undo theta", repro};
        } catch (const Error& e) {
            return TrialFailure{k, std::string(kind_name(e.kind())) + ": " + e.what(), repro};
        }
        return std::nullopt;
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    fixture(r, "x -> x + t on x^2", [] {
        const int D = 4;
        ThetaAutomorphism one{2, BiPoly::monomial(0, 0, D, 2, 1)};
        BiPoly want(D, 3);
        want.at(2, 0) = 1;
        want.at(1, 1) = 2;
        want.at(0, 2) = 1;
        return theta_apply(one, BiPoly::monomial(2, 0, D, 3)) == want ? std::string() : std::string("mismatch");
    });
    return r;
}

// (a + alpha t^p, a + beta t^p) with a random.
std::pair<BiPoly, BiPoly> random_pair_element(std::mt19937_64& rng, int p, int D) {
    BiPoly a = random_bipoly(rng, D, p + 1, D - 1), b = a;
    for (int x = 0; x < D; ++x) b.at(x, p) = uniform(rng, -3, 3);
    return {a, b};
}

SuiteResult suite_ribbon(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "ribbon";
    r.trials = o.trials < 0 ? 100 : o.trials;
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        std::mt19937_64 rng(trial_seed(o.seed, "ribbon", k));
        const int p = uniform(rng, 1, 4), D = uniform(rng, 2, 4);
        auto [a1, a2] = random_pair_element(rng, p, D);
        auto [b1, b2] = random_pair_element(rng, p, D);
        json repro{{"p", p}, {"a", {emit_bipoly(a1), emit_bipoly(a2)}}, {"b", {emit_bipoly(b1), emit_bipoly(b2)}}};
        try {
            if (ribbon_quotient(p, a1 * b1, a2 * b2) != ribbon_mul(ribbon_quotient(p, a1, a2), ribbon_quotient(p, b1, b2)))
                return TrialFailure{k, "quotient is not multiplicative", repro};
        } catch (const Error& e) {
            return TrialFailure{k, std::string(kind_name(e.kind())) + ": " + e.what(), repro};
        }
        return std::nullopt;
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    for (int p = 1; p <= 4; ++p)
        fixture(r, "spanning set, p=" + std::to_string(p), [p] {
            for (int D = 2; D <= 4; ++D) {
                std::vector<std::pair<BiPoly, BiPoly>> span;
                for (int e = 0; e < D; ++e) {
                    for (int k = 0; k <= p; ++k)
                        span.emplace_back(BiPoly::monomial(e, k, D, p + 1), BiPoly::monomial(e, k, D, p + 1));
                    span.emplace_back(BiPoly::monomial(e, p, D, p + 1), BiPoly(D, p + 1));
                }
                for (const auto& [a1, a2] : span)
                    for (const auto& [b1, b2] : span)
                        if (ribbon_quotient(p, a1 * b1, a2 * b2) !=
                            ribbon_mul(ribbon_quotient(p, a1, a2), ribbon_quotient(p, b1, b2)))
                            return "D=" + std::to_string(D) + ": product of spanning elements";
            }
            return std::string();
        });
    return r;
}

SuiteResult suite_cocycle(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "cocycle";
    r.trials = o.trials < 0 ? 50 : o.trials;
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        std::mt19937_64 rng(trial_seed(o.seed, "cocycle", k));
        const int p = uniform(rng, 1, 4), D = uniform(rng, 2, 4);
        const BiPoly mu1 = random_bipoly(rng, D, p, D - 1);
        BiPoly mu2 = mu1;
        Vec tau(D);
        for (int x = 0; x < D; ++x) {
            tau[x] = uniform(rng, -3, 3);
            mu2.at(x, p - 1) += tau[x];
        }
        json repro{{"p", p}, {"mu1", emit_bipoly(mu1)}, {"mu2", emit_bipoly(mu2)}};
        try {
            const CocycleReport c = induced_cocycle(p, mu1, mu2);
            if (!c.ok) return TrialFailure{k, "cocycle identity fails: " + c.failure, repro};
            if (c.tau != tau) return TrialFailure{k, "tau not recovered", repro};
        } catch (const Error& e) {
            return TrialFailure{k, std::string(kind_name(e.kind())) + ": " + e.what(), repro};
        }
        return std::nullopt;
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    return r;
}

SuiteResult suite_kernel_flatness(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "kernel-flatness";
    r.trials = o.trials < 0 ? 200 : o.trials;
    std::atomic<int> free_count{0};
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        std::mt19937_64 rng(trial_seed(o.seed, "kernel-flatness", k));
        const NilpotentModule m = random_nilpotent_module(rng, 12);
        const bool oracle = naive_free_over_line(m.t, m.q);
        const bool fast = flatness_over_line(m.t, m.q);
        if (oracle) ++free_count;
        if (oracle == fast) return std::nullopt;
        json rows = json::array();
        for (const auto& row : m.t) {
            json jr = json::array();
            for (const auto& x : row) jr.push_back(emit_scalar(x));
            rows.push_back(jr);
        }
        return TrialFailure{k, std::string("criterion says ") + (fast ? "free" : "not free") + ", oracle disagrees",
                            json{{"q", m.q}, {"t", rows}, {"blocks", m.blocks}}};
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    r.stats["free"] = free_count.load();
    r.stats["not_free"] = r.trials - free_count.load();
    return r;
}

SuiteResult suite_kernel_linear(const SuiteOptions& o) {
    SuiteResult r;
    r.name = "kernel-linear";
    r.trials = o.trials < 0 ? 500 : o.trials;
    r.failures = run_trials(r.trials, o.threads, [&](int k) -> std::optional<TrialFailure> {
        const std::uint64_t seed = trial_seed(o.seed, "kernel-linear", k);
        std::mt19937_64 rng(seed);
        const std::string msg = cross_check_linear_space(rng);
        if (msg.empty()) return std::nullopt;
        return TrialFailure{k, msg, json{{"instance_seed", seed}}};
    });
    r.passed = r.trials - static_cast<int>(r.failures.size());
    return r;
}

}  // namespace

bool SuiteResult::ok() const {
    if (!failures.empty()) return false;
    for (const auto& f : fixtures)
        if (!f.ok) return false;
    return true;
}

std::uint64_t trial_seed(std::uint64_t seed, std::string_view salt, int trial) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : salt) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    std::uint64_t z = seed + h + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<TrialFailure> run_trials(int trials, int threads,
                                     const std::function<std::optional<TrialFailure>(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::max(1, std::min(threads, trials));
    std::vector<TrialFailure> out;
    std::mutex mu;
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next++; k < trials; k = next++) {
            std::optional<TrialFailure> f;
            try {
                f = fn(k);
            } catch (const std::exception& e) {
                f = TrialFailure{k, std::string("unexpected exception: ") + e.what(), json()};
            }
            if (f) {
                std::lock_guard lock(mu);
                out.push_back(std::move(*f));
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.trial < b.trial; });
    return out;
}

BuilderScript shrink_script(BuilderScript s, const std::function<bool(const Presentation&)>& still_fails) {
    auto fails = [&](const BuilderScript& c) {
        try {
            return still_fails(run_script(c).result);
        } catch (const Error&) {
            return false;
        }
    };
    bool changed = true;
    while (changed) {
        changed = false;
        while (!s.steps.empty()) {
            BuilderScript c = s;
            c.steps.pop_back();
            if (!fails(c)) break;
            s = std::move(c);
            changed = true;
        }
        if (s.base.fixture == "pair" && s.base.p > 1) {
            BuilderScript c = s;
            --c.base.p;
            if (fails(c)) {
                s = std::move(c);
                changed = true;
            }
        }
        for (size_t k = 0; k < s.steps.size(); ++k)
            for (size_t i = 0; i < s.steps[k].p_new.size(); ++i) {
                if (s.steps[k].p_new[i] <= 1) continue;
                BuilderScript c = s;
                --c.steps[k].p_new[i];
                if (fails(c)) {
                    s = std::move(c);
                    changed = true;
                }
            }
    }
    return s;
}

json to_json(const SuiteResult& r) {
    json j;
    j["suite"] = r.name;
    j["ok"] = r.ok();
    j["trials"] = r.trials;
    j["passed"] = r.passed;
    json fx = json::array();
    for (const auto& f : r.fixtures) {
        json e{{"name", f.name}, {"ok", f.ok}};
        if (!f.ok) e["witness"] = f.detail;
        fx.push_back(e);
    }
    j["fixtures"] = fx;
    json fl = json::array();
    for (const auto& f : r.failures) {
        json e{{"trial", f.trial}, {"message", f.message}};
        if (!f.reproducer.is_null()) e["reproducer"] = f.reproducer;
        fl.push_back(e);
    }
    j["failures"] = fl;
    j["stats"] = r.stats;
    return j;
}

const std::vector<Suite>& suites() {
    static const std::vector<Suite> all = {
        {"ultrametric", "spectrum ultrametric law and q_i = sum_j p_ij on random towers", 500, suite_ultrametric},
        {"lambda-laws", "lambda: dim J = n-1, nonzero entries, product law; lines oracle", 200, suite_lambda},
        {"unit-constants", "multiplicative, reciprocal and sign laws of the unit constants", 200, suite_unit_constants},
        {"constructor", "quotient certificates on nondegenerate steps; collapse on crafted degenerate steps", 200,
         suite_constructor},
        {"oblateness", "fiber verdict against embedding dimension; initial stars", 200, suite_oblateness},
        {"ideals", "single-generator span equality for every proper sub-star ideal", 60, suite_ideals},
        {"morphisms", "deepened stars: strict inclusion, dominance, non-flatness witness", 100, suite_morphisms},
        {"filtration", "ideal filtrations of random proper ideals", 200, suite_filtration},
        {"basic-elements", "basic completions and the cancellation property", 100, suite_basic},
        {"extraction", "star extraction commutes with extension on deformation towers", 50, suite_extraction},
        {"theta-mult", "theta substitution is multiplicative and invertible", 500, suite_theta},
        {"ribbon", "the quotient to the ribbon is a ring map", 100, suite_ribbon},
        {"cocycle", "induced cocycle identity with tau recovered", 50, suite_cocycle},
        {"kernel-flatness", "flatness criterion against the generator-basis oracle", 200, suite_kernel_flatness},
        {"kernel-linear", "linear-space operations against naive elimination", 500, suite_kernel_linear},
    };
    return all;
}

const Suite* find_suite(std::string_view name) {
    for (const auto& s : suites())
        if (s.name == name) return &s;
    return nullptr;
}

}  // namespace starforge::harness
