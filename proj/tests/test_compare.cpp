#include <doctest.h>

#include "starforge/build.hpp"
#include "starforge/compare.hpp"
#include "starforge/errors.hpp"

#include <random>

using namespace starforge;

namespace {

Presentation tower_fixture() {
    ExtensionStep st{{1, 1}, {BiPoly::monomial(0, 0, 1, 1, 1), BiPoly::monomial(0, 0, 1, 1, 2)}};
    return extend_star(make_congruence_pair_star(1), st);
}

MultiGerm series_germ(std::vector<TruncSeries> s) { return MultiGerm::from_series(s); }

std::vector<int> step_levels(const FiltrationReport& r) {
    std::vector<int> out;
    for (const auto& s : r.steps) out.push_back(s.level);
    return out;
}

std::vector<int> step_components(const FiltrationReport& r) {
    std::vector<int> out;
    for (const auto& s : r.steps) out.push_back(s.component);
    return out;
}

// Random element of the maximal ideal.
MultiGerm random_maximal(const Presentation& s, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-2, 2);
    const Frame& f = s.frame();
    Vec v = f.zero();
    for (const auto& row : s.basis().rows()) axpy(v, Scalar(coef(rng)), row);
    Scalar at_p = v[f.index(0, 0, 0)];
    axpy(v, -at_p, f.one());
    return f.germ(v);
}

}  // namespace

TEST_CASE("comparison verdicts") {
    auto p1 = make_congruence_pair_star(1);
    auto p2 = make_congruence_pair_star(2);
    auto r = compare_stars(p1, p2);
    CHECK(r.verdict == Verdict::StrictlyIncluded);
    CHECK(r.smaller == 1);
    CHECK(r.dominance);
    REQUIRE(r.gap);
    CHECK(*r.gap == std::make_pair(0, 1));

    CHECK(compare_stars(p2, p2).verdict == Verdict::Identical);

    auto lines = compare_stars(tower_fixture(), make_lines_star({0, 1, 2}));
    CHECK(lines.spectra_equal);
    CHECK(!lines.spans_equal);
    CHECK(lines.verdict == Verdict::Incomparable);

    CHECK_THROWS_AS(compare_stars(p1, tower_fixture()), Error);
}

TEST_CASE("non-flatness witness for nested pairs") {
    auto w = nonflatness_witness(make_congruence_pair_star(2), make_congruence_pair_star(1));
    CHECK(w.component == 0);
    CHECK(w.u[0].is_zero());
    CHECK(w.u[1].t_valuation() == 2);
    CHECK(w.v[0].to_series().valuation() == 1);
    CHECK(w.v[1].is_zero());
    CHECK(w.product_zero);
    CHECK(w.phi == TruncSeries({0, 1}, 2));
    CHECK(w.well_defined);

    try {
        nonflatness_witness(make_congruence_pair_star(2), make_congruence_pair_star(2));
        FAIL("expected NotApplicable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotApplicable);
    }
}

TEST_CASE("plane branches reproduce the star") {
    CHECK(make_branch_star(plane_branches(make_lines_star({0, 1, 2}))) == make_lines_star({0, 1, 2}));
    CHECK(make_branch_star(plane_branches(tower_fixture())) == tower_fixture());
    for (std::uint64_t seed : {3u, 11u, 20u}) {
        auto t = random_tower(seed, 4, 3).star;
        CHECK(make_branch_star(plane_branches(t)) == t);
    }
    CHECK_THROWS_AS(plane_branches(make_initial_star(3)), Error);
}

TEST_CASE("deepened stars are nested") {
    for (std::uint64_t seed : {1u, 5u, 8u, 13u}) {
        auto t = random_tower(seed, 4, 2).star;
        CHECK(compare_stars(deepen(t, 0, 1), t).verdict == Verdict::Identical);
        auto d1 = deepen(t, 1, frac(1, 7));
        auto r = compare_stars(d1, t);
        CHECK(r.verdict == Verdict::StrictlyIncluded);
        CHECK(r.smaller == 0);
        CHECK(r.dominance);
        CHECK(r.gap);
        CHECK(nonflatness_witness(d1, t).ok());
        auto d2 = deepen(d1, 1, frac(-2, 5));
        CHECK(compare_stars(d2, t).smaller == 0);
        CHECK(compare_stars(t, d2).smaller == 1);
    }
}

TEST_CASE("ideal filtrations") {
    auto p2 = make_congruence_pair_star(2);
    auto pi = ideal_filtration(p2, {series_germ({TruncSeries({0, 1}, 2), TruncSeries({0, 1}, 2)})});
    CHECK(pi.ok());
    CHECK(step_components(pi) == std::vector<int>{0, 1});
    CHECK(step_levels(pi) == std::vector<int>{1, 3});

    for (int p = 1; p <= 3; ++p) {
        auto s1 = ideal_filtration(make_congruence_pair_star(p),
                                   {series_germ({TruncSeries(1), TruncSeries::monomial(p, p + 1)})});
        CHECK(s1.ok());
        CHECK(step_components(s1) == std::vector<int>{1});
        CHECK(step_levels(s1) == std::vector<int>{p});
    }

    auto lines = make_lines_star({0, 1, 2});
    auto m = ideal_filtration(lines, {series_germ({TruncSeries({0, 1}, 2), TruncSeries({0, 1}, 2), TruncSeries({0, 1}, 2)}),
                                      series_germ({TruncSeries(2), TruncSeries({0, 1}, 2), TruncSeries({0, 2}, 2)})});
    CHECK(m.ok());
    CHECK(step_levels(m) == std::vector<int>{1, 1, 2});

    CHECK_THROWS_AS(ideal_filtration(p2, {series_germ({TruncSeries({1}, 1), TruncSeries({1}, 1)})}), Error);

    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto t = random_tower(seed, 4, 2).star;
        std::vector<MultiGerm> gens{random_maximal(t, rng), random_maximal(t, rng)};
        auto r = ideal_filtration(t, gens);
        CHECK(r.ok());
    }
}
