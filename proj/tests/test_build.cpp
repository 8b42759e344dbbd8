#include <doctest.h>

#include "starforge/build.hpp"
#include "starforge/errors.hpp"

using namespace starforge;

namespace {

ExtensionStep constant_step(std::vector<int> p, std::vector<Scalar> b, int xdeg = 1) {
    ExtensionStep s{std::move(p), {}};
    for (const auto& c : b) s.beta.push_back(BiPoly::monomial(0, 0, xdeg, 1, c));
    return s;
}

Presentation tower_fixture() { return extend_star(make_congruence_pair_star(1), constant_step({1, 1}, {1, 2})); }

}  // namespace

TEST_CASE("nondegeneracy values") {
    auto p1 = make_congruence_pair_star(1);
    CHECK(nondegeneracy(p1, constant_step({1, 1}, {1, 2})) == frac(1, 2));
    CHECK(nondegeneracy(p1, constant_step({1, 1}, {1, 1})) == 0);
    CHECK(nondegeneracy(make_lines_star({0, 1, 2}), constant_step({1, 1, 1}, {1, 1, 1})) == 0);
}

TEST_CASE("quotient of the worked step") {
    auto p1 = make_congruence_pair_star(1);
    auto r = quotient(p1, constant_step({1, 1}, {1, 2}));
    CHECK(r.b_ext.dim() == 3);
    CHECK(r.u_span.dim() == 1);
    CHECK(r.dim_q == 2);
    CHECK(r.top_power_zero);
    CHECK(r.below_top_nonzero);
    CHECK(r.flat);

    auto deg = analyze_quotient(p1, constant_step({1, 1}, {1, 1}));
    CHECK(deg.nilpotency < deg.q_n);
    try {
        quotient(p1, constant_step({1, 1}, {1, 1}));
        FAIL("expected a degenerate extension");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateExtension);
    }
}

TEST_CASE("tower fixture") {
    auto t = tower_fixture();
    CHECK(t.q() == std::vector<int>{2, 2, 2});
    CHECK(t.dim() == 3);
    CHECK(validate(t).valid());
    CHECK(spectrum(t) == Spectrum{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(lambda(t) == std::vector<Scalar>{1, frac(-1, 2), frac(-1, 2)});
    const Frame& f = t.frame();
    Vec w = f.zero();
    w[f.index(0, 0, 1)] = 1;
    w[f.index(2, 0, 1)] = 2;
    CHECK(t.member_vec(w));
    CHECK(fiber_algebra(t).oblate);
}

TEST_CASE("flatness over the line") {
    auto shift = [](int d, int q) {
        std::vector<Vec> t(d, Vec(d));
        for (int k = 0; k + 1 < d; ++k)
            if ((k + 1) % q != 0) t[k + 1][k] = 1;
        return t;
    };
    CHECK(flatness_over_line(shift(4, 4), 4));
    CHECK(flatness_over_line(shift(6, 3), 3));
    CHECK(!flatness_over_line(shift(3, 3), 4));
    CHECK_THROWS_AS(flatness_over_line(shift(4, 4), 3), Error);
}

TEST_CASE("random towers") {
    auto t1 = random_tower(1, 2, 3);
    CHECK(t1.star == make_congruence_pair_star(t1.base_p));
    for (std::uint64_t seed : {42u, 7u, 99u}) {
        auto t = random_tower(seed, 4, 3);
        CHECK(t.star.n() == 4);
        CHECK(validate(t.star).valid());
        auto sp = spectrum(t.star);
        int sum = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) sum += sp[i][j];
        CHECK(t.star.dim() == sum);
        CHECK(fiber_algebra(t.star).oblate);
        CHECK(embedding_dimension(t.star) == 2);
        CHECK(replay(make_congruence_pair_star(t.base_p), t.steps) == t.star);
    }
}

TEST_CASE("crafted degenerate steps") {
    std::mt19937_64 rng(5);
    std::vector<Presentation> bases = {make_congruence_pair_star(1), make_congruence_pair_star(3),
                                       make_lines_star({0, 1, 2}), make_lines_star({0, 1, 3, -2}),
                                       make_branch_star({TruncSeries({0, 0, 1}, 3), TruncSeries({0, 0, 2}, 3),
                                                         TruncSeries({0, 0, -1}, 3)})};
    for (const auto& s : bases) {
        for (int trial = 0; trial < 4; ++trial) {
            auto step = degenerate_step(s, rng);
            REQUIRE(step);
            CHECK(nondegeneracy(s, *step) == 0);
            auto r = analyze_quotient(s, *step);
            CHECK(r.nilpotency < r.q_n);
            CHECK_THROWS_AS(extend_star(s, *step), Error);
        }
    }
    CHECK(!degenerate_step(make_branch_star({TruncSeries({0, 1}, 3), TruncSeries({0, 0, 1}, 3),
                                             TruncSeries({0, 0, 0}, 3)}), rng));
}

TEST_CASE("vanishing sum with unequal new levels") {
    // y = 0, y = t^2 and a new branch y = t: the sum vanishes but Q does not collapse.
    auto s = make_congruence_pair_star(2);
    ExtensionStep st{{1, 1}, {BiPoly::from_series(TruncSeries({-1}, 2), 1), BiPoly::from_series(TruncSeries({-1, 1}, 2), 1)}};
    CHECK(nondegeneracy(s, st) == 0);
    auto r = analyze_quotient(s, st);
    CHECK(r.nilpotency == r.q_n);
    CHECK(r.flat);
}

TEST_CASE("cotangent generation") {
    auto p1 = make_congruence_pair_star(1);
    CHECK(generates_cotangent(p1, constant_step({1, 1}, {1, 2})));
    CHECK(!generates_cotangent(p1, constant_step({1, 1}, {1, 1})));

    auto s = make_congruence_pair_star(2);
    ExtensionStep st{{1, 1}, {BiPoly::from_series(TruncSeries({-1}, 2), 1), BiPoly::from_series(TruncSeries({-1, 1}, 2), 1)}};
    CHECK(generates_cotangent(s, st));

    // u = pi (1 + pi) on the pair p = 2.
    ExtensionStep pi_step{{1, 1}, {BiPoly::from_series(TruncSeries({1, 1}, 2), 1), BiPoly::from_series(TruncSeries({1, 1}, 2), 1)}};
    CHECK(!generates_cotangent(s, pi_step));
    try {
        quotient(s, pi_step);
        FAIL("expected a rejected step");
    } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::DegenerateInput || e.kind() == ErrorKind::DegenerateExtension));
    }

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 3; ++trial) {
        auto d = degenerate_step(make_lines_star({0, 1, 2}), rng);
        REQUIRE(d);
        CHECK(!generates_cotangent(make_lines_star({0, 1, 2}), *d));
    }
}
