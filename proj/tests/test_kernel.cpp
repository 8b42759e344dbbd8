#include <doctest.h>

#include "starforge/bipoly.hpp"
#include "starforge/errors.hpp"
#include "starforge/linear_space.hpp"
#include "starforge/series.hpp"

#include <algorithm>
#include <random>

using namespace starforge;

namespace {

TruncSeries random_series(std::mt19937_64& rng, int q, bool unit) {
    std::uniform_int_distribution<int> d(-5, 5);
    TruncSeries s(q);
    for (int k = 0; k < q; ++k) s[k] = frac(d(rng), 1 + std::abs(d(rng)));
    if (unit && is_zero(s[0])) s[0] = 1;
    return s;
}

}  // namespace

TEST_CASE("series products") {
    CHECK(TruncSeries({1, 1}, 3) * TruncSeries({1, -1}, 3) == TruncSeries({1, 0, -1}, 3));
    CHECK((TruncSeries({0, 1}, 2) * TruncSeries({0, 1}, 2)).is_zero());
    CHECK(TruncSeries({1, 1, 1}, 3) * TruncSeries({1, -1}, 3) == TruncSeries({1}, 3));
    CHECK_THROWS_AS(TruncSeries(2) * TruncSeries(3), Error);
}

TEST_CASE("series inverses") {
    CHECK(series_inverse(TruncSeries({1}, 4)) == TruncSeries({1}, 4));
    CHECK(series_inverse(TruncSeries({1, -1}, 3)) == TruncSeries({1, 1, 1}, 3));
    CHECK(series_inverse(TruncSeries({2, 1}, 2)) == TruncSeries({frac(1, 2), frac(-1, 4)}, 2));
    try {
        series_inverse(TruncSeries({0, 1}, 3));
        FAIL("expected NotAUnit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAUnit);
    }

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const int q = 1 + trial % 12;
        TruncSeries a = random_series(rng, q, true);
        CHECK(a * a.inverse() == TruncSeries::constant(1, q));
    }
}

TEST_CASE("ring axioms and valuations") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int q = 1 + trial % 9;
        auto a = random_series(rng, q, false), b = random_series(rng, q, false), c = random_series(rng, q, false);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        auto sa = a.shift(trial % 3), sb = b.shift(trial % 2);
        if (sa.valuation() + sb.valuation() < q) CHECK((sa * sb).valuation() == sa.valuation() + sb.valuation());
    }
    BiPoly x = BiPoly::monomial(1, 0, 3, 3), t = BiPoly::monomial(0, 1, 3, 3);
    BiPoly u = BiPoly::monomial(0, 0, 3, 3) + x + t;
    CHECK(u * u.inverse() == BiPoly::monomial(0, 0, 3, 3));
    CHECK((x * x * x).is_zero());
    CHECK((x * t) * u == x * (t * u));
}

TEST_CASE("linear spaces") {
    CHECK(LinearSpace::span(2, {{1, 0}, {0, 1}}).dim() == 2);
    CHECK(LinearSpace::span(2, {{1, 1}, {2, 2}}).dim() == 1);
    CHECK(LinearSpace::span(4, {{1, 0, 1, 0}, {0, 1, 0, 1}, {0, 1, 0, 0}}).member({0, 1, 0, 2}));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec> rows(4, Vec(6));
        for (auto& r : rows)
            for (auto& x : r) x = d(rng);
        auto shuffled = rows;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(LinearSpace::span(6, rows) == LinearSpace::span(6, shuffled));
        auto sol = solve_in_span(rows, rows[0]);
        REQUIRE(sol);
        Vec back(6);
        for (size_t k = 0; k < rows.size(); ++k) axpy(back, (*sol)[k], rows[k]);
        CHECK(back == rows[0]);
    }
    LinearSpace a = LinearSpace::span(3, {{1, 0, 0}, {0, 1, 0}});
    LinearSpace b = LinearSpace::span(3, {{0, 1, 0}, {0, 0, 1}});
    CHECK(a.intersect(b) == LinearSpace::span(3, {{0, 1, 0}}));
    CHECK(a.sum(b).dim() == 3);
}

TEST_CASE("scalar text form") {
    CHECK(to_string(Scalar(3)) == "3/1");
    CHECK(to_string(frac(-6, 4)) == "-3/2");
    CHECK(parse_scalar("-3/2") == frac(-3, 2));
    CHECK(parse_scalar("5") == Scalar(5));
    CHECK_THROWS_AS(parse_scalar("1/0"), Error);
    CHECK_THROWS_AS(parse_scalar("x"), Error);
}
