#include <doctest.h>

#include "starforge/errors.hpp"
#include "starforge/star.hpp"

using namespace starforge;

namespace {

Presentation lines012() { return make_lines_star({0, 1, 2}); }

MultiGerm germ(std::vector<TruncSeries> s) { return MultiGerm::from_series(s); }

}  // namespace

TEST_CASE("validation") {
    CHECK(validate(make_congruence_pair_star(3)).valid());
    CHECK(validate(lines012()).valid());

    auto pair = make_congruence_pair_star(2);
    std::vector<Vec> rows = pair.basis().rows();
    rows.push_back(pair.frame().unit(0, 0, 0));
    auto bad = Presentation::from_vectors(pair.frame(), rows);
    auto rep = validate(bad);
    REQUIRE(!rep.valid());
    bool agreement_failed = false;
    for (const auto& c : rep.checks)
        if (c.name == "agreement at P") agreement_failed = !c.ok;
    CHECK(agreement_failed);

    // at levels (2,2,2) every product of non-units vanishes, so closure can
    // only break from four lines on
    auto lines = make_lines_star({0, 1, 2, 3});
    std::vector<Vec> cut = lines.basis().rows();
    cut.pop_back();
    auto broken = validate(Presentation::from_vectors(lines.frame(), cut));
    bool closure_failed = false;
    for (const auto& c : broken.checks)
        if (c.name == "multiplicative closure") closure_failed = !c.ok;
    CHECK(closure_failed);
}

TEST_CASE("fixtures and spectra") {
    auto p1 = make_congruence_pair_star(1);
    CHECK(p1.dim() == 1);
    CHECK(spectrum(p1) == Spectrum{{0, 1}, {1, 0}});
    CHECK(spectrum(make_congruence_pair_star(3)) == Spectrum{{0, 3}, {3, 0}});
    CHECK(make_congruence_pair_star(3).dim() == 3);
    CHECK(make_lines_star({0, 1}) == p1);
    CHECK(lines012().dim() == 3);
    CHECK(spectrum(lines012()) == Spectrum{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK_THROWS_AS(make_lines_star({1, 1}), Error);
    CHECK(make_branch_star({TruncSeries({0, 0}, 2), TruncSeries({0, 1}, 2), TruncSeries({0, 2}, 2)}) == lines012());
}

TEST_CASE("membership") {
    auto l = lines012();
    CHECK(membership(l, germ({TruncSeries({0, 1}, 2), TruncSeries({0, 1}, 2), TruncSeries({0, 1}, 2)})));
    CHECK(membership(l, germ({TruncSeries(2), TruncSeries({0, 1}, 2), TruncSeries({0, 2}, 2)})));
    CHECK(!membership(l, germ({TruncSeries({0, 1}, 2), TruncSeries(2), TruncSeries(2)})));
    // arbitrary degree: high terms fall into the level ideal
    CHECK(membership(l, germ({TruncSeries({0, 1, 5, 7}, 4), TruncSeries({0, 1}, 2), TruncSeries({0, 1, 0, 9}, 4)})));
}

TEST_CASE("lambda") {
    CHECK(lambda(make_congruence_pair_star(2)) == std::vector<Scalar>{1, -1});
    CHECK(lambda(lines012()) == std::vector<Scalar>{1, -2, 1});
}

TEST_CASE("fibers and embedding dimension") {
    auto f = fiber_algebra(lines012());
    CHECK(f.dim == 3);
    CHECK(f.oblate);
    CHECK(embedding_dimension(lines012()) == 2);
    CHECK(embedding_dimension(make_congruence_pair_star(1)) == 2);
    auto pf = fiber_algebra(make_congruence_pair_star(4));
    CHECK(pf.dim == 2);
    CHECK(pf.nilpotency == 2);
    CHECK(pf.oblate);
    auto init = make_initial_star(3);
    CHECK(validate(init).valid());
    CHECK(embedding_dimension(init) == 3);
    auto fi = fiber_algebra(init);
    CHECK(fi.dim == 3);
    CHECK(!fi.oblate);
}

TEST_CASE("pair generators and unit constants") {
    auto l = lines012();
    auto v31 = pair_generator(l, 2, 0);
    CHECK(v31.b[1] == frac(1, 2));
    CHECK(v31.germ[0].at(0, 1) == 1);
    CHECK(v31.germ[1].at(0, 1) == frac(1, 2));
    CHECK(v31.germ[2].is_zero());
    auto v12 = pair_generator(l, 0, 1);
    CHECK(v12.b == std::vector<Scalar>{0, 1, 2});

    auto pair = pair_generator(make_congruence_pair_star(3), 0, 1);
    CHECK(pair.germ[0].is_zero());
    CHECK(pair.germ[1] == BiPoly::monomial(0, 3, 1, 4));

    auto t = unit_constants(l);
    CHECK(t.lambda[0] / t.lambda[1] == -t.b[2][0][1]);
    CHECK(t.b[0][1][2] * t.b[0][2][1] == 1);
    CHECK(unit_constants(make_congruence_pair_star(2)).ok());
}

TEST_CASE("sub-star ideals") {
    auto l = lines012();
    for (std::vector<int> I : {std::vector<int>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) CHECK(substar_ideal_report(l, I).equal);
    auto r = substar_ideal(l, {0, 1});
    auto g = l.headroom(1).frame().germ(r.generator);
    CHECK(g[0].is_zero());
    CHECK(g[1].is_zero());
    CHECK(g[2].t_valuation() == 2);
    auto pr = substar_ideal(make_congruence_pair_star(2), {0});
    CHECK(make_congruence_pair_star(2).headroom(1).frame().germ(pr.generator)[1] == BiPoly::monomial(0, 2, 1, 3));
}

TEST_CASE("connectors") {
    auto pc = connector(make_congruence_pair_star(3), 1);
    CHECK(pc.ok());
    auto l = lines012();
    auto c = connector(l, 2);
    CHECK(c.ok());
    Vec y = l.frame().flatten(germ({TruncSeries(2), TruncSeries({0, 1}, 2), TruncSeries({0, 2}, 2)}));
    CHECK(c.apply(c.project(y)) == BiPoly::monomial(0, 1, 1, 2, 2));
}
