#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

using namespace scalekit;

TEST_CASE("diagonal identities")
{
    const Entourage d = Entourage::diagonal(6);
    CHECK(invert(d) == d);
    auto g = oracle::rng(31);
    const Entourage e = oracle::random_relation(g, 6, 0.3);
    CHECK(compose(e, d) == e);
    CHECK(compose(d, e) == e);
    CHECK(entourage_of_scale(singleton_cover(6)) == d);
    CHECK(same_elements(scale_of_entourage(d), singleton_cover(6)));
    CHECK_THROWS_AS(scale_of_entourage(Entourage(3, {{0, 1}})), Error);
    CHECK_THROWS_AS(Entourage(3, {{0, 3}}), Error);
}

TEST_CASE("compose and slice match the definitions")
{
    auto g = oracle::rng(32);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = oracle::pick(g, 1, 12);
        const Entourage e = oracle::random_relation(g, n, oracle::uniform(g, 0.05, 0.4));
        const Entourage f = oracle::random_relation(g, n, oracle::uniform(g, 0.05, 0.4));
        const Entourage h = oracle::random_relation(g, n, oracle::uniform(g, 0.05, 0.4));
        CHECK(compose(e, f).pairs() == oracle::compose_pairs(e, f));
        CHECK(compose(compose(e, f), h) == compose(e, compose(f, h)));
        for (Index x = 0; x < n; ++x) {
            PointSet expect(n);
            for (Index y = 0; y < n; ++y)
                if (e.contains(y, x))
                    expect.set(y);
            CHECK(slice(e, x) == expect);
        }
        const Entourage inv = invert(e);
        for (const auto& [x, y] : inv.pairs())
            CHECK(e.contains(y, x));
        CHECK(inv.size() == e.size());
    }
}

TEST_CASE("cover round trip is the point-star cover")
{
    auto g = oracle::rng(33);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = oracle::pick(g, 1, 20);
        const Cover u = oracle::random_cover(g, n, oracle::pick(g, 0, 6), 0.2);
        const Cover back = scale_of_entourage(entourage_of_scale(u));
        REQUIRE(back.size() == n);
        for (Index x = 0; x < n; ++x)
            CHECK(back[x] == oracle::star(singleton(n, x), u));
    }
}

TEST_CASE("entourage of a cover is symmetric and contains the diagonal iff the cover is a scale")
{
    auto g = oracle::rng(34);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = oracle::pick(g, 1, 15);
        const Cover u = oracle::random_cover(g, n, oracle::pick(g, 1, 5), 0.2, oracle::coin(g, 0.5));
        const Entourage e = entourage_of_scale(u);
        CHECK(e.is_symmetric());
        CHECK(e.contains_diagonal() == u.is_scale());
    }
}

TEST_CASE("uniform axioms on metric entourages")
{
    const Space l = builder_line(20, 1.0);
    std::vector<Entourage> base;
    for (double r : {1.0, 0.5, 0.25})
        base.push_back(metric_entourage(l, r, true));
    CHECK(check_uniform_axioms(base).pass);

    const Space fine = builder_line(160, 0.125);
    std::vector<Entourage> fine_base;
    for (double r : {1.0, 0.5, 0.25})
        fine_base.push_back(metric_entourage(fine, r, true));
    const BaseReport closed = check_uniform_axioms(fine_base);
    CHECK_FALSE(closed.pass);
    REQUIRE(closed.counterexample);
    CHECK(*closed.counterexample == std::pair<std::size_t, std::size_t>{0, 2});
    const BaseReport open = check_uniform_axioms(fine_base, true);
    CHECK(open.pass);
    CHECK(open.notes.size() == 1);
}

TEST_CASE("coarse axioms on metric entourages")
{
    const Space l = builder_line(64, 1.0);
    std::vector<Entourage> base;
    for (double r : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0})
        base.push_back(metric_entourage(l, r, false));
    const BaseReport closed = check_coarse_axioms(base);
    CHECK_FALSE(closed.pass);
    REQUIRE(closed.counterexample);
    CHECK(closed.counterexample->second == 5);
    CHECK(check_coarse_axioms(base, true).pass);

    const std::vector<Entourage> diag{Entourage::diagonal(5)};
    CHECK(check_uniform_axioms(diag).pass);
    CHECK(check_coarse_axioms(diag).pass);
}

TEST_CASE("closed metric entourages add radii")
{
    auto g = oracle::rng(35);
    for (int t = 0; t < 20; ++t) {
        const Space s = oracle::random_metric_space(g, oracle::pick(g, 3, 15), oracle::coin(g, 0.5));
        REQUIRE(s.triangle_inequality());
        const double r = oracle::uniform(g, 0.5, 10.0), q = oracle::uniform(g, 0.5, 10.0);
        CHECK(compose(metric_entourage(s, r, false), metric_entourage(s, q, false))
                  .is_subset_of(metric_entourage(s, r + q + 1e-9, false)));
    }
}

TEST_CASE("large-scale cover bases give coarse entourage bases")
{
    auto g = oracle::rng(36);
    std::vector<Space> spaces{builder_line(80, 1.0), builder_grid(6)};
    for (int t = 0; t < 10; ++t)
        spaces.push_back(oracle::random_metric_space(g, oracle::pick(g, 5, 25), oracle::coin(g, 0.5)));
    for (const auto& s : spaces) {
        const MetricBase mb = metric_ls_base(s, {1, 3, 9, 27});
        std::vector<Entourage> ents;
        for (const auto& u : mb.base.scales)
            ents.push_back(entourage_of_scale(u));
        const BaseReport covers = check_ls_base(mb.base);
        const BaseReport pairs = check_coarse_axioms(ents, true);
        if (covers.pass)
            CHECK(pairs.pass);
    }

    // a triangle of pairs: its entourage is complete, its star is not a refinement
    const Cover tri(3, {make_set(3, {0, 1}), make_set(3, {1, 2}), make_set(3, {0, 2})});
    CHECK(check_coarse_axioms({entourage_of_scale(tri)}).pass);
    CHECK_FALSE(check_ls_base(ScaleBase{{tri}, Direction::Large}).pass);
}
