#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"

using namespace scalekit;

TEST_CASE("ball covers match the open-ball definition")
{
    auto g = oracle::rng(41);
    for (int t = 0; t < 30; ++t) {
        const Space s = oracle::random_metric_space(g, oracle::pick(g, 2, 20), oracle::coin(g, 0.5));
        const double r = oracle::uniform(g, 0.1, 25.0);
        const BallCover b = ball_cover(s, r);
        CHECK(b.cover == oracle::open_balls(s, r));
        REQUIRE(b.centers.size() == s.size());
        for (Index x = 0; x < s.size(); ++x)
            CHECK(b.centers[x] == x);
    }
    const Space l = builder_line(10, 1.0);
    CHECK(ball(l, 5, 2.0) == make_set(11, {4, 5, 6}));
    CHECK(ball(l, 0, 0.5) == singleton(11, 0));
    CHECK_THROWS_AS(ball_cover(Space({"a"}), 1.0), Error);
}

TEST_CASE("diameter")
{
    const Space l = builder_line(10, 1.0);
    CHECK(diameter(l, make_set(11, {2, 7, 4})) == 5.0);
    CHECK(diameter(l, singleton(11, 3)) == 0.0);
    CHECK(diameter(l, PointSet(11)) == 0.0);
    CHECK(candidate_radii(l).size() == 11);
    CHECK(candidate_radii(l).front() == 0.0);
}

TEST_CASE("lebesgue number and mesh examples on the line")
{
    const Space l = builder_line(10, 1.0);
    const Cover one = singleton_cover(l.size());
    CHECK(lebesgue_number(l, one).value == 1.0);
    CHECK(mesh(l, one).value == 0.0);
    const Cover whole(l.size(), {full_set(l.size())});
    CHECK(std::isinf(lebesgue_number(l, whole).value));
    CHECK(mesh(l, whole).value == 5.0);
    CHECK(mesh(l, whole).value == oracle::mesh_scan(l, whole));

    const Space l20 = builder_line(20, 1.0);
    Cover thirds(l20.size());
    for (auto [lo, hi] : {std::pair{0, 7}, std::pair{7, 14}, std::pair{14, 20}})
        thirds.add(coordinate_window(l20, lo, hi));
    CHECK(lebesgue_number(l20, thirds).value == oracle::lebesgue_scan(l20, thirds));
    CHECK(mesh(l20, thirds).value == oracle::mesh_scan(l20, thirds));
}

TEST_CASE("scans agree with the interval-by-interval oracle")
{
    auto g = oracle::rng(42);
    for (int t = 0; t < 60; ++t) {
        const Space s = oracle::random_metric_space(g, oracle::pick(g, 2, 12), oracle::coin(g, 0.5));
        const Cover u = oracle::random_cover(g, s.size(), oracle::pick(g, 0, 5), oracle::uniform(g, 0.1, 0.6));
        CAPTURE(t);
        CHECK(lebesgue_number(s, u).value == oracle::lebesgue_scan(s, u));
        CHECK(mesh(s, u).value == oracle::mesh_scan(s, u));
        for (const auto& e : u.elements())
            CHECK(diameter(s, e) <= 2 * mesh(s, u).value);
    }
}

TEST_CASE("lebesgue number and mesh are monotone under refinement")
{
    auto g = oracle::rng(43);
    for (int t = 0; t < 40; ++t) {
        const Space s = oracle::random_metric_space(g, oracle::pick(g, 3, 12), true);
        const Cover u = oracle::random_cover(g, s.size(), oracle::pick(g, 1, 4), 0.2);
        Cover v = u;
        for (std::size_t i = 0, k = u.size(); i < k; ++i)
            v.add(v[i] | oracle::random_set(g, s.size(), 0.2));
        REQUIRE(refines(u, v));
        CHECK(lebesgue_number(s, u).value <= lebesgue_number(s, v).value);
        CHECK(mesh(s, u).value <= mesh(s, v).value);
    }
}

TEST_CASE("ball covers of a radius have lebesgue number at least a third of it")
{
    auto g = oracle::rng(44);
    for (int t = 0; t < 20; ++t) {
        const Space s = oracle::random_metric_space(g, oracle::pick(g, 3, 12), oracle::coin(g, 0.5));
        const double r = oracle::uniform(g, 1.0, 20.0);
        CHECK(lebesgue_number(s, ball_cover(s, r).cover).value >= r / 3 - 1e-9);
        CHECK(mesh(s, ball_cover(s, r).cover).value <= 3 * r + 1e-9);
    }
}

TEST_CASE("metric bases")
{
    const MetricBase ss = metric_ss_base(builder_line(20, 1.0), {1.0, 1.0 / 3, 1.0 / 9});
    CHECK(ss.warnings.empty());
    CHECK(check_ss_base(ss.base).pass);

    const MetricBase ls = metric_ls_base(builder_line(80, 1.0), {1, 3, 9, 27});
    CHECK(ls.warnings.empty());
    CHECK(ls.base.open_ended);
    CHECK(check_ls_base(ls.base).pass);

    const MetricBase tight = metric_ls_base(builder_line(80, 1.0), {1, 2, 4});
    CHECK(tight.warnings.size() == 2);
    CHECK(metric_ls_base(builder_line(5, 1.0), {1}).warnings.size() == 1);
    CHECK_THROWS_AS(metric_ss_base(builder_line(5, 1.0), {1, 0}), Error);

    auto g = oracle::rng(45);
    for (int t = 0; t < 10; ++t) {
        const Space s = oracle::random_metric_space(g, oracle::pick(g, 3, 15), oracle::coin(g, 0.5));
        CHECK(check_ss_base(metric_ss_base(s, {9, 3, 1, 1.0 / 3}).base).pass);
        CHECK(check_ls_base(metric_ls_base(s, {1, 3, 9, 27, 81}).base).pass);
    }
}
