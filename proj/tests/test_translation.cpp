#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "scalekit/translation.hpp"

using namespace scalekit;

namespace {

PointSet brute_product(const GroupWindow& g, const PointSet& a, const PointSet& b)
{
    PointSet out(g.size());
    for (Index x = 0; x < g.size(); ++x)
        for (Index y = 0; y < g.size(); ++y)
            if (a.test(x) && b.test(y) && g.table()[x][y] >= 0)
                out.set(static_cast<Index>(g.table()[x][y]));
    return out;
}

PointSet brute_inverse(const GroupWindow& g, const PointSet& a)
{
    PointSet out(g.size());
    for (Index x = 0; x < g.size(); ++x)
        for (Index y = 0; y < g.size(); ++y)
            if (a.test(x) && g.table()[x][y] == static_cast<long>(g.identity()))
                out.set(y);
    return out;
}

void check_group(const GroupWindow& g, std::uint64_t salt)
{
    auto r = oracle::rng(salt);
    const std::size_t n = g.size();
    for (int t = 0; t < 30; ++t) {
        const PointSet a = oracle::random_set(r, n, 0.25);
        const PointSet b = oracle::random_set(r, n, 0.25);
        CHECK(product_set(g, a, b) == brute_product(g, a, b));
        CHECK(inverse_set(g, a) == brute_inverse(g, a));

        PointSet f = oracle::random_set(r, n, 0.2);
        const TranslationScale u = translation_scale(g, f);
        f.set(g.identity());
        REQUIRE(u.cover.size() == n);
        for (Index x = 0; x < n; ++x)
            CHECK(u.cover[x] == brute_product(g, singleton(n, x), f));
        CHECK(u.cover.is_scale());

        // left invariance: h(xF) = (hx)F
        const Index h = oracle::pick(r, 0, n - 1);
        for (Index x = 0; x < n; ++x)
            CHECK(brute_product(g, singleton(n, h), u.cover[x]) == u.cover[*g.multiply(h, x)]);

        // st(xF1, U_F2) = x F1 F2^-1 F2
        PointSet f2 = oracle::random_set(r, n, 0.2);
        f2.set(g.identity());
        const Cover u2 = translation_scale(g, f2).cover;
        const PointSet f1f2 = brute_product(g, brute_product(g, f, brute_inverse(g, f2)), f2);
        for (Index x = 0; x < n; ++x)
            CHECK(star_set(u.cover[x], u2) == brute_product(g, singleton(n, x), f1f2));
    }
}

} // namespace

TEST_CASE("cyclic groups")
{
    const GroupWindow z4 = cyclic_group(4);
    CHECK(z4.closed());
    for (Index a = 0; a < 4; ++a)
        CHECK(*z4.multiply(a, *z4.inverse(a)) == 0);
    check_group(z4, 51);
    check_group(cyclic_group(12), 52);
}

TEST_CASE("symmetric groups")
{
    const GroupWindow s3 = symmetric_group(3);
    CHECK(s3.size() == 6);
    CHECK(s3.carrier().id(s3.identity()) == "123");
    const Index a = s3.carrier().index_of("213"), b = s3.carrier().index_of("132");
    // (s t)(i) = s(t(i)): 213 after 132 sends 1->2, 2->3, 3->1
    CHECK(s3.carrier().id(*s3.multiply(a, b)) == "231");
    CHECK(*s3.multiply(a, b) != *s3.multiply(b, a));
    check_group(s3, 53);

    const GroupWindow s4 = symmetric_group(4);
    CHECK(s4.size() == 24);
    check_group(s4, 54);
}

TEST_CASE("invalid tables are rejected")
{
    CHECK_THROWS_AS(builder_group_window({"a", "b"}, {{0, 0}, {1, 1}}), Error);
    // x*y = -x-y mod 3 has no identity
    CHECK_THROWS_AS(builder_group_window({"a", "b", "c"}, {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), Error);
    CHECK_THROWS_AS(builder_group_window({"a", "b", "c"}, {{0, 1}, {1, 0}}), Error);
    // a Latin square with identity 0 that is not associative
    CHECK_THROWS_AS(builder_group_window({"0", "1", "2", "3", "4"},
                                         {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}}),
                    Error);
}

TEST_CASE("z-window translation scale is the ball cover")
{
    const GroupWindow z = z_window(10);
    CHECK_FALSE(z.closed());
    CHECK(z.size() == 21);
    const std::size_t n = z.size();
    const PointSet f = make_set(n, {z.carrier().index_of("-1"), z.carrier().index_of("0"), z.carrier().index_of("1")});
    const TranslationScale u = translation_scale(z, f);
    CHECK(u.clipped == 2);
    CHECK(same_elements(u.cover, ball_cover(z.carrier(), 1.5).cover));
    CHECK(u.cover == ball_cover(z.carrier(), 1.5).cover);
    std::size_t clipped = 0;
    product_set(z, full_set(n), full_set(n), &clipped);
    std::size_t outside = 0;
    for (long a = -10; a <= 10; ++a)
        for (long b = -10; b <= 10; ++b)
            outside += std::abs(a + b) > 10;
    CHECK(clipped == outside);
}

TEST_CASE("translation large-scale check")
{
    for (const GroupWindow& g : {cyclic_group(12), symmetric_group(3), symmetric_group(4)}) {
        auto r = oracle::rng(55 + g.size());
        std::vector<PointSet> fs;
        for (int k = 0; k < 4; ++k)
            fs.push_back(oracle::random_set(r, g.size(), 0.15));
        const TranslationReport rep = check_translation_ls(g, fs);
        CHECK(rep.base.pass);
        CHECK(rep.clipped == 0);
        for (const auto& w : rep.base.witnesses) {
            Cover u1 = translation_scale(g, fs[w.first]).cover;
            Cover u2 = translation_scale(g, fs[w.second]).cover;
            CHECK(refines(star_family(u1, u2), translation_scale(g, rep.candidates[w.witness]).cover));
        }
    }
    // a window: the check still runs, clipping is reported
    const GroupWindow z = z_window(10);
    const std::vector<PointSet> fs{make_set(21, {9, 10, 11}), make_set(21, {8, 10, 12})};
    const TranslationReport rep = check_translation_ls(z, fs);
    CHECK(rep.clipped > 0);
}
