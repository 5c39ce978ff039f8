#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "scalekit/algebra_comm.hpp"
#include "scalekit/catalogue.hpp"
#include "scalekit/instance.hpp"

using namespace scalekit;

namespace {

FunctionFamily random_family(oracle::Rng& g, std::size_t n, std::size_t k, std::size_t levels)
{
    std::vector<NamedFunction> gens;
    for (std::size_t i = 0; i < k; ++i) {
        Function f(static_cast<Eigen::Index>(n));
        for (Eigen::Index x = 0; x < f.size(); ++x) {
            const double re = double(oracle::pick(g, 0, levels)) / double(levels);
            const double im = oracle::coin(g, 0.2) ? double(oracle::pick(g, 0, levels)) / double(levels) : 0.0;
            f[x] = Complex(re, im);
        }
        gens.push_back({"g" + std::to_string(i), f});
    }
    return FunctionFamily(n, gens);
}

/// x ~ y when every member agrees exactly.
std::vector<std::size_t> brute_blocks(const FunctionFamily& c)
{
    const std::size_t n = c.points();
    std::vector<std::size_t> id(n, n);
    std::size_t next = 0;
    for (Index x = 0; x < n; ++x) {
        if (id[x] != n)
            continue;
        for (Index y = x; y < n; ++y) {
            bool same = true;
            for (const auto& m : c.members())
                same = same && m.values[x] == m.values[y];
            if (same && id[y] == n)
                id[y] = next;
        }
        ++next;
    }
    return id;
}

} // namespace

TEST_CASE("family closure and validation")
{
    Function f(3), h(3);
    f << Complex(0, 1), Complex(1, 0), Complex(2, 0);
    h << 1, 1, 1;
    const FunctionFamily c(3, {{"f", f}});
    CHECK(c.size() == 3);
    CHECK(c[0].name == "1");
    REQUIRE(c.find("conj(f)"));
    CHECK(c[*c.find("conj(f)")].values[0] == Complex(0, -1));
    CHECK(FunctionFamily(3, {{"one", h}}).size() == 1);
    CHECK(FunctionFamily(3, c.members()).size() == 3);
    CHECK_THROWS_AS(FunctionFamily(3, {{"f", f}, {"f", h}}), Error);
    CHECK_THROWS_AS(FunctionFamily(4, {{"f", f}}), Error);
    CHECK_THROWS_AS(FunctionFamily(0, {}), Error);
    Function bad = h;
    bad[1] = Complex(INFINITY, 0);
    CHECK_THROWS_AS(FunctionFamily(3, {{"bad", bad}}), Error);
}

TEST_CASE("induced pseudometric")
{
    auto g = oracle::rng(81);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = oracle::pick(g, 2, 12);
        const FunctionFamily c = random_family(g, n, oracle::pick(g, 1, 4), 7);
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (oracle::coin(g, 0.5))
                subset.push_back(i);
        const Eigen::MatrixXd d = c.pseudometric(subset);
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y) {
                double expect = 0.0;
                const std::size_t count = subset.empty() ? c.size() : subset.size();
                for (std::size_t i = 0; i < count; ++i)
                    expect = std::max(expect, std::abs(c[subset.empty() ? i : subset[i]].values[x]
                                                       - c[subset.empty() ? i : subset[i]].values[y]));
                CHECK(d(x, y) == expect);
                CHECK(d(x, y) == d(y, x));
            }
        CHECK(satisfies_triangle_inequality(d));
    }
}

TEST_CASE("induced small-scale base")
{
    const std::vector<double> grid{1.0, 1.0 / 3, 1.0 / 9, 1.0 / 27};
    const FunctionFamily ones(5, {});
    const FamilyBase trivial = ss_base_from_family(ones, grid);
    for (const auto& u : trivial.base.scales) {
        REQUIRE(u.size() == 1);
        CHECK(u[0] == full_set(5));
    }
    CHECK_THROWS_AS(ss_base_from_family(ones, {}), Error);
    CHECK_THROWS_AS(ss_base_from_family(ones, {0.5, 1.0}), Error);

    auto g = oracle::rng(82);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = oracle::pick(g, 2, 12);
        const FunctionFamily c = random_family(g, n, oracle::pick(g, 1, 3), 9);
        const FamilyBase fb = ss_base_from_family(c, grid);
        CHECK(check_ss_base(fb.base).pass);
        CHECK(fb.labels.size() == grid.size());

        const std::vector<double> eps{1.0, 1.0 / 3, 1.0 / 9};
        for (const auto& m : c.members())
            CHECK(is_ss_continuous(m.values, fb.base.scales, eps).pass);
        const Function sum = c.members().back().values + c.members().front().values;
        const Function prod = c.members().back().values.cwiseProduct(c.members().front().values);
        CHECK(is_ss_continuous(sum, fb.base.scales, {1.0, 1.0 / 3}).pass);
        CHECK(is_ss_continuous(prod, fb.base.scales, {2.0, 2.0 / 3}).pass);

        // a larger family refines every old scale at the same epsilon
        std::vector<NamedFunction> more(c.members().begin(), c.members().end());
        Function extra(static_cast<Eigen::Index>(n));
        for (Eigen::Index x = 0; x < extra.size(); ++x)
            extra[x] = oracle::uniform(g, 0, 1);
        more.push_back({"extra", extra});
        const FamilyBase bigger = ss_base_from_family(FunctionFamily(n, more), grid);
        for (std::size_t k = 0; k < grid.size(); ++k)
            CHECK(refines(bigger.base.scales[k], fb.base.scales[k]));
    }
}

TEST_CASE("subset bases carry labels per subset and epsilon")
{
    Function a(4), b(4);
    a << 0, 0, 1, 1;
    b << 0, 1, 0, 1;
    const FunctionFamily c(4, {{"a", a}, {"b", b}});
    const FamilyBase fb = ss_base_from_family(c, {0.5}, {{1}, {2}, {1, 2}});
    REQUIRE(fb.base.scales.size() == 3);
    CHECK(fb.labels[2] == std::pair<std::size_t, double>{2, 0.5});
    CHECK(same_elements(fb.base.scales[0], Cover(4, {make_set(4, {0, 1}), make_set(4, {2, 3})})));
    CHECK(same_elements(fb.base.scales[2], singleton_cover(4)));
}

TEST_CASE("ss-continuity against the metric base")
{
    const Instance h = bundled_instance("halfline");
    std::vector<Cover> base;
    for (double r : {1.0, 0.5, 0.25})
        base.push_back(ball_cover(h.space, r).cover);
    const ContinuityReport sinsq = is_ss_continuous(h.function("sinsq"), base, {0.1});
    CHECK_FALSE(sinsq.pass);
    REQUIRE(sinsq.pair);
    CHECK(sinsq.failing_eps == 0.1);
    CHECK(std::abs(h.function("sinsq")[sinsq.pair->first] - h.function("sinsq")[sinsq.pair->second]) > 0.1);
    CHECK(is_ss_continuous(h.function("decay"), base, {0.5, 0.2}).pass);
    CHECK_FALSE(is_ss_continuous(h.function("decay"), base, {0.1}).pass);
    CHECK(is_ss_continuous(h.function("const"), {}, {0.1}).pass == false);
}

TEST_CASE("Stone-Weierstrass desk test agrees with block constancy")
{
    auto g = oracle::rng(83);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = oracle::pick(g, 1, 10);
        Space s = builder_line(n - 1, 1.0);
        const FunctionFamily c = random_family(g, n, oracle::pick(g, 0, 3), oracle::pick(g, 1, 4));
        const auto blocks = brute_blocks(c);
        Function probe(static_cast<Eigen::Index>(n));
        if (oracle::coin(g, 0.5)) {
            std::vector<double> per_block(n);
            for (auto& v : per_block)
                v = oracle::uniform(g, -1, 1);
            for (Index x = 0; x < n; ++x)
                probe[x] = per_block[blocks[x]];
        } else {
            for (Index x = 0; x < n; ++x)
                probe[x] = double(oracle::pick(g, 0, 2));
        }
        bool constant = true;
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                if (blocks[x] == blocks[y] && probe[x] != probe[y])
                    constant = false;
        const StoneWeierstrassReport r = stone_weierstrass_desk_test(s, c, probe);
        CHECK(r.block_constant == constant);
        CHECK(r.ss_continuous == constant);
        CHECK(r.agree);
        std::vector<std::size_t> ids(n);
        for (std::size_t b = 0; b < r.blocks.size(); ++b)
            for (Index x = 0; x < n; ++x)
                if (r.blocks[b].test(x))
                    ids[x] = b;
        CHECK(oracle::same_partition(ids, blocks));
    }

    const Space line = builder_line(3, 1.0);
    Function step(4);
    step << 0, 0, 1, 1;
    const StoneWeierstrassReport trivial = stone_weierstrass_desk_test(line, FunctionFamily(4, {}), step);
    CHECK(trivial.blocks.size() == 1);
    CHECK_FALSE(trivial.ss_continuous);
    Function id(4);
    id << 0, 1, 2, 3;
    CHECK(stone_weierstrass_desk_test(line, FunctionFamily(4, {{"id", id}}), step).ss_continuous);
    CHECK_THROWS_AS(stone_weierstrass_desk_test(builder_halfline(), FunctionFamily(801, {}), Function::Zero(801)),
                    Error);
}

TEST_CASE("induced bounded structure")
{
    const Space h = builder_halfline();
    const BoundedStructure b = induced_bounded(h);
    CHECK(check_axioms(b).pass);
    for (const auto& k : h.filtration().proper_levels())
        CHECK(b.contains(k));
    CHECK_THROWS_AS(induced_bounded(builder_line(5, 1.0)), Error);
}
