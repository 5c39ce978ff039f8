#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "scalekit/bounded.hpp"
#include "scalekit/catalogue.hpp"
#include "scalekit/instance.hpp"
#include "scalekit/translation.hpp"

using namespace scalekit;

namespace {

std::string error_of(const Json& doc)
{
    try {
        load_instance(doc);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

bool triangle_brute(const Eigen::MatrixXd& d)
{
    for (Eigen::Index x = 0; x < d.rows(); ++x)
        for (Eigen::Index y = 0; y < d.rows(); ++y)
            for (Eigen::Index z = 0; z < d.rows(); ++z)
                if (d(x, z) > d(x, y) + d(y, z) + 1e-9)
                    return false;
    return true;
}

} // namespace

TEST_CASE("line document has absolute-difference metric")
{
    Json doc;
    doc["points"] = Json::array();
    Json coords = Json::array();
    for (int i = 0; i <= 20; ++i) {
        doc["points"].push_back(std::to_string(i));
        coords.push_back(i);
    }
    doc["metric"] = {{"kind", "line"}, {"coords", coords}};
    const Instance inst = load_instance(doc);
    CHECK(inst.space.size() == 21);
    for (Index i = 0; i <= 20; ++i)
        for (Index j = 0; j <= 20; ++j)
            CHECK(inst.space.distance(i, j) == std::abs(double(i) - double(j)));
    CHECK(inst.space.triangle_inequality());
}

TEST_CASE("asymmetric metric table is rejected with the offending pair")
{
    Json doc = {{"points", {"a", "b", "c"}},
                {"metric", {{"kind", "table"}, {"d", {{0, 1, 2}, {3, 0, 1}, {2, 1, 0}}}}}};
    CHECK(error_of(doc) == "asymmetric metric at (a,b)");
}

TEST_CASE("non-nested filtration is rejected")
{
    Json doc = {{"points", {"a", "b", "c"}}, {"filtration", Json::array({Json::array({"a", "b"}), Json::array({"b", "c"})})}};
    CHECK(error_of(doc).find("non-nested filtration at level 2") != std::string::npos);
    Json bad_point = {{"points", {"a"}}, {"covers", {{"u", {{"zz"}}}}}};
    CHECK(error_of(bad_point).find("unknown point 'zz'") != std::string::npos);
    Json schema = {{"points", {"a"}}, {"operators", {{"t", {{"triplets", Json::array({Json::array({0, "x", 1, 0})})}}}}}};
    CHECK(error_of(schema).find("schema violation") == 0);
}

TEST_CASE("table metric with null is infinite")
{
    Json doc = {{"points", {"a", "b"}}, {"metric", {{"kind", "table"}, {"d", {{0, nullptr}, {nullptr, 0}}}}}};
    const Instance inst = load_instance(doc);
    CHECK(std::isinf(inst.space.distance(0, 1)));
    CHECK(save_instance(inst)["metric"]["d"][0][1].is_null());
}

TEST_CASE("halfline round trip")
{
    const Space s = builder_halfline();
    CHECK(s.size() == 801);
    CHECK(s.filtration().depth() == 10);
    CHECK(s.filtration().proper_levels().size() == 9);
    Instance inst;
    inst.space = s;
    const Instance back = load_instance(save_instance(inst));
    CHECK(back.space == s);
}

TEST_CASE("builders")
{
    const Space l = builder_line(2, 1.0);
    CHECK(l.size() == 3);
    CHECK(l.distance(0, 2) == 2.0);
    const Space g = builder_grid(2);
    CHECK(g.size() == 4);
    double diam = 0.0;
    for (Index x = 0; x < 4; ++x)
        for (Index y = 0; y < 4; ++y)
            diam = std::max(diam, g.distance(x, y));
    CHECK(diam == 1.0);
    const GroupWindow z4 = cyclic_group(4);
    CHECK(z4.carrier().size() == 4);
    for (Index a = 0; a < 4; ++a)
        for (Index b = 0; b < 4; ++b)
            CHECK(*z4.multiply(a, b) == (a + b) % 4);
    CHECK_THROWS_AS(builder_group_window({"a", "b"}, {{0, 1}, {0, 1}}), Error);
    CHECK_THROWS_AS(builder_line(0, 0.0), Error);
}

TEST_CASE("builder outputs survive serialization")
{
    for (const auto& name : bundled_names()) {
        CAPTURE(name);
        const Instance inst = bundled_instance(name);
        const Instance back = load_instance(save_instance(inst), name);
        CHECK(back == inst);
        CHECK(save_instance(back).dump() == save_instance(inst).dump());
    }
}

TEST_CASE("triangle flag equals brute force")
{
    auto g = oracle::rng(11);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = oracle::pick(g, 2, 9);
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                d(i, j) = d(j, i) = double(oracle::pick(g, 1, 6));
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i)
            ids.push_back("x" + std::to_string(i));
        Space s(ids);
        s.set_metric_table(d);
        CHECK(s.triangle_inequality() == triangle_brute(d));
    }
}

TEST_CASE("declared-bounded family of a filtration passes the axioms")
{
    auto g = oracle::rng(12);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = oracle::pick(g, 3, 12);
        std::vector<PointSet> levels;
        PointSet cur(n);
        for (Index x = 0; x < n; ++x) {
            cur.set(x);
            if (oracle::coin(g, 0.4))
                levels.push_back(cur);
        }
        if (levels.empty())
            levels.push_back(cur);
        Filtration f(n, levels);
        CHECK(check_axioms(BoundedStructure::from_filtration(f)).pass);
        for (int k = 0; k < 10; ++k) {
            const PointSet a = oracle::random_set(g, n, 0.3);
            bool expect = a.count() == 1;
            for (const auto& l : f.proper_levels())
                expect = expect || oracle::inside(a, l);
            CHECK(f.declared_bounded(a) == expect);
        }
    }
}
