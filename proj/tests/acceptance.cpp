// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "scalekit/algebra_noncomm.hpp"
#include "scalekit/catalogue.hpp"
#include "scalekit/duality.hpp"
#include "scalekit/entourages.hpp"
#include "scalekit/metric.hpp"

using namespace scalekit;

namespace {

struct Outcome {
    std::size_t passed = 0;
    std::size_t total = 0;
    std::string note;

    void count(bool ok, const std::string& what = "")
    {
        ++total;
        if (ok)
            ++passed;
        else if (note.empty())
            note = what;
    }
    bool pass() const { return total > 0 && passed == total; }
};

Index at_coordinate(const Space& s, double c)
{
    for (Index x = 0; x < s.size(); ++x)
        if (s.distance(0, x) == c)
            return x;
    throw Error("no point at coordinate " + std::to_string(c));
}

Outcome metric_bases()
{
    Outcome o;
    auto g = oracle::rng(1);
    for (int t = 0; t < 50; ++t) {
        const Space s = oracle::random_metric_space(g, oracle::pick(g, 2, 40), t % 2 == 0);
        const MetricBase ls = metric_ls_base(s, {1, 3, 9, 27});
        const MetricBase ss = metric_ss_base(s, {3, 1, 1.0 / 3});
        o.count(check_ls_base(ls.base).pass, "ls base on space " + std::to_string(t));
        o.count(check_ss_base(ss.base).pass, "ss base on space " + std::to_string(t));
    }
    return o;
}

Outcome star_bound()
{
    Outcome o;
    auto g = oracle::rng(1);
    for (int t = 0; t < 50; ++t) {
        const Space s = oracle::random_metric_space(g, oracle::pick(g, 2, 40), t % 2 == 0);
        for (double r : {1.0 / 3, 1.0, 3.0, 9.0, 27.0}) {
            const Cover b = ball_cover(s, r).cover;
            o.count(refines(star_family(b, b), ball_cover(s, 3 * r).cover),
                    "space " + std::to_string(t) + " r=" + std::to_string(r));
        }
    }
    return o;
}

Outcome lebesgue_mesh()
{
    Outcome o;
    for (const std::string name : {"line20", "grid5"}) {
        const Instance inst = bundled_instance(name);
        for (const auto& [cname, u] : inst.covers) {
            o.count(lebesgue_number(inst.space, u).value == oracle::lebesgue_scan(inst.space, u),
                    name + "/" + cname + " lebesgue");
            o.count(mesh(inst.space, u).value == oracle::mesh_scan(inst.space, u), name + "/" + cname + " mesh");
        }
    }
    return o;
}

Outcome wright_c0()
{
    Outcome o;
    const Instance h = bundled_instance("halfline");
    const std::vector<double> eps{1.0, 0.5, 0.25};
    o.count(wright_c0_check(h.space, h.cover("shrinking"), eps).pass, "shrinking rejected by C0");
    o.count(!wright_c0_check(h.space, h.cover("unit"), eps).pass, "unit accepted by C0");

    std::vector<Index> centers;
    for (int k = 1; k <= 10; ++k)
        centers.push_back(at_coordinate(h.space, 10.0 * k));
    const Function bump = build_bump_refuter(h.space, centers, 1.0);
    const FunctionFamily c(h.space.size(), {{"bump", bump}});
    const BoundedStructure b = BoundedStructure::from_filtration(h.space.filtration());
    o.count(ls_membership({h.cover("shrinking"), c, b, {0.5}}).pass, "shrinking rejected by membership");
    const LsReport unit = ls_membership({h.cover("unit"), c, b, {0.5}});
    o.count(!unit.pass && unit.violation && unit.violation->function == "bump" && unit.violation->spread > 0.5,
            "unit not refuted by the bump");
    // outside every proper level a unit interval still spans a full bump
    for (const auto& k : h.space.filtration().proper_levels()) {
        double worst = 0.0;
        for (const auto& u : h.cover("unit")) {
            PointSet rest = u;
            rest -= k;
            worst = std::max(worst, value_diameter(bump, rest));
        }
        o.count(worst == 1.0, "bump flattened past a level");
    }
    return o;
}

Outcome controlled_agreement()
{
    Outcome o;
    const Instance nats = bundled_instance("nats");
    const FunctionFamily c(nats.space.size(), nats.functions);
    const AgreementReport a = theorem75_agreement(nats.space, nats.covers, c, {1.0, 0.5, 0.25});
    o.count(a.guard, "family not constant at infinity");
    for (const auto& row : a.rows)
        o.count(row.agree, row.name);
    o.count(a.rows.size() == 10, "catalogue size");
    return o;
}

Outcome pair_refutation()
{
    Outcome o;
    const Instance sq = bundled_instance("squares");
    const std::vector<double> radii{1, 3, 9};
    const ReflectivityReport pairs = reflectivity_oracle(sq.space, sq.cover("pairs"), radii);
    o.count(pairs.verdict == Reflectivity::RejectedByRefuter, "pair cover not rejected by the refuter");
    o.count(pairs.membership && !pairs.membership->pass, "membership accepted the pair cover");
    o.count(!pairs.pairs.empty(), "no pairs");
    for (const auto& [x, y] : pairs.pairs)
        o.count(pairs.refuter[x].real() - pairs.refuter[y].real() == 1.0, "gap differs from 1");
    const ReflectivityReport ball = reflectivity_oracle(sq.space, sq.cover("ball2"), radii);
    o.count(ball.verdict == Reflectivity::MemberConsistent, "ball2 not member-consistent");
    return o;
}

Outcome strict_relaxed()
{
    Outcome o;
    const Instance h = bundled_instance("halfline");
    const BoundedStructure b = BoundedStructure::from_filtration(h.space.filtration());
    const std::vector<double> eps{1.0, 0.5, 0.25};
    for (const auto& f : h.functions)
        for (const auto& [cname, u] : h.covers) {
            const EquivalenceReport e = equivalence_test({f.values, {u}, eps, b});
            o.count(e.agree && e.pass, f.name + "/" + cname);
        }
    return o;
}

Outcome pou_improvement()
{
    Outcome o;
    auto g = oracle::rng(8);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = oracle::pick(g, 1, 30), k = oracle::pick(g, 1, 10);
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(k));
        for (Eigen::Index x = 0; x < w.rows(); ++x) {
            w(x, Eigen::Index(oracle::pick(g, 0, k - 1))) = 1.0;
            for (Eigen::Index v = 0; v < w.cols(); ++v)
                if (oracle::coin(g, 0.15))
                    w(x, v) += oracle::uniform(g, 0.05, 1.0);
            w.row(x) /= w.row(x).sum();
        }
        const PartitionOfUnity phi(w);
        std::vector<Index> sel(k, 0);
        for (std::size_t v = 0; v < k; ++v) {
            const auto pts = members(phi.support(v));
            if (!pts.empty())
                sel[v] = pts[oracle::pick(g, 0, pts.size() - 1)];
        }
        const PouImprovement r = pou_improve(phi, sel);
        const Cover before = pou_support(phi), after = pou_support(r.psi);
        o.count(r.coarsens && oracle::refines(before, after), "support not coarsened");
        o.count(r.refines_star && oracle::refines(after, oracle::star_family(before, before)), "star not refined");
    }
    return o;
}

Outcome roe_at_two()
{
    Outcome o;
    const Instance grid = bundled_instance("grid6");
    for (const auto& [name, u] : grid.covers) {
        const StarFamily tt(u.universe(), {{"T", roe_operator(u)}});
        const FBoundedResult r = f_bounded(u, tt, u.universe());
        o.count(f_bounded(u, tt, 2).pass, name + " needs n=" + std::to_string(r.n));
    }
    return o;
}

Outcome support_radius_bound()
{
    Outcome o;
    auto g = oracle::rng(10);
    for (int t = 0; t < 50; ++t) {
        const Space s = t % 2 == 0 ? builder_line(30, 1.0) : builder_grid(6);
        const double step = 1.0;
        const double r = t % 4 < 2 ? 1.0 : 2.0;
        const std::size_t n = s.size();
        std::vector<Eigen::Triplet<Complex>> trip;
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y)
                if (x != y && s.distance(x, y) <= r && oracle::coin(g, 0.5))
                    trip.emplace_back(int(y), int(x), Complex(oracle::uniform(g, 0.5, 2.0), 0.0));
        const StarFamily f(n, {{"a", make_operator(n, trip)}});
        o.count(support_radius(s, f) <= r, "support exceeds r");
        for (int k = 0; k < 6; ++k) {
            const Cover u = trivial_extension(oracle::random_cover(g, n, oracle::pick(g, 1, 6), 0.15));
            const std::size_t n_max = oracle::pick(g, 2, 8);
            const FBoundedResult cert = f_bounded(u, f, n_max);
            if (!cert.pass)
                continue;
            const double bound = double(cert.n - 1) * r + step;
            o.count(refines(u, ball_cover(s, bound).cover), "certified cover escapes the radius bound");
        }
        // chains along a path of support pairs are always certified
        Cover path(n);
        for (Index x = 0; x < n; ++x) {
            PointSet e = singleton(n, x);
            for (Index y = 0; y < n; ++y)
                if (std::abs(coefficient(f[0].matrix, x, y)) >= 1.0)
                    e.set(y);
            path.add(e);
        }
        const FBoundedResult cert = f_bounded(path, f, n);
        if (cert.pass)
            o.count(refines(path, ball_cover(s, double(cert.n - 1) * r + step).cover), "star cover escapes the bound");
    }
    return o;
}

Outcome perturbation()
{
    Outcome o;
    auto g = oracle::rng(11);
    for (const auto& name : bundled_names()) {
        const Instance inst = bundled_instance(name);
        if (inst.operators.empty())
            continue;
        const std::size_t n = inst.space.size();
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<NamedOperator> doubled;
            for (const auto& op : inst.operators) {
                Eigen::MatrixXcd p = Eigen::MatrixXcd(op.matrix);
                for (Eigen::Index i = 0; i < p.rows(); ++i)
                    for (Eigen::Index j = 0; j < p.cols(); ++j) {
                        const double mod = oracle::uniform(g, 0.0, 0.499), arg = oracle::uniform(g, 0.0, 6.283);
                        p(i, j) += std::polar(mod, arg);
                    }
                doubled.push_back({op.name, OperatorMatrix((2.0 * p).sparseView())});
            }
            const LsFromAlgebra original(StarFamily(n, inst.operators), 1, n);
            const LsFromAlgebra perturbed(StarFamily(n, doubled), 1, n);
            for (const auto& [cname, u] : inst.covers)
                o.count(original.certify(u).member == perturbed.certify(u).member, name + "/" + cname);
        }
    }
    return o;
}

Outcome stone_weierstrass()
{
    Outcome o;
    auto g = oracle::rng(12);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = oracle::pick(g, 1, 10);
        const std::size_t levels = oracle::pick(g, 1, 4);
        std::vector<NamedFunction> gens;
        for (std::size_t i = 0, k = oracle::pick(g, 0, 3); i < k; ++i) {
            Function f(static_cast<Eigen::Index>(n));
            for (Eigen::Index x = 0; x < f.size(); ++x)
                f[x] = Complex(double(oracle::pick(g, 0, levels)) / double(levels),
                               oracle::coin(g, 0.2) ? double(oracle::pick(g, 0, levels)) : 0.0);
            gens.push_back({"g" + std::to_string(i), f});
        }
        const FunctionFamily c(n, gens);
        Function probe(static_cast<Eigen::Index>(n));
        for (Index x = 0; x < n; ++x)
            probe[x] = double(oracle::pick(g, 0, 2));
        if (oracle::coin(g, 0.5) && !gens.empty())
            probe = gens[0].values.real().cast<Complex>();
        bool constant = true;
        for (Index x = 0; x < n; ++x)
            for (Index y = 0; y < n; ++y) {
                bool same = true;
                for (const auto& m : c.members())
                    same = same && m.values[x] == m.values[y];
                if (same && probe[x] != probe[y])
                    constant = false;
            }
        const StoneWeierstrassReport r = stone_weierstrass_desk_test(builder_line(n - 1, 1.0), c, probe);
        o.count(r.agree && r.block_constant == constant && r.ss_continuous == constant, "case " + std::to_string(t));
    }
    return o;
}

Outcome round_trip()
{
    Outcome o;
    auto g = oracle::rng(13);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = oracle::pick(g, 1, 25);
        const Cover u = trivial_extension(oracle::random_cover(g, n, oracle::pick(g, 1, 8), 0.25));
        const Cover back = scale_of_entourage(entourage_of_scale(u));
        bool ok = back.size() == n;
        for (Index x = 0; ok && x < n; ++x)
            ok = back[x] == oracle::star(singleton(n, x), u);
        o.count(ok, "cover " + std::to_string(t));
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"metric base axioms", metric_bases},
        {"star bound st(B_r, B_r) < B_3r", star_bound},
        {"lebesgue and mesh match the scan oracle", lebesgue_mesh},
        {"wright C0 on the halfline", wright_c0},
        {"controlled covers agree with membership", controlled_agreement},
        {"pair cover refuted, ball cover consistent", pair_refutation},
        {"strict and relaxed slow oscillation agree", strict_relaxed},
        {"improved partitions of unity", pou_improvement},
        {"roe operator certifies at n = 2", roe_at_two},
        {"support radius bound", support_radius_bound},
        {"perturbation with 0.5 rescaling", perturbation},
        {"stone-weierstrass desk test", stone_weierstrass},
        {"entourage round trip", round_trip},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.note = std::string("error: ") + e.what();
        }
        all = all && o.pass();
        std::ostringstream line;
        line << (o.pass() ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << " (" << o.passed << "/"
             << o.total << ")";
        if (!o.pass() && !o.note.empty())
            line << ": " << o.note;
        std::cout << line.str() << "\n";
    }
    return all ? 0 : 1;
}
