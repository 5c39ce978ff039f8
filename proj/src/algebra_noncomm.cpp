#include "scalekit/algebra_noncomm.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "scalekit/metric.hpp"

namespace scalekit {

namespace {

    bool self_adjoint(const OperatorMatrix& a)
    {
        const OperatorMatrix diff = a - OperatorMatrix(a.adjoint());
        for (int k = 0; k < diff.outerSize(); ++k)
            for (OperatorMatrix::InnerIterator it(diff, k); it; ++it)
                if (std::abs(it.value()) > 1e-12)
                    return false;
        return true;
    }

    constexpr double kChainThreshold = 1.0 - 1e-12;

} // namespace

StarFamily::StarFamily(std::size_t points, std::vector<NamedOperator> generators) : points_(points)
{
    const auto n = static_cast<Eigen::Index>(points);
    for (auto& g : generators) {
        if (g.matrix.rows() != n || g.matrix.cols() != n)
            throw Error("operator '" + g.name + "' is not " + std::to_string(points) + " x " + std::to_string(points));
        g.matrix.makeCompressed();
        const bool sa = self_adjoint(g.matrix);
        OperatorMatrix adj = g.matrix.adjoint();
        std::string name = g.name;
        members_.push_back(std::move(g));
        if (!sa)
            members_.push_back({name + "*", std::move(adj)});
    }
}

Complex coefficient(const OperatorMatrix& a, Index x, Index y)
{
    return a.coeff(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
}

OperatorMatrix make_operator(std::size_t n, const std::vector<Eigen::Triplet<Complex>>& triplets)
{
    const auto m = static_cast<Eigen::Index>(n);
    for (const auto& t : triplets)
        if (t.row() < 0 || t.row() >= m || t.col() < 0 || t.col() >= m)
            throw Error("operator entry out of range");
    OperatorMatrix a(m, m);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();
    return a;
}

OperatorMatrix identity_operator(std::size_t n)
{
    OperatorMatrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    a.setIdentity();
    return a;
}

Entourage support_entourage(const OperatorMatrix& a, double tau)
{
    const auto n = static_cast<std::size_t>(a.cols());
    std::vector<Entourage::Pair> pairs;
    for (Index x = 0; x < n; ++x)
        pairs.emplace_back(x, x);
    for (int col = 0; col < a.outerSize(); ++col)
        for (OperatorMatrix::InnerIterator it(a, col); it; ++it)
            if (std::abs(it.value()) > tau)
                pairs.emplace_back(static_cast<Index>(it.col()), static_cast<Index>(it.row()));
    return Entourage(n, std::move(pairs));
}

double operator_norm(const OperatorMatrix& a)
{
    if (a.cols() == 0 || a.nonZeros() == 0)
        return 0.0;
    // deterministic, generic start vector
    Eigen::VectorXcd v(a.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = Complex(1.0 + 0.618 * std::sin(1.0 + static_cast<double>(i)), 0.0);
    v.normalize();
    const OperatorMatrix adj = a.adjoint();
    double lambda = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        Eigen::VectorXcd w = adj * (a * v);
        const double next = w.norm();
        if (next == 0.0)
            return 0.0;
        v = w / next;
        // sigma = sqrt(lambda) settles well inside 1e-6 once lambda stops moving at 1e-12
        if (std::abs(next - lambda) <= 1e-12 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

Cover pou_support(const PartitionOfUnity& phi)
{
    Cover out(phi.points());
    for (std::size_t v = 0; v < phi.indices(); ++v) {
        PointSet s = phi.support(v);
        if (s.any())
            out.add(std::move(s));
    }
    return out;
}

OperatorMatrix pou_to_operator(const PartitionOfUnity& phi)
{
    std::vector<Eigen::Triplet<Complex>> t;
    const auto& w = phi.weights();
    for (Eigen::Index x = 0; x < w.rows(); ++x)
        for (Eigen::Index v = 0; v < w.cols(); ++v)
            if (w(x, v) != 0.0)
                t.emplace_back(v, x, Complex(w(x, v), 0.0));
    OperatorMatrix m(w.cols(), w.rows());
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

PouImprovement pou_improve(const PartitionOfUnity& phi, const std::vector<Index>& selection)
{
    if (selection.size() != phi.indices())
        throw Error("selection must assign a point to every index");
    const auto n = static_cast<Eigen::Index>(phi.points());
    Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t v = 0; v < phi.indices(); ++v) {
        const PointSet sv = phi.support(v);
        if (sv.none())
            continue;
        if (selection[v] >= phi.points() || !sv.test(selection[v]))
            throw Error("selection s(" + std::to_string(v) + ") lies outside the support S_v");
        psi.col(static_cast<Eigen::Index>(selection[v])) += phi.weights().col(static_cast<Eigen::Index>(v));
    }
    PouImprovement r{PartitionOfUnity(std::move(psi))};
    const Cover before = pou_support(phi);
    const Cover after = pou_support(r.psi);
    r.coarsens = refines(before, after);
    r.refines_star = refines(after, star_family(before, before));
    return r;
}

std::vector<PointSet> chain_relation(const std::vector<const OperatorMatrix*>& family, std::size_t n)
{
    std::vector<PointSet> rows(n, PointSet(n));
    for (Index x = 0; x < n; ++x)
        rows[x].set(x);
    for (const auto* a : family)
        for (int col = 0; col < a->outerSize(); ++col)
            for (OperatorMatrix::InnerIterator it(*a, col); it; ++it)
                if (std::abs(it.value()) >= kChainThreshold)
                    rows[static_cast<Index>(it.col())].set(static_cast<Index>(it.row()));
    return rows;
}

FBoundedResult f_bounded(const Cover& u, const std::vector<PointSet>& relation, std::size_t n_max)
{
    if (n_max < 1)
        throw Error("n_max must be at least 1");
    FBoundedResult r;
    for (std::size_t e = 0; e < u.size(); ++e) {
        const PointSet& el = u[e];
        const auto pts = members(el);
        std::size_t worst = 1;
        for (Index x : pts) {
            // BFS inside the element, distances counted in points
            std::vector<std::size_t> dist(u.universe(), 0);
            std::deque<Index> queue{x};
            dist[x] = 1;
            while (!queue.empty()) {
                const Index a = queue.front();
                queue.pop_front();
                const PointSet next = relation[a] & el;
                for (auto b = next.find_first(); b != PointSet::npos; b = next.find_next(b))
                    if (dist[b] == 0) {
                        dist[b] = dist[a] + 1;
                        queue.push_back(b);
                    }
            }
            for (Index y : pts) {
                if (dist[y] == 0 || dist[y] > n_max) {
                    r.pass = false;
                    if (!r.disconnected)
                        r.disconnected = std::make_tuple(e, x, y);
                }
                worst = std::max(worst, dist[y] == 0 ? n_max + 1 : dist[y]);
            }
        }
        r.per_element.push_back(worst);
        r.n = std::max(r.n, worst);
    }
    return r;
}

FBoundedResult f_bounded(const Cover& u, const StarFamily& f, std::size_t n_max)
{
    std::vector<const OperatorMatrix*> ops;
    for (const auto& m : f.members())
        ops.push_back(&m.matrix);
    return f_bounded(u, chain_relation(ops, u.universe()), n_max);
}

LsFromAlgebra::LsFromAlgebra(const StarFamily& gens, std::size_t degree, std::size_t n_max)
    : degree_(degree), n_max_(n_max)
{
    if (degree < 1)
        throw Error("monomial degree must be at least 1");
    const std::size_t n = gens.points();
    monomials_.push_back(identity_operator(n));
    std::vector<OperatorMatrix> frontier{monomials_.front()};
    for (std::size_t d = 1; d <= degree; ++d) {
        std::vector<OperatorMatrix> next;
        for (const auto& w : frontier)
            for (const auto& g : gens.members()) {
                OperatorMatrix p = (g.matrix * w).pruned();
                next.push_back(p);
            }
        for (const auto& p : next)
            monomials_.push_back(p);
        frontier = std::move(next);
    }
    std::vector<const OperatorMatrix*> ops;
    for (const auto& m : monomials_)
        ops.push_back(&m);
    relation_ = chain_relation(ops, n);
}

LsCertificate LsFromAlgebra::certify(const Cover& u) const
{
    LsCertificate c;
    c.degree = degree_;
    c.monomials = monomials_.size();
    c.detail = f_bounded(u, relation_, n_max_);
    c.member = c.detail.pass;
    c.n = c.detail.n;
    return c;
}

double support_radius(const Space& s, const StarFamily& f)
{
    double r = 0.0;
    for (const auto& m : f.members()) {
        const Entourage e = support_entourage(m.matrix);
        for (const auto& [x, y] : e.pairs())
            r = std::max(r, s.distance(x, y));
    }
    return r;
}

OperatorMatrix roe_operator(const Cover& u)
{
    std::vector<Eigen::Triplet<Complex>> t;
    for (const auto& e : u) {
        const auto rep = static_cast<Eigen::Index>(e.find_first());
        for (auto y = e.find_first(); y != PointSet::npos; y = e.find_next(y))
            t.emplace_back(rep, static_cast<Eigen::Index>(y), Complex(1.0, 0.0));
    }
    return make_operator(u.universe(), t);
}

std::size_t multiplicity(const Cover& u)
{
    std::vector<std::size_t> count(u.universe(), 0);
    for (const auto& e : u)
        for (auto x = e.find_first(); x != PointSet::npos; x = e.find_next(x))
            ++count[x];
    return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

RoeReport roe_comparison_tests(const Space& s, const StarFamily& family,
                               const std::vector<std::pair<std::string, Cover>>& covers, std::size_t n_max)
{
    if (!s.has_metric())
        throw Error("space has no metric");
    RoeReport r;
    const double radius = support_radius(s, family);
    for (const auto& [name, u] : covers) {
        RadiusRow row;
        row.name = name;
        const auto fb = f_bounded(u, family, n_max);
        row.certified = fb.pass;
        if (fb.pass) {
            row.n = fb.n;
            for (const auto& e : u)
                row.diameter = std::max(row.diameter, diameter(s, e));
            row.bound = static_cast<double>(fb.n - 1) * radius;
            row.ok = row.diameter <= row.bound + 1e-12;
            if (!row.ok)
                r.radius_bound = false;
        }
        r.radius_rows.push_back(row);
    }
    for (const auto& [name, u] : covers) {
        RoeRow row;
        row.name = name;
        row.multiplicity = multiplicity(u);
        for (const auto& e : u)
            row.max_block = std::max(row.max_block, e.count());
        const OperatorMatrix t = roe_operator(u);
        const StarFamily tt(u.universe(), {{"T", t}});
        const auto fb = f_bounded(u, tt, u.universe() + 1);
        row.n = fb.pass ? fb.n : 0;
        row.certified_at_two = f_bounded(u, tt, 2).pass;
        row.norm = operator_norm(t);
        row.norm_bound = static_cast<double>(row.multiplicity * row.max_block);
        if (!row.certified_at_two)
            r.all_at_two = false;
        if (row.norm > row.norm_bound + 1e-6)
            r.norms_bounded = false;
        r.roe_rows.push_back(row);
    }
    return r;
}

Eigen::MatrixXd operator_pseudometric(const std::vector<const OperatorMatrix*>& ops, std::size_t n)
{
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
    for (const auto* a : ops) {
        const Eigen::MatrixXcd dense = Eigen::MatrixXcd(*a);
        for (Eigen::Index x = 0; x < m; ++x)
            for (Eigen::Index y = x + 1; y < m; ++y) {
                const double v = (dense.col(x) - dense.col(y)).norm();
                d(x, y) = d(y, x) = std::max(d(x, y), v);
            }
    }
    return d;
}

ScaleBase ss_from_algebra(const StarFamily& gens, const std::vector<double>& eps_grid)
{
    if (eps_grid.empty())
        throw Error("epsilon grid is empty");
    std::vector<const OperatorMatrix*> ops;
    for (const auto& m : gens.members())
        ops.push_back(&m.matrix);
    const Eigen::MatrixXd d = operator_pseudometric(ops, gens.points());
    ScaleBase base;
    base.direction = Direction::Small;
    base.open_ended = true;
    for (double eps : eps_grid)
        base.scales.push_back(deduplicated(ball_cover_of(d, eps)));
    return base;
}

namespace {

    template <class Dist>
    ContinuityReport scale_continuity(const std::vector<Cover>& base, const std::vector<double>& eps_grid, Dist&& dist)
    {
        ContinuityReport r;
        auto spread = [&](const PointSet& e) {
            double s = 0.0;
            const auto pts = members(e);
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j)
                    s = std::max(s, dist(pts[i], pts[j]));
            return s;
        };
        for (double eps : eps_grid) {
            std::optional<std::size_t> found;
            for (std::size_t k = 0; k < base.size() && !found; ++k)
                if (std::all_of(base[k].begin(), base[k].end(),
                                [&](const PointSet& e) { return spread(e) <= eps + 1e-12; }))
                    found = k;
            if (!found) {
                r.pass = false;
                r.failing_eps = eps;
                return r;
            }
            r.witnesses.emplace_back(eps, *found);
        }
        return r;
    }

} // namespace

ContinuityReport cstar_ss_membership(const OperatorMatrix& a, const std::vector<Cover>& base,
                                     const std::vector<double>& eps_grid)
{
    const Eigen::MatrixXd d = operator_pseudometric({&a}, static_cast<std::size_t>(a.cols()));
    return scale_continuity(base, eps_grid, [&](Index x, Index y) {
        return d(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    });
}

SspReport ssp_witness_check(const Cover& u, const PartitionOfUnity& phi, const std::vector<Cover>& base,
                            const std::vector<double>& eps_grid)
{
    SspReport r;
    const auto& w = phi.weights();
    const auto c = scale_continuity(base, eps_grid, [&](Index x, Index y) {
        return (w.row(static_cast<Eigen::Index>(x)) - w.row(static_cast<Eigen::Index>(y))).cwiseAbs().sum();
    });
    r.continuous = c.pass;
    r.failing_eps = c.failing_eps;
    const Cover support = pou_support(phi);
    r.support_in_structure = support.is_scale()
        && std::any_of(base.begin(), base.end(), [&](const Cover& b) { return refines(b, support); });
    r.support_smaller = star_refines(support, u);
    r.pass = r.continuous && r.support_in_structure && r.support_smaller;
    return r;
}

} // namespace scalekit
