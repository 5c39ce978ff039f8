#include "scalekit/algebra_comm.hpp"

#include <algorithm>
#include <cmath>

#include "scalekit/metric.hpp"
#include "scalekit/oscillation.hpp"

namespace scalekit {

namespace {

    bool is_real(const Function& f) { return (f.imag().array() == 0.0).all(); }

    bool same_values(const Function& a, const Function& b) { return (a - b).cwiseAbs().maxCoeff() <= 1e-12; }

} // namespace

FunctionFamily::FunctionFamily(std::size_t points, std::vector<NamedFunction> generators) : points_(points)
{
    if (points == 0)
        throw Error("function family needs a nonempty space");
    const auto n = static_cast<Eigen::Index>(points);
    auto add = [&](NamedFunction nf) {
        for (const auto& m : members_)
            if (m.name == nf.name)
                throw Error("duplicate function name '" + nf.name + "'");
        members_.push_back(std::move(nf));
    };
    bool has_one = false;
    std::vector<Function> conjugates;
    for (auto& g : generators) {
        if (g.values.size() != n)
            throw Error("function '" + g.name + "' is not tabulated on the space");
        if (!g.values.allFinite())
            throw Error("function '" + g.name + "' has non-finite values");
        has_one = has_one || same_values(g.values, Function::Ones(n));
        if (!is_real(g.values))
            conjugates.push_back(g.values.conjugate());
        add(std::move(g));
    }
    std::size_t k = 0;
    for (const auto& m : std::vector<NamedFunction>(members_)) {
        if (is_real(m.values))
            continue;
        const Function& conj = conjugates[k++];
        const bool present = std::any_of(members_.begin(), members_.end(),
                                         [&](const NamedFunction& e) { return same_values(e.values, conj); });
        if (!present)
            add({"conj(" + m.name + ")", conj});
    }
    if (!has_one)
        members_.insert(members_.begin(), NamedFunction{"1", Function::Ones(n)});
}

std::optional<std::size_t> FunctionFamily::find(const std::string& name) const
{
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i].name == name)
            return i;
    return std::nullopt;
}

Eigen::MatrixXd FunctionFamily::pseudometric(const std::vector<std::size_t>& subset) const
{
    const auto n = static_cast<Eigen::Index>(points_);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    auto absorb = [&](const Function& f) {
        for (Eigen::Index x = 0; x < n; ++x)
            for (Eigen::Index y = 0; y < n; ++y)
                d(x, y) = std::max(d(x, y), std::abs(f[x] - f[y]));
    };
    if (subset.empty()) {
        for (const auto& m : members_)
            absorb(m.values);
    } else {
        for (auto i : subset)
            absorb(members_.at(i).values);
    }
    return d;
}

FamilyBase ss_base_from_family(const FunctionFamily& c, const std::vector<double>& eps_grid,
                               const std::vector<std::vector<std::size_t>>& subsets)
{
    if (c.size() == 0)
        throw Error("empty function family");
    if (eps_grid.empty())
        throw Error("epsilon grid is empty");
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!(eps_grid[i] > 0.0))
            throw Error("epsilon grid must be positive");
        if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
            throw Error("epsilon grid must be strictly descending");
    }
    std::vector<std::vector<std::size_t>> sets = subsets;
    if (sets.empty())
        sets.emplace_back();
    FamilyBase out;
    out.base.direction = Direction::Small;
    out.base.open_ended = true;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const Eigen::MatrixXd d = c.pseudometric(sets[s]);
        for (double eps : eps_grid) {
            out.base.scales.push_back(deduplicated(ball_cover_of(d, eps)));
            out.labels.emplace_back(s, eps);
        }
    }
    return out;
}

ContinuityReport is_ss_continuous(const Function& f, const std::vector<Cover>& base, const std::vector<double>& eps_grid)
{
    ContinuityReport r;
    for (double eps : eps_grid) {
        std::optional<std::size_t> found;
        for (std::size_t k = 0; k < base.size() && !found; ++k) {
            const bool ok = std::all_of(base[k].begin(), base[k].end(),
                                        [&](const PointSet& e) { return value_diameter(f, e) <= eps + kValueSlack; });
            if (ok)
                found = k;
        }
        if (!found) {
            r.pass = false;
            r.failing_eps = eps;
            if (!base.empty()) {
                const Cover& finest = base.back();
                double worst = -1.0;
                for (std::size_t k = 0; k < finest.size(); ++k) {
                    const double spread = value_diameter(f, finest[k]);
                    if (spread > worst) {
                        worst = spread;
                        r.element = k;
                        r.pair = value_diameter_pair(f, finest[k]);
                    }
                }
            }
            return r;
        }
        r.witnesses.emplace_back(eps, *found);
    }
    return r;
}

std::vector<PointSet> family_blocks(const FunctionFamily& c)
{
    const std::size_t n = c.points();
    const Eigen::MatrixXd d = c.pseudometric();
    std::vector<PointSet> blocks;
    PointSet seen(n);
    for (Index x = 0; x < n; ++x) {
        if (seen.test(x))
            continue;
        PointSet b(n);
        for (Index y = x; y < n; ++y)
            if (d(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) <= 1e-12)
                b.set(y);
        seen |= b;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

StoneWeierstrassReport stone_weierstrass_desk_test(const Space& s, const FunctionFamily& c, const Function& probe)
{
    if (s.has_filtration())
        throw Error("the Stone-Weierstrass desk test is finite-only; the space carries a filtration");
    if (c.points() != s.size() || static_cast<std::size_t>(probe.size()) != s.size())
        throw Error("family and probe must be tabulated on the space");
    StoneWeierstrassReport r;
    r.blocks = family_blocks(c);
    r.block_constant = std::all_of(r.blocks.begin(), r.blocks.end(),
                                   [&](const PointSet& b) { return value_diameter(probe, b) <= 1e-12; });

    // base radii reach below the smallest positive d_C, where balls are the blocks
    const Eigen::MatrixXd d = c.pseudometric();
    double min_pos = kInf;
    for (Eigen::Index x = 0; x < d.rows(); ++x)
        for (Eigen::Index y = 0; y < d.cols(); ++y)
            if (d(x, y) > 1e-12)
                min_pos = std::min(min_pos, d(x, y));
    const double top = std::isfinite(min_pos) ? min_pos : 1.0;
    r.base_radii = {3.0 * top, top, top / 3.0};

    // the probe is tested at a resolution finer than its smallest positive jump
    double min_jump = kInf;
    for (Eigen::Index x = 0; x < probe.size(); ++x)
        for (Eigen::Index y = x + 1; y < probe.size(); ++y) {
            const double j = std::abs(probe[x] - probe[y]);
            if (j > 1e-12)
                min_jump = std::min(min_jump, j);
        }
    r.probe_eps = {std::isfinite(min_jump) ? min_jump / 2.0 : 1.0};

    const FamilyBase fb = ss_base_from_family(c, r.base_radii);
    r.ss_continuous = is_ss_continuous(probe, fb.base.scales, r.probe_eps).pass;
    r.agree = r.ss_continuous == r.block_constant;
    return r;
}

BoundedStructure induced_bounded(const Space& s)
{
    if (!s.has_filtration())
        throw Error("induced bounded structure needs a filtration");
    return BoundedStructure::from_filtration(s.filtration());
}

} // namespace scalekit
