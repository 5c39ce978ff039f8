#include "scalekit/oscillation.hpp"

#include <algorithm>
#include <cmath>

#include "scalekit/metric.hpp"

namespace scalekit {

double value_diameter(const Function& f, const PointSet& a)
{
    auto p = value_diameter_pair(f, a);
    if (!p)
        return 0.0;
    return std::abs(f[static_cast<Eigen::Index>(p->first)] - f[static_cast<Eigen::Index>(p->second)]);
}

std::optional<std::pair<Index, Index>> value_diameter_pair(const Function& f, const PointSet& a)
{
    const auto pts = members(a);
    if (pts.size() < 2)
        return std::nullopt;
    std::pair<Index, Index> best{pts[0], pts[1]};
    double spread = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d = std::abs(f[static_cast<Eigen::Index>(pts[i])] - f[static_cast<Eigen::Index>(pts[j])]);
            if (d > spread) {
                spread = d;
                best = {pts[i], pts[j]};
            }
        }
    return best;
}

bool strict_holds(const Function& f, const Cover& u, double eps, const PointSet& b)
{
    const PointSet outside = ~b;
    return std::all_of(u.begin(), u.end(), [&](const PointSet& e) {
        return !e.intersects(outside) || value_diameter(f, e) <= eps + kValueSlack;
    });
}

bool relaxed_holds(const Function& f, const Cover& u, double eps, const PointSet& b)
{
    return std::all_of(u.begin(), u.end(),
                       [&](const PointSet& e) { return value_diameter(f, e - b) <= eps + kValueSlack; });
}

namespace {

    void validate(const SOQuery& q)
    {
        if (static_cast<std::size_t>(q.f.size()) != q.structure.universe())
            throw Error("function is not tabulated on the space");
        if (!q.f.allFinite())
            throw Error("function values must be finite");
        for (std::size_t i = 0; i < q.eps.size(); ++i) {
            if (!(q.eps[i] > 0.0))
                throw Error("epsilon grid must be positive");
            if (i > 0 && !(q.eps[i] < q.eps[i - 1]))
                throw Error("epsilon grid must be strictly descending");
        }
        for (const auto& u : q.base)
            if (u.universe() != q.structure.universe())
                throw Error("cover lives on a different space");
    }

    SOViolation violation_for(const Function& f, const Cover& u, std::size_t cover, double eps, const LabeledSet& b,
                              SOForm form)
    {
        for (std::size_t k = 0; k < u.size(); ++k) {
            const PointSet part = form == SOForm::Strict ? u[k] : u[k] - b.set;
            if (form == SOForm::Strict && !u[k].intersects(~b.set))
                continue;
            const double spread = value_diameter(f, part);
            if (spread > eps + kValueSlack) {
                const auto p = *value_diameter_pair(f, part);
                return {cover, eps, k, p.first, p.second, spread, b.label};
            }
        }
        throw Error("internal: no violating element");
    }

} // namespace

SOVerdict is_slowly_oscillating(const SOQuery& q, SOForm form)
{
    validate(q);
    SOVerdict v;
    const auto candidates = q.structure.witness_sets();
    for (std::size_t c = 0; c < q.base.size(); ++c) {
        for (double eps : q.eps) {
            bool found = false;
            for (const auto& b : candidates) {
                const bool ok = form == SOForm::Strict ? strict_holds(q.f, q.base[c], eps, b.set)
                                                       : relaxed_holds(q.f, q.base[c], eps, b.set);
                if (ok) {
                    v.witnesses.push_back({c, eps, b.label, b.set});
                    found = true;
                    break;
                }
            }
            if (!found) {
                v.pass = false;
                v.violation = violation_for(q.f, q.base[c], c, eps, candidates.back(), form);
                break;
            }
        }
        if (!v.pass)
            break;
    }
    v.notes.push_back("quantified over the supplied base and epsilon grid only");
    if (const auto* h = q.structure.horizon())
        v.notes.push_back(h->label());
    return v;
}

EquivalenceReport equivalence_test(const SOQuery& q)
{
    EquivalenceReport r;
    r.strict = is_slowly_oscillating(q, SOForm::Strict);
    r.relaxed = is_slowly_oscillating(q, SOForm::Relaxed);
    r.agree = r.strict.pass == r.relaxed.pass;
    for (const auto& w : r.relaxed.witnesses) {
        ++r.construction_checks;
        const Cover& u = q.base[w.cover];
        const PointSet b_prime = w.set.any() ? star_set(w.set, u) : w.set;
        if (!strict_holds(q.f, u, w.eps, b_prime))
            ++r.construction_failures;
    }
    r.pass = r.agree && r.construction_failures == 0;
    return r;
}

double distance_to_set(const Space& s, Index x, const PointSet& a)
{
    const auto& d = s.metric();
    double best = kInf;
    for (auto y = a.find_first(); y != PointSet::npos; y = a.find_next(y))
        best = std::min(best, d(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)));
    return best;
}

namespace {

    double tent(const Space& s, Index x, const PointSet& ball)
    {
        const double t = distance_to_set(s, x, ~ball);
        if (!std::isfinite(t))
            throw Error("ball covers the whole space; the refuter is unbounded");
        return t;
    }

} // namespace

Function build_bump_refuter(const Space& s, const std::vector<Index>& centers, double eps)
{
    if (!s.has_metric())
        throw Error("bump refuter needs a metric");
    if (!(eps > 0.0))
        throw Error("bump radius must be positive");
    const auto& d = s.metric();
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (centers[i] >= s.size())
            throw Error("center out of range");
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (!(d(static_cast<Eigen::Index>(centers[i]), static_cast<Eigen::Index>(centers[j])) > 2.0 * eps))
                throw Error("centers " + s.id(centers[i]) + " and " + s.id(centers[j]) + " are within 2 eps");
    }
    if (!centers.empty() && s.has_filtration()) {
        for (const auto& k : s.filtration().proper_levels())
            if (std::all_of(centers.begin(), centers.end(), [&](Index c) { return k.test(c); }))
                throw Error("centers do not escape the filtration");
    }
    Function f = Function::Zero(static_cast<Eigen::Index>(s.size()));
    for (Index c : centers) {
        const PointSet b = ball(s, c, eps);
        for (auto x = b.find_first(); x != PointSet::npos; x = b.find_next(x))
            f[static_cast<Eigen::Index>(x)] = tent(s, x, b);
    }
    return f;
}

Function build_scaled_refuter(const Space& s, const std::vector<Index>& centers, const std::vector<double>& radii)
{
    if (!s.has_metric())
        throw Error("scaled refuter needs a metric");
    if (centers.size() != radii.size())
        throw Error("one radius per center required");
    std::vector<PointSet> balls;
    PointSet used(s.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (centers[i] >= s.size())
            throw Error("center out of range");
        if (!(radii[i] > 0.0))
            throw Error("radii must be positive");
        PointSet b = ball(s, centers[i], radii[i]);
        if (b.intersects(used))
            throw Error("ball around " + s.id(centers[i]) + " overlaps an earlier ball");
        used |= b;
        balls.push_back(std::move(b));
    }
    Function f = Function::Zero(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < balls.size(); ++i)
        for (auto x = balls[i].find_first(); x != PointSet::npos; x = balls[i].find_next(x))
            f[static_cast<Eigen::Index>(x)] = tent(s, x, balls[i]) / radii[i];
    return f;
}

double lipschitz_constant(const Space& s, const Function& f)
{
    const auto& d = s.metric();
    double best = 0.0;
    for (Eigen::Index x = 0; x < d.rows(); ++x)
        for (Eigen::Index y = x + 1; y < d.cols(); ++y)
            if (d(x, y) > 0.0 && std::isfinite(d(x, y)))
                best = std::max(best, std::abs(f[x] - f[y]) / d(x, y));
    return best;
}

} // namespace scalekit
