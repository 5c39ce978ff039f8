#include "scalekit/metric.hpp"

#include <algorithm>
#include <cmath>

namespace scalekit {

PointSet ball(const Space& s, Index center, double r)
{
    const auto& d = s.metric();
    PointSet b(s.size());
    const auto c = static_cast<Eigen::Index>(center);
    for (Eigen::Index y = 0; y < d.cols(); ++y)
        if (d(c, y) < r)
            b.set(static_cast<std::size_t>(y));
    return b;
}

BallCover ball_cover(const Space& s, double r)
{
    if (!s.has_metric())
        throw Error("ball covers need a metric");
    if (!(r > 0.0))
        throw Error("ball radius must be positive");
    BallCover out{r, {}, Cover(s.size())};
    for (Index x = 0; x < s.size(); ++x) {
        out.centers.push_back(x);
        out.cover.add(ball(s, x, r));
    }
    return out;
}

Cover ball_cover_of(const Eigen::MatrixXd& d, double r)
{
    if (!(r > 0.0))
        throw Error("ball radius must be positive");
    Cover out(static_cast<std::size_t>(d.rows()));
    for (Eigen::Index x = 0; x < d.rows(); ++x) {
        PointSet b(static_cast<std::size_t>(d.rows()));
        for (Eigen::Index y = 0; y < d.cols(); ++y)
            if (d(x, y) < r)
                b.set(static_cast<std::size_t>(y));
        out.add(std::move(b));
    }
    return out;
}

double diameter(const Space& s, const PointSet& a)
{
    const auto& d = s.metric();
    const auto pts = members(a);
    double diam = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            diam = std::max(diam, d(static_cast<Eigen::Index>(pts[i]), static_cast<Eigen::Index>(pts[j])));
    return diam;
}

std::vector<double> candidate_radii(const Space& s)
{
    const auto& d = s.metric();
    std::vector<double> out{0.0};
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = i + 1; j < d.cols(); ++j)
            if (std::isfinite(d(i, j)))
                out.push_back(d(i, j));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

    // Probe for interval k: (d_k, d_k+1] when k < K, (d_K, inf) when k == K.
    double probe(const std::vector<double>& d, std::size_t k)
    {
        if (k + 1 < d.size())
            return 0.5 * (d[k] + d[k + 1]);
        return 2.0 * d.back() + 1.0;
    }

    void require_metric(const Space& s)
    {
        if (!s.has_metric())
            throw Error("space has no metric");
    }

} // namespace

ScanResult lebesgue_number(const Space& s, const Cover& u)
{
    require_metric(s);
    if (!u.is_scale())
        throw Error("Lebesgue number needs a cover of the whole space");
    const auto d = candidate_radii(s);
    const std::size_t intervals = d.size();
    ScanResult res;
    auto passes = [&](std::size_t k) {
        ++res.probes;
        return star_refines(ball_cover(s, probe(d, k)).cover, u);
    };
    // passing intervals form a prefix; find its length
    std::size_t lo = 0, hi = intervals;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (passes(mid))
            lo = mid + 1;
        else
            hi = mid;
    }
    const std::size_t passing = lo;
    if (passing == intervals) {
        res.value = kInf;
    } else {
        res.value = passing == 0 ? 0.0 : d[passing];
        res.binding = probe(d, passing);
    }
    return res;
}

ScanResult mesh(const Space& s, const Cover& u)
{
    require_metric(s);
    const auto d = candidate_radii(s);
    const std::size_t intervals = d.size();
    const Cover st = star_family(u, u);
    ScanResult res;
    auto passes = [&](std::size_t k) {
        ++res.probes;
        return refines(st, ball_cover(s, probe(d, k)).cover);
    };
    // passing intervals form a suffix; find where it starts
    std::size_t lo = 0, hi = intervals;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (passes(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == intervals) {
        res.value = kInf;
    } else {
        res.value = d[lo];
        res.binding = probe(d, lo);
    }
    return res;
}

namespace {

    MetricBase metric_base(const Space& s, const std::vector<double>& radii, Direction dir)
    {
        require_metric(s);
        if (radii.empty())
            throw Error("metric base needs at least one radius");
        MetricBase out;
        out.radii = radii;
        out.base.direction = dir;
        out.base.open_ended = true;
        for (std::size_t k = 0; k < radii.size(); ++k) {
            if (!(radii[k] > 0.0))
                throw Error("metric base radii must be positive");
            out.base.scales.push_back(ball_cover(s, radii[k]).cover);
            if (k == 0)
                continue;
            const double ratio = radii[k] / radii[k - 1];
            const bool spaced = dir == Direction::Small ? ratio <= 1.0 / 3.0 + 1e-12 : ratio >= 3.0 - 1e-12;
            if (!spaced)
                out.warnings.push_back("radii " + format_coordinate(radii[k - 1]) + " -> "
                                       + format_coordinate(radii[k]) + " violate the factor-3 spacing");
        }
        if (radii.size() == 1)
            out.warnings.push_back("single radius: base axioms are not guaranteed");
        if (!s.triangle_inequality())
            out.warnings.push_back("triangle inequality fails: base axioms are not guaranteed");
        return out;
    }

} // namespace

MetricBase metric_ss_base(const Space& s, const std::vector<double>& radii)
{
    return metric_base(s, radii, Direction::Small);
}

MetricBase metric_ls_base(const Space& s, const std::vector<double>& radii)
{
    return metric_base(s, radii, Direction::Large);
}

} // namespace scalekit
