#include "scalekit/scales.hpp"

#include <algorithm>
#include <set>

namespace scalekit {

Cover::Cover(std::size_t universe, std::vector<PointSet> elements, bool open)
    : universe_(universe), open_(open)
{
    elements_.reserve(elements.size());
    for (auto& e : elements)
        add(std::move(e));
}

void Cover::add(PointSet element)
{
    if (element.size() != universe_)
        throw Error("cover element has wrong universe");
    if (element.none())
        throw Error("cover elements must be nonempty");
    elements_.push_back(std::move(element));
}

PointSet Cover::support() const
{
    PointSet s(universe_);
    for (const auto& e : elements_)
        s |= e;
    return s;
}

bool Cover::is_scale() const { return support().all(); }

Cover singleton_cover(std::size_t n)
{
    Cover c(n);
    for (Index i = 0; i < n; ++i)
        c.add(singleton(n, i));
    return c;
}

bool same_elements(const Cover& a, const Cover& b)
{
    if (a.universe() != b.universe())
        return false;
    std::set<PointSet> sa(a.begin(), a.end());
    std::set<PointSet> sb(b.begin(), b.end());
    return sa == sb;
}

PointSet star_set(const PointSet& a, const Cover& u)
{
    PointSet s = a;
    for (const auto& e : u)
        if (e.intersects(a))
            s |= e;
    return s;
}

Cover star_family(const Cover& u, const Cover& v)
{
    Cover out(u.universe());
    for (const auto& e : u)
        out.add(star_set(e, v));
    out.set_open(u.open() && v.open());
    return out;
}

std::optional<std::size_t> containing_element(const PointSet& s, const Cover& v)
{
    for (std::size_t j = 0; j < v.size(); ++j)
        if (s.is_subset_of(v[j]))
            return j;
    return std::nullopt;
}

bool refines(const Cover& u, const Cover& v)
{
    return std::all_of(u.begin(), u.end(), [&](const PointSet& e) {
        return containing_element(e, v).has_value();
    });
}

bool star_refines(const Cover& u, const Cover& v) { return refines(star_family(u, u), v); }

bool is_smaller(const Cover& u, const Cover& v) { return star_refines(u, v) && !same_elements(u, v); }

Cover deduplicated(const Cover& u)
{
    Cover out(u.universe(), {}, u.open());
    std::set<PointSet> seen;
    for (const auto& e : u)
        if (seen.insert(e).second)
            out.add(e);
    return out;
}

Cover trivial_extension(const Cover& b)
{
    Cover out = b;
    for (Index i = 0; i < b.universe(); ++i)
        out.add(singleton(b.universe(), i));
    return out;
}

namespace {

    template <class Witnesses>
    BaseReport check_pairs(const ScaleBase& base, Witnesses&& find_witness, bool ordered)
    {
        BaseReport report;
        const std::size_t m = base.scales.size();
        const std::size_t premises = (base.open_ended && m > 1) ? m - 1 : m;
        if (premises < m)
            report.notes.push_back("open-ended base: last member serves as witness only");
        for (std::size_t i = 0; i < premises; ++i) {
            for (std::size_t j = ordered ? 0 : i; j < premises; ++j) {
                auto k = find_witness(i, j);
                if (!k) {
                    report.pass = false;
                    report.counterexample = std::make_pair(i, j);
                    return report;
                }
                report.witnesses.push_back({i, j, *k});
            }
        }
        return report;
    }

} // namespace

BaseReport check_ss_base(const ScaleBase& base)
{
    if (base.direction != Direction::Small)
        throw Error("check_ss_base needs a SMALL base");
    // st(U_k, U_k) computed once per member
    std::vector<Cover> stars;
    for (const auto& u : base.scales)
        stars.push_back(star_family(u, u));
    auto find = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < base.scales.size(); ++k)
            if (refines(stars[k], base.scales[i]) && refines(stars[k], base.scales[j]))
                return k;
        return std::nullopt;
    };
    return check_pairs(base, find, false);
}

BaseReport check_ls_base(const ScaleBase& base)
{
    if (base.direction != Direction::Large)
        throw Error("check_ls_base needs a LARGE base");
    auto find = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        const Cover st = star_family(base.scales[i], base.scales[j]);
        for (std::size_t k = 0; k < base.scales.size(); ++k)
            if (refines(st, base.scales[k]))
                return k;
        return std::nullopt;
    };
    return check_pairs(base, find, true);
}

bool is_hausdorff(const ScaleBase& base)
{
    if (base.scales.empty())
        return false;
    const std::size_t n = base.scales.front().universe();
    for (Index x = 0; x < n; ++x) {
        for (Index y = x + 1; y < n; ++y) {
            bool separated = std::any_of(base.scales.begin(), base.scales.end(), [&](const Cover& u) {
                return std::none_of(u.begin(), u.end(),
                                    [&](const PointSet& e) { return e.test(x) && e.test(y); });
            });
            if (!separated)
                return false;
        }
    }
    return true;
}

PartitionOfUnity::PartitionOfUnity(Eigen::MatrixXd weights) : weights_(std::move(weights))
{
    if ((weights_.array() < 0.0).any())
        throw Error("partition of unity has negative weights");
    for (Eigen::Index x = 0; x < weights_.rows(); ++x) {
        if (std::abs(weights_.row(x).sum() - 1.0) > kRowTolerance)
            throw Error("partition of unity row " + std::to_string(x) + " does not sum to 1");
    }
}

PointSet PartitionOfUnity::support(std::size_t v) const
{
    PointSet s(points());
    for (Eigen::Index x = 0; x < weights_.rows(); ++x)
        if (weights_(x, static_cast<Eigen::Index>(v)) > 0.0)
            s.set(static_cast<std::size_t>(x));
    return s;
}

std::pair<PartitionOfUnity, std::vector<std::size_t>> PartitionOfUnity::pruned() const
{
    std::vector<std::size_t> kept;
    for (std::size_t v = 0; v < indices(); ++v)
        if (support(v).any())
            kept.push_back(v);
    Eigen::MatrixXd w(weights_.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t k = 0; k < kept.size(); ++k)
        w.col(static_cast<Eigen::Index>(k)) = weights_.col(static_cast<Eigen::Index>(kept[k]));
    return {PartitionOfUnity(std::move(w)), std::move(kept)};
}

bool subordinated(const PartitionOfUnity& phi, const Cover& u)
{
    if (phi.indices() != u.size() || phi.points() != u.universe())
        throw Error("partition of unity index set does not match the cover");
    for (std::size_t v = 0; v < phi.indices(); ++v)
        if (!phi.support(v).is_subset_of(u[v]))
            return false;
    return true;
}

} // namespace scalekit
