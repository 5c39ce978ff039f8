#include "scalekit/space.hpp"

#include <charconv>
#include <cmath>

namespace scalekit {

Filtration::Filtration(std::size_t universe, std::vector<PointSet> levels)
    : universe_(universe), levels_(std::move(levels))
{
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i].size() != universe_)
            throw Error("filtration level " + std::to_string(i + 1) + " has wrong universe");
        if (levels_[i].none())
            throw Error("filtration level " + std::to_string(i + 1) + " is empty");
        if (i > 0) {
            const auto& prev = levels_[i - 1];
            if (!prev.is_proper_subset_of(levels_[i]))
                throw Error("non-nested filtration at level " + std::to_string(i + 1));
        }
        if (!levels_[i].all())
            proper_.push_back(levels_[i]);
    }
}

bool Filtration::declared_bounded(const PointSet& s) const
{
    if (s.count() <= 1)
        return true;
    for (const auto& k : proper_)
        if (s.is_subset_of(k))
            return true;
    return false;
}

Filtration Filtration::truncated(std::size_t k) const
{
    std::vector<PointSet> kept(levels_.begin(), levels_.begin() + std::min(k, levels_.size()));
    return Filtration(universe_, std::move(kept));
}

std::string Filtration::label() const
{
    if (levels_.empty())
        return "no filtration";
    std::string s = "relative to truncation: depth " + std::to_string(levels_.size()) + ", "
        + std::to_string(proper_.size()) + " proper levels";
    if (proper_.size() < levels_.size())
        s += ", top level is the window";
    return s;
}

Space::Space(std::vector<std::string> ids) : ids_(std::move(ids))
{
    if (ids_.empty())
        throw Error("space needs at least one point");
    for (Index i = 0; i < ids_.size(); ++i)
        if (!lookup_.emplace(ids_[i], i).second)
            throw Error("duplicate point identifier '" + ids_[i] + "'");
}

std::optional<Index> Space::find(std::string_view id) const
{
    auto it = lookup_.find(std::string(id));
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

Index Space::index_of(std::string_view id) const
{
    if (auto i = find(id))
        return *i;
    throw Error("unknown point '" + std::string(id) + "'");
}

const Eigen::MatrixXd& Space::metric() const
{
    if (!has_metric())
        throw Error("space has no metric");
    return metric_;
}

void Space::set_metric_table(Eigen::MatrixXd d)
{
    const auto n = static_cast<Eigen::Index>(size());
    if (d.rows() != n || d.cols() != n)
        throw Error("metric table must be " + std::to_string(n) + " x " + std::to_string(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d(i, i) != 0.0)
            throw Error("nonzero diagonal at (" + ids_[i] + "," + ids_[i] + ")");
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::isnan(d(i, j)) || d(i, j) < 0.0)
                throw Error("negative or NaN distance at (" + ids_[i] + "," + ids_[j] + ")");
            if (d(i, j) != d(j, i))
                throw Error("asymmetric metric at (" + ids_[i] + "," + ids_[j] + ")");
        }
    }
    metric_ = std::move(d);
    coords_.resize(0, 0);
    kind_ = MetricKind::Table;
    triangle_ok_ = satisfies_triangle_inequality(metric_);
}

void Space::set_line_metric(const Eigen::VectorXd& coords)
{
    const auto n = static_cast<Eigen::Index>(size());
    if (coords.size() != n)
        throw Error("line metric needs one coordinate per point");
    metric_ = (coords.replicate(1, n) - coords.transpose().replicate(n, 1)).cwiseAbs();
    coords_ = coords;
    kind_ = MetricKind::Line;
    triangle_ok_ = true; // |x - y| is a metric
}

void Space::set_grid_metric(const Eigen::MatrixXd& coords)
{
    const auto n = static_cast<Eigen::Index>(size());
    if (coords.rows() != n || coords.cols() != 2)
        throw Error("grid metric needs two coordinates per point");
    metric_.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            metric_(i, j) = (coords.row(i) - coords.row(j)).cwiseAbs().maxCoeff();
    coords_ = coords;
    kind_ = MetricKind::Grid;
    triangle_ok_ = true; // max-coordinate metric
}

void Space::set_filtration(std::vector<PointSet> levels)
{
    filtration_ = Filtration(size(), std::move(levels));
}

void Space::set_filtration(Filtration f)
{
    if (!f.empty() && f.universe() != size())
        throw Error("filtration universe does not match the space");
    filtration_ = std::move(f);
}

Space Space::with_levels(std::size_t k) const
{
    Space s = *this;
    s.filtration_ = filtration_.truncated(k);
    return s;
}

bool operator==(const Space& a, const Space& b)
{
    if (a.ids_ != b.ids_ || a.kind_ != b.kind_ || !(a.filtration_ == b.filtration_))
        return false;
    if (a.kind_ == MetricKind::None)
        return true;
    return a.metric_ == b.metric_ && a.coords_ == b.coords_;
}

bool satisfies_triangle_inequality(const Eigen::MatrixXd& d)
{
    const Eigen::Index n = d.rows();
    const double scale = d.allFinite() ? std::max(1.0, d.maxCoeff()) : 1.0;
    const double slack = 1e-12 * scale;
    // d(x, z) <= d(x, y) + d(y, z) for every intermediate y, one column block at a time
    for (Eigen::Index y = 0; y < n; ++y) {
        Eigen::MatrixXd via = d.col(y).replicate(1, n) + d.row(y).replicate(n, 1);
        if (((d - via).array() > slack).any())
            return false;
    }
    return true;
}

std::string format_coordinate(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

Space builder_line(std::size_t n, double h)
{
    if (!(h > 0.0))
        throw Error("line step must be positive");
    std::vector<std::string> ids;
    Eigen::VectorXd coords(static_cast<Eigen::Index>(n + 1));
    for (std::size_t k = 0; k <= n; ++k) {
        coords[static_cast<Eigen::Index>(k)] = static_cast<double>(k) * h;
        ids.push_back(format_coordinate(static_cast<double>(k) * h));
    }
    Space s(std::move(ids));
    s.set_line_metric(coords);
    return s;
}

Space builder_grid(std::size_t n)
{
    if (n == 0)
        throw Error("grid side must be at least 1");
    std::vector<std::string> ids;
    Eigen::MatrixXd coords(static_cast<Eigen::Index>(n * n), 2);
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j, ++row) {
            coords(row, 0) = static_cast<double>(i);
            coords(row, 1) = static_cast<double>(j);
            ids.push_back(std::to_string(i) + "," + std::to_string(j));
        }
    }
    Space s(std::move(ids));
    s.set_grid_metric(coords);
    return s;
}

PointSet coordinate_window(const Space& s, double lo, double hi)
{
    if (s.metric_kind() != MetricKind::Line)
        throw Error("coordinate windows need a line space");
    PointSet out(s.size());
    const auto& c = s.coordinates();
    for (Index i = 0; i < s.size(); ++i) {
        const double x = c(static_cast<Eigen::Index>(i), 0);
        if (x >= lo && x <= hi)
            out.set(i);
    }
    return out;
}

Space builder_halfline()
{
    Space s = builder_line(800, 0.125);
    std::vector<PointSet> levels;
    for (int i = 1; i <= 10; ++i)
        levels.push_back(coordinate_window(s, 0.0, 10.0 * i));
    s.set_filtration(std::move(levels));
    return s;
}

} // namespace scalekit
