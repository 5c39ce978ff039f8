#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "scalekit/core.hpp"

namespace scalekit {

enum class MetricKind { None, Table, Line, Grid };

/// Chain K_1 < K_2 < ... < K_m of bounded windows.
///
/// A set is declared bounded iff it is a singleton or lies inside a proper
/// level. A level equal to the whole space is the truncation window: it
/// leaves no tail, so it never certifies boundedness (otherwise every set of
/// the truncation would be bounded and the "eventually" quantifiers would be
/// vacuous).
class Filtration {
public:
    Filtration() = default;
    Filtration(std::size_t universe, std::vector<PointSet> levels);

    bool empty() const { return levels_.empty(); }
    std::size_t depth() const { return levels_.size(); }
    std::size_t universe() const { return universe_; }
    const std::vector<PointSet>& levels() const { return levels_; }

    /// Levels with a nonempty complement, in ascending order.
    const std::vector<PointSet>& proper_levels() const { return proper_; }

    bool declared_bounded(const PointSet& s) const;

    /// First k levels only.
    Filtration truncated(std::size_t k) const;

    /// Human-readable truncation label carried by every report.
    std::string label() const;

    friend bool operator==(const Filtration&, const Filtration&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<PointSet> levels_;
    std::vector<PointSet> proper_;
};

/// Finite point set with an optional (pseudo, possibly infinite) metric and
/// an optional filtration modelling neighbourhoods of infinity.
class Space {
public:
    Space() = default;
    explicit Space(std::vector<std::string> ids);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(Index i) const { return ids_.at(i); }
    std::optional<Index> find(std::string_view id) const;
    Index index_of(std::string_view id) const;

    bool has_metric() const { return kind_ != MetricKind::None; }
    MetricKind metric_kind() const { return kind_; }
    const Eigen::MatrixXd& metric() const;
    double distance(Index x, Index y) const { return metric()(x, y); }
    /// Point coordinates for line (n x 1) and grid (n x 2) metrics.
    const Eigen::MatrixXd& coordinates() const { return coords_; }
    bool triangle_inequality() const { return triangle_ok_; }

    void set_metric_table(Eigen::MatrixXd d);
    void set_line_metric(const Eigen::VectorXd& coords);
    void set_grid_metric(const Eigen::MatrixXd& coords);

    bool has_filtration() const { return !filtration_.empty(); }
    const Filtration& filtration() const { return filtration_; }
    void set_filtration(std::vector<PointSet> levels);
    void set_filtration(Filtration f);

    Space with_levels(std::size_t k) const;

    friend bool operator==(const Space& a, const Space& b);

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, Index> lookup_;
    MetricKind kind_ = MetricKind::None;
    Eigen::MatrixXd metric_;
    Eigen::MatrixXd coords_;
    bool triangle_ok_ = false;
    Filtration filtration_;
};

/// Brute-force triangle inequality over all triples (with a relative slack of 1e-12).
bool satisfies_triangle_inequality(const Eigen::MatrixXd& d);

/// Shortest decimal spelling of a coordinate, used for point identifiers.
std::string format_coordinate(double x);

/// LINE(n, h): points 0, h, ..., n*h with |x - y|.
Space builder_line(std::size_t n, double h);

/// GRID(n): n x n integer lattice with the max-coordinate metric.
Space builder_grid(std::size_t n);

/// HALFLINE: LINE(800, 1/8) filtered by K_i = [0, 10 i], i = 1..10.
Space builder_halfline();

/// Points of a line space whose coordinate lies in [lo, hi].
PointSet coordinate_window(const Space& s, double lo, double hi);

} // namespace scalekit
