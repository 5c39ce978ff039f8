#pragma once

#include <string>
#include <vector>

#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"

namespace scalekit {

/// Open balls B(x, r) = { y : d(x, y) < r }, one element per center in point order.
struct BallCover {
    double radius = 0.0;
    std::vector<Index> centers;
    Cover cover;
};

BallCover ball_cover(const Space& s, double r);

/// Open-ball cover of an arbitrary distance table (e.g. an induced pseudometric).
Cover ball_cover_of(const Eigen::MatrixXd& d, double r);

/// B(x, r) for a single center.
PointSet ball(const Space& s, Index center, double r);

/// Classical sup-diameter of a point set (0 for sets with fewer than two points).
double diameter(const Space& s, const PointSet& a);

/// Sorted distinct finite pairwise distances, always starting with 0.
std::vector<double> candidate_radii(const Space& s);

/// Result of an exact radius scan.
///
/// Open balls only change when the radius crosses a pairwise distance, so the
/// pass/fail outcome is constant on every interval (d_k, d_k+1] and on
/// (d_max, inf). One probe per interval decides the whole interval.
struct ScanResult {
    double value = 0.0;
    /// Radius at which the outcome flips (the first failing probe for the
    /// Lebesgue number, the first passing probe for the mesh); +inf if none.
    double binding = kInf;
    std::size_t probes = 0;
};

/// sup { lambda : st(B_lambda, B_lambda) refines U }. Needs a metric and a scale.
ScanResult lebesgue_number(const Space& s, const Cover& u);

/// inf { M : st(U, U) refines B_M }.
ScanResult mesh(const Space& s, const Cover& u);

struct MetricBase {
    ScaleBase base;
    std::vector<double> radii;
    std::vector<std::string> warnings;
};

/// Ball covers for descending radii; expects r_k+1 <= r_k / 3.
MetricBase metric_ss_base(const Space& s, const std::vector<double>& radii);

/// Ball covers for ascending radii; expects r_k+1 >= 3 r_k.
MetricBase metric_ls_base(const Space& s, const std::vector<double>& radii);

} // namespace scalekit
