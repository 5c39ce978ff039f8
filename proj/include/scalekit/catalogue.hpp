#pragma once

#include <string>
#include <vector>

#include "scalekit/instance.hpp"

namespace scalekit {

/// Names of the bundled desk instances, in a fixed order.
std::vector<std::string> bundled_names();

/// Builds a bundled instance: halfline, nats, squares, line20, grid5, grid6,
/// zwindow, cyclic12, s3.
Instance bundled_instance(const std::string& name);

/// Centers 10, 20, ..., 100 on the half line, radius 1.
std::vector<Index> halfline_bump_centers(const Space& halfline);

/// {[n, n + 2^-n]} for n = 0..100, trivially extended.
Cover halfline_shrinking_cover(const Space& halfline);

/// {[n, n + 1]} for n = 0..99.
Cover halfline_unit_cover(const Space& halfline);

/// Pairs {n^2, n^2 + 2n} on a line with integer points, trivially extended.
Cover squares_pair_cover(const Space& line);

/// Scaled refuter over even n: tents of height 1 at n^2 with radius n.
Function squares_refuter(const Space& line);

} // namespace scalekit
