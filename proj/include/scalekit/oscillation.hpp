#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalekit/bounded.hpp"
#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"

namespace scalekit {

/// max |f(x) - f(y)| over x, y in A (0 for fewer than two points).
double value_diameter(const Function& f, const PointSet& a);

/// A pair attaining value_diameter, if A has at least two points.
std::optional<std::pair<Index, Index>> value_diameter_pair(const Function& f, const PointSet& a);

/// Checks tolerate this much rounding above epsilon.
inline constexpr double kValueSlack = 1e-12;

enum class SOForm {
    /// Every U meeting X \ B has diam f(U) <= eps.
    Strict,
    /// Every U has diam f(U \ B) <= eps.
    Relaxed,
};

struct SOQuery {
    Function f;
    std::vector<Cover> base;
    /// Strictly descending positive values.
    std::vector<double> eps;
    BoundedStructure structure;
};

struct SOWitness {
    std::size_t cover;
    double eps;
    std::string label;
    PointSet set;
};

struct SOViolation {
    std::size_t cover;
    double eps;
    std::size_t element;
    Index x;
    Index y;
    double spread;
    /// Largest candidate B the violation survives.
    std::string against;
};

struct SOVerdict {
    bool pass = true;
    std::vector<SOWitness> witnesses;
    std::optional<SOViolation> violation;
    std::vector<std::string> notes;
};

/// Searches the structure's witness sets in order; first success wins.
SOVerdict is_slowly_oscillating(const SOQuery& q, SOForm form);

struct EquivalenceReport {
    SOVerdict strict;
    SOVerdict relaxed;
    bool agree = false;
    /// Relaxed witnesses B re-checked in strict form with B' = st(B, U).
    std::size_t construction_checks = 0;
    std::size_t construction_failures = 0;
    bool pass = false;
};

EquivalenceReport equivalence_test(const SOQuery& q);

/// Strict-form condition for one cover, epsilon and set B.
bool strict_holds(const Function& f, const Cover& u, double eps, const PointSet& b);

/// Relaxed-form condition for one cover, epsilon and set B.
bool relaxed_holds(const Function& f, const Cover& u, double eps, const PointSet& b);

/// f(x) = d(x, X \ B(x_n, eps)) on each ball B(x_n, eps), 0 elsewhere.
/// Centers must be more than 2 eps apart and, on a filtered space, escape
/// every proper level.
Function build_bump_refuter(const Space& s, const std::vector<Index>& centers, double eps);

/// f = d(x, X \ B(x_n, r_n)) / r_n on each ball, 0 elsewhere. Balls must be disjoint.
Function build_scaled_refuter(const Space& s, const std::vector<Index>& centers, const std::vector<double>& radii);

/// max |f(x) - f(y)| / d(x, y) over pairs at positive finite distance.
double lipschitz_constant(const Space& s, const Function& f);

/// d(x, A) = min over a in A; +inf for empty A.
double distance_to_set(const Space& s, Index x, const PointSet& a);

} // namespace scalekit
