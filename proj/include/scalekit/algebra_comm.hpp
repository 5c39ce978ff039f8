#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalekit/bounded.hpp"
#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"

namespace scalekit {

struct NamedFunction {
    std::string name;
    Function values;
};

/// Finite family of bounded functions standing in for a unital,
/// conjugation-closed algebra: the constant 1 and the conjugate of every
/// non-real generator are added on construction.
class FunctionFamily {
public:
    FunctionFamily(std::size_t points, std::vector<NamedFunction> generators);

    std::size_t points() const { return points_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<NamedFunction>& members() const { return members_; }
    const NamedFunction& operator[](std::size_t i) const { return members_[i]; }
    std::optional<std::size_t> find(const std::string& name) const;

    /// d_F(x, y) = max over f in F of |f(x) - f(y)|; all members when `subset` is empty.
    Eigen::MatrixXd pseudometric(const std::vector<std::size_t>& subset = {}) const;

private:
    std::size_t points_;
    std::vector<NamedFunction> members_;
};

struct FamilyBase {
    ScaleBase base;
    /// (subset index, epsilon) of each member.
    std::vector<std::pair<std::size_t, double>> labels;
};

/// epsilon-ball covers of d_F for every F in `subsets` and every epsilon.
/// An empty subset list means the whole family. Duplicate elements are dropped.
FamilyBase ss_base_from_family(const FunctionFamily& c, const std::vector<double>& eps_grid,
                               const std::vector<std::vector<std::size_t>>& subsets = {});

struct ContinuityReport {
    bool pass = true;
    /// (epsilon, scale index) for every passing epsilon.
    std::vector<std::pair<double, std::size_t>> witnesses;
    std::optional<double> failing_eps;
    /// Worst element of the finest scale at the failing epsilon.
    std::optional<std::size_t> element;
    std::optional<std::pair<Index, Index>> pair;
};

/// For each epsilon some base scale has diam f(U) <= epsilon on every element.
ContinuityReport is_ss_continuous(const Function& f, const std::vector<Cover>& base, const std::vector<double>& eps_grid);

struct StoneWeierstrassReport {
    /// Classes of "f(x) = f(y) for every f in C".
    std::vector<PointSet> blocks;
    bool block_constant = false;
    bool ss_continuous = false;
    bool agree = false;
    std::vector<double> base_radii;
    std::vector<double> probe_eps;
};

/// Finite content of C(X, SS(C)) = C: the probe is ss-continuous for the
/// base induced by C iff it is constant on the blocks of C. Refuses filtered
/// spaces.
StoneWeierstrassReport stone_weierstrass_desk_test(const Space& s, const FunctionFamily& c, const Function& probe);

/// Blocks of the relation "every member agrees on x and y" (within 1e-12).
std::vector<PointSet> family_blocks(const FunctionFamily& c);

/// Bounded sets are the pre-compact ones: singletons and subsets of proper levels.
BoundedStructure induced_bounded(const Space& s);

} // namespace scalekit
