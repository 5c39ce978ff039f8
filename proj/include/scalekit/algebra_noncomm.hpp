#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "scalekit/algebra_comm.hpp"
#include "scalekit/entourages.hpp"
#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"

namespace scalekit {

struct NamedOperator {
    std::string name;
    OperatorMatrix matrix;
};

/// Finite operator family closed under adjoints: a* is added for every
/// member that is not self-adjoint.
class StarFamily {
public:
    StarFamily() = default;
    StarFamily(std::size_t points, std::vector<NamedOperator> generators);

    std::size_t points() const { return points_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<NamedOperator>& members() const { return members_; }
    const NamedOperator& operator[](std::size_t i) const { return members_[i]; }

private:
    std::size_t points_ = 0;
    std::vector<NamedOperator> members_;
};

/// a_{x,y} = <a(delta_x), delta_y>, the coefficient at row y, column x.
Complex coefficient(const OperatorMatrix& a, Index x, Index y);

/// Operator from triplets (row, column, value).
OperatorMatrix make_operator(std::size_t n, const std::vector<Eigen::Triplet<Complex>>& triplets);

OperatorMatrix identity_operator(std::size_t n);

/// { (x, y) : |a_{x,y}| > tau } together with the diagonal.
Entourage support_entourage(const OperatorMatrix& a, double tau = 0.0);

/// Largest singular value by power iteration on a* a (fixed start vector, 1e-6 tolerance).
double operator_norm(const OperatorMatrix& a);

/// { S_v } with empty supports pruned.
Cover pou_support(const PartitionOfUnity& phi);

/// Operator with M(delta_x) = phi(x): one column per point, one row per index.
OperatorMatrix pou_to_operator(const PartitionOfUnity& phi);

struct PouImprovement {
    /// psi(x)(p) = sum of phi(x)(v) over s(v) = p, indexed by points.
    PartitionOfUnity psi;
    /// support(phi) refines support(psi).
    bool coarsens = false;
    /// support(psi) refines st(support(phi), support(phi)).
    bool refines_star = false;
};

/// Reindexes phi by a selection s(v) in S_v; indices with empty support are ignored.
PouImprovement pou_improve(const PartitionOfUnity& phi, const std::vector<Index>& selection);

/// Relation R = diagonal + { (u, v) : |a_{u,v}| >= 1 for some a in the family }, as adjacency rows.
std::vector<PointSet> chain_relation(const std::vector<const OperatorMatrix*>& family, std::size_t n);

struct FBoundedResult {
    bool pass = true;
    /// Largest minimal chain length (in points) over all elements.
    std::size_t n = 1;
    std::vector<std::size_t> per_element;
    /// (element, x, y) with no chain of at most n_max points inside the element.
    std::optional<std::tuple<std::size_t, Index, Index>> disconnected;
};

/// Every x, y in each element are joined by a chain x = x_1, ..., x_n = y of
/// points of the element with consecutive pairs in R, n <= n_max.
FBoundedResult f_bounded(const Cover& u, const StarFamily& f, std::size_t n_max);
FBoundedResult f_bounded(const Cover& u, const std::vector<PointSet>& relation, std::size_t n_max);

struct LsCertificate {
    bool member = false;
    std::size_t n = 0;
    std::size_t degree = 0;
    std::size_t monomials = 0;
    FBoundedResult detail;
};

/// Membership oracle for LS(A), A generated by a finite star family:
/// F is the set of all monomials of degree at most d in the generators and
/// their adjoints (the identity included). F-boundedness is monotone in F,
/// so this largest F decides membership.
class LsFromAlgebra {
public:
    LsFromAlgebra(const StarFamily& gens, std::size_t degree, std::size_t n_max);

    LsCertificate certify(const Cover& u) const;
    std::size_t monomial_count() const { return monomials_.size(); }
    const std::vector<OperatorMatrix>& monomials() const { return monomials_; }

private:
    std::size_t degree_;
    std::size_t n_max_;
    std::vector<OperatorMatrix> monomials_;
    std::vector<PointSet> relation_;
};

/// max d(x, y) over support pairs of the family.
double support_radius(const Space& s, const StarFamily& f);

/// T(delta_y) = sum over elements U containing y of delta_{x(U)}, x(U) the first point of U.
OperatorMatrix roe_operator(const Cover& u);

/// Largest number of elements containing a single point.
std::size_t multiplicity(const Cover& u);

struct RoeRow {
    std::string name;
    std::size_t multiplicity = 0;
    std::size_t max_block = 0;
    /// Minimal chain length certified by {T, T*}.
    std::size_t n = 0;
    bool certified_at_two = false;
    double norm = 0.0;
    double norm_bound = 0.0;
};

struct RadiusRow {
    std::string name;
    bool certified = false;
    std::size_t n = 0;
    double diameter = 0.0;
    double bound = 0.0;
    bool ok = true;
};

struct RoeReport {
    std::vector<RadiusRow> radius_rows;
    std::vector<RoeRow> roe_rows;
    /// Diameter bound (n - 1) r holds for every certified cover.
    bool radius_bound = true;
    /// Every T certifies its cover at n = 2.
    bool all_at_two = true;
    bool norms_bounded = true;
};

/// (a) covers certified by `family` (chains of at most n_max points) have
/// diameter at most (n - 1) r, r the support radius; (b) for each
/// finite-multiplicity cover, {T, T*} certifies it at n = 2 and the norm of T
/// respects multiplicity * largest element.
RoeReport roe_comparison_tests(const Space& s, const StarFamily& family,
                               const std::vector<std::pair<std::string, Cover>>& covers, std::size_t n_max);

/// d_a(x, y) = |a(delta_x) - a(delta_y)|_2, maximised over the members.
Eigen::MatrixXd operator_pseudometric(const std::vector<const OperatorMatrix*>& ops, std::size_t n);

/// epsilon-ball covers of the operator pseudometric of the whole family.
ScaleBase ss_from_algebra(const StarFamily& gens, const std::vector<double>& eps_grid);

/// For each epsilon some base scale has d_a-diameter at most epsilon on every element.
ContinuityReport cstar_ss_membership(const OperatorMatrix& a, const std::vector<Cover>& base,
                                     const std::vector<double>& eps_grid);

struct SspReport {
    bool continuous = false;
    bool support_in_structure = false;
    bool support_smaller = false;
    bool pass = false;
    std::optional<double> failing_eps;
};

/// (i) phi is ss-continuous into l1 over the base; (ii) some base scale
/// refines its support cover, and the support cover star refines U.
SspReport ssp_witness_check(const Cover& u, const PartitionOfUnity& phi, const std::vector<Cover>& base,
                            const std::vector<double>& eps_grid);

} // namespace scalekit
