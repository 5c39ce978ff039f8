#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "scalekit/algebra_comm.hpp"
#include "scalekit/bounded.hpp"
#include "scalekit/oscillation.hpp"
#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"

namespace scalekit {

struct LsQuery {
    Cover u;
    FunctionFamily family;
    BoundedStructure structure;
    /// Strictly descending positive values.
    std::vector<double> eps;
};

struct LsWitness {
    std::string function;
    double eps;
    std::string premise;
    std::string witness;
};

struct LsViolation {
    int condition = 0;
    std::string premise;
    std::string function;
    double eps = 0.0;
    std::optional<std::size_t> element;
    std::optional<std::pair<Index, Index>> pair;
    double spread = 0.0;
};

struct LsReport {
    bool pass = true;
    bool condition1 = true;
    bool condition2 = true;
    std::string truncation;
    std::vector<LsWitness> witnesses;
    std::optional<LsViolation> violation;
};

/// Membership of a cover in LS(C, B):
///  1. st(B, U) is weakly bounded for each weakly bounded B;
///  2. for each weakly bounded B, f in C and eps there is a weakly bounded
///     B' containing B with diam f(U \ B') <= eps for every U.
/// Condition 1 runs over the premise levels (st is monotone, levels form a
/// chain); condition 2 over the empty set and every level.
LsReport ls_membership(const LsQuery& q);

struct StarClosureReport {
    bool pass = true;
    /// Inputs that are not members at the refined grid (precondition failures).
    std::vector<std::size_t> non_members;
    /// (i, j, st(U_i, U_j) is a member).
    std::vector<std::tuple<std::size_t, std::size_t, bool>> pairs;
};

/// st(U, V) is a member at every epsilon of the grid whenever U and V are
/// members at the grid refined by epsilon / 3. Pairs involving a non-member
/// are skipped.
StarClosureReport ls_structure_axiom_test(const std::vector<Cover>& members, const FunctionFamily& family,
                                          const BoundedStructure& structure, const std::vector<double>& eps);

struct LevelCheck {
    bool pass = true;
    std::string truncation;
    /// (eps or premise index, level index) witnesses.
    std::vector<std::pair<double, std::size_t>> witnesses;
    std::optional<double> failing_eps;
    std::optional<std::string> failing_level;
    std::optional<std::size_t> element;
    double spread = 0.0;
    /// Elements of infinite metric diameter (not pre-compact).
    std::vector<std::size_t> not_precompact;
};

/// For every eps some proper level K has diam(U \ K) < eps for all U.
LevelCheck wright_c0_check(const Space& s, const Cover& u, const std::vector<double>& eps);

/// st(K_i, U) inside some proper level for every premise level, and every U pre-compact.
LevelCheck maximal_structure_check(const Space& s, const Cover& u);

/// Condition 1 of maximal_structure_check, plus: for every premise level K_i
/// some level K_j, j >= i, such that every U meeting X \ K_j lies in X \ K_i.
LevelCheck continuously_controlled_check(const Space& s, const Cover& u);

/// diam f(X \ K) over the top proper level is at most `threshold`.
bool is_constant_at_infinity(const Space& s, const Function& f, double threshold);

struct AgreementRow {
    std::string name;
    bool controlled = false;
    bool member = false;
    bool agree = false;
};

struct AgreementReport {
    bool guard = true;
    std::vector<std::string> guard_failures;
    std::vector<AgreementRow> rows;
    bool pass = true;
};

/// Continuously controlled covers coincide with LS(C, B) for a family that
/// is constant at infinity. Agreement is asserted only when the guard holds.
AgreementReport theorem75_agreement(const Space& s, const std::vector<std::pair<std::string, Cover>>& catalogue,
                                    const FunctionFamily& family, const std::vector<double>& eps);

enum class PairCase { Escaping, Bounded, Mixed };

struct S0Classification {
    bool continuous = false;
    bool slowly_oscillating = false;
    bool ss_continuous = false;
    std::optional<PairCase> pair_case;
    /// |f(x_n) - f(y_n)| along the supplied pairs.
    std::vector<double> pair_gaps;
};

/// Continuity on the truncation, slow oscillation w.r.t. `ls_base`, metric
/// ss-continuity over `ss_radii`, and the three-case analysis of a pair sequence.
S0Classification s0_classify(const Space& s, const Function& f, const std::vector<Cover>& ls_base,
                             const std::vector<double>& eps, const std::vector<std::pair<Index, Index>>& pairs = {},
                             const std::vector<double>& ss_radii = {1.0, 0.5, 0.25});

PairCase classify_pairs(const BoundedStructure& b, const std::vector<std::pair<Index, Index>>& pairs);

enum class Reflectivity { MemberConsistent, RejectedByRefuter, RejectedUnboundedStar, Unrefuted };

struct ReflectivityReport {
    Reflectivity verdict = Reflectivity::Unrefuted;
    std::optional<std::size_t> base_radius;
    std::vector<std::pair<Index, Index>> pairs;
    std::vector<double> radii;
    Function refuter;
    std::vector<double> gaps;
    std::optional<LsReport> membership;
};

/// Uniformly bounded covers (inside some ball cover of `radii`) are
/// consistent; otherwise the refutation is built: an unbounded star, or a
/// scaled refuter on far pairs, confirmed by ls_membership at eps.
ReflectivityReport reflectivity_oracle(const Space& s, const Cover& u, const std::vector<double>& radii,
                                       double eps = 0.5);

} // namespace scalekit
