#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "scalekit/core.hpp"

namespace scalekit {

/// Indexed family of nonempty point subsets. A cover is a scale when the
/// union of its elements is the whole point set; partial families are allowed.
class Cover {
public:
    Cover() = default;
    explicit Cover(std::size_t universe, std::vector<PointSet> elements = {}, bool open = false);

    std::size_t universe() const { return universe_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const std::vector<PointSet>& elements() const { return elements_; }
    const PointSet& operator[](std::size_t i) const { return elements_[i]; }
    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

    void add(PointSet element);

    PointSet support() const;
    bool is_scale() const;

    /// Openness is supplied by instances; there is no topology object.
    bool open() const { return open_; }
    void set_open(bool open) { open_ = open; }

    friend bool operator==(const Cover& a, const Cover& b)
    {
        return a.universe_ == b.universe_ && a.elements_ == b.elements_;
    }

private:
    std::size_t universe_ = 0;
    std::vector<PointSet> elements_;
    bool open_ = false;
};

/// Cover of all singletons.
Cover singleton_cover(std::size_t n);

/// Equality of covers as sets of subsets (order and multiplicity ignored).
bool same_elements(const Cover& a, const Cover& b);

/// st(A, U): A together with every element of U that meets A.
PointSet star_set(const PointSet& a, const Cover& u);

/// st(U, V) = { st(U_i, V) : U_i in U }.
Cover star_family(const Cover& u, const Cover& v);

/// Every element of U lies inside some element of V.
bool refines(const Cover& u, const Cover& v);

/// Index of an element of V containing s, if any.
std::optional<std::size_t> containing_element(const PointSet& s, const Cover& v);

/// st(U, U) refines V. The non-strict order used inside Lebesgue/mesh scans.
bool star_refines(const Cover& u, const Cover& v);

/// st(U, U) refines V and U != V as element sets.
bool is_smaller(const Cover& u, const Cover& v);

/// Copy keeping the first occurrence of each element.
Cover deduplicated(const Cover& u);

/// B together with all singletons.
Cover trivial_extension(const Cover& b);

enum class Direction { Small, Large };

/// Finite list of scales checked as a filter base in one direction.
///
/// When `open_ended` is set the list is a finite prefix of an unbounded
/// family (e.g. balls of radius 3^k). Its extreme member (the last one: the
/// finest for SMALL, the coarsest for LARGE) then only serves as a witness,
/// because the member that would witness for it lies beyond the prefix.
struct ScaleBase {
    std::vector<Cover> scales;
    Direction direction = Direction::Small;
    bool open_ended = false;
};

struct PairWitness {
    std::size_t first;
    std::size_t second;
    std::size_t witness;
};

struct BaseReport {
    bool pass = true;
    std::vector<PairWitness> witnesses;
    /// First failing ordered pair.
    std::optional<std::pair<std::size_t, std::size_t>> counterexample;
    std::vector<std::string> notes;
};

/// Every pair (U1, U2) has U3 in the base with st(U3, U3) refining both.
BaseReport check_ss_base(const ScaleBase& base);

/// Every ordered pair (U1, U2) has U3 in the base coarsening st(U1, U2).
BaseReport check_ls_base(const ScaleBase& base);

/// Every pair of distinct points is separated by some scale of the base.
bool is_hausdorff(const ScaleBase& base);

/// Nonnegative weight table phi(x)(v): one row per point, one column per index v.
class PartitionOfUnity {
public:
    static constexpr double kRowTolerance = 1e-9;

    PartitionOfUnity() = default;
    explicit PartitionOfUnity(Eigen::MatrixXd weights);

    std::size_t points() const { return static_cast<std::size_t>(weights_.rows()); }
    std::size_t indices() const { return static_cast<std::size_t>(weights_.cols()); }
    const Eigen::MatrixXd& weights() const { return weights_; }

    /// S_v = { x : phi(x)(v) > 0 }.
    PointSet support(std::size_t v) const;

    /// Copy without indices of empty support, with the surviving original indices.
    std::pair<PartitionOfUnity, std::vector<std::size_t>> pruned() const;

private:
    Eigen::MatrixXd weights_;
};

/// Every support S_v lies inside U_v. Index v of phi corresponds to element v of U.
bool subordinated(const PartitionOfUnity& phi, const Cover& u);

} // namespace scalekit
