#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"

namespace scalekit {

struct LabeledSet {
    std::string label;
    PointSet set;
};

/// Bounded structure generated by a list of subsets.
///
/// The generated family consists of the singletons and all subsets of the
/// blocks, where a block is the union of a maximal chain of overlapping
/// generators. Membership is a containment test; the family is never
/// materialised.
///
/// A structure built from a filtration carries the levels as a horizon:
/// all points form a single component (the filtration exhausts one space),
/// the whole-space window never certifies boundedness, and the top proper
/// level is used as a witness but not as a premise.
class BoundedStructure {
public:
    BoundedStructure() = default;
    BoundedStructure(std::size_t universe, std::vector<PointSet> generators);

    static BoundedStructure from_filtration(const Filtration& f);

    std::size_t universe() const { return universe_; }
    const std::vector<PointSet>& generators() const { return generators_; }
    const std::vector<PointSet>& blocks() const { return blocks_; }
    bool has_horizon() const { return horizon_.has_value(); }
    const Filtration* horizon() const { return horizon_ ? &*horizon_ : nullptr; }

    bool contains(const PointSet& a) const;

    /// Component id per point.
    const std::vector<std::size_t>& components() const { return component_; }
    std::size_t component_count() const { return component_count_; }
    const PointSet& component(std::size_t id) const { return component_sets_.at(id); }

    bool is_weakly_bounded(const PointSet& a) const;

    /// Maximal members of the family: blocks and the uncovered singletons.
    std::vector<PointSet> maximal_bounded() const;

    /// Weakly bounded sets quantified over by "for every weakly bounded B"
    /// searches, smallest first.
    std::vector<LabeledSet> premise_sets() const;

    /// Candidates for "there is a weakly bounded B' containing B", smallest
    /// first: the empty set, the levels (or blocks), then unions with the
    /// maximal weakly bounded set.
    std::vector<LabeledSet> witness_sets() const;

    /// Union over components of one maximal bounded subset (the largest block).
    PointSet maximal_weakly_bounded() const;

private:
    void build();

    std::size_t universe_ = 0;
    std::vector<PointSet> generators_;
    std::vector<PointSet> blocks_;
    std::optional<Filtration> horizon_;
    std::vector<std::size_t> component_;
    std::size_t component_count_ = 0;
    std::vector<PointSet> component_sets_;
};

/// Sets at finite distance from each other are bounded: one generator per
/// class of the relation d(x, y) < inf.
BoundedStructure metric_bounded(const Space& s);

/// Only singletons are bounded (every pair infinitely far apart).
BoundedStructure discrete_bounded(std::size_t n);

struct AxiomReport {
    bool pass = true;
    std::vector<std::string> failures;
};

/// Singletons, closure under subsets and under unions of overlapping members.
AxiomReport check_axioms(const BoundedStructure& b);

/// A map between finite point sets: f[x] is the image of x.
using PointMap = std::vector<Index>;

struct ProperReport {
    bool pass = true;
    /// Bounded set of the codomain whose preimage is unbounded.
    std::optional<PointSet> counterexample;
};

ProperReport check_proper(const PointMap& f, const BoundedStructure& bx, const BoundedStructure& by);

/// Image of every bounded set is bounded.
ProperReport maps_bounded_to_bounded(const PointMap& f, const BoundedStructure& bx, const BoundedStructure& by);

struct LemmaWbReport {
    bool proper = false;
    bool bounded_to_bounded = false;
    /// Preimage of every weakly bounded set of Y is weakly bounded in X.
    bool conclusion = false;
    /// Weakly bounded W in Y with f^-1(W) not weakly bounded.
    std::optional<PointSet> counterexample;
    /// Hypotheses imply the conclusion.
    bool pass = true;
};

LemmaWbReport lemma_wb_test(const PointMap& f, const BoundedStructure& bx, const BoundedStructure& by);

struct StarWbReport {
    bool input_weakly_bounded = false;
    bool uniformly_bounded = true;
    bool star_weakly_bounded = false;
    bool identity_checked = false;
    bool identity_holds = false;
    bool pass = false;
};

/// st(B, U) is weakly bounded for weakly bounded B and uniformly bounded U;
/// also checks st(B, U) n C = st(B n C, U) per component when no element of
/// U straddles two components. `ls_base`, when given, supplies uniform
/// boundedness: every element inside an element of some base scale.
StarWbReport st_weakly_bounded_test(const PointSet& b, const Cover& u, const BoundedStructure& s,
                                    const std::vector<Cover>* ls_base = nullptr);

/// Some scale U of `ss_base` has st(B, U) bounded for every premise bounded set.
std::optional<std::size_t> proper_hss_witness(const BoundedStructure& b, const std::vector<Cover>& ss_base);

/// Some cover flagged open is a scale with all elements bounded.
std::optional<std::size_t> proper_hls_witness(const BoundedStructure& b, const std::vector<Cover>& covers);

PointSet preimage(const PointMap& f, std::size_t domain, const PointSet& w);
PointSet image(const PointMap& f, std::size_t codomain, const PointSet& a);

} // namespace scalekit
