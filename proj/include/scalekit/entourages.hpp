#pragma once

#include <utility>
#include <vector>

#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"

namespace scalekit {

/// Relation on X x X stored as a sorted, deduplicated list of ordered pairs.
/// Need not contain the diagonal; `contains_diagonal()` says whether it does.
class Entourage {
public:
    using Pair = std::pair<Index, Index>;

    Entourage() = default;
    Entourage(std::size_t universe, std::vector<Pair> pairs);

    static Entourage diagonal(std::size_t universe);

    std::size_t universe() const { return universe_; }
    std::size_t size() const { return pairs_.size(); }
    const std::vector<Pair>& pairs() const { return pairs_; }

    bool contains(Index x, Index y) const;
    bool contains_diagonal() const;
    bool is_symmetric() const;
    bool is_subset_of(const Entourage& other) const;

    /// rows()[x] = { y : (x, y) in E }.
    std::vector<PointSet> rows() const;

    friend bool operator==(const Entourage&, const Entourage&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<Pair> pairs_;
};

Entourage invert(const Entourage& e);

/// E o F = { (x, z) : (x, y) in E and (y, z) in F for some y }.
Entourage compose(const Entourage& e, const Entourage& f);

Entourage intersect(const Entourage& e, const Entourage& f);

/// E[x] = { y : (y, x) in E }.
PointSet slice(const Entourage& e, Index x);

/// Union of U x U over the elements of U.
Entourage entourage_of_scale(const Cover& u);

/// { E[x] : x in X }; requires the diagonal so that the slices cover X.
Cover scale_of_entourage(const Entourage& e);

/// { (x, y) : d(x, y) < r } (strict) or <= r.
Entourage metric_entourage(const Space& s, double r, bool strict);

/// Small-scale entourage base: symmetric members, and for every E, F some G
/// with G o G inside E n F. `open_ended` exempts the last member as premise.
BaseReport check_uniform_axioms(const std::vector<Entourage>& base, bool open_ended = false);

/// Large-scale entourage base: symmetric members, and for every E, F some G
/// containing E o F. `open_ended` exempts the last member as premise.
BaseReport check_coarse_axioms(const std::vector<Entourage>& base, bool open_ended = false);

} // namespace scalekit
