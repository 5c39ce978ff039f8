#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalekit/scales.hpp"
#include "scalekit/space.hpp"

namespace scalekit {

/// Finite group, or a finite window of an infinite group, given by its
/// multiplication table. Entry (g, h) is the index of g*h, or -1 when the
/// product leaves the window.
class GroupWindow {
public:
    GroupWindow(Space carrier, std::vector<std::vector<long>> table, Index identity);

    const Space& carrier() const { return carrier_; }
    std::size_t size() const { return carrier_.size(); }
    Index identity() const { return identity_; }
    const std::vector<std::vector<long>>& table() const { return table_; }

    /// Product g*h, empty when it leaves the window.
    std::optional<Index> multiply(Index g, Index h) const;
    std::optional<Index> inverse(Index g) const;

    /// True when every product stays inside the carrier.
    bool closed() const { return closed_; }

private:
    Space carrier_;
    std::vector<std::vector<long>> table_;
    Index identity_;
    std::vector<long> inverse_;
    bool closed_ = true;
};

/// Validates a full multiplication table: Latin square, two-sided identity,
/// associativity. Throws with the offending entry.
GroupWindow builder_group_window(std::vector<std::string> ids, const std::vector<std::vector<long>>& table);

/// Z/n with elements "0".."n-1".
GroupWindow cyclic_group(std::size_t n);

/// S_k on permutations in one-line notation ("2134" swaps 1 and 2);
/// (s t)(i) = s(t(i)).
GroupWindow symmetric_group(std::size_t k);

/// Window [-N, N] of Z. Carries the word metric |a - b| of the generators +-1.
GroupWindow z_window(std::size_t n);

/// Product set A*B, dropping products that leave the window; `clipped` counts them.
PointSet product_set(const GroupWindow& g, const PointSet& a, const PointSet& b, std::size_t* clipped = nullptr);

PointSet inverse_set(const GroupWindow& g, const PointSet& a, std::size_t* clipped = nullptr);

struct TranslationScale {
    Cover cover;
    /// Products g*f that left the window and were dropped.
    std::size_t clipped = 0;
};

/// U_F = { gF : g in G }, with F augmented by the identity.
TranslationScale translation_scale(const GroupWindow& g, PointSet f);

struct TranslationReport {
    BaseReport base;
    /// Candidate sets F_3 referred to by the witnesses, each augmented by the identity.
    std::vector<PointSet> candidates;
    std::vector<std::string> labels;
    std::size_t clipped = 0;
};

/// Every ordered pair (F1, F2) has a candidate F3 with st(U_F1, U_F2)
/// refining U_F3. Candidates are the members themselves and the products
/// F1 F2^-1 F2, checked extensionally.
TranslationReport check_translation_ls(const GroupWindow& g, const std::vector<PointSet>& f_list);

} // namespace scalekit
