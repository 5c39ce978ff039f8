#include "scalekit/entourages.hpp"

#include <algorithm>

namespace scalekit {

Entourage::Entourage(std::size_t universe, std::vector<Pair> pairs) : universe_(universe), pairs_(std::move(pairs))
{
    for (const auto& [x, y] : pairs_)
        if (x >= universe_ || y >= universe_)
            throw Error("entourage pair out of range");
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

Entourage Entourage::diagonal(std::size_t universe)
{
    std::vector<Pair> pairs;
    for (Index x = 0; x < universe; ++x)
        pairs.emplace_back(x, x);
    return Entourage(universe, std::move(pairs));
}

bool Entourage::contains(Index x, Index y) const
{
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{x, y});
}

bool Entourage::contains_diagonal() const
{
    for (Index x = 0; x < universe_; ++x)
        if (!contains(x, x))
            return false;
    return true;
}

bool Entourage::is_symmetric() const
{
    return std::all_of(pairs_.begin(), pairs_.end(), [&](const Pair& p) { return contains(p.second, p.first); });
}

bool Entourage::is_subset_of(const Entourage& other) const
{
    return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

std::vector<PointSet> Entourage::rows() const
{
    std::vector<PointSet> r(universe_, PointSet(universe_));
    for (const auto& [x, y] : pairs_)
        r[x].set(y);
    return r;
}

namespace {

    Entourage from_rows(const std::vector<PointSet>& rows)
    {
        std::vector<Entourage::Pair> pairs;
        for (Index x = 0; x < rows.size(); ++x)
            for (auto y = rows[x].find_first(); y != PointSet::npos; y = rows[x].find_next(y))
                pairs.emplace_back(x, y);
        return Entourage(rows.size(), std::move(pairs));
    }

    void same_universe(const Entourage& e, const Entourage& f)
    {
        if (e.universe() != f.universe())
            throw Error("entourages live on different spaces");
    }

} // namespace

Entourage invert(const Entourage& e)
{
    std::vector<Entourage::Pair> pairs;
    pairs.reserve(e.size());
    for (const auto& [x, y] : e.pairs())
        pairs.emplace_back(y, x);
    return Entourage(e.universe(), std::move(pairs));
}

Entourage compose(const Entourage& e, const Entourage& f)
{
    same_universe(e, f);
    const auto fr = f.rows();
    std::vector<PointSet> out(e.universe(), PointSet(e.universe()));
    for (const auto& [x, y] : e.pairs())
        out[x] |= fr[y];
    return from_rows(out);
}

Entourage intersect(const Entourage& e, const Entourage& f)
{
    same_universe(e, f);
    std::vector<Entourage::Pair> pairs;
    std::set_intersection(e.pairs().begin(), e.pairs().end(), f.pairs().begin(), f.pairs().end(),
                          std::back_inserter(pairs));
    return Entourage(e.universe(), std::move(pairs));
}

PointSet slice(const Entourage& e, Index x)
{
    PointSet s(e.universe());
    for (const auto& [a, b] : e.pairs())
        if (b == x)
            s.set(a);
    return s;
}

Entourage entourage_of_scale(const Cover& u)
{
    std::vector<PointSet> rows(u.universe(), PointSet(u.universe()));
    for (const auto& element : u)
        for (auto x = element.find_first(); x != PointSet::npos; x = element.find_next(x))
            rows[x] |= element;
    return from_rows(rows);
}

Cover scale_of_entourage(const Entourage& e)
{
    if (!e.contains_diagonal())
        throw Error("entourage misses the diagonal; its slices do not cover the space");
    // E[x] is column x of the relation
    std::vector<PointSet> cols(e.universe(), PointSet(e.universe()));
    for (const auto& [a, b] : e.pairs())
        cols[b].set(a);
    return Cover(e.universe(), std::move(cols));
}

Entourage metric_entourage(const Space& s, double r, bool strict)
{
    const auto& d = s.metric();
    std::vector<Entourage::Pair> pairs;
    for (Eigen::Index x = 0; x < d.rows(); ++x)
        for (Eigen::Index y = 0; y < d.cols(); ++y)
            if (strict ? d(x, y) < r : d(x, y) <= r)
                pairs.emplace_back(static_cast<Index>(x), static_cast<Index>(y));
    return Entourage(s.size(), std::move(pairs));
}

namespace {

    template <class Find>
    BaseReport check_entourage_pairs(const std::vector<Entourage>& base, bool open_ended, bool ordered, Find&& find)
    {
        BaseReport report;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (!base[i].is_symmetric()) {
                report.pass = false;
                report.counterexample = std::make_pair(i, i);
                report.notes.push_back("member " + std::to_string(i) + " is not symmetric");
                return report;
            }
        }
        const std::size_t m = base.size();
        const std::size_t premises = (open_ended && m > 1) ? m - 1 : m;
        if (premises < m)
            report.notes.push_back("open-ended base: last member serves as witness only");
        for (std::size_t i = 0; i < premises; ++i) {
            for (std::size_t j = ordered ? 0 : i; j < premises; ++j) {
                auto k = find(i, j);
                if (!k) {
                    report.pass = false;
                    report.counterexample = std::make_pair(i, j);
                    return report;
                }
                report.witnesses.push_back({i, j, *k});
            }
        }
        return report;
    }

} // namespace

BaseReport check_uniform_axioms(const std::vector<Entourage>& base, bool open_ended)
{
    std::vector<Entourage> squares;
    for (const auto& g : base)
        squares.push_back(compose(g, g));
    return check_entourage_pairs(base, open_ended, false, [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        const Entourage target = intersect(base[i], base[j]);
        for (std::size_t k = 0; k < base.size(); ++k)
            if (squares[k].is_subset_of(target))
                return k;
        return std::nullopt;
    });
}

BaseReport check_coarse_axioms(const std::vector<Entourage>& base, bool open_ended)
{
    return check_entourage_pairs(base, open_ended, true, [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        const Entourage ef = compose(base[i], base[j]);
        for (std::size_t k = 0; k < base.size(); ++k)
            if (ef.is_subset_of(base[k]))
                return k;
        return std::nullopt;
    });
}

} // namespace scalekit
