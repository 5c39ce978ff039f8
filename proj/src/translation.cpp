#include "scalekit/translation.hpp"

#include <algorithm>
#include <numeric>

namespace scalekit {

GroupWindow::GroupWindow(Space carrier, std::vector<std::vector<long>> table, Index identity)
    : carrier_(std::move(carrier)), table_(std::move(table)), identity_(identity)
{
    const std::size_t n = carrier_.size();
    if (table_.size() != n)
        throw Error("multiplication table must have one row per element");
    if (identity_ >= n)
        throw Error("identity out of range");
    for (const auto& row : table_) {
        if (row.size() != n)
            throw Error("multiplication table must be square");
        for (long v : row) {
            if (v < -1 || v >= static_cast<long>(n))
                throw Error("multiplication table entry out of range");
            if (v == -1)
                closed_ = false;
        }
    }
    inverse_.assign(n, -1);
    for (Index g = 0; g < n; ++g)
        for (Index h = 0; h < n; ++h)
            if (table_[g][h] == static_cast<long>(identity_) && table_[h][g] == static_cast<long>(identity_))
                inverse_[g] = static_cast<long>(h);
}

std::optional<Index> GroupWindow::multiply(Index g, Index h) const
{
    const long v = table_.at(g).at(h);
    if (v < 0)
        return std::nullopt;
    return static_cast<Index>(v);
}

std::optional<Index> GroupWindow::inverse(Index g) const
{
    const long v = inverse_.at(g);
    if (v < 0)
        return std::nullopt;
    return static_cast<Index>(v);
}

GroupWindow builder_group_window(std::vector<std::string> ids, const std::vector<std::vector<long>>& table)
{
    const std::size_t n = ids.size();
    if (table.size() != n)
        throw Error("invalid group table: expected " + std::to_string(n) + " rows");
    for (std::size_t g = 0; g < n; ++g) {
        if (table[g].size() != n)
            throw Error("invalid group table: row " + ids[g] + " has wrong length");
        std::vector<bool> seen(n, false);
        for (long v : table[g]) {
            if (v < 0 || v >= static_cast<long>(n))
                throw Error("invalid group table: entry out of range in row " + ids[g]);
            if (seen[static_cast<std::size_t>(v)])
                throw Error("invalid group table: not a Latin square (row " + ids[g] + ")");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
    for (std::size_t h = 0; h < n; ++h) {
        std::vector<bool> seen(n, false);
        for (std::size_t g = 0; g < n; ++g) {
            const auto v = static_cast<std::size_t>(table[g][h]);
            if (seen[v])
                throw Error("invalid group table: not a Latin square (column " + ids[h] + ")");
            seen[v] = true;
        }
    }
    std::optional<Index> identity;
    for (Index e = 0; e < n && !identity; ++e) {
        bool ok = true;
        for (Index g = 0; g < n && ok; ++g)
            ok = table[e][g] == static_cast<long>(g) && table[g][e] == static_cast<long>(g);
        if (ok)
            identity = e;
    }
    if (!identity)
        throw Error("invalid group table: no identity");
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            for (Index c = 0; c < n; ++c) {
                const auto ab = static_cast<std::size_t>(table[a][b]);
                const auto bc = static_cast<std::size_t>(table[b][c]);
                if (table[ab][c] != table[a][bc])
                    throw Error("invalid group table: not associative at (" + ids[a] + "," + ids[b] + "," + ids[c] + ")");
            }
    return GroupWindow(Space(std::move(ids)), table, *identity);
}

GroupWindow cyclic_group(std::size_t n)
{
    if (n == 0)
        throw Error("cyclic group needs at least one element");
    std::vector<std::string> ids;
    std::vector<std::vector<long>> table(n, std::vector<long>(n));
    for (std::size_t g = 0; g < n; ++g) {
        ids.push_back(std::to_string(g));
        for (std::size_t h = 0; h < n; ++h)
            table[g][h] = static_cast<long>((g + h) % n);
    }
    return builder_group_window(std::move(ids), table);
}

GroupWindow symmetric_group(std::size_t k)
{
    if (k == 0 || k > 6)
        throw Error("symmetric group supported for 1 <= k <= 6");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 1);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::vector<std::string> ids;
    for (const auto& q : perms) {
        std::string s;
        for (int v : q)
            s += static_cast<char>('0' + v);
        ids.push_back(s);
    }
    const std::size_t n = perms.size();
    std::vector<std::vector<long>> table(n, std::vector<long>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<int> c(k);
            for (std::size_t i = 0; i < k; ++i)
                c[i] = perms[a][static_cast<std::size_t>(perms[b][i] - 1)];
            // perms are in lexicographic order
            table[a][b] = std::lower_bound(perms.begin(), perms.end(), c) - perms.begin();
        }
    }
    return builder_group_window(std::move(ids), table);
}

GroupWindow z_window(std::size_t n)
{
    const long N = static_cast<long>(n);
    const std::size_t size = 2 * n + 1;
    std::vector<std::string> ids;
    Eigen::VectorXd coords(static_cast<Eigen::Index>(size));
    for (long v = -N; v <= N; ++v) {
        ids.push_back(std::to_string(v));
        coords[v + N] = static_cast<double>(v);
    }
    std::vector<std::vector<long>> table(size, std::vector<long>(size));
    for (long a = -N; a <= N; ++a)
        for (long b = -N; b <= N; ++b)
            table[static_cast<std::size_t>(a + N)][static_cast<std::size_t>(b + N)] = (a + b < -N || a + b > N) ? -1 : a + b + N;
    Space carrier(std::move(ids));
    carrier.set_line_metric(coords);
    return GroupWindow(std::move(carrier), std::move(table), n);
}

PointSet product_set(const GroupWindow& g, const PointSet& a, const PointSet& b, std::size_t* clipped)
{
    PointSet out(g.size());
    for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x))
        for (auto y = b.find_first(); y != PointSet::npos; y = b.find_next(y)) {
            if (auto p = g.multiply(x, y))
                out.set(*p);
            else if (clipped)
                ++*clipped;
        }
    return out;
}

PointSet inverse_set(const GroupWindow& g, const PointSet& a, std::size_t* clipped)
{
    PointSet out(g.size());
    for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
        if (auto i = g.inverse(x))
            out.set(*i);
        else if (clipped)
            ++*clipped;
    }
    return out;
}

TranslationScale translation_scale(const GroupWindow& g, PointSet f)
{
    if (f.size() != g.size())
        throw Error("translation set has wrong universe");
    f.set(g.identity());
    TranslationScale out{Cover(g.size()), 0};
    for (Index x = 0; x < g.size(); ++x)
        out.cover.add(product_set(g, singleton(g.size(), x), f, &out.clipped));
    return out;
}

TranslationReport check_translation_ls(const GroupWindow& g, const std::vector<PointSet>& f_list)
{
    TranslationReport report;
    const std::size_t n = g.size();
    std::vector<PointSet> members;
    for (auto f : f_list) {
        if (f.size() != n)
            throw Error("translation set has wrong universe");
        f.set(g.identity());
        members.push_back(f);
    }
    auto add_candidate = [&](const PointSet& c, std::string label) {
        for (const auto& existing : report.candidates)
            if (existing == c)
                return;
        report.candidates.push_back(c);
        report.labels.push_back(std::move(label));
    };
    for (std::size_t i = 0; i < members.size(); ++i)
        add_candidate(members[i], "F" + std::to_string(i));
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j) {
            PointSet inv = inverse_set(g, members[j], &report.clipped);
            PointSet prod = product_set(g, product_set(g, members[i], inv, &report.clipped), members[j], &report.clipped);
            prod.set(g.identity());
            add_candidate(prod, "F" + std::to_string(i) + " F" + std::to_string(j) + "^-1 F" + std::to_string(j));
        }

    std::vector<Cover> member_scales;
    for (const auto& f : members) {
        auto ts = translation_scale(g, f);
        report.clipped += ts.clipped;
        member_scales.push_back(std::move(ts.cover));
    }
    std::vector<Cover> candidate_scales;
    for (const auto& c : report.candidates) {
        auto ts = translation_scale(g, c);
        report.clipped += ts.clipped;
        candidate_scales.push_back(std::move(ts.cover));
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j) {
            const Cover st = star_family(member_scales[i], member_scales[j]);
            std::optional<std::size_t> found;
            for (std::size_t k = 0; k < candidate_scales.size() && !found; ++k)
                if (refines(st, candidate_scales[k]))
                    found = k;
            if (!found) {
                report.base.pass = false;
                report.base.counterexample = std::make_pair(i, j);
                return report;
            }
            report.base.witnesses.push_back({i, j, *found});
        }
    if (report.clipped > 0)
        report.base.notes.push_back("products left the window " + std::to_string(report.clipped)
                                    + " times; structural claims are relative to the window");
    return report;
}

} // namespace scalekit
