#include "scalekit/bounded.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scalekit {

namespace {

    struct UnionFind {
        std::vector<std::size_t> parent;
        explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
        std::size_t find(std::size_t x)
        {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        }
        void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    };

    void join_all(UnionFind& uf, const PointSet& s)
    {
        const auto first = s.find_first();
        for (auto x = s.find_next(first); x != PointSet::npos; x = s.find_next(x))
            uf.unite(first, x);
    }

} // namespace

BoundedStructure::BoundedStructure(std::size_t universe, std::vector<PointSet> generators)
    : universe_(universe), generators_(std::move(generators))
{
    build();
}

BoundedStructure BoundedStructure::from_filtration(const Filtration& f)
{
    if (f.empty())
        throw Error("bounded structure needs a filtration");
    BoundedStructure b;
    b.universe_ = f.universe();
    b.generators_ = f.proper_levels();
    b.horizon_ = f;
    b.build();
    return b;
}

void BoundedStructure::build()
{
    for (const auto& g : generators_)
        if (g.size() != universe_)
            throw Error("bounded generator has wrong universe");

    // merge overlapping generators until no two blocks meet
    blocks_.clear();
    for (const auto& g : generators_) {
        if (g.count() < 2)
            continue;
        PointSet merged = g;
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto it = blocks_.begin(); it != blocks_.end();) {
                if (it->intersects(merged)) {
                    merged |= *it;
                    it = blocks_.erase(it);
                    grew = true;
                } else {
                    ++it;
                }
            }
        }
        blocks_.push_back(std::move(merged));
    }
    std::sort(blocks_.begin(), blocks_.end(), [](const PointSet& a, const PointSet& b) {
        return a.find_first() < b.find_first();
    });

    UnionFind uf(universe_);
    for (const auto& b : blocks_)
        join_all(uf, b);
    if (horizon_ && universe_ > 0)
        join_all(uf, full_set(universe_));
    component_.assign(universe_, 0);
    std::vector<std::size_t> ids(universe_, static_cast<std::size_t>(-1));
    component_count_ = 0;
    for (Index x = 0; x < universe_; ++x) {
        const auto r = uf.find(x);
        if (ids[r] == static_cast<std::size_t>(-1))
            ids[r] = component_count_++;
        component_[x] = ids[r];
    }
    component_sets_.assign(component_count_, PointSet(universe_));
    for (Index x = 0; x < universe_; ++x)
        component_sets_[component_[x]].set(x);
}

bool BoundedStructure::contains(const PointSet& a) const
{
    if (a.count() <= 1)
        return true;
    return std::any_of(blocks_.begin(), blocks_.end(), [&](const PointSet& b) { return a.is_subset_of(b); });
}

bool BoundedStructure::is_weakly_bounded(const PointSet& a) const
{
    if (a.count() <= 1)
        return true;
    return std::all_of(component_sets_.begin(), component_sets_.end(),
                       [&](const PointSet& c) { return contains(a & c); });
}

std::vector<PointSet> BoundedStructure::maximal_bounded() const
{
    std::vector<PointSet> out = blocks_;
    PointSet covered(universe_);
    for (const auto& b : blocks_)
        covered |= b;
    for (Index x = 0; x < universe_; ++x)
        if (!covered.test(x))
            out.push_back(singleton(universe_, x));
    return out;
}

PointSet BoundedStructure::maximal_weakly_bounded() const
{
    PointSet m(universe_);
    std::vector<std::size_t> best(component_count_, 0);
    std::vector<const PointSet*> pick(component_count_, nullptr);
    const auto maximal = maximal_bounded();
    for (const auto& b : maximal) {
        const auto c = component_[b.find_first()];
        if (!pick[c] || b.count() > best[c]) {
            pick[c] = &b;
            best[c] = b.count();
        }
    }
    for (const auto* p : pick)
        if (p)
            m |= *p;
    return m;
}

std::vector<LabeledSet> BoundedStructure::premise_sets() const
{
    std::vector<LabeledSet> out;
    if (horizon_) {
        const auto& levels = horizon_->proper_levels();
        for (std::size_t i = 0; i + 1 < levels.size(); ++i)
            out.push_back({"K" + std::to_string(i + 1), levels[i]});
        return out;
    }
    const auto maximal = maximal_bounded();
    for (std::size_t i = 0; i < maximal.size(); ++i)
        out.push_back({"B" + std::to_string(i), maximal[i]});
    return out;
}

std::vector<LabeledSet> BoundedStructure::witness_sets() const
{
    std::vector<LabeledSet> out;
    auto add = [&](std::string label, const PointSet& s) {
        if (!is_weakly_bounded(s))
            return;
        for (const auto& e : out)
            if (e.set == s)
                return;
        out.push_back({std::move(label), s});
    };
    add("empty", PointSet(universe_));
    const PointSet m = maximal_weakly_bounded();
    if (horizon_) {
        const auto& levels = horizon_->proper_levels();
        for (std::size_t i = 0; i < levels.size(); ++i)
            add("K" + std::to_string(i + 1), levels[i]);
        for (std::size_t i = 0; i < levels.size(); ++i)
            add("K" + std::to_string(i + 1) + " u M", levels[i] | m);
    } else {
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            add("B" + std::to_string(i), blocks_[i]);
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            add("B" + std::to_string(i) + " u M", blocks_[i] | m);
    }
    add("M", m);
    return out;
}

BoundedStructure metric_bounded(const Space& s)
{
    const auto& d = s.metric();
    UnionFind uf(s.size());
    for (Index x = 0; x < s.size(); ++x)
        for (Index y = x + 1; y < s.size(); ++y)
            if (std::isfinite(d(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y))))
                uf.unite(x, y);
    std::vector<PointSet> classes;
    std::vector<long> slot(s.size(), -1);
    for (Index x = 0; x < s.size(); ++x) {
        const auto r = uf.find(x);
        if (slot[r] < 0) {
            slot[r] = static_cast<long>(classes.size());
            classes.emplace_back(s.size());
        }
        classes[static_cast<std::size_t>(slot[r])].set(x);
    }
    return BoundedStructure(s.size(), std::move(classes));
}

BoundedStructure discrete_bounded(std::size_t n) { return BoundedStructure(n, {}); }

AxiomReport check_axioms(const BoundedStructure& b)
{
    AxiomReport r;
    const std::size_t n = b.universe();
    for (Index x = 0; x < n; ++x)
        if (!b.contains(singleton(n, x))) {
            r.pass = false;
            r.failures.push_back("singleton " + std::to_string(x) + " is not bounded");
        }
    for (std::size_t i = 0; i < b.generators().size(); ++i)
        if (!b.contains(b.generators()[i])) {
            r.pass = false;
            r.failures.push_back("generator " + std::to_string(i) + " is not bounded");
        }
    const auto maximal = b.maximal_bounded();
    for (std::size_t i = 0; i < maximal.size(); ++i)
        for (std::size_t j = i + 1; j < maximal.size(); ++j)
            if (maximal[i].intersects(maximal[j]) && !b.contains(maximal[i] | maximal[j])) {
                r.pass = false;
                r.failures.push_back("overlapping union of members " + std::to_string(i) + " and "
                                     + std::to_string(j) + " is not bounded");
            }
    return r;
}

PointSet preimage(const PointMap& f, std::size_t domain, const PointSet& w)
{
    if (f.size() != domain)
        throw Error("map is not total on the domain");
    PointSet out(domain);
    for (Index x = 0; x < domain; ++x) {
        if (f[x] >= w.size())
            throw Error("map value out of range");
        if (w.test(f[x]))
            out.set(x);
    }
    return out;
}

PointSet image(const PointMap& f, std::size_t codomain, const PointSet& a)
{
    PointSet out(codomain);
    for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
        if (x >= f.size() || f[x] >= codomain)
            throw Error("map is not total on the domain");
        out.set(f[x]);
    }
    return out;
}

ProperReport check_proper(const PointMap& f, const BoundedStructure& bx, const BoundedStructure& by)
{
    ProperReport r;
    for (const auto& w : by.maximal_bounded())
        if (!bx.contains(preimage(f, bx.universe(), w))) {
            r.pass = false;
            r.counterexample = w;
            return r;
        }
    return r;
}

ProperReport maps_bounded_to_bounded(const PointMap& f, const BoundedStructure& bx, const BoundedStructure& by)
{
    ProperReport r;
    if (f.size() != bx.universe())
        throw Error("map is not total on the domain");
    for (const auto& a : bx.maximal_bounded())
        if (!by.contains(image(f, by.universe(), a))) {
            r.pass = false;
            r.counterexample = a;
            return r;
        }
    return r;
}

LemmaWbReport lemma_wb_test(const PointMap& f, const BoundedStructure& bx, const BoundedStructure& by)
{
    LemmaWbReport r;
    r.proper = check_proper(f, bx, by).pass;
    r.bounded_to_bounded = maps_bounded_to_bounded(f, bx, by).pass;
    // preimages are monotone, so maximal weakly bounded sets of Y decide the conclusion
    std::vector<std::vector<PointSet>> choices(by.component_count());
    for (const auto& m : by.maximal_bounded())
        choices[by.components()[m.find_first()]].push_back(m);
    constexpr std::size_t kCap = 4096;
    std::vector<std::size_t> pick(choices.size(), 0);
    r.conclusion = true;
    for (std::size_t tried = 0; tried < kCap; ++tried) {
        PointSet w(by.universe());
        for (std::size_t c = 0; c < choices.size(); ++c)
            if (!choices[c].empty())
                w |= choices[c][pick[c]];
        if (!bx.is_weakly_bounded(preimage(f, bx.universe(), w))) {
            r.conclusion = false;
            r.counterexample = w;
            break;
        }
        std::size_t c = 0;
        while (c < choices.size() && (choices[c].empty() || ++pick[c] == choices[c].size())) {
            if (!choices[c].empty())
                pick[c] = 0;
            ++c;
        }
        if (c == choices.size())
            break;
    }
    r.pass = !(r.proper && r.bounded_to_bounded) || r.conclusion;
    return r;
}

StarWbReport st_weakly_bounded_test(const PointSet& b, const Cover& u, const BoundedStructure& s,
                                    const std::vector<Cover>* ls_base)
{
    StarWbReport r;
    r.input_weakly_bounded = s.is_weakly_bounded(b);
    if (ls_base) {
        r.uniformly_bounded = std::all_of(u.begin(), u.end(), [&](const PointSet& e) {
            return std::any_of(ls_base->begin(), ls_base->end(),
                               [&](const Cover& v) { return containing_element(e, v).has_value(); });
        });
    }
    const PointSet st = star_set(b, u);
    r.star_weakly_bounded = s.is_weakly_bounded(st);
    const bool straddles = std::any_of(u.begin(), u.end(), [&](const PointSet& e) {
        const auto c = s.components()[e.find_first()];
        for (auto x = e.find_first(); x != PointSet::npos; x = e.find_next(x))
            if (s.components()[x] != c)
                return true;
        return false;
    });
    if (!straddles) {
        r.identity_checked = true;
        r.identity_holds = true;
        for (std::size_t c = 0; c < s.component_count(); ++c) {
            const PointSet comp = s.component(c);
            const PointSet bc = b & comp;
            const PointSet rhs = bc.any() ? star_set(bc, u) : PointSet(s.universe());
            if ((st & comp) != rhs)
                r.identity_holds = false;
        }
    }
    const bool premise = r.input_weakly_bounded && r.uniformly_bounded;
    r.pass = !premise || (r.star_weakly_bounded && (!r.identity_checked || r.identity_holds));
    return r;
}

std::optional<std::size_t> proper_hss_witness(const BoundedStructure& b, const std::vector<Cover>& ss_base)
{
    const auto premises = b.premise_sets();
    for (std::size_t k = 0; k < ss_base.size(); ++k) {
        const bool ok = std::all_of(premises.begin(), premises.end(), [&](const LabeledSet& p) {
            return b.contains(star_set(p.set, ss_base[k]));
        });
        if (ok)
            return k;
    }
    return std::nullopt;
}

std::optional<std::size_t> proper_hls_witness(const BoundedStructure& b, const std::vector<Cover>& covers)
{
    for (std::size_t k = 0; k < covers.size(); ++k) {
        const Cover& u = covers[k];
        if (u.open() && u.is_scale()
            && std::all_of(u.begin(), u.end(), [&](const PointSet& e) { return b.contains(e); }))
            return k;
    }
    return std::nullopt;
}

} // namespace scalekit
