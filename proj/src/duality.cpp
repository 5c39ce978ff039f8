#include "scalekit/duality.hpp"

#include <algorithm>
#include <cmath>

#include "scalekit/metric.hpp"

namespace scalekit {

namespace {

    void validate_eps(const std::vector<double>& eps)
    {
        for (std::size_t i = 0; i < eps.size(); ++i) {
            if (!(eps[i] > 0.0))
                throw Error("epsilon grid must be positive");
            if (i > 0 && !(eps[i] < eps[i - 1]))
                throw Error("epsilon grid must be strictly descending");
        }
    }

    std::vector<LabeledSet> condition2_premises(const BoundedStructure& b)
    {
        std::vector<LabeledSet> out{{"empty", PointSet(b.universe())}};
        if (const auto* h = b.horizon()) {
            const auto& levels = h->proper_levels();
            for (std::size_t i = 0; i < levels.size(); ++i)
                out.push_back({"K" + std::to_string(i + 1), levels[i]});
        } else {
            for (auto& p : b.premise_sets())
                out.push_back(std::move(p));
        }
        return out;
    }

    const Filtration& require_filtration(const Space& s)
    {
        if (!s.has_filtration())
            throw Error("space has no filtration");
        return s.filtration();
    }

    std::vector<std::size_t> infinite_diameter(const Space& s, const Cover& u)
    {
        std::vector<std::size_t> out;
        if (!s.has_metric())
            return out;
        for (std::size_t k = 0; k < u.size(); ++k)
            if (!std::isfinite(diameter(s, u[k])))
                out.push_back(k);
        return out;
    }

    // st(K_i, U) lies in a proper level for every premise level K_i.
    bool star_condition(const Filtration& f, const Cover& u, LevelCheck& r)
    {
        const auto& levels = f.proper_levels();
        for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
            const PointSet st = star_set(levels[i], u);
            std::optional<std::size_t> j;
            for (std::size_t k = i; k < levels.size() && !j; ++k)
                if (st.is_subset_of(levels[k]))
                    j = k;
            if (!j) {
                r.pass = false;
                r.failing_level = "K" + std::to_string(i + 1);
                for (std::size_t e = 0; e < u.size(); ++e)
                    if (u[e].intersects(levels[i]) && !u[e].is_subset_of(levels.back())) {
                        r.element = e;
                        break;
                    }
                return false;
            }
            r.witnesses.emplace_back(static_cast<double>(i), *j);
        }
        return true;
    }

} // namespace

LsReport ls_membership(const LsQuery& q)
{
    validate_eps(q.eps);
    if (q.u.universe() != q.structure.universe() || q.family.points() != q.structure.universe())
        throw Error("cover, family and bounded structure must share the space");
    LsReport r;
    r.truncation = q.structure.horizon() ? q.structure.horizon()->label() : "no filtration";

    for (const auto& p : q.structure.premise_sets()) {
        if (!q.structure.is_weakly_bounded(star_set(p.set, q.u))) {
            r.pass = r.condition1 = false;
            LsViolation v;
            v.condition = 1;
            v.premise = p.label;
            for (std::size_t e = 0; e < q.u.size(); ++e)
                if (q.u[e].intersects(p.set) && !q.structure.is_weakly_bounded(p.set | q.u[e])) {
                    v.element = e;
                    break;
                }
            r.violation = v;
            return r;
        }
    }

    const auto candidates = q.structure.witness_sets();
    const auto premises = condition2_premises(q.structure);
    for (const auto& f : q.family.members()) {
        for (double eps : q.eps) {
            std::vector<char> ok(candidates.size());
            for (std::size_t c = 0; c < candidates.size(); ++c)
                ok[c] = relaxed_holds(f.values, q.u, eps, candidates[c].set);
            for (const auto& p : premises) {
                std::optional<std::size_t> found;
                for (std::size_t c = 0; c < candidates.size() && !found; ++c)
                    if (ok[c] && p.set.is_subset_of(candidates[c].set))
                        found = c;
                if (!found) {
                    r.pass = r.condition2 = false;
                    LsViolation v;
                    v.condition = 2;
                    v.premise = p.label;
                    v.function = f.name;
                    v.eps = eps;
                    const PointSet& widest = candidates.back().set;
                    for (std::size_t e = 0; e < q.u.size(); ++e) {
                        const PointSet part = q.u[e] - widest;
                        const double spread = value_diameter(f.values, part);
                        if (spread > eps + kValueSlack) {
                            v.element = e;
                            v.pair = value_diameter_pair(f.values, part);
                            v.spread = spread;
                            break;
                        }
                    }
                    r.violation = v;
                    return r;
                }
                r.witnesses.push_back({f.name, eps, p.label, candidates[*found].label});
            }
        }
    }
    return r;
}

StarClosureReport ls_structure_axiom_test(const std::vector<Cover>& members, const FunctionFamily& family,
                                          const BoundedStructure& structure, const std::vector<double>& eps)
{
    validate_eps(eps);
    std::vector<double> fine = eps;
    for (double e : eps)
        fine.push_back(e / 3.0);
    std::sort(fine.begin(), fine.end(), std::greater<>());
    fine.erase(std::unique(fine.begin(), fine.end()), fine.end());

    StarClosureReport r;
    std::vector<char> member(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        member[i] = ls_membership({members[i], family, structure, fine}).pass;
        if (!member[i])
            r.non_members.push_back(i);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (!member[i] || !member[j])
                continue;
            const bool ok = ls_membership({star_family(members[i], members[j]), family, structure, eps}).pass;
            r.pairs.emplace_back(i, j, ok);
            if (!ok)
                r.pass = false;
        }
    return r;
}

LevelCheck wright_c0_check(const Space& s, const Cover& u, const std::vector<double>& eps)
{
    if (!s.has_metric())
        throw Error("space has no metric");
    const auto& f = require_filtration(s);
    validate_eps(eps);
    LevelCheck r;
    r.truncation = f.label();
    r.not_precompact = infinite_diameter(s, u);
    const auto& levels = f.proper_levels();
    // diameters of U \ K per level, computed once
    std::vector<std::vector<double>> diam(levels.size(), std::vector<double>(u.size()));
    for (std::size_t j = 0; j < levels.size(); ++j)
        for (std::size_t e = 0; e < u.size(); ++e)
            diam[j][e] = diameter(s, u[e] - levels[j]);
    for (double ep : eps) {
        std::optional<std::size_t> level;
        for (std::size_t j = 0; j < levels.size() && !level; ++j)
            if (std::all_of(diam[j].begin(), diam[j].end(), [&](double d) { return d < ep; }))
                level = j;
        if (!level) {
            r.pass = false;
            r.failing_eps = ep;
            if (!levels.empty()) {
                const auto& last = diam.back();
                const auto worst = std::max_element(last.begin(), last.end());
                if (worst != last.end()) {
                    r.element = static_cast<std::size_t>(worst - last.begin());
                    r.spread = *worst;
                }
            }
            return r;
        }
        r.witnesses.emplace_back(ep, *level);
    }
    return r;
}

LevelCheck maximal_structure_check(const Space& s, const Cover& u)
{
    const auto& f = require_filtration(s);
    LevelCheck r;
    r.truncation = f.label();
    r.not_precompact = infinite_diameter(s, u);
    if (!r.not_precompact.empty()) {
        r.pass = false;
        r.element = r.not_precompact.front();
        return r;
    }
    star_condition(f, u, r);
    return r;
}

LevelCheck continuously_controlled_check(const Space& s, const Cover& u)
{
    LevelCheck r = maximal_structure_check(s, u);
    if (!r.pass)
        return r;
    const auto& levels = s.filtration().proper_levels();
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const PointSet outside_i = ~levels[i];
        std::optional<std::size_t> level;
        for (std::size_t j = i; j < levels.size() && !level; ++j) {
            const PointSet tail = ~levels[j];
            const bool ok = std::all_of(u.begin(), u.end(), [&](const PointSet& e) {
                return !e.intersects(tail) || e.is_subset_of(outside_i);
            });
            if (ok)
                level = j;
        }
        if (!level) {
            r.pass = false;
            r.failing_level = "K" + std::to_string(i + 1);
            const PointSet tail = ~levels.back();
            for (std::size_t e = 0; e < u.size(); ++e)
                if (u[e].intersects(tail) && !u[e].is_subset_of(outside_i)) {
                    r.element = e;
                    break;
                }
            return r;
        }
    }
    return r;
}

bool is_constant_at_infinity(const Space& s, const Function& f, double threshold)
{
    const auto& levels = require_filtration(s).proper_levels();
    if (levels.empty())
        return false;
    return value_diameter(f, ~levels.back()) <= threshold + kValueSlack;
}

AgreementReport theorem75_agreement(const Space& s, const std::vector<std::pair<std::string, Cover>>& catalogue,
                                    const FunctionFamily& family, const std::vector<double>& eps)
{
    validate_eps(eps);
    if (eps.empty())
        throw Error("epsilon grid is empty");
    AgreementReport r;
    for (const auto& f : family.members())
        if (!is_constant_at_infinity(s, f.values, eps.back())) {
            r.guard = false;
            r.guard_failures.push_back(f.name);
        }
    const BoundedStructure b = induced_bounded(s);
    for (const auto& [name, u] : catalogue) {
        AgreementRow row;
        row.name = name;
        row.controlled = continuously_controlled_check(s, u).pass;
        row.member = ls_membership({u, family, b, eps}).pass;
        row.agree = row.controlled == row.member;
        if (r.guard && !row.agree)
            r.pass = false;
        r.rows.push_back(std::move(row));
    }
    return r;
}

PairCase classify_pairs(const BoundedStructure& b, const std::vector<std::pair<Index, Index>>& pairs)
{
    std::vector<PointSet> bounded;
    if (const auto* h = b.horizon())
        bounded = h->proper_levels();
    else
        bounded = b.maximal_bounded();
    auto set_of = [&](const std::pair<Index, Index>& p) {
        PointSet a(b.universe());
        a.set(p.first);
        a.set(p.second);
        return a;
    };
    PointSet all(b.universe());
    for (const auto& p : pairs)
        all |= set_of(p);
    if (b.contains(all))
        return PairCase::Bounded;
    // escaping: every bounded set is met only by a proper prefix of the sequence
    const bool escaping = !pairs.empty() && std::all_of(bounded.begin(), bounded.end(), [&](const PointSet& k) {
        bool met_after_miss = false;
        bool missed = false;
        for (const auto& p : pairs) {
            const bool meets = set_of(p).intersects(k);
            if (!meets)
                missed = true;
            else if (missed)
                met_after_miss = true;
        }
        return !set_of(pairs.back()).intersects(k) && !met_after_miss;
    });
    return escaping ? PairCase::Escaping : PairCase::Mixed;
}

S0Classification s0_classify(const Space& s, const Function& f, const std::vector<Cover>& ls_base,
                             const std::vector<double>& eps, const std::vector<std::pair<Index, Index>>& pairs,
                             const std::vector<double>& ss_radii)
{
    if (!s.has_metric())
        throw Error("space has no metric");
    S0Classification c;
    const auto& d = s.metric();
    c.continuous = true;
    for (Eigen::Index x = 0; x < d.rows() && c.continuous; ++x)
        for (Eigen::Index y = x + 1; y < d.cols(); ++y)
            if (d(x, y) == 0.0 && std::abs(f[x] - f[y]) > kValueSlack) {
                c.continuous = false;
                break;
            }
    std::vector<Cover> balls;
    for (double r : ss_radii)
        balls.push_back(ball_cover(s, r).cover);
    c.ss_continuous = is_ss_continuous(f, balls, eps).pass;
    const BoundedStructure b = s.has_filtration() ? induced_bounded(s) : metric_bounded(s);
    c.slowly_oscillating = is_slowly_oscillating({f, ls_base, eps, b}, SOForm::Strict).pass;
    if (!pairs.empty()) {
        c.pair_case = classify_pairs(b, pairs);
        for (const auto& [x, y] : pairs)
            c.pair_gaps.push_back(std::abs(f[static_cast<Eigen::Index>(x)] - f[static_cast<Eigen::Index>(y)]));
    }
    return c;
}

ReflectivityReport reflectivity_oracle(const Space& s, const Cover& u, const std::vector<double>& radii, double eps)
{
    if (!s.has_metric())
        throw Error("space has no metric");
    require_filtration(s);
    ReflectivityReport r;
    for (std::size_t k = 0; k < radii.size(); ++k)
        if (refines(u, ball_cover(s, radii[k]).cover)) {
            r.verdict = Reflectivity::MemberConsistent;
            r.base_radius = k;
            return r;
        }
    const BoundedStructure b = induced_bounded(s);
    for (const auto& p : b.premise_sets())
        if (!b.is_weakly_bounded(star_set(p.set, u))) {
            r.verdict = Reflectivity::RejectedUnboundedStar;
            const FunctionFamily one(s.size(), {});
            r.membership = ls_membership({u, one, b, {eps}});
            return r;
        }

    // far pairs: diameter pairs of elements too wide for the largest base ball
    const double widest = radii.empty() ? 0.0 : *std::max_element(radii.begin(), radii.end());
    std::vector<std::pair<Index, Index>> far;
    for (const auto& e : u) {
        if (diameter(s, e) < widest)
            continue;
        const auto pts = members(e);
        std::pair<Index, Index> best{pts.front(), pts.front()};
        double bd = -1.0;
        for (Index x : pts)
            for (Index y : pts)
                if (x < y && s.distance(x, y) > bd) {
                    bd = s.distance(x, y);
                    best = {x, y};
                }
        far.push_back(best);
    }
    std::sort(far.begin(), far.end());
    // greedy: disjoint balls of radius d/2, no selected partner inside any ball
    PointSet used(s.size());
    PointSet partners(s.size());
    std::vector<PointSet> balls;
    for (const auto& [x, y] : far) {
        const double rad = s.distance(x, y) / 2.0;
        const PointSet bl = ball(s, x, rad);
        if (bl.intersects(used) || bl.intersects(partners) || used.test(y))
            continue;
        used |= bl;
        partners.set(y);
        r.pairs.emplace_back(x, y);
        r.radii.push_back(rad);
    }
    if (r.pairs.empty())
        return r;
    std::vector<Index> centers;
    for (const auto& p : r.pairs)
        centers.push_back(p.first);
    r.refuter = build_scaled_refuter(s, centers, r.radii);
    for (const auto& [x, y] : r.pairs)
        r.gaps.push_back(std::abs(r.refuter[static_cast<Eigen::Index>(x)] - r.refuter[static_cast<Eigen::Index>(y)]));
    const FunctionFamily fam(s.size(), {{"refuter", r.refuter}});
    r.membership = ls_membership({u, fam, b, {eps}});
    r.verdict = r.membership->pass ? Reflectivity::Unrefuted : Reflectivity::RejectedByRefuter;
    return r;
}

} // namespace scalekit
