#include "scalekit/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "scalekit/catalogue.hpp"
#include "scalekit/duality.hpp"
#include "scalekit/entourages.hpp"
#include "scalekit/metric.hpp"
#include "scalekit/oscillation.hpp"

namespace scalekit {

namespace {

    const std::vector<double> kDefaultEps = {1.0, 0.5, 0.25};
    constexpr std::size_t kTextListLimit = 8;

    Json num(double x)
    {
        if (std::isinf(x))
            return x > 0 ? "inf" : "-inf";
        return x;
    }

    Json set_json(const Space& s, const PointSet& a)
    {
        Json out = Json::array();
        for (auto i = a.find_first(); i != PointSet::npos; i = a.find_next(i))
            out.push_back(s.id(i));
        return out;
    }

    std::vector<std::string> split(const std::string& text)
    {
        std::vector<std::string> out;
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
            if (!item.empty())
                out.push_back(item);
        return out;
    }

    std::vector<double> parse_eps(const std::string& text)
    {
        std::vector<double> out;
        for (const auto& item : split(text)) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != item.size() || !(v > 0.0))
                throw Error("invalid eps value '" + item + "'");
            out.push_back(v);
        }
        if (out.empty())
            throw Error("empty eps list");
        return out;
    }

    Instance resolve_space(const std::string& path)
    {
        if (path.empty())
            return bundled_instance("halfline");
        const std::filesystem::path p(path);
        if (std::filesystem::exists(p))
            return load_instance_file(p);
        const std::string stem = p.stem().string();
        for (const auto& name : bundled_names())
            if (name == stem)
                return bundled_instance(name);
        throw Error("cannot open instance '" + path + "'");
    }

    BoundedStructure structure_of(const Space& s)
    {
        if (s.has_filtration())
            return BoundedStructure::from_filtration(s.filtration());
        if (s.has_metric())
            return metric_bounded(s);
        return discrete_bounded(s.size());
    }

    std::string truncation_of(const Space& s) { return s.filtration().label(); }

    FunctionFamily family_of(const Instance& inst, const std::vector<std::string>& names)
    {
        std::vector<NamedFunction> gens;
        if (names.empty())
            gens = inst.functions;
        for (const auto& n : names)
            gens.push_back({n, inst.function(n)});
        return FunctionFamily(inst.space.size(), std::move(gens));
    }

    StarFamily star_family_of(const Instance& inst, const std::vector<std::string>& names, bool allow_empty = false)
    {
        std::vector<NamedOperator> gens;
        if (names.empty())
            gens = inst.operators;
        for (const auto& n : names)
            gens.push_back({n, inst.op(n)});
        if (gens.empty() && !allow_empty)
            throw Error("instance has no operators");
        return StarFamily(inst.space.size(), std::move(gens));
    }

    std::vector<Cover> covers_of(const Instance& inst, const std::vector<std::string>& names)
    {
        std::vector<Cover> out;
        for (const auto& n : names)
            out.push_back(inst.cover(n));
        return out;
    }

    struct Options {
        std::string space;
        std::string eps;
        bool json = false;
        bool timing = false;
        long levels = -1;

        std::vector<std::string> positional;
        std::string base;
        std::string family;
        std::string ops;
        std::string catalogue;
        std::string form = "strict";
        std::string op;
        std::size_t n = 8;
        bool open_ended = false;
        bool check = false;
        bool components = false;
    };

    struct Context {
        Instance inst;
        std::string space_label;
        std::vector<double> eps;
        const Options* opt = nullptr;

        const std::string& arg(std::size_t i) const
        {
            if (i >= opt->positional.size())
                throw Error("missing argument");
            return opt->positional[i];
        }
    };

    Json make_report(const Context& c, const std::string& command)
    {
        Json r;
        r["command"] = command;
        r["space"] = c.space_label;
        r["truncation"] = truncation_of(c.inst.space);
        r["status"] = "pass";
        r["witnesses"] = Json::array();
        r["counterexample"] = nullptr;
        return r;
    }

    void set_status(Json& r, bool pass) { r["status"] = pass ? "pass" : "fail"; }

    Json base_report_json(const BaseReport& b, const std::vector<std::string>& names)
    {
        Json w = Json::array();
        for (const auto& p : b.witnesses)
            w.push_back({{"first", names[p.first]}, {"second", names[p.second]}, {"witness", names[p.witness]}});
        return w;
    }

    void fill_base(Json& r, const BaseReport& b, const std::vector<std::string>& names)
    {
        set_status(r, b.pass);
        r["witnesses"] = base_report_json(b, names);
        if (b.counterexample)
            r["counterexample"] = {{"first", names[b.counterexample->first]},
                                   {"second", names[b.counterexample->second]}};
        r["notes"] = b.notes;
    }

    Json cmd_check_base(const Context& c, const std::string& command, Direction dir)
    {
        Json r = make_report(c, command);
        const auto& names = c.opt->positional;
        if (names.empty())
            throw Error("no covers given");
        ScaleBase base{covers_of(c.inst, names), dir, c.opt->open_ended};
        fill_base(r, dir == Direction::Small ? check_ss_base(base) : check_ls_base(base), names);
        return r;
    }

    Json cmd_scan(const Context& c, const std::string& command, bool lebesgue)
    {
        const Cover& u = c.inst.cover(c.arg(0));
        if (!c.inst.space.has_metric())
            throw Error("space has no metric");
        Json r = make_report(c, command);
        const ScanResult s = lebesgue ? lebesgue_number(c.inst.space, u) : mesh(c.inst.space, u);
        r["result"] = {{"value", num(s.value)}, {"binding", num(s.binding)}, {"probes", s.probes}};
        return r;
    }

    Json cmd_so(const Context& c, const std::string& command)
    {
        const Function& f = c.inst.function(c.arg(0));
        const auto base_names = split(c.opt->base);
        if (base_names.empty())
            throw Error("--base needs at least one cover");
        SOForm form;
        if (c.opt->form == "strict")
            form = SOForm::Strict;
        else if (c.opt->form == "relaxed")
            form = SOForm::Relaxed;
        else
            throw Error("unknown form '" + c.opt->form + "'");
        SOQuery q{f, covers_of(c.inst, base_names), c.eps, structure_of(c.inst.space)};
        const SOVerdict v = is_slowly_oscillating(q, form);
        Json r = make_report(c, command);
        set_status(r, v.pass);
        for (const auto& w : v.witnesses)
            r["witnesses"].push_back(
                {{"cover", base_names[w.cover]}, {"eps", num(w.eps)}, {"set", w.label}, {"size", w.set.count()}});
        if (v.violation) {
            const auto& x = *v.violation;
            r["counterexample"] = {{"cover", base_names[x.cover]}, {"eps", num(x.eps)}, {"element", x.element},
                                   {"x", c.inst.space.id(x.x)}, {"y", c.inst.space.id(x.y)},
                                   {"spread", num(x.spread)}, {"against", x.against}};
        }
        r["notes"] = v.notes;
        return r;
    }

    Json ls_json(const Space& s, const LsReport& ls, Json& witnesses)
    {
        for (const auto& w : ls.witnesses)
            witnesses.push_back(
                {{"function", w.function}, {"eps", num(w.eps)}, {"premise", w.premise}, {"witness", w.witness}});
        if (!ls.violation)
            return nullptr;
        const auto& v = *ls.violation;
        Json out = {{"condition", v.condition}, {"premise", v.premise}};
        if (v.condition == 2) {
            out["function"] = v.function;
            out["eps"] = num(v.eps);
        }
        if (v.element)
            out["element"] = *v.element;
        if (v.pair)
            out["pair"] = {s.id(v.pair->first), s.id(v.pair->second)};
        out["spread"] = num(v.spread);
        return out;
    }

    Json cmd_lsmem(const Context& c, const std::string& command)
    {
        LsQuery q{c.inst.cover(c.arg(0)), family_of(c.inst, split(c.opt->family)), structure_of(c.inst.space), c.eps};
        const LsReport ls = ls_membership(q);
        Json r = make_report(c, command);
        set_status(r, ls.pass);
        r["counterexample"] = ls_json(c.inst.space, ls, r["witnesses"]);
        r["result"] = {{"condition1", ls.condition1}, {"condition2", ls.condition2}};
        return r;
    }

    void fill_level(Json& r, const LevelCheck& l)
    {
        set_status(r, l.pass);
        for (const auto& [a, b] : l.witnesses)
            r["witnesses"].push_back({num(a), b});
        if (!l.pass) {
            Json x = Json::object();
            if (l.failing_eps)
                x["eps"] = num(*l.failing_eps);
            if (l.failing_level)
                x["level"] = *l.failing_level;
            if (l.element)
                x["element"] = *l.element;
            x["spread"] = num(l.spread);
            if (!l.not_precompact.empty())
                x["not_precompact"] = l.not_precompact;
            r["counterexample"] = x;
        }
    }

    Json cmd_c0(const Context& c, const std::string& command)
    {
        Json r = make_report(c, command);
        fill_level(r, wright_c0_check(c.inst.space, c.inst.cover(c.arg(0)), c.eps));
        return r;
    }

    Json cmd_ccs(const Context& c, const std::string& command)
    {
        Json r = make_report(c, command);
        fill_level(r, continuously_controlled_check(c.inst.space, c.inst.cover(c.arg(0))));
        return r;
    }

    std::vector<std::pair<std::string, Cover>> catalogue_of(const Instance& inst, const std::vector<std::string>& names)
    {
        if (names.empty())
            return inst.covers;
        std::vector<std::pair<std::string, Cover>> out;
        for (const auto& n : names)
            out.emplace_back(n, inst.cover(n));
        return out;
    }

    Json cmd_t75(const Context& c, const std::string& command)
    {
        const AgreementReport a = theorem75_agreement(c.inst.space, catalogue_of(c.inst, split(c.opt->catalogue)),
                                                      family_of(c.inst, split(c.opt->family)), c.eps);
        Json r = make_report(c, command);
        set_status(r, a.pass);
        Json rows = Json::array();
        for (const auto& row : a.rows) {
            rows.push_back(
                {{"cover", row.name}, {"controlled", row.controlled}, {"member", row.member}, {"agree", row.agree}});
            if (!row.agree && r["counterexample"].is_null())
                r["counterexample"] = {{"cover", row.name}};
        }
        r["result"] = {{"guard", a.guard}, {"guard_failures", a.guard_failures}, {"rows", rows}};
        return r;
    }

    Json cmd_bounded(const Context& c, const std::string& command)
    {
        const std::string which = c.opt->positional.empty() ? "instance" : c.opt->positional[0];
        BoundedStructure b;
        if (which == "instance")
            b = structure_of(c.inst.space);
        else if (which == "metric")
            b = metric_bounded(c.inst.space);
        else if (which == "discrete")
            b = discrete_bounded(c.inst.space.size());
        else if (which == "filtration" && c.inst.space.has_filtration())
            b = BoundedStructure::from_filtration(c.inst.space.filtration());
        else
            throw Error("unknown bounded structure '" + which + "'");
        Json r = make_report(c, command);
        r["structure"] = which;
        const bool want_check = c.opt->check || !c.opt->components;
        if (want_check) {
            const AxiomReport a = check_axioms(b);
            set_status(r, a.pass);
            if (!a.pass)
                r["counterexample"] = {{"failures", a.failures}};
        }
        if (c.opt->components) {
            Json comps = Json::array();
            for (std::size_t k = 0; k < b.component_count(); ++k)
                comps.push_back(set_json(c.inst.space, b.component(k)));
            r["result"] = {{"components", comps}};
        }
        return r;
    }

    Json cmd_entourage(const Context& c, const std::string& command)
    {
        const std::string& op = c.opt->op;
        const Space& s = c.inst.space;
        Json r = make_report(c, command);
        auto describe = [&](const Entourage& e) {
            Json pairs = Json::array();
            for (const auto& [x, y] : e.pairs())
                pairs.push_back({s.id(x), s.id(y)});
            return Json{{"pairs", e.size()},
                        {"symmetric", e.is_symmetric()},
                        {"diagonal", e.contains_diagonal()},
                        {"relation", pairs}};
        };
        const Cover& u = c.inst.cover(c.arg(0));
        const Entourage e = entourage_of_scale(u);
        if (op == "from-cover") {
            r["result"] = describe(e);
        } else if (op == "invert") {
            r["result"] = describe(invert(e));
        } else if (op == "compose") {
            r["result"] = describe(compose(e, entourage_of_scale(c.inst.cover(c.arg(1)))));
        } else if (op == "to-cover") {
            const Cover back = scale_of_entourage(e);
            Json elements = Json::array();
            bool round_trip = true;
            for (Index x = 0; x < s.size(); ++x) {
                elements.push_back(set_json(s, back[x]));
                if (back[x] != star_set(singleton(s.size(), x), u)) {
                    round_trip = false;
                    if (r["counterexample"].is_null())
                        r["counterexample"] = {{"point", s.id(x)}};
                }
            }
            set_status(r, round_trip);
            r["result"] = {{"elements", elements}, {"round_trip", round_trip}};
        } else {
            throw Error("unknown entourage op '" + op + "'");
        }
        return r;
    }

    Json cmd_fbounded(const Context& c, const std::string& command)
    {
        const StarFamily f = star_family_of(c.inst, split(c.opt->ops));
        const FBoundedResult res = f_bounded(c.inst.cover(c.arg(0)), f, c.opt->n);
        Json r = make_report(c, command);
        set_status(r, res.pass);
        r["result"] = {{"n", res.n}, {"per_element", res.per_element}};
        if (res.disconnected) {
            const auto& [el, x, y] = *res.disconnected;
            r["counterexample"] = {{"element", el}, {"x", c.inst.space.id(x)}, {"y", c.inst.space.id(y)}};
        }
        return r;
    }

    Json cmd_roe(const Context& c, const std::string& command)
    {
        const StarFamily f = star_family_of(c.inst, split(c.opt->ops), true);
        const RoeReport rr = roe_comparison_tests(c.inst.space, f, catalogue_of(c.inst, split(c.opt->catalogue)), c.opt->n);
        Json r = make_report(c, command);
        Json radius = Json::array(), roe = Json::array();
        for (const auto& row : rr.radius_rows)
            radius.push_back({{"cover", row.name}, {"certified", row.certified}, {"n", row.n},
                              {"diameter", num(row.diameter)}, {"bound", num(row.bound)}, {"ok", row.ok}});
        for (const auto& row : rr.roe_rows) {
            roe.push_back({{"cover", row.name}, {"multiplicity", row.multiplicity}, {"max_block", row.max_block},
                           {"n", row.n}, {"certified_at_two", row.certified_at_two}, {"norm", num(row.norm)},
                           {"norm_bound", num(row.norm_bound)}});
            if (!row.certified_at_two && r["counterexample"].is_null())
                r["counterexample"] = {{"cover", row.name}, {"n", row.n}};
        }
        set_status(r, rr.radius_bound && rr.all_at_two && rr.norms_bounded);
        r["result"] = {{"radius_bound", rr.radius_bound}, {"all_at_two", rr.all_at_two},
                       {"norms_bounded", rr.norms_bounded}, {"radius_rows", radius}, {"roe_rows", roe}};
        return r;
    }

    Json cmd_op_ss_base(const Context& c, const std::string& command)
    {
        const StarFamily f = star_family_of(c.inst, split(c.opt->ops));
        const ScaleBase base = ss_from_algebra(f, c.eps);
        std::vector<std::string> names;
        Json sizes = Json::array();
        for (std::size_t i = 0; i < base.scales.size(); ++i) {
            names.push_back("eps=" + std::to_string(c.eps[std::min(i, c.eps.size() - 1)]));
            sizes.push_back(base.scales[i].size());
        }
        Json r = make_report(c, command);
        fill_base(r, check_ss_base(base), names);
        r["result"] = {{"elements", sizes}};
        return r;
    }

    Json cmd_sw(const Context& c, const std::string& command)
    {
        Space plain = c.inst.space;
        plain.set_filtration(Filtration());
        const Function& probe = c.inst.function(c.arg(0));
        const auto sw = stone_weierstrass_desk_test(plain, family_of(c.inst, split(c.opt->family)), probe);
        Json r = make_report(c, command);
        set_status(r, sw.agree);
        Json blocks = Json::array();
        for (const auto& b : sw.blocks)
            blocks.push_back(set_json(plain, b));
        r["result"] = {{"block_constant", sw.block_constant}, {"ss_continuous", sw.ss_continuous},
                       {"agree", sw.agree}, {"blocks", blocks}};
        if (!sw.agree)
            r["counterexample"] = {{"block_constant", sw.block_constant}, {"ss_continuous", sw.ss_continuous}};
        return r;
    }

    Json cmd_algebra_ss_base(const Context& c, const std::string& command)
    {
        const FamilyBase fb = ss_base_from_family(family_of(c.inst, split(c.opt->family)), c.eps);
        std::vector<std::string> names;
        for (const auto& [fn, eps] : fb.labels) {
            std::ostringstream label;
            label << "f" << fn << "@" << eps;
            names.push_back(label.str());
        }
        Json r = make_report(c, command);
        fill_base(r, check_ss_base(fb.base), names);
        return r;
    }

    Json cmd_algebra_ss_cont(const Context& c, const std::string& command)
    {
        const FamilyBase fb = ss_base_from_family(family_of(c.inst, split(c.opt->family)), c.eps);
        const ContinuityReport cr = is_ss_continuous(c.inst.function(c.arg(0)), fb.base.scales, c.eps);
        Json r = make_report(c, command);
        set_status(r, cr.pass);
        for (const auto& [eps, idx] : cr.witnesses)
            r["witnesses"].push_back({{"eps", num(eps)}, {"scale", idx}});
        if (!cr.pass) {
            Json x = {{"eps", num(cr.failing_eps.value_or(0.0))}};
            if (cr.pair)
                x["pair"] = {c.inst.space.id(cr.pair->first), c.inst.space.id(cr.pair->second)};
            r["counterexample"] = x;
        }
        return r;
    }

    std::string status_of(bool pass) { return pass ? "pass" : "fail"; }

} // namespace

Json report_all(const Instance& inst, const std::vector<double>& eps)
{
    const Space& s = inst.space;
    Json checks = Json::array();
    bool all = true;
    auto add = [&](const std::string& check, const std::string& target, bool pass, Json detail = nullptr) {
        Json row = {{"check", check}, {"target", target}, {"status", status_of(pass)}};
        if (!detail.is_null())
            row["detail"] = std::move(detail);
        checks.push_back(std::move(row));
        all = all && pass;
    };

    const BoundedStructure b = structure_of(s);
    add("bounded-axioms", "instance", check_axioms(b).pass);

    std::vector<NamedFunction> controlled;
    for (const auto& f : inst.functions)
        if (s.has_filtration() && is_constant_at_infinity(s, f.values, *std::min_element(eps.begin(), eps.end())))
            controlled.push_back(f);
    const FunctionFamily family(s.size(), controlled);

    for (const auto& [name, u] : inst.covers) {
        add("scale", name, u.is_scale());
        if (!u.is_scale())
            continue;
        if (s.has_metric()) {
            add("lebesgue", name, true, num(lebesgue_number(s, u).value));
            add("mesh", name, true, num(mesh(s, u).value));
        }
        if (s.has_filtration() && s.has_metric()) {
            add("c0", name, wright_c0_check(s, u, eps).pass);
            add("ccs", name, continuously_controlled_check(s, u).pass);
            add("lsmem", name, ls_membership(LsQuery{u, family, b, eps}).pass);
        }
    }
    if (inst.group)
        add("group-closed", inst.name, true, inst.group->closed());

    Json out;
    out["instance"] = inst.name;
    out["truncation"] = truncation_of(s);
    out["status"] = status_of(all);
    out["checks"] = checks;
    return out;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Scale-structure verifiers on finite filtered models", "scalekit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--space", opt.space, "Instance file or bundled instance name");
    app.add_option("--eps", opt.eps, "Comma-separated eps grid");
    app.add_flag("--json", opt.json, "Emit JSON");
    app.add_flag("--timing", opt.timing, "Add wall time to the report");
    app.add_option("--levels", opt.levels, "Keep only the first k filtration levels")->check(CLI::NonNegativeNumber);

    std::function<Json(const Context&, const std::string&)> handler;
    bool is_report_all = false;
    std::string instance_name;
    auto positional = [&](CLI::App* sub, const std::string& what, bool required = true) {
        auto* o = sub->add_option(what, opt.positional, "Catalogue names");
        if (required)
            o->required();
    };
    auto sub = [&](CLI::App& parent, const std::string& name, const std::string& help,
                   std::function<Json(const Context&, const std::string&)> h) {
        CLI::App* s = parent.add_subcommand(name, help);
        s->callback([&handler, h] { handler = h; });
        return s;
    };

    for (const auto& [name, dir] : {std::pair{"check-ss", Direction::Small}, std::pair{"check-ls", Direction::Large}}) {
        const Direction d = dir;
        auto* s = sub(app, name, d == Direction::Small ? "Check covers as a small-scale base" : "Check covers as a large-scale base",
                      [d](const Context& c, const std::string& cmd) { return cmd_check_base(c, cmd, d); });
        positional(s, "covers");
        s->add_flag("--open-ended", opt.open_ended, "Last member is a witness only");
    }
    positional(sub(app, "lebesgue", "Lebesgue number of a cover",
                   [](const Context& c, const std::string& cmd) { return cmd_scan(c, cmd, true); }),
               "cover");
    positional(sub(app, "mesh", "Mesh of a cover",
                   [](const Context& c, const std::string& cmd) { return cmd_scan(c, cmd, false); }),
               "cover");
    auto* so = sub(app, "so", "Slow oscillation of a function", cmd_so);
    positional(so, "function");
    so->add_option("--base", opt.base, "Comma-separated covers")->required();
    so->add_option("--form", opt.form, "strict or relaxed");
    auto* lsmem = sub(app, "lsmem", "Membership in the induced large-scale structure", cmd_lsmem);
    positional(lsmem, "cover");
    lsmem->add_option("--family", opt.family, "Comma-separated functions");
    positional(sub(app, "c0", "Wright C0 condition", cmd_c0), "cover");
    positional(sub(app, "ccs", "Continuously controlled condition", cmd_ccs), "cover");
    auto* t75 = sub(app, "t75", "Controlled covers versus induced membership", cmd_t75);
    t75->add_option("--catalogue", opt.catalogue, "Comma-separated covers");
    t75->add_option("--family", opt.family, "Comma-separated functions");
    auto* bounded = sub(app, "bounded", "Bounded structure axioms and components", cmd_bounded);
    positional(bounded, "structure", false);
    bounded->add_flag("--check", opt.check, "Check the axioms");
    bounded->add_flag("--components", opt.components, "List the components");
    auto* ent = sub(app, "entourage", "Entourage operations on covers", cmd_entourage);
    positional(ent, "covers");
    ent->add_option("--op", opt.op, "compose, invert, to-cover or from-cover")->required();

    CLI::App* op = app.add_subcommand("op", "Operator-algebra checks");
    op->require_subcommand(1);
    auto* fb = sub(*op, "fbounded", "F-boundedness of a cover", cmd_fbounded);
    positional(fb, "cover");
    fb->add_option("--ops", opt.ops, "Comma-separated operators");
    fb->add_option("--n", opt.n, "Maximal chain length");
    auto* roe = sub(*op, "roe-tests", "Support radius and Roe operator comparisons", cmd_roe);
    roe->add_option("--ops", opt.ops, "Comma-separated operators");
    roe->add_option("--catalogue", opt.catalogue, "Comma-separated covers");
    roe->add_option("--n", opt.n, "Maximal chain length");
    auto* opss = sub(*op, "ss-base", "Small-scale base of an operator family", cmd_op_ss_base);
    opss->add_option("--ops", opt.ops, "Comma-separated operators");

    auto* sw = sub(app, "sw-test", "Stone-Weierstrass desk test", cmd_sw);
    positional(sw, "probe");
    sw->add_option("--family", opt.family, "Comma-separated functions");

    CLI::App* alg = app.add_subcommand("algebra", "Function-algebra checks");
    alg->require_subcommand(1);
    sub(*alg, "ss-base", "Small-scale base of a function family", cmd_algebra_ss_base)
        ->add_option("--family", opt.family, "Comma-separated functions");
    auto* sscont = sub(*alg, "ss-cont", "Small-scale continuity of a function", cmd_algebra_ss_cont);
    positional(sscont, "function");
    sscont->add_option("--family", opt.family, "Comma-separated functions");
    auto* asw = sub(*alg, "sw-test", "Stone-Weierstrass desk test", cmd_sw);
    positional(asw, "probe");
    asw->add_option("--family", opt.family, "Comma-separated functions");

    app.add_subcommand("report-all", "Run every applicable verifier")->callback([&] { is_report_all = true; });
    app.add_subcommand("instance", "Print a bundled instance as JSON")
        ->add_option("name", instance_name, "Bundled instance")
        ->required();

    std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    std::string command = "scalekit";
    for (std::size_t i = 1; i < argv.size(); ++i)
        command += " " + argv[i];

    try {
        if (!instance_name.empty()) {
            out << save_instance(bundled_instance(instance_name)).dump(2) << "\n";
            return kExitPass;
        }
        const auto start = std::chrono::steady_clock::now();
        Context ctx;
        ctx.opt = &opt;
        ctx.inst = resolve_space(opt.space);
        ctx.space_label = opt.space.empty() ? "halfline" : opt.space;
        if (opt.levels >= 0)
            ctx.inst.space = ctx.inst.space.with_levels(static_cast<std::size_t>(opt.levels));
        ctx.eps = opt.eps.empty() ? kDefaultEps : parse_eps(opt.eps);

        Json report;
        if (is_report_all) {
            report = {{"command", command}, {"space", ctx.space_label}};
            const Json all = report_all(ctx.inst, ctx.eps);
            for (const auto& [k, v] : all.items())
                report[k] = v;
        } else {
            report = handler(ctx, command);
        }
        if (opt.timing)
            report["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        if (opt.json) {
            out << report.dump(2) << "\n";
        } else {
            for (const auto& [k, v] : report.items()) {
                out << k << ": ";
                if (v.is_string())
                    out << v.get<std::string>();
                else if (v.is_array() && v.size() > kTextListLimit)
                    out << v.size() << " entries (use --json)";
                else
                    out << v.dump();
                out << "\n";
            }
        }
        return report["status"] == "pass" ? kExitPass : kExitCounterexample;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace scalekit
