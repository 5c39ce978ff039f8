#include "scalekit/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace scalekit {

namespace {

    template <class T>
    const T& lookup(const std::vector<std::pair<std::string, T>>& items, const std::string& name, const char* what)
    {
        for (const auto& [n, v] : items)
            if (n == name)
                return v;
        throw Error(std::string("unknown ") + what + " '" + name + "'");
    }

    template <class T>
    void insert_unique(std::vector<std::pair<std::string, T>>& items, std::string name, T value, const char* what)
    {
        for (const auto& [n, v] : items)
            if (n == name)
                throw Error(std::string("duplicate ") + what + " '" + name + "'");
        items.emplace_back(std::move(name), std::move(value));
    }

    std::string point_id(const Json& j)
    {
        if (j.is_string())
            return j.get<std::string>();
        if (j.is_number_integer())
            return std::to_string(j.get<long long>());
        if (j.is_number())
            return format_coordinate(j.get<double>());
        throw Error("point identifiers must be strings or numbers");
    }

    PointSet id_set(const Space& s, const Json& j, const std::string& where)
    {
        if (!j.is_array())
            throw Error(where + ": expected a list of point identifiers");
        PointSet out(s.size());
        for (const auto& p : j) {
            const auto id = point_id(p);
            auto i = s.find(id);
            if (!i)
                throw Error(where + ": unknown point '" + id + "'");
            out.set(*i);
        }
        return out;
    }

    Json id_list(const Space& s, const PointSet& a)
    {
        Json out = Json::array();
        for (auto i = a.find_first(); i != PointSet::npos; i = a.find_next(i))
            out.push_back(s.id(i));
        return out;
    }

    double number(const Json& j, const std::string& where)
    {
        if (j.is_null())
            return kInf;
        if (!j.is_number())
            throw Error(where + ": expected a number");
        return j.get<double>();
    }

    Json encode(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

    void load_metric(Space& s, const Json& m)
    {
        const auto kind = m.at("kind").get<std::string>();
        const auto n = static_cast<Eigen::Index>(s.size());
        if (kind == "table") {
            const auto& rows = m.at("d");
            if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
                throw Error("metric table needs one row per point");
            Eigen::MatrixXd d(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const auto& row = rows[static_cast<std::size_t>(i)];
                if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
                    throw Error("metric table row " + s.id(static_cast<Index>(i)) + " has wrong length");
                for (Eigen::Index j = 0; j < n; ++j)
                    d(i, j) = number(row[static_cast<std::size_t>(j)], "metric table");
            }
            s.set_metric_table(std::move(d));
        } else if (kind == "line") {
            const auto& c = m.at("coords");
            if (!c.is_array() || static_cast<Eigen::Index>(c.size()) != n)
                throw Error("line metric needs one coordinate per point");
            Eigen::VectorXd v(n);
            for (Eigen::Index i = 0; i < n; ++i)
                v[i] = number(c[static_cast<std::size_t>(i)], "line coordinate");
            s.set_line_metric(v);
        } else if (kind == "grid") {
            const auto& c = m.at("coords");
            if (!c.is_array() || static_cast<Eigen::Index>(c.size()) != n)
                throw Error("grid metric needs one coordinate pair per point");
            Eigen::MatrixXd v(n, 2);
            for (Eigen::Index i = 0; i < n; ++i) {
                const auto& p = c[static_cast<std::size_t>(i)];
                if (!p.is_array() || p.size() != 2)
                    throw Error("grid coordinate must be a pair");
                v(i, 0) = number(p[0], "grid coordinate");
                v(i, 1) = number(p[1], "grid coordinate");
            }
            s.set_grid_metric(v);
        } else {
            throw Error("unknown metric kind '" + kind + "'");
        }
    }

    Json save_metric(const Space& s)
    {
        Json m;
        const auto n = static_cast<Eigen::Index>(s.size());
        switch (s.metric_kind()) {
        case MetricKind::Table: {
            m["kind"] = "table";
            Json rows = Json::array();
            for (Eigen::Index i = 0; i < n; ++i) {
                Json row = Json::array();
                for (Eigen::Index j = 0; j < n; ++j)
                    row.push_back(encode(s.metric()(i, j)));
                rows.push_back(std::move(row));
            }
            m["d"] = std::move(rows);
            break;
        }
        case MetricKind::Line: {
            m["kind"] = "line";
            Json c = Json::array();
            for (Eigen::Index i = 0; i < n; ++i)
                c.push_back(encode(s.coordinates()(i, 0)));
            m["coords"] = std::move(c);
            break;
        }
        case MetricKind::Grid: {
            m["kind"] = "grid";
            Json c = Json::array();
            for (Eigen::Index i = 0; i < n; ++i)
                c.push_back(Json::array({encode(s.coordinates()(i, 0)), encode(s.coordinates()(i, 1))}));
            m["coords"] = std::move(c);
            break;
        }
        case MetricKind::None:
            break;
        }
        return m;
    }

} // namespace

const Cover& Instance::cover(const std::string& n) const { return lookup(covers, n, "cover"); }

const Function& Instance::function(const std::string& n) const
{
    for (const auto& f : functions)
        if (f.name == n)
            return f.values;
    throw Error("unknown function '" + n + "'");
}

const OperatorMatrix& Instance::op(const std::string& n) const
{
    for (const auto& o : operators)
        if (o.name == n)
            return o.matrix;
    throw Error("unknown operator '" + n + "'");
}

const PointMap& Instance::map(const std::string& n) const { return lookup(maps, n, "map"); }

void Instance::add_cover(std::string n, Cover u)
{
    if (u.universe() != space.size())
        throw Error("cover '" + n + "' lives on a different space");
    insert_unique(covers, std::move(n), std::move(u), "cover");
}

void Instance::add_function(std::string n, Function f)
{
    if (static_cast<std::size_t>(f.size()) != space.size())
        throw Error("function '" + n + "' is not tabulated on the space");
    if (!f.allFinite())
        throw Error("function '" + n + "' has non-finite values");
    for (const auto& g : functions)
        if (g.name == n)
            throw Error("duplicate function '" + n + "'");
    functions.push_back({std::move(n), std::move(f)});
}

void Instance::add_operator(std::string n, OperatorMatrix a)
{
    const auto m = static_cast<Eigen::Index>(space.size());
    if (a.rows() != m || a.cols() != m)
        throw Error("operator '" + n + "' has wrong dimensions");
    for (const auto& o : operators)
        if (o.name == n)
            throw Error("duplicate operator '" + n + "'");
    a.makeCompressed();
    operators.push_back({std::move(n), std::move(a)});
}

void Instance::add_map(std::string n, PointMap m)
{
    if (m.size() != space.size())
        throw Error("map '" + n + "' is not total on the points");
    for (Index t : m)
        if (t >= space.size())
            throw Error("map '" + n + "' has a target out of range");
    insert_unique(maps, std::move(n), std::move(m), "map");
}

bool operator==(const Instance& a, const Instance& b)
{
    if (!(a.space == b.space) || a.covers != b.covers || a.maps != b.maps)
        return false;
    if (a.functions.size() != b.functions.size() || a.operators.size() != b.operators.size())
        return false;
    for (std::size_t i = 0; i < a.functions.size(); ++i)
        if (a.functions[i].name != b.functions[i].name || a.functions[i].values != b.functions[i].values)
            return false;
    for (std::size_t i = 0; i < a.operators.size(); ++i) {
        if (a.operators[i].name != b.operators[i].name)
            return false;
        const OperatorMatrix diff = a.operators[i].matrix - b.operators[i].matrix;
        for (int k = 0; k < diff.outerSize(); ++k)
            for (OperatorMatrix::InnerIterator it(diff, k); it; ++it)
                if (it.value() != Complex(0.0, 0.0))
                    return false;
    }
    if (a.group.has_value() != b.group.has_value())
        return false;
    return !a.group || a.group->table() == b.group->table();
}

Instance load_instance(const Json& doc, std::string name)
{
    if (!doc.is_object())
        throw Error("instance document must be a JSON object");
    if (!doc.contains("points") || !doc["points"].is_array())
        throw Error("instance needs a 'points' list");
    std::vector<std::string> ids;
    for (const auto& p : doc["points"])
        ids.push_back(point_id(p));

    Instance inst;
    inst.name = std::move(name);
    inst.space = Space(ids);
    Space& s = inst.space;
    try {
        if (doc.contains("metric"))
            load_metric(s, doc["metric"]);
        if (doc.contains("filtration")) {
            std::vector<PointSet> levels;
            std::size_t k = 0;
            for (const auto& level : doc["filtration"])
                levels.push_back(id_set(s, level, "filtration level " + std::to_string(++k)));
            s.set_filtration(std::move(levels));
        }
        std::vector<std::string> open;
        if (doc.contains("open_covers"))
            open = doc["open_covers"].get<std::vector<std::string>>();
        if (doc.contains("covers")) {
            for (const auto& [cname, elements] : doc["covers"].items()) {
                Cover u(s.size());
                for (const auto& e : elements)
                    u.add(id_set(s, e, "cover '" + cname + "'"));
                u.set_open(std::find(open.begin(), open.end(), cname) != open.end());
                inst.add_cover(cname, std::move(u));
            }
        }
        if (doc.contains("functions")) {
            for (const auto& [fname, values] : doc["functions"].items()) {
                if (!values.is_array() || values.size() != s.size())
                    throw Error("function '" + fname + "' needs one value per point");
                Function f(static_cast<Eigen::Index>(s.size()));
                for (std::size_t i = 0; i < s.size(); ++i) {
                    const auto& v = values[i];
                    if (v.is_array() && v.size() == 2)
                        f[static_cast<Eigen::Index>(i)] = Complex(number(v[0], fname), number(v[1], fname));
                    else
                        f[static_cast<Eigen::Index>(i)] = Complex(number(v, fname), 0.0);
                }
                inst.add_function(fname, std::move(f));
            }
        }
        if (doc.contains("operators")) {
            for (const auto& [oname, spec] : doc["operators"].items()) {
                std::vector<Eigen::Triplet<Complex>> t;
                for (const auto& e : spec.at("triplets")) {
                    if (!e.is_array() || e.size() != 4)
                        throw Error("operator '" + oname + "': triplets are [row, col, re, im]");
                    t.emplace_back(e[0].get<int>(), e[1].get<int>(), Complex(e[2].get<double>(), e[3].get<double>()));
                }
                inst.add_operator(oname, make_operator(s.size(), t));
            }
        }
        if (doc.contains("maps"))
            for (const auto& [mname, targets] : doc["maps"].items())
                inst.add_map(mname, targets.get<PointMap>());
        if (doc.contains("group")) {
            const auto& g = doc["group"];
            const auto kind = g.at("kind").get<std::string>();
            if (kind == "z-window") {
                const auto n = g.at("n").get<std::size_t>();
                GroupWindow w = z_window(n);
                if (w.carrier().ids() != s.ids())
                    throw Error("z-window group needs points -n..n in order");
                inst.group = std::move(w);
                inst.group_spec = GroupSpec{GroupSpec::Kind::ZWindow, n};
            } else if (kind == "table") {
                inst.group = builder_group_window(s.ids(), g.at("table").get<std::vector<std::vector<long>>>());
                inst.group_spec = GroupSpec{GroupSpec::Kind::Table, s.size()};
            } else {
                throw Error("unknown group kind '" + kind + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("schema violation: ") + e.what());
    }
    return inst;
}

Instance load_instance_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open instance file '" + path.string() + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("malformed instance file '" + path.string() + "': " + e.what());
    }
    return load_instance(doc, path.stem().string());
}

Json save_instance(const Instance& inst)
{
    const Space& s = inst.space;
    Json doc;
    doc["points"] = s.ids();
    if (s.has_metric())
        doc["metric"] = save_metric(s);
    if (s.has_filtration()) {
        Json levels = Json::array();
        for (const auto& k : s.filtration().levels())
            levels.push_back(id_list(s, k));
        doc["filtration"] = std::move(levels);
    }
    if (!inst.covers.empty()) {
        Json covers = Json::object();
        Json open = Json::array();
        for (const auto& [name, u] : inst.covers) {
            Json elements = Json::array();
            for (const auto& e : u)
                elements.push_back(id_list(s, e));
            covers[name] = std::move(elements);
            if (u.open())
                open.push_back(name);
        }
        doc["covers"] = std::move(covers);
        if (!open.empty())
            doc["open_covers"] = std::move(open);
    }
    if (!inst.functions.empty()) {
        Json fs = Json::object();
        for (const auto& f : inst.functions) {
            Json values = Json::array();
            for (Eigen::Index i = 0; i < f.values.size(); ++i)
                values.push_back(Json::array({f.values[i].real(), f.values[i].imag()}));
            fs[f.name] = std::move(values);
        }
        doc["functions"] = std::move(fs);
    }
    if (!inst.operators.empty()) {
        Json ops = Json::object();
        for (const auto& o : inst.operators) {
            Json t = Json::array();
            for (int k = 0; k < o.matrix.outerSize(); ++k)
                for (OperatorMatrix::InnerIterator it(o.matrix, k); it; ++it)
                    t.push_back(Json::array({it.row(), it.col(), it.value().real(), it.value().imag()}));
            ops[o.name] = Json{{"triplets", std::move(t)}};
        }
        doc["operators"] = std::move(ops);
    }
    if (!inst.maps.empty()) {
        Json ms = Json::object();
        for (const auto& [name, m] : inst.maps)
            ms[name] = m;
        doc["maps"] = std::move(ms);
    }
    if (inst.group) {
        if (inst.group_spec && inst.group_spec->kind == GroupSpec::Kind::ZWindow)
            doc["group"] = Json{{"kind", "z-window"}, {"n", inst.group_spec->n}};
        else
            doc["group"] = Json{{"kind", "table"}, {"table", inst.group->table()}};
    }
    return doc;
}

} // namespace scalekit
