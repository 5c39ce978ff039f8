#include "scalekit/catalogue.hpp"

#include <cmath>

#include "scalekit/metric.hpp"
#include "scalekit/oscillation.hpp"

namespace scalekit {

namespace {

    Function tabulate(const Space& s, Complex (*f)(double))
    {
        Function out(static_cast<Eigen::Index>(s.size()));
        for (Eigen::Index i = 0; i < out.size(); ++i)
            out[i] = f(s.coordinates()(i, 0));
        return out;
    }

    Cover from_windows(const Space& s, const std::vector<std::pair<double, double>>& windows)
    {
        Cover u(s.size());
        for (const auto& [lo, hi] : windows) {
            PointSet w = coordinate_window(s, lo, hi);
            if (w.any())
                u.add(std::move(w));
        }
        return u;
    }

    Cover with_singletons(const Space& s, const std::vector<std::vector<double>>& groups)
    {
        Cover u(s.size());
        for (const auto& g : groups) {
            PointSet e(s.size());
            for (double x : g)
                e.set(s.index_of(format_coordinate(x)));
            u.add(std::move(e));
        }
        return trivial_extension(u);
    }

    Space integer_line(std::size_t last, std::size_t level_step, std::size_t levels)
    {
        Space s = builder_line(last, 1.0);
        std::vector<PointSet> k;
        for (std::size_t i = 1; i <= levels; ++i)
            k.push_back(coordinate_window(s, 0.0, static_cast<double>(level_step * i)));
        s.set_filtration(std::move(k));
        return s;
    }

    Instance halfline()
    {
        Instance inst;
        inst.name = "halfline";
        inst.space = builder_halfline();
        const Space& s = inst.space;
        inst.add_cover("singletons", singleton_cover(s.size()));
        inst.add_cover("ball1", ball_cover(s, 1.0).cover);
        inst.add_cover("shrinking", halfline_shrinking_cover(s));
        inst.add_cover("unit", halfline_unit_cover(s));
        std::vector<std::pair<double, double>> eighths;
        for (int k = 0; k < 800; ++k)
            eighths.emplace_back(k / 8.0, (k + 1) / 8.0);
        inst.add_cover("eighths", from_windows(s, eighths));

        inst.add_function("const", tabulate(s, [](double) { return Complex(2.0, 0.0); }));
        inst.add_function("decay", tabulate(s, [](double x) { return Complex(1.0 / (1.0 + x), 0.0); }));
        inst.add_function("sinlog", tabulate(s, [](double x) { return Complex(std::sin(std::log1p(x)), 0.0); }));
        inst.add_function("cexp", tabulate(s, [](double x) { return std::exp(Complex(0.0, std::log1p(x))); }));
        inst.add_function("sin", tabulate(s, [](double x) { return Complex(std::sin(x), 0.0); }));
        inst.add_function("bump", build_bump_refuter(s, halfline_bump_centers(s), 1.0));
        inst.add_function("sinsq", tabulate(s, [](double x) { return Complex(std::sin(x * x), 0.0); }));

        PointMap shift(s.size());
        for (Index i = 0; i < s.size(); ++i)
            shift[i] = std::min<Index>(i + 8, s.size() - 1);
        inst.add_map("shift", std::move(shift));
        return inst;
    }

    Instance nats()
    {
        Instance inst;
        inst.name = "nats";
        inst.space = integer_line(120, 10, 10);
        const Space& s = inst.space;
        inst.add_cover("singletons", singleton_cover(s.size()));
        inst.add_cover("ball2", ball_cover(s, 2.0).cover);
        std::vector<std::pair<double, double>> pairs1, win5, squares, gap5;
        for (int n = 0; n < 120; ++n)
            pairs1.emplace_back(n, n + 1);
        for (int n = 0; n <= 116; ++n)
            win5.emplace_back(n, n + 4);
        for (int n = 0; n * n <= 120; ++n)
            squares.emplace_back(n * n, (n + 1) * (n + 1) - 1);
        inst.add_cover("pairs1", from_windows(s, pairs1));
        inst.add_cover("win5", from_windows(s, win5));
        inst.add_cover("far0", with_singletons(s, {{0, 110}}));
        inst.add_cover("mid", with_singletons(s, {{5, 50}}));
        inst.add_cover("squares", from_windows(s, squares));
        inst.add_cover("whole", Cover(s.size(), {full_set(s.size())}));
        inst.add_cover("tail", trivial_extension(Cover(s.size(), {coordinate_window(s, 50, 120)})));
        Cover gap(s.size());
        for (int n = 0; n + 5 <= 120; ++n)
            gap.add(make_set(s.size(), {static_cast<Index>(n), static_cast<Index>(n + 5)}));
        inst.add_cover("gap5", trivial_extension(gap));

        inst.add_function("decay", tabulate(s, [](double x) { return Complex(1.0 / (1.0 + x), 0.0); }));
        inst.add_function("decay10", tabulate(s, [](double x) { return Complex(10.0 / (10.0 + x), 0.0); }));
        inst.add_function("gauss5", tabulate(s, [](double x) { return Complex(std::exp(-(x - 5) * (x - 5) / 4.0), 0.0); }));
        inst.add_function("gauss20", tabulate(s, [](double x) { return Complex(std::exp(-(x - 20) * (x - 20) / 4.0), 0.0); }));
        return inst;
    }

    Instance squares()
    {
        Instance inst;
        inst.name = "squares";
        inst.space = integer_line(480, 36, 10);
        const Space& s = inst.space;
        inst.add_cover("pairs", squares_pair_cover(s));
        inst.add_cover("ball2", ball_cover(s, 2.0).cover);
        inst.add_function("refuter", squares_refuter(s));
        return inst;
    }

    Instance line20()
    {
        Instance inst;
        inst.name = "line20";
        inst.space = builder_line(20, 1.0);
        const Space& s = inst.space;
        inst.add_cover("singletons", singleton_cover(s.size()));
        inst.add_cover("whole", Cover(s.size(), {full_set(s.size())}));
        inst.add_cover("thirds", from_windows(s, {{0, 10}, {5, 15}, {10, 20}}));
        inst.add_cover("halves", from_windows(s, {{0, 10}, {10, 20}}));
        std::vector<std::pair<double, double>> pairs, blocks4, overlap6;
        for (int n = 0; n < 20; ++n)
            pairs.emplace_back(n, n + 1);
        for (int n = 0; n <= 20; n += 4)
            blocks4.emplace_back(n, n + 3);
        for (int n = 0; n <= 18; n += 3)
            overlap6.emplace_back(n, n + 5);
        inst.add_cover("pairs", from_windows(s, pairs));
        inst.add_cover("blocks4", from_windows(s, blocks4));
        inst.add_cover("overlap6", from_windows(s, overlap6));
        inst.add_cover("ball3", ball_cover(s, 3.0).cover);
        inst.add_cover("mixed", from_windows(s, {{0, 2}, {2, 9}, {9, 20}}));
        inst.add_cover("ragged", from_windows(s, {{0, 0}, {0, 7}, {6, 8}, {8, 13}, {12, 12}, {13, 20}}));

        std::vector<Eigen::Triplet<Complex>> shift, tri;
        for (Index x = 0; x + 1 < s.size(); ++x) {
            shift.emplace_back(static_cast<int>(x + 1), static_cast<int>(x), Complex(1.0, 0.0));
            tri.emplace_back(static_cast<int>(x + 1), static_cast<int>(x), Complex(1.0, 0.0));
            tri.emplace_back(static_cast<int>(x), static_cast<int>(x + 1), Complex(1.0, 0.0));
        }
        for (Index x = 0; x < s.size(); ++x)
            tri.emplace_back(static_cast<int>(x), static_cast<int>(x), Complex(2.0, 0.0));
        inst.add_operator("shift", make_operator(s.size(), shift));
        inst.add_operator("tridiag", make_operator(s.size(), tri));
        return inst;
    }

    Instance grid5()
    {
        Instance inst;
        inst.name = "grid5";
        inst.space = builder_grid(5);
        const Space& s = inst.space;
        auto cell = [&](int i, int j) { return s.index_of(std::to_string(i) + "," + std::to_string(j)); };
        auto rect = [&](int i0, int i1, int j0, int j1) {
            PointSet e(s.size());
            for (int i = i0; i <= i1; ++i)
                for (int j = j0; j <= j1; ++j)
                    e.set(cell(i, j));
            return e;
        };
        Cover rows(s.size()), cols(s.size()), quads(s.size()), blocks2(s.size()), diag(s.size()), strips(s.size());
        for (int i = 0; i < 5; ++i) {
            rows.add(rect(i, i, 0, 4));
            cols.add(rect(0, 4, i, i));
        }
        quads.add(rect(0, 2, 0, 2));
        quads.add(rect(0, 2, 2, 4));
        quads.add(rect(2, 4, 0, 2));
        quads.add(rect(2, 4, 2, 4));
        for (int i = 0; i < 5; i += 2)
            for (int j = 0; j < 5; j += 2)
                blocks2.add(rect(i, std::min(i + 1, 4), j, std::min(j + 1, 4)));
        for (int k = 0; k <= 8; ++k) {
            PointSet e(s.size());
            for (int i = 0; i < 5; ++i)
                if (k - i >= 0 && k - i < 5)
                    e.set(cell(i, k - i));
            diag.add(std::move(e));
        }
        strips.add(rect(0, 1, 0, 4));
        strips.add(rect(1, 3, 0, 4));
        strips.add(rect(3, 4, 0, 4));
        inst.add_cover("singletons", singleton_cover(s.size()));
        inst.add_cover("whole", Cover(s.size(), {full_set(s.size())}));
        inst.add_cover("rows", rows);
        inst.add_cover("cols", cols);
        inst.add_cover("quadrants", quads);
        inst.add_cover("blocks2", blocks2);
        inst.add_cover("antidiagonals", diag);
        inst.add_cover("strips", strips);
        inst.add_cover("ball1.5", ball_cover(s, 1.5).cover);
        inst.add_cover("ball2.5", ball_cover(s, 2.5).cover);
        return inst;
    }

    Instance grid6()
    {
        Instance inst;
        inst.name = "grid6";
        inst.space = builder_grid(6);
        const Space& s = inst.space;
        auto rect = [&](int i0, int i1, int j0, int j1) {
            PointSet e(s.size());
            for (int i = i0; i <= i1; ++i)
                for (int j = j0; j <= j1; ++j)
                    e.set(s.index_of(std::to_string(i) + "," + std::to_string(j)));
            return e;
        };
        Cover blocks2(s.size()), blocks3(s.size()), rows(s.size()), windows2(s.size()), dominoes(s.size());
        for (int i = 0; i < 6; i += 2)
            for (int j = 0; j < 6; j += 2)
                blocks2.add(rect(i, i + 1, j, j + 1));
        for (int i = 0; i < 6; i += 3)
            for (int j = 0; j < 6; j += 3)
                blocks3.add(rect(i, i + 2, j, j + 2));
        for (int i = 0; i < 6; ++i)
            rows.add(rect(i, i, 0, 5));
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                windows2.add(rect(i, i + 1, j, j + 1));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; j += 2)
                dominoes.add(rect(i, i, j, j + 1));
        inst.add_cover("singletons", singleton_cover(s.size()));
        inst.add_cover("dominoes", dominoes);
        inst.add_cover("blocks2", blocks2);
        inst.add_cover("blocks3", blocks3);
        inst.add_cover("rows", rows);
        inst.add_cover("windows2", windows2);
        inst.add_cover("ball1.5", ball_cover(s, 1.5).cover);
        return inst;
    }

    Instance zwindow()
    {
        Instance inst;
        inst.name = "zwindow";
        GroupWindow g = z_window(10);
        inst.space = g.carrier();
        const Space& s = inst.space;
        inst.group = std::move(g);
        inst.group_spec = GroupSpec{GroupSpec::Kind::ZWindow, 10};
        inst.add_cover("ball1.5", ball_cover(s, 1.5).cover);
        PointMap negate(s.size());
        for (Index i = 0; i < s.size(); ++i)
            negate[i] = s.size() - 1 - i;
        inst.add_map("negate", std::move(negate));
        return inst;
    }

    Instance group_instance(const std::string& name, GroupWindow g)
    {
        Instance inst;
        inst.name = name;
        inst.space = g.carrier();
        inst.group = std::move(g);
        inst.group_spec = GroupSpec{GroupSpec::Kind::Table, inst.space.size()};
        return inst;
    }

} // namespace

std::vector<std::string> bundled_names()
{
    return {"halfline", "nats", "squares", "line20", "grid5", "grid6", "zwindow", "cyclic12", "s3"};
}

Instance bundled_instance(const std::string& name)
{
    if (name == "halfline")
        return halfline();
    if (name == "nats")
        return nats();
    if (name == "squares")
        return squares();
    if (name == "line20")
        return line20();
    if (name == "grid5")
        return grid5();
    if (name == "grid6")
        return grid6();
    if (name == "zwindow")
        return zwindow();
    if (name == "cyclic12")
        return group_instance(name, cyclic_group(12));
    if (name == "s3")
        return group_instance(name, symmetric_group(3));
    throw Error("unknown bundled instance '" + name + "'");
}

std::vector<Index> halfline_bump_centers(const Space& halfline)
{
    std::vector<Index> c;
    for (int k = 1; k <= 10; ++k)
        c.push_back(halfline.index_of(format_coordinate(10.0 * k)));
    return c;
}

Cover halfline_shrinking_cover(const Space& halfline)
{
    std::vector<std::pair<double, double>> w;
    for (int n = 0; n <= 100; ++n)
        w.emplace_back(n, n + std::ldexp(1.0, -n));
    return trivial_extension(from_windows(halfline, w));
}

Cover halfline_unit_cover(const Space& halfline)
{
    std::vector<std::pair<double, double>> w;
    for (int n = 0; n < 100; ++n)
        w.emplace_back(n, n + 1);
    return from_windows(halfline, w);
}

Cover squares_pair_cover(const Space& line)
{
    Cover u(line.size());
    for (int n = 1;; ++n) {
        const auto x = line.find(std::to_string(n * n));
        const auto y = line.find(std::to_string(n * n + 2 * n));
        if (!x || !y)
            break;
        u.add(make_set(line.size(), {*x, *y}));
    }
    return trivial_extension(u);
}

Function squares_refuter(const Space& line)
{
    std::vector<Index> centers;
    std::vector<double> radii;
    for (int n = 2;; n += 2) {
        const auto x = line.find(std::to_string(n * n));
        if (!x || !line.find(std::to_string(n * n + 2 * n)))
            break;
        centers.push_back(*x);
        radii.push_back(n);
    }
    return build_scaled_refuter(line, centers, radii);
}

} // namespace scalekit
