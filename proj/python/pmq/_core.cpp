#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pmq/errors.hpp"
#include "pmq/harness.hpp"
#include "pmq/kdtree.hpp"
#include "pmq/limitproc.hpp"
#include "pmq/moments.hpp"
#include "pmq/quadtree.hpp"
#include "pmq/rng.hpp"
#include "pmq/specfun.hpp"

namespace py = pybind11;
using namespace pmq;

namespace {

using XY = std::vector<std::pair<double, double>>;

Axis axis_of(const std::string& a)
{
    if (a == "v") return Axis::Vertical;
    if (a == "h") return Axis::Horizontal;
    throw DomainError("root axis must be 'v' or 'h'");
}

LimitVariant variant_of(const std::string& v)
{
    if (v == "quad") return LimitVariant::Quad;
    if (v == "kd") return LimitVariant::Kd;
    throw DomainError("variant must be 'quad' or 'kd'");
}

py::dict table_dict(const Table& t)
{
    py::dict d;
    d["columns"] = t.columns;
    d["rows"] = t.rows;
    d["meta"] = t.meta;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Partial match queries in random quadtrees and 2-d trees";

    py::register_exception<CapError>(m, "CapError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const DomainError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const GeneralPositionError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const EmptyTreeError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const AxisMismatchError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("beta_exponent", &beta_exponent);
    m.def("h", &h, py::arg("s"));
    m.def("gamma", [](double x) { return pmq::gamma(x); }, py::arg("x"));
    m.def("beta_fn", &beta_fn, py::arg("a"), py::arg("b"));
    m.def("constants", [] {
        py::dict d;
        for (const auto& [name, v] : constant_fields(constants())) d[py::str(name)] = v;
        return d;
    });

    m.def("psi_moments", [](int maxOrder) { return psi_moments(maxOrder).values(); }, py::arg("max_order"),
          "c_1..c_M of Z(s)/h(s)");
    m.def("xi_perp_moments", [](int maxOrder) { return xi_perp_moments(maxOrder).values(); }, py::arg("max_order"));
    m.def(
        "second_moment",
        [](int n, std::size_t points) {
            const auto g = second_moment_iterates(n, uniform_grid(points));
            return std::make_pair(g.grid, g.values);
        },
        py::arg("iters"), py::arg("grid") = kDefaultOperatorGrid, "(grid, m_n) with m_n = E[Z_n(s)^2]");

    m.def(
        "quadtree_cost",
        [](const XY& pts, double s) { return cost(QuadTree::build(make_points(pts)), s); },
        py::arg("points"), py::arg("s"));
    m.def(
        "kd_cost",
        [](const XY& pts, double s, const std::string& root) { return kd_cost(KdTree::build(make_points(pts), axis_of(root)), s); },
        py::arg("points"), py::arg("s"), py::arg("root_axis") = "v");
    m.def(
        "cost_profile",
        [](const XY& pts, const std::string& tree, const std::string& root) {
            const auto p = tree == "kd" ? kd_profile(KdTree::build(make_points(pts), axis_of(root)))
                                        : profile(QuadTree::build(make_points(pts)));
            return std::make_pair(p.breakpoints(), p.values());
        },
        py::arg("points"), py::arg("tree") = "quad", py::arg("root_axis") = "v", "(breakpoints, values) of s -> C(s)");
    m.def(
        "supremum",
        [](const XY& pts) {
            const auto s = supremum(QuadTree::build(make_points(pts)));
            return py::make_tuple(s.maxCost, s.from, s.to);
        },
        py::arg("points"), "(max cost, from, to)");
    m.def(
        "fill_up_level", [](const XY& pts) { return fill_up_level(QuadTree::build(make_points(pts))); }, py::arg("points"));
    m.def(
        "uniform_points",
        [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            XY out;
            for (const auto& p : sample_uniform_points(n, rng)) out.emplace_back(p.x, p.y);
            return out;
        },
        py::arg("n"), py::arg("seed") = 1, py::arg("stream") = 0);

    m.def(
        "simulate_limit",
        [](int depth, double s, std::uint64_t seed, std::uint64_t stream, const std::string& variant) {
            const LimitEnvironment env(seed, stream);
            return variant_of(variant) == LimitVariant::Kd ? simulate_pointwise_2d(depth, s, env)
                                                           : simulate_pointwise(depth, s, env);
        },
        py::arg("depth"), py::arg("s"), py::arg("seed") = 1, py::arg("stream") = 0, py::arg("variant") = "quad");
    m.def(
        "simulate_limit_path",
        [](int depth, std::size_t points, std::uint64_t seed, std::uint64_t stream, const std::string& variant) {
            const auto grid = uniform_grid(points);
            return std::make_pair(grid, simulate_path(depth, grid, LimitEnvironment(seed, stream), variant_of(variant)));
        },
        py::arg("depth"), py::arg("grid"), py::arg("seed") = 1, py::arg("stream") = 0, py::arg("variant") = "quad");
    m.def(
        "diagnostics",
        [](int depth, std::uint64_t seed, std::uint64_t stream) {
            const auto d = diagnostics(depth, LimitEnvironment(seed, stream));
            return py::make_tuple(d.maxWidth, d.minGap);
        },
        py::arg("depth"), py::arg("seed") = 1, py::arg("stream") = 0, "(W_n, L_n)");

    m.def(
        "run_experiment",
        [](const std::string& kind, std::vector<std::size_t> sizes, std::size_t replications, std::uint64_t seed,
           double s, double t, double eps, std::vector<double> grid, const std::string& flavor, unsigned threads,
           bool check) {
            ExperimentSpec spec;
            spec.kind = parse_experiment_kind(kind);
            spec.sizes = std::move(sizes);
            spec.replications = replications;
            spec.seed = seed;
            spec.s = s;
            spec.t = t;
            spec.eps = eps;
            spec.grid = std::move(grid);
            spec.flavor = parse_tree_flavor(flavor);
            spec.threads = threads;
            Table table;
            {
                py::gil_scoped_release release;
                table = run_experiment(spec);
            }
            auto d = table_dict(table);
            if (check) {
                const auto r = check_experiment(spec, table);
                d["check_passed"] = r.pass;
                d["check_message"] = r.message;
            }
            return d;
        },
        py::arg("kind"), py::arg("sizes"), py::arg("replications") = 100, py::arg("seed") = 1, py::arg("s") = 0.5,
        py::arg("t") = 100.0, py::arg("eps") = 0.1, py::arg("grid") = std::vector<double>{}, py::arg("flavor") = "quad",
        py::arg("threads") = 1, py::arg("check") = false);
}
