// pmq: partial match queries in random quadtrees and 2-d trees.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmq/errors.hpp"
#include "pmq/harness.hpp"
#include "pmq/kdtree.hpp"
#include "pmq/limitproc.hpp"
#include "pmq/moments.hpp"
#include "pmq/quadtree.hpp"
#include "pmq/rng.hpp"
#include "pmq/specfun.hpp"

using namespace pmq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;
constexpr int kExitCheck = 4;

struct Globals {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string out = "-";
    std::string format = "csv";
    std::string config;
};

std::string meta_line(const Globals& g) { return "generator=" + std::string(kGeneratorName) + " seed=" + std::to_string(g.seed); }

void write_table(const Table& t, const Globals& g)
{
    if (t.rows.empty()) throw DomainError("nothing to write");
    if (g.out == "-") {
        if (g.format == "plot") write_plot_data(t, std::cout);
        else write_csv(t, std::cout);
        std::cout.flush();
        return;
    }
    if (g.format == "plot") emit_plot_data(t, g.out);
    else emit_csv(t, g.out);
}

// name,value rows; the only output with a text column
void write_named(const std::vector<std::pair<std::string, double>>& rows, const Globals& g)
{
    std::ostringstream os;
    const char sep = g.format == "plot" ? ' ' : ',';
    os << (g.format == "plot" ? "# name value\n" : "name,value\n");
    for (const auto& [name, v] : rows) os << name << sep << format_value(v) << '\n';
    if (g.out == "-") {
        std::cout << os.str();
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + g.out);
    f << os.str();
    if (!f) throw std::runtime_error("write failed: " + g.out);
}

Axis parse_axis(const std::string& a) { return a == "h" ? Axis::Horizontal : Axis::Vertical; }

std::vector<Point2> draw_points(std::size_t n, std::optional<double> poisson, RngStream& rng)
{
    if (poisson) n = static_cast<std::size_t>(sample_poisson(*poisson, rng));
    if (n > kMaxExperimentPoints) throw CapError("point count above " + std::to_string(kMaxExperimentPoints));
    return sample_uniform_points(n, rng);
}

// Appends `--key value` for config entries the chosen subcommand (or the
// global flags) accept and the command line does not already set.
std::vector<std::string> merge_config(const CLI::App& app, std::vector<std::string> args)
{
    std::string path;
    const CLI::App* sub = nullptr;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
        else if (!sub && args[i].rfind("-", 0) != 0) {
            for (const auto* c : app.get_subcommands({})) {
                if (c->get_name() == args[i]) sub = c;
            }
        }
    }
    if (path.empty()) return args;
    for (const auto& [key, value] : load_config(path)) {
        if (key == "config") continue;
        const std::string flag = "--" + key;
        const bool known = (sub && sub->get_option_no_throw(flag)) || app.get_option_no_throw(flag);
        if (!known) continue;
        bool given = false;
        for (const auto& a : args) given = given || a == flag || a.rfind(flag + "=", 0) == 0;
        if (!given) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Partial match queries in random quadtrees and 2-d trees"};
    app.require_subcommand(1);
    app.fallthrough();
    app.get_formatter()->column_width(36);

    Globals g;
    app.add_option("--seed", g.seed, "base seed; replication r uses stream (seed, r)")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    app.add_option("--out", g.out, "output file, - for stdout")->capture_default_str();
    app.add_option("--format", g.format, "csv or plot (whitespace columns, '#' header)")
        ->check(CLI::IsMember({"csv", "plot"}))
        ->capture_default_str();
    app.add_option("--config", g.config, "key = value file; flags take precedence");

    auto* constantsCmd = app.add_subcommand("constants", "all derived constants as name,value");

    int maxOrder = 10;
    std::string family = "psi";
    auto* momentsCmd = app.add_subcommand("moments", "moments c_m of the marginal factor");
    momentsCmd->add_option("--max-order", maxOrder, "largest order, 1..60")->capture_default_str();
    momentsCmd->add_option("--family", family, "psi (quadtree) or xi-perp (2-d tree)")
        ->check(CLI::IsMember({"psi", "xi-perp"}))
        ->capture_default_str();

    int iters = 10;
    std::size_t operatorGrid = kDefaultOperatorGrid;
    auto* secondCmd = app.add_subcommand("second-moment", "m_n(s) = E[Z_n(s)^2] by operator iteration");
    secondCmd->add_option("--iters", iters, "n, 0..30")->capture_default_str();
    secondCmd->add_option("--grid", operatorGrid, "grid points, at least 64")->capture_default_str();

    std::size_t n = 1000;
    double s = 0.5;
    std::optional<double> poisson;
    std::string tree = "quad";
    std::string rootAxis = "v";
    std::size_t replications = 1;
    auto* costCmd = app.add_subcommand("simulate-cost", "partial match cost at x = s, one row per replication");
    costCmd->add_option("--n", n, "number of points")->capture_default_str();
    costCmd->add_option("--s", s, "query line")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    costCmd->add_option("--poisson", poisson, "Poisson(T) number of points instead of n");
    costCmd->add_option("--tree", tree, "quad or kd")->check(CLI::IsMember({"quad", "kd"}))->capture_default_str();
    costCmd->add_option("--root-axis", rootAxis, "kd root split: v (parallel) or h (perpendicular)")
        ->check(CLI::IsMember({"v", "h"}))
        ->capture_default_str();
    costCmd->add_option("--replications", replications, "number of replications")->capture_default_str();

    auto* profileCmd = app.add_subcommand("profile", "cost profile s -> C_n(s) as breakpoint,value");
    profileCmd->add_option("--n", n, "number of points")->capture_default_str();
    profileCmd->add_option("--tree", tree, "quad or kd")->check(CLI::IsMember({"quad", "kd"}))->capture_default_str();
    profileCmd->add_option("--root-axis", rootAxis, "kd root split: v or h")
        ->check(CLI::IsMember({"v", "h"}))
        ->capture_default_str();

    int depth = 10;
    std::size_t pathGrid = 1024;
    std::string variant = "quad";
    std::size_t limitReps = 0;
    auto* limitCmd = app.add_subcommand("simulate-limit", "approximant Z_n of the limit process");
    limitCmd->add_option("--depth", depth, "n, 0..24")->capture_default_str();
    limitCmd->add_option("--grid", pathGrid, "path grid points, at most 10000")->capture_default_str();
    limitCmd->add_option("--variant", variant, "quad or kd")->check(CLI::IsMember({"quad", "kd"}))->capture_default_str();
    limitCmd->add_option("--replications", limitReps, "independent environments at a single s (with --s)");
    limitCmd->add_option("--s", s, "position for --replications")->check(CLI::Range(0.0, 1.0));

    ExperimentSpec spec;
    std::string kind = "mean-profile";
    std::string flavor = "quad";
    std::size_t experimentGrid = 0;
    bool check = false;
    auto* expCmd = app.add_subcommand("experiment", "Monte Carlo experiment table");
    expCmd->add_option("--kind", kind,
                       "mean-profile | variance-uniform-query | supremum | limit-moments | coupling | kd-mean | poisson-mean")
        ->capture_default_str();
    expCmd->add_option("--n", spec.sizes, "sizes (depths for limit-moments)")->delimiter(',')->capture_default_str();
    expCmd->add_option("--t", spec.t, "Poisson intensity")->capture_default_str();
    expCmd->add_option("--eps", spec.eps, "coupling strip width")->capture_default_str();
    expCmd->add_option("--replications", spec.replications, "M")->capture_default_str();
    expCmd->add_option("--s", spec.s, "fixed query line")->capture_default_str();
    expCmd->add_option("--grid", experimentGrid, "mean-profile: evenly spaced s-values (default 21)");
    expCmd->add_option("--flavor", flavor, "quad | kd-parallel | kd-perp")->capture_default_str();
    expCmd->add_flag("--check", check, "compare against the limit law; exit 4 on failure");

    std::size_t diagReps = 1;
    auto* diagCmd = app.add_subcommand("diagnostics", "widest cell W_n and closest boundaries L_n");
    diagCmd->add_option("--depth", depth, "n, 0..12")->capture_default_str();
    diagCmd->add_option("--replications", diagReps, "number of environments")->capture_default_str();

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(app, std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }

    try {
        if (*constantsCmd) {
            write_named(constant_fields(constants()), g);
        } else if (*momentsCmd) {
            const auto m = family == "psi" ? psi_moments(maxOrder) : xi_perp_moments(maxOrder);
            Table t;
            t.columns = {"m", "c_m"};
            for (int k = 1; k <= m.maxOrder(); ++k) t.rows.push_back({static_cast<double>(k), m(k)});
            write_table(t, g);
        } else if (*secondCmd) {
            const auto m = second_moment_iterates(iters, uniform_grid(operatorGrid));
            Table t;
            t.columns = {"s", "m_n"};
            for (std::size_t i = 0; i < m.grid.size(); ++i) t.rows.push_back({m.grid[i], m.values[i]});
            write_table(t, g);
        } else if (*costCmd) {
            if (replications < 1) throw DomainError("replications must be at least 1");
            if (!poisson && n > kMaxExperimentPoints) throw CapError("n above " + std::to_string(kMaxExperimentPoints));
            if (poisson && !(*poisson >= 0.0)) throw DomainError("Poisson intensity must be nonnegative");
            if (poisson && *poisson > static_cast<double>(kMaxExperimentPoints)) throw CapError("Poisson intensity too large");
            const auto costs = parallel_map<double>(replications, g.threads, [&](std::size_t r) {
                RngStream rng(g.seed, r);
                const auto pts = draw_points(n, poisson, rng);
                if (tree == "kd") return static_cast<double>(kd_cost(KdTree::build(pts, parse_axis(rootAxis)), s));
                return static_cast<double>(cost(QuadTree::build(pts), s));
            });
            Table t;
            t.columns = {"replication", "cost"};
            t.meta = {meta_line(g)};
            for (std::size_t r = 0; r < costs.size(); ++r) t.rows.push_back({static_cast<double>(r), costs[r]});
            write_table(t, g);
        } else if (*profileCmd) {
            if (n > kMaxExperimentPoints) throw CapError("n above " + std::to_string(kMaxExperimentPoints));
            RngStream rng(g.seed, 0);
            const auto pts = sample_uniform_points(n, rng);
            const auto p = tree == "kd" ? kd_profile(KdTree::build(pts, parse_axis(rootAxis))) : profile(QuadTree::build(pts));
            Table t;
            t.columns = {"breakpoint", "value"};
            t.meta = {meta_line(g)};
            for (std::size_t i = 0; i < p.segments(); ++i) {
                t.rows.push_back({p.breakpoints()[i], static_cast<double>(p.values()[i])});
            }
            write_table(t, g);
        } else if (*limitCmd) {
            const auto v = variant == "kd" ? LimitVariant::Kd : LimitVariant::Quad;
            Table t;
            t.meta = {meta_line(g)};
            if (limitReps > 0) {
                if (limitCmd->count("--s") == 0) throw DomainError("--replications needs --s");
                const auto vals = parallel_map<double>(limitReps, g.threads, [&](std::size_t r) {
                    const LimitEnvironment env(g.seed, r);
                    return v == LimitVariant::Kd ? simulate_pointwise_2d(depth, s, env) : simulate_pointwise(depth, s, env);
                });
                t.columns = {"replication", "value"};
                for (std::size_t r = 0; r < vals.size(); ++r) t.rows.push_back({static_cast<double>(r), vals[r]});
            } else {
                if (pathGrid > kMaxPathGrid) throw CapError("grid above " + std::to_string(kMaxPathGrid));
                if (pathGrid < 2) throw DomainError("grid needs at least 2 points");
                const auto grid = uniform_grid(pathGrid);
                const auto z = simulate_path(depth, grid, LimitEnvironment(g.seed, 0), v);
                t.columns = {"s", "Z_n"};
                for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], z[i]});
            }
            write_table(t, g);
        } else if (*expCmd) {
            spec.kind = parse_experiment_kind(kind);
            spec.flavor = parse_tree_flavor(flavor);
            spec.seed = g.seed;
            spec.threads = g.threads;
            if (experimentGrid > 0) {
                if (experimentGrid < 2) throw DomainError("grid needs at least 2 points");
                if (experimentGrid > kMaxPathGrid) throw CapError("grid above " + std::to_string(kMaxPathGrid));
                spec.grid = uniform_grid(experimentGrid);
            }
            spec.validate();
            const auto t = run_experiment(spec);
            write_table(t, g);
            if (check) {
                const auto r = check_experiment(spec, t);
                std::cerr << (r.pass ? "check passed: " : "check FAILED: ") << r.message << '\n';
                if (!r.pass) return kExitCheck;
            }
        } else if (*diagCmd) {
            if (diagReps < 1) throw DomainError("replications must be at least 1");
            const auto d = parallel_map<Diagnostics>(diagReps, g.threads, [&](std::size_t r) {
                return diagnostics(depth, LimitEnvironment(g.seed, r));
            });
            Table t;
            t.columns = {"replication", "maxWidth", "minGap"};
            t.meta = {meta_line(g)};
            for (std::size_t r = 0; r < d.size(); ++r) t.rows.push_back({static_cast<double>(r), d[r].maxWidth, d[r].minGap});
            write_table(t, g);
        }
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitCap;
    } catch (const DomainError& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const GeneralPositionError& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}
