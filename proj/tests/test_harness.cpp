#include "doctest.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pmq/errors.hpp"
#include "pmq/harness.hpp"
#include "pmq/limitproc.hpp"
#include "pmq/moments.hpp"
#include "pmq/rng.hpp"
#include "pmq/specfun.hpp"

using namespace pmq;

namespace {

std::string csv_of(const Table& t)
{
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("pmq_test_" + name);
}

}  // namespace

TEST_CASE("aggregate")
{
    const auto one = aggregate({5.0});
    CHECK(one.count == 1);
    CHECK(one.mean == 5.0);
    CHECK(one.variance == 0.0);

    const auto three = aggregate({1.0, 2.0, 3.0});
    CHECK(three.mean == 2.0);
    CHECK(three.variance == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(three.standardError == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));

    const std::vector<double> tenths(1000000, 0.1);
    CHECK(std::abs(aggregate(tenths).mean - 0.1) < 1e-12);
    CHECK(std::abs(compensated_sum(tenths) - 100000.0) < 1e-9);

    CHECK_THROWS_AS(aggregate({}), DomainError);
}

TEST_CASE("compensated sum survives cancellation")
{
    CHECK(compensated_sum({1.0, 1e100, 1.0, -1e100}) == 2.0);
    // naive float accumulation drifts; extended precision is the reference
    std::vector<double> xs;
    long double ref = 0.0L;
    RngStream rng(3, 0);
    for (int i = 0; i < 100000; ++i) {
        xs.push_back((rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.uniform() * 12)));
        ref += xs.back();
    }
    CHECK(std::abs(compensated_sum(xs) - static_cast<double>(ref)) <= 1e-15 * std::abs(static_cast<double>(ref)) + 1e-9);
}

TEST_CASE("variance standard error")
{
    std::vector<double> xs;
    RngStream rng(8, 8);
    for (int i = 0; i < 200000; ++i) xs.push_back(rng.uniform());
    // uniform: central m4 = 1/80, variance 1/12
    CHECK(variance_standard_error(xs) == doctest::Approx(std::sqrt((1.0 / 80 - 1.0 / 144) / 200000)).epsilon(0.02));
}

TEST_CASE("csv layout")
{
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{1.5, 2.0}};
    CHECK(csv_of(t) == "a,b\n1.5,2\n");

    t.meta = {"seed=1"};
    t.rows.push_back({1.0 / 3.0, -1e-20});
    CHECK(csv_of(t) == "# seed=1\na,b\n1.5,2\n0.333333333333,-1e-20\n");

    std::ostringstream plot;
    write_plot_data(t, plot);
    CHECK(plot.str() == "# seed=1\n# a b\n1.5 2\n0.333333333333 -1e-20\n");

    CHECK(format_value(std::nan("")) == "nan");
    CHECK(format_value(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("csv round trip")
{
    Table t;
    t.columns = {"x", "y", "z"};
    t.meta = {"generator=test"};
    RngStream rng(1, 2);
    for (int i = 0; i < 50; ++i) t.rows.push_back({rng.uniform(), (rng.uniform() - 0.5) * 1e6, std::exp(-40 * rng.uniform())});
    const auto path = temp_path("roundtrip.csv");
    emit_csv(t, path.string());
    std::ifstream in(path);
    const auto back = parse_csv(in);
    std::filesystem::remove(path);
    REQUIRE(back.columns == t.columns);
    CHECK(back.meta == t.meta);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(back.rows[r][c] - t.rows[r][c]) <= 5e-12 * std::abs(t.rows[r][c]));
    }
    CHECK(back.at(3, "y") == back.rows[3][1]);
    CHECK_THROWS_AS(back.column("w"), DomainError);
}

TEST_CASE("emit errors")
{
    Table empty;
    empty.columns = {"a"};
    CHECK_THROWS_AS(emit_csv(empty, temp_path("empty.csv").string()), DomainError);
    Table t;
    t.columns = {"a"};
    t.rows = {{1.0}};
    CHECK_THROWS_AS(emit_csv(t, "/nonexistent-dir/x.csv"), std::runtime_error);
    CHECK_THROWS_AS(emit_plot_data(t, "/nonexistent-dir/x.dat"), std::runtime_error);
}

TEST_CASE("config")
{
    std::istringstream in("# defaults\nseed = 42\n\n  threads=3  \nout = a b.csv\n");
    const auto cfg = parse_config(in);
    CHECK(cfg.size() == 3);
    CHECK(cfg.at("seed") == "42");
    CHECK(cfg.at("threads") == "3");
    CHECK(cfg.at("out") == "a b.csv");
    std::istringstream bad("seed 42\n");
    CHECK_THROWS_AS(parse_config(bad), DomainError);
    CHECK_THROWS_AS(load_config("/nonexistent-dir/cfg"), std::runtime_error);
}

TEST_CASE("parallel_map")
{
    auto f = [](std::size_t i) {
        RngStream rng(11, i);
        return rng.uniform();
    };
    const auto a = parallel_map<double>(1001, 1, f);
    const auto b = parallel_map<double>(1001, 4, f);
    CHECK(a == b);
    CHECK(parallel_map<double>(0, 4, f).empty());

    std::atomic<int> calls{0};
    CHECK_THROWS_AS(parallel_map<int>(100, 3,
                                      [&](std::size_t i) {
                                          ++calls;
                                          if (i == 57) throw CapError("boom");
                                          return 0;
                                      }),
                    CapError);
}

TEST_CASE("null experiment: replication streams are uncorrelated")
{
    const std::size_t m = 20000;
    const auto xs = parallel_map<double>(m, 2, [](std::size_t r) {
        RngStream rng(99, r);
        return rng.uniform();
    });
    const auto st = aggregate(xs);
    double c = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) c += (xs[i] - st.mean) * (xs[i + 1] - st.mean);
    c /= (m - 1) * st.variance;
    CHECK(std::abs(c) < 4.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("names and validation")
{
    for (auto k : {ExperimentKind::MeanProfile, ExperimentKind::VarianceUniformQuery, ExperimentKind::Supremum,
                   ExperimentKind::LimitMoments, ExperimentKind::Coupling, ExperimentKind::KdMean, ExperimentKind::PoissonMean}) {
        CHECK(parse_experiment_kind(to_string(k)) == k);
    }
    for (auto f : {TreeFlavor::Quad, TreeFlavor::KdParallel, TreeFlavor::KdPerp}) CHECK(parse_tree_flavor(to_string(f)) == f);
    CHECK_THROWS_AS(parse_experiment_kind("mean"), DomainError);
    CHECK_THROWS_AS(parse_tree_flavor("oct"), DomainError);

    ExperimentSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.replications = 0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec.replications = 10;
    spec.sizes = {kMaxExperimentPoints + 1};
    CHECK_THROWS_AS(spec.validate(), CapError);
    spec.sizes = {100};
    spec.grid = {0.5, 1.5};
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec.grid.clear();
    spec.kind = ExperimentKind::LimitMoments;
    spec.sizes = {25};
    CHECK_THROWS_AS(spec.validate(), CapError);
    spec.kind = ExperimentKind::Coupling;
    spec.eps = -0.1;
    CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_CASE("mean profile experiment")
{
    ExperimentSpec spec;
    spec.kind = ExperimentKind::MeanProfile;
    spec.sizes = {2000};
    spec.replications = 200;
    spec.seed = 5;
    const auto t = run_experiment(spec);
    REQUIRE(t.rows.size() == 21);
    CHECK(t.columns == std::vector<std::string>{"n", "s", "meanCost", "normalized", "h", "stdErr"});
    CHECK(t.meta.at(0).find("generator=philox4x32-10") != std::string::npos);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(t.at(r, "h") == doctest::Approx(h(t.at(r, "s"))).epsilon(1e-15));
        CHECK(t.at(r, "meanCost") >= 1.0);
    }
    const auto check = check_experiment(spec, t);
    CHECK_MESSAGE(check.pass, check.message);
}

TEST_CASE("output is independent of the thread count")
{
    for (auto kind : {ExperimentKind::MeanProfile, ExperimentKind::Supremum, ExperimentKind::LimitMoments,
                      ExperimentKind::Coupling, ExperimentKind::KdMean, ExperimentKind::PoissonMean,
                      ExperimentKind::VarianceUniformQuery}) {
        ExperimentSpec spec;
        spec.kind = kind;
        spec.sizes = kind == ExperimentKind::LimitMoments ? std::vector<std::size_t>{4} : std::vector<std::size_t>{300};
        spec.t = 200.0;
        spec.replications = 40;
        spec.seed = 17;
        spec.threads = 1;
        const auto one = csv_of(run_experiment(spec));
        spec.threads = 3;
        const auto three = csv_of(run_experiment(spec));
        CHECK_MESSAGE(one == three, to_string(kind));
        CHECK(one.find("threads") == std::string::npos);
    }
}

TEST_CASE("limit path emitted as plot data")
{
    const auto grid = uniform_grid(1024);
    const auto z = simulate_path(14, grid, LimitEnvironment(1, 0));
    Table t;
    t.columns = {"s", "Z_n"};
    for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], z[i]});
    std::istringstream in(csv_of(t));
    const auto back = parse_csv(in);
    REQUIRE(back.rows.size() == 1024);
    double mx = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
        const double v = back.at(i, "Z_n");
        CHECK(v >= 0.0);
        CHECK(v <= 3.0);
        mx = std::max(mx, v);
        sum += v;
    }
    CHECK(mx > sum / 1024);
    std::ostringstream plot;
    write_plot_data(t, plot);
    CHECK(plot.str().rfind("# s Z_n\n0 0\n", 0) == 0);
}
