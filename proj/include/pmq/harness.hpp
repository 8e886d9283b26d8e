#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <map>
#include <string>
#include <thread>
#include <vector>

namespace pmq {

struct SampleStats {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  ///< unbiased; 0 for a single sample
    double standardError = 0.0;
};

/// Compensated (Neumaier) sums in index order. Throws DomainError on empty input.
SampleStats aggregate(const std::vector<double>& samples);

/// Neumaier-compensated sum in index order.
double compensated_sum(const std::vector<double>& xs);

/// Approximate standard error of the sample variance, sqrt((m4 - s^4) / M).
double variance_standard_error(const std::vector<double>& samples);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> meta;  ///< written as '#' lines ahead of the data

    std::size_t column(const std::string& name) const;  ///< throws DomainError if absent
    double at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }
};

/// %.12g with '.' as decimal point regardless of locale.
std::string format_value(double v);

void write_csv(const Table& t, std::ostream& out);
void write_plot_data(const Table& t, std::ostream& out);
/// Throws std::runtime_error on I/O failure, DomainError on an empty table.
void emit_csv(const Table& t, const std::string& path);
void emit_plot_data(const Table& t, const std::string& path);

/// Reads CSV written by write_csv ('#' lines become meta).
Table parse_csv(std::istream& in);

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> load_config(const std::string& path);
std::map<std::string, std::string> parse_config(std::istream& in);

/// Calls fn(i) for i in [0, count) on up to `threads` workers and returns
/// the results in index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned threads, F fn)
{
    std::vector<T> out(count);
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count ? count : 1)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

enum class ExperimentKind { MeanProfile, VarianceUniformQuery, Supremum, LimitMoments, Coupling, KdMean, PoissonMean };
enum class TreeFlavor { Quad, KdParallel, KdPerp };

ExperimentKind parse_experiment_kind(const std::string& name);
std::string to_string(ExperimentKind kind);
TreeFlavor parse_tree_flavor(const std::string& name);
std::string to_string(TreeFlavor flavor);

inline constexpr std::size_t kMaxExperimentPoints = 10'000'000;
inline constexpr std::uint64_t kIndependentStreamOffset = std::uint64_t{1} << 40;

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::MeanProfile;
    std::vector<std::size_t> sizes{1000};  ///< n values; depths for limit-moments
    double t = 100.0;                      ///< Poisson intensity
    double eps = 0.1;                      ///< coupling strip width
    std::size_t replications = 100;
    std::vector<double> grid;              ///< mean-profile query lines; empty = 21 even points
    double s = 0.5;
    std::uint64_t seed = 1;
    TreeFlavor flavor = TreeFlavor::Quad;
    unsigned threads = 1;

    /// Throws DomainError / CapError.
    void validate() const;
};

/// Runs the experiment; replication r draws from stream (seed, r).
///
/// Output columns by kind:
///   mean-profile            n, s, meanCost, normalized, h, stdErr
///   variance-uniform-query  n, meanCost, meanSE, variance, varianceSE, normalizedVariance, K4
///   supremum                n, meanSup, normalized, stdErr, hMax
///   limit-moments           depth, s, mean, meanSE, second, secondSE, third, thirdSE, oracleSecond
///   coupling                t, eps, s, meanBase, meanExtended, extendedSE, violations, meanRescaled, rescaledSE
///   kd-mean                 n, meanCost, stdErr, predicted
///   poisson-mean            t, meanPoints, meanCost, stdErr, predicted
Table run_experiment(const ExperimentSpec& spec);

struct CheckResult {
    bool pass = false;
    std::string message;
};

/// Tolerance check of a finished experiment against its limit law.
CheckResult check_experiment(const ExperimentSpec& spec, const Table& table);

}  // namespace pmq
