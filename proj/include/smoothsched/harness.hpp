#pragma once

#include "smoothsched/algorithms.hpp"
#include "smoothsched/constructions.hpp"
#include "smoothsched/oracle.hpp"
#include "smoothsched/smoothing.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace smoothsched {

enum class EstimateMethod { exact, multistart };

std::string to_string(EstimateMethod method);
EstimateMethod parse_method(const std::string& text);

struct EstimateOptions {
    Neighborhood neighborhood = Neighborhood::jump;
    EstimateMethod method = EstimateMethod::exact;
    /// Multistart only: random starting schedules per trial and the pivot rule.
    int starts = 16;
    PivotKind pivot = PivotKind::first;
    int trials = 100;
    std::uint64_t seed = 0;
    double delta = 0.05;
    double budget = kDefaultBudget;
    double eps = kDefaultEps;
    /// 0 means hardware concurrency, capped by SMOOTHSCHED_THREADS.
    int threads = 0;
};

/// Worst local optimum over the optimum for `trials` instances sampled from
/// `spec`. Trial t samples with key derive_key(seed, t), so results do not
/// depend on the number of workers.
///
/// Exact mode enumerates every local optimum and throws BudgetExceeded when
/// an instance is too large. Multistart mode runs local search from random
/// schedules and keeps the worst local optimum found, which can only
/// under-estimate the worst; it divides by the exact optimum when the budget
/// allows and by makespan_lower_bound otherwise. Both cases are flagged.
RatioEstimate estimate_smoothed_ratio(const SmoothedInstanceSpec& spec, const EstimateOptions& options);

/// Ratio of one instance under the estimator's method, exposed for paired
/// comparisons. `optimum_is_lower_bound` reports the fallback.
double trial_ratio(const Instance& instance, const EstimateOptions& options, std::uint64_t trial_key,
                   bool* optimum_is_lower_bound = nullptr);

/// Interval width used for the confidence interval: the worst-case ratio
/// bound minus 1 (jump bounds dominate lex-jump ones).
double ratio_range(const SmoothedInstanceSpec& spec);

/// Density families for generated smoothed instances.
///   low   p_j uniform on [0, 1/phi]
///   high  p_j uniform on [1 - 1/phi, 1]
///   spread  p_j uniform on [o_j, o_j + 1/phi], offsets o_j evenly spaced over [0, 1 - 1/phi]
/// Ratios are scale invariant, so "low" gives the same ratios for every phi;
/// "spread" is the family whose shape changes with phi.
/// Speeds are m, m-1, ..., 1.
SmoothedInstanceSpec make_smoothed_spec(int n, int m, double phi, const std::string& family);

/// Number of workers for `tasks` independent tasks.
int worker_count(int requested, int tasks);

struct SmoothedGrid {
    std::vector<double> phis;
    int n = 6;
    int m = 6;
    std::string family = "spread";
    EstimateOptions options;
};

struct ConstructionGrid {
    std::string family;
    /// One row per value; it sets phi, m, or k depending on the family.
    std::vector<double> values;
    ConstructionParams params;
    int samples = 20;
    std::uint64_t seed = 0;
    double delta = 0.05;
};

/// CSV columns, fixed:
///   kind,family,neighborhood,method,param,phi,n,m,trials,mean_ratio,ci_low,ci_high,
///   theory_bound,predicted_ratio,event_frequency,estimate_kind
/// Smoothed rows bound the mean by 5.1 phi + 2.5 (jump) or 18 log2 phi + 30
/// (lex-jump, phi raised to 2). Construction rows report bad over reference
/// makespan with an interval from the observed ratio range, the predicted
/// lower bound, and the event frequency. Empty cells stand for "not
/// applicable". Floating values use 12 significant digits.
std::string csv_header();
std::string sweep_smoothed_csv(const SmoothedGrid& grid);
std::string sweep_construction_csv(const ConstructionGrid& grid);

/// 12 significant digits, shortest form.
std::string format_number(double value);

} // namespace smoothsched
