#include "smoothsched/harness.hpp"

#include "smoothsched/errors.hpp"
#include "smoothsched/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace smoothsched {

namespace {

// Runs task(i) for i in [0, count) on a small pool. Each task writes only its
// own output slot, so the merge order is the index order regardless of
// scheduling. The first exception is rethrown after all workers stop.
template <class Task>
void parallel_for(int count, int requested_threads, Task&& task) {
    const int workers = worker_count(requested_threads, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count && !failed; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed = true;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

Schedule random_schedule(const Instance& instance, std::uint64_t key) {
    Stream stream(key);
    std::vector<int> assignment(instance.job_count());
    for (int j = 0; j < instance.job_count(); ++j) {
        const auto choices = instance.allowed(j).indices();
        assignment[j] = choices[stream.next_below(choices.size())];
    }
    return Schedule(std::move(assignment));
}

std::string estimate_kind(const RatioEstimate& estimate) {
    std::string out = estimate.worst_is_lower_bound ? "multistart-lower" : "exact";
    if (estimate.optimum_is_lower_bound) out += "+optimum-lower-bound";
    return out;
}

} // namespace

std::string to_string(EstimateMethod method) { return method == EstimateMethod::exact ? "exact" : "multistart"; }

EstimateMethod parse_method(const std::string& text) {
    if (text == "exact") return EstimateMethod::exact;
    if (text == "multistart") return EstimateMethod::multistart;
    throw InvalidArgument("unknown estimation method '" + text + "'");
}

int worker_count(int requested, int tasks) {
    int workers = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("SMOOTHSCHED_THREADS")) {
        const int limit = std::atoi(cap);
        if (limit > 0) workers = std::min(workers, limit);
    }
    return std::max(1, std::min(workers, tasks));
}

double ratio_range(const SmoothedInstanceSpec& spec) {
    const int m = spec.machine_count();
    const int n = spec.job_count();
    if (spec.allowed) return restricted_jump_bound(m, spec.speeds[0] / spec.speeds[m - 1]) - 1.0;
    if (n == 0) return 0.0;
    return cho_sahni_bound(m, n) - 1.0;
}

double trial_ratio(const Instance& instance, const EstimateOptions& options, std::uint64_t trial_key,
                   bool* optimum_is_lower_bound) {
    if (optimum_is_lower_bound) *optimum_is_lower_bound = false;
    if (options.method == EstimateMethod::exact)
        return worst_local_optimum_exact(instance, options.neighborhood, options.budget, options.eps).ratio;

    double worst = 0.0;
    for (int s = 0; s < options.starts; ++s) {
        const std::uint64_t start_key = derive_key(trial_key, static_cast<std::uint64_t>(s));
        const PivotRule pivot{options.pivot, derive_key(start_key, 1)};
        const auto result = local_search(instance, random_schedule(instance, start_key), options.neighborhood,
                                         pivot, options.eps);
        worst = std::max(worst, makespan(instance, result.schedule));
    }
    if (assignment_space(instance) <= options.budget) return worst / optimal_makespan_exact(instance, options.budget).makespan;
    if (optimum_is_lower_bound) *optimum_is_lower_bound = true;
    return worst / makespan_lower_bound(instance);
}

RatioEstimate estimate_smoothed_ratio(const SmoothedInstanceSpec& spec, const EstimateOptions& options) {
    spec.validate();
    if (options.trials < 1) throw InvalidArgument("trials must be at least 1");
    if (!(options.delta > 0.0 && options.delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    if (options.method == EstimateMethod::multistart && options.starts < 1)
        throw InvalidArgument("multistart needs at least one start");

    std::vector<double> ratios(options.trials);
    std::vector<char> fallback(options.trials, 0);
    parallel_for(options.trials, options.threads, [&](int t) {
        const std::uint64_t key = derive_key(options.seed, static_cast<std::uint64_t>(t));
        const Instance instance = sample_instance(spec, key);
        bool lower = false;
        ratios[t] = trial_ratio(instance, options, key, &lower);
        fallback[t] = lower;
    });

    RatioEstimate out = summarize_ratios(std::move(ratios), ratio_range(spec), options.delta);
    out.worst_is_lower_bound = options.method == EstimateMethod::multistart;
    out.optimum_is_lower_bound = std::any_of(fallback.begin(), fallback.end(), [](char c) { return c != 0; });
    return out;
}

SmoothedInstanceSpec make_smoothed_spec(int n, int m, double phi, const std::string& family) {
    if (n < 1 || m < 1) throw InvalidArgument("n and m must be positive");
    if (!(phi >= 1.0)) throw InvalidArgument("phi must be at least 1");
    SmoothedInstanceSpec spec;
    spec.speeds.resize(m);
    for (int i = 0; i < m; ++i) spec.speeds[i] = m - i;
    const double width = 1.0 / phi;
    for (int j = 0; j < n; ++j) {
        if (family == "low") {
            spec.densities.push_back(uniform_spec(0.0, width, 1.0, phi));
        } else if (family == "high") {
            spec.densities.push_back(uniform_spec(1.0 - width, 1.0, 1.0, phi));
        } else if (family == "spread") {
            const double offset = n > 1 ? (1.0 - width) * j / (n - 1) : 0.0;
            spec.densities.push_back(uniform_spec(offset, std::min(1.0, offset + width), 1.0, phi));
        } else {
            throw InvalidArgument("unknown density family '" + family + "' (expected low, high or spread)");
        }
    }
    spec.validate();
    return spec;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out << std::setprecision(12) << value;
    return out.str();
}

std::string csv_header() {
    return "kind,family,neighborhood,method,param,phi,n,m,trials,mean_ratio,ci_low,ci_high,"
           "theory_bound,predicted_ratio,event_frequency,estimate_kind\n";
}

std::string sweep_smoothed_csv(const SmoothedGrid& grid) {
    std::string out = csv_header();
    for (double phi : grid.phis) {
        const auto spec = make_smoothed_spec(grid.n, grid.m, phi, grid.family);
        const auto estimate = estimate_smoothed_ratio(spec, grid.options);
        const double bound = grid.options.neighborhood == Neighborhood::jump
                                 ? jump_smoothed_bound(phi)
                                 : nl_expectation_bound(std::max(phi, 2.0));
        out += "smoothed," + grid.family + "," + to_string(grid.options.neighborhood) + "," +
               to_string(grid.options.method) + "," + format_number(phi) + "," + format_number(phi) + "," +
               std::to_string(grid.n) + "," + std::to_string(grid.m) + "," + std::to_string(grid.options.trials) +
               "," + format_number(estimate.mean) + "," + format_number(estimate.ci_low) + "," +
               format_number(estimate.ci_high) + "," + format_number(bound) + ",,," + estimate_kind(estimate) + "\n";
    }
    return out;
}

std::string sweep_construction_csv(const ConstructionGrid& grid) {
    if (grid.samples < 1) throw InvalidArgument("samples must be at least 1");
    std::string out = csv_header();
    for (double value : grid.values) {
        ConstructionParams params = grid.params;
        if (grid.family == "jump-related" || grid.family == "lexlist")
            params.phi = value;
        else if (grid.family == "restricted-jump")
            params.m = static_cast<int>(value);
        else if (grid.family == "restricted-lex")
            params.k = static_cast<int>(value);
        else
            throw InvalidArgument("unknown construction family '" + grid.family + "'");
        const auto construction = make_construction(grid.family, params);

        std::vector<double> ratios(grid.samples);
        std::vector<char> events(grid.samples, 0);
        std::vector<double> predicted(grid.samples);
        parallel_for(grid.samples, 0, [&](int s) {
            const auto sample = construction->sample(derive_key(grid.seed, static_cast<std::uint64_t>(s)));
            ratios[s] = sample.bad_makespan / sample.reference_makespan;
            events[s] = sample.event_holds();
            predicted[s] = sample.predicted_ratio;
        });
        const auto [low, high] = std::minmax_element(ratios.begin(), ratios.end());
        const auto estimate = summarize_ratios(ratios, *high - *low, grid.delta);
        const double frequency =
            static_cast<double>(std::count(events.begin(), events.end(), 1)) / static_cast<double>(grid.samples);

        const auto& info = construction->info();
        const double phi = construction->spec().phi();
        std::string bound;
        if (grid.family == "jump-related") bound = format_number(jump_smoothed_bound(phi));
        if (grid.family == "lexlist") bound = format_number(nl_expectation_bound(phi));
        out += "construction," + grid.family + ",,," + format_number(value) + "," + format_number(phi) + "," +
               std::to_string(info.job_count) + "," + std::to_string(info.speeds.size()) + "," +
               std::to_string(grid.samples) + "," + format_number(estimate.mean) + "," +
               format_number(estimate.ci_low) + "," + format_number(estimate.ci_high) + "," + bound + "," +
               format_number(predicted.front()) + "," + format_number(frequency) + ",bad-over-reference\n";
    }
    return out;
}

} // namespace smoothsched
