#include "smoothsched/algorithms.hpp"

#include "smoothsched/errors.hpp"
#include "smoothsched/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace smoothsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// For one allowed set: per speed class, the two least-loaded machines.
struct ClassTargets {
    double speed = 0.0;
    double best_load = kInf;
    int best_machine = -1;
    double second_load = kInf;
    int second_machine = -1;

    void offer(double load, int machine) {
        if (load < best_load) {
            second_load = best_load;
            second_machine = best_machine;
            best_load = load;
            best_machine = machine;
        } else if (load < second_load) {
            second_load = load;
            second_machine = machine;
        }
    }
};

// Least-loaded eligible targets per (allowed set, speed class). Any job's best
// alternative within a speed class is that class's least-loaded machine other
// than its own, so one lookup per class replaces a scan over all machines.
class TargetIndex {
  public:
    TargetIndex(const Instance& instance, const Vector& loads)
        : instance_(instance), loads_(loads), class_of_(instance.machine_count()),
          per_set_(instance.allowed_sets().size()), built_(instance.allowed_sets().size(), false) {
        const auto& classes = instance.speed_classes();
        for (int c = 0; c < static_cast<int>(classes.size()); ++c)
            for (int i = classes[c].begin; i < classes[c].end; ++i) class_of_[i] = c;
    }

    // True if `job`, currently on `machine`, has a target where it finishes
    // before load_on_machine - eps.
    bool has_improvement(int job, int machine, double load_on_machine, double eps) {
        const int set = instance_.allowed_set_id(job);
        const auto& targets = build(set);
        const double p = instance_.requirement(job);
        for (const auto& t : targets) {
            const double base = t.best_machine == machine ? t.second_load : t.best_load;
            if (base == kInf) continue;
            if (base + p / t.speed < load_on_machine - eps) return true;
        }
        return false;
    }

  private:
    const std::vector<ClassTargets>& build(int set) {
        if (!built_[set]) {
            auto& targets = per_set_[set];
            int current = -1;
            instance_.allowed_sets()[set].for_each([&](int i) {
                if (class_of_[i] != current) {
                    current = class_of_[i];
                    targets.push_back({});
                    targets.back().speed = instance_.speed(i);
                }
                targets.back().offer(loads_[i], i);
            });
            built_[set] = true;
        }
        return per_set_[set];
    }

    const Instance& instance_;
    const Vector& loads_;
    std::vector<int> class_of_;
    std::vector<std::vector<ClassTargets>> per_set_;
    std::vector<bool> built_;
};

// Only the smallest job per (machine, allowed set) needs checking: a smaller
// requirement finishes earlier on every target.
bool has_improving_job(const Instance& instance, const std::vector<int>& assignment, const Vector& loads,
                       const std::vector<bool>& source_machine, double eps) {
    const std::size_t sets = instance.allowed_sets().size();
    std::unordered_map<std::size_t, int> smallest;
    for (int j = 0; j < instance.job_count(); ++j) {
        const int i = assignment[j];
        if (!source_machine[i]) continue;
        const std::size_t key = static_cast<std::size_t>(i) * sets + instance.allowed_set_id(j);
        auto [it, inserted] = smallest.emplace(key, j);
        if (!inserted && instance.requirement(j) < instance.requirement(it->second)) it->second = j;
    }
    TargetIndex index(instance, loads);
    for (const auto& [key, j] : smallest) {
        const int i = assignment[j];
        if (index.has_improvement(j, i, loads[i], eps)) return true;
    }
    return false;
}

Vector working_loads(const Instance& instance, const std::vector<int>& assignment) {
    Vector requirement = Vector::Zero(instance.machine_count());
    for (int j = 0; j < instance.job_count(); ++j) requirement[assignment[j]] += instance.requirement(j);
    return requirement.cwiseQuotient(instance.speeds());
}

std::optional<Move> select_move(const Instance& instance, const std::vector<int>& assignment, const Vector& loads,
                                Neighborhood neighborhood, const PivotRule& pivot, double eps) {
    const double cmax = loads.size() ? loads.maxCoeff() : 0.0;
    std::optional<Move> chosen;
    std::vector<Move> candidates;
    for (int j = 0; j < instance.job_count(); ++j) {
        const int from = assignment[j];
        if (neighborhood == Neighborhood::jump && loads[from] < cmax - eps) continue;
        const double p = instance.requirement(j);
        bool stop = false;
        instance.allowed(j).for_each([&](int to) {
            if (stop || to == from) return;
            const double gain = loads[from] - (loads[to] + p / instance.speed(to));
            if (!(gain > eps)) return;
            const Move move{j, from, to, gain};
            switch (pivot.kind) {
            case PivotKind::first:
                chosen = move;
                stop = true;
                break;
            case PivotKind::max_gain:
                if (!chosen || gain > chosen->gain) chosen = move;
                break;
            case PivotKind::min_gain:
                if (!chosen || gain < chosen->gain) chosen = move;
                break;
            case PivotKind::random:
                candidates.push_back(move);
                break;
            }
        });
        if (stop) break;
    }
    if (pivot.kind == PivotKind::random && !candidates.empty()) {
        Stream stream(pivot.seed);
        chosen = candidates[stream.next_below(candidates.size())];
    }
    return chosen;
}

} // namespace

PivotRule PivotRule::parse(std::string_view text, std::uint64_t seed) {
    if (text == "first") return {PivotKind::first, seed};
    if (text == "max-gain") return {PivotKind::max_gain, seed};
    if (text == "min-gain") return {PivotKind::min_gain, seed};
    if (text == "random") return {PivotKind::random, seed};
    throw InvalidArgument("unknown pivot rule: " + std::string(text));
}

std::string to_string(Neighborhood neighborhood) {
    return neighborhood == Neighborhood::jump ? "jump" : "lex-jump";
}

std::string to_string(const PivotRule& pivot) {
    switch (pivot.kind) {
    case PivotKind::first: return "first";
    case PivotKind::max_gain: return "max-gain";
    case PivotKind::min_gain: return "min-gain";
    case PivotKind::random: return "random";
    }
    return "unknown";
}

Neighborhood parse_neighborhood(std::string_view text) {
    if (text == "jump") return Neighborhood::jump;
    if (text == "lex-jump" || text == "lex") return Neighborhood::lex_jump;
    throw InvalidArgument("unknown neighborhood: " + std::string(text));
}

ScheduleBuilder::ScheduleBuilder(const Instance& instance)
    : instance_(&instance), assignment_(instance.job_count(), -1), loads_(Vector::Zero(instance.machine_count())) {}

void ScheduleBuilder::assign(int job, int machine) {
    if (job < 0 || job >= instance_->job_count()) throw InvalidArgument("job index out of range");
    if (assigned(job)) throw InvalidArgument("job already assigned");
    if (!instance_->eligible(job, machine)) throw InvalidArgument("machine not eligible for job");
    assignment_[job] = machine;
    loads_[machine] += instance_->requirement(job) / instance_->speed(machine);
}

int ScheduleBuilder::list_place(int job, const MachineSet* filter, double eps) {
    const double p = instance_->requirement(job);
    int best = -1;
    double best_completion = kInf;
    auto offer = [&](int i) {
        const double completion = loads_[i] + p / instance_->speed(i);
        if (best < 0 || completion < best_completion - eps) {
            best = i;
            best_completion = completion;
        }
    };
    if (filter) {
        filter->for_each([&](int i) {
            if (instance_->eligible(job, i)) offer(i);
        });
    } else {
        instance_->allowed(job).for_each(offer);
    }
    if (best < 0) throw Infeasible("job " + std::to_string(job + 1) + " has no eligible machine");
    assign(job, best);
    return best;
}

Schedule ScheduleBuilder::finish() const {
    for (int a : assignment_)
        if (a < 0) throw PreconditionError("schedule is incomplete");
    return Schedule(assignment_);
}

void require_permutation(std::span<const int> order, int n) {
    if (static_cast<int>(order.size()) != n) throw InvalidArgument("job order must list every job exactly once");
    std::vector<bool> seen(n, false);
    for (int j : order) {
        if (j < 0 || j >= n || seen[j]) throw InvalidArgument("job order is not a permutation");
        seen[j] = true;
    }
}

Schedule list_schedule(const Instance& instance, std::span<const int> order, const MachineSet* machine_filter,
                       double eps) {
    require_permutation(order, instance.job_count());
    ScheduleBuilder builder(instance);
    for (int j : order) builder.list_place(j, machine_filter, eps);
    return builder.finish();
}

std::vector<int> lpt_order(const Instance& instance, std::span<const int> jobs) {
    std::vector<int> order(jobs.begin(), jobs.end());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double pa = instance.requirement(a), pb = instance.requirement(b);
        return pa > pb || (pa == pb && a < b);
    });
    return order;
}

std::vector<int> lpt_order(const Instance& instance) {
    std::vector<int> all(instance.job_count());
    std::iota(all.begin(), all.end(), 0);
    return lpt_order(instance, all);
}

Schedule lpt_schedule(const Instance& instance, const MachineSet* machine_filter, double eps) {
    const auto order = lpt_order(instance);
    return list_schedule(instance, order, machine_filter, eps);
}

std::optional<Move> find_improving_move(const Instance& instance, const Schedule& schedule,
                                        Neighborhood neighborhood, const PivotRule& pivot, double eps) {
    require_feasible(instance, schedule);
    return select_move(instance, schedule.assignment(), working_loads(instance, schedule.assignment()),
                       neighborhood, pivot, eps);
}

LocalSearchResult local_search(const Instance& instance, const Schedule& start, Neighborhood neighborhood,
                               const PivotRule& pivot, double eps) {
    require_feasible(instance, start);
    LocalSearchResult result;
    std::vector<int> assignment = start.assignment();
    Vector current = working_loads(instance, assignment);
    result.sorted_load_trace.push_back(sorted_loads(current));
    for (;;) {
        PivotRule step_pivot = pivot;
        if (pivot.kind == PivotKind::random)
            step_pivot.seed = derive_key(pivot.seed, static_cast<std::uint64_t>(result.steps));
        const auto move = select_move(instance, assignment, current, neighborhood, step_pivot, eps);
        if (!move) break;
        assignment[move->job] = move->to;
        const double p = instance.requirement(move->job);
        current[move->from] -= p / instance.speed(move->from);
        current[move->to] += p / instance.speed(move->to);
        auto sorted = sorted_loads(current);
        const auto& previous = result.sorted_load_trace.back();
        if (!std::lexicographical_compare(sorted.begin(), sorted.end(), previous.begin(), previous.end()))
            throw std::logic_error("local search move did not decrease the sorted load vector");
        result.sorted_load_trace.push_back(std::move(sorted));
        result.moves.push_back(*move);
        ++result.steps;
    }
    result.schedule = Schedule(std::move(assignment));
    return result;
}

bool is_jump_optimal(const Instance& instance, const Schedule& schedule, double eps) {
    const Vector current = loads(instance, schedule);
    std::vector<bool> critical(instance.machine_count(), false);
    for (int i : critical_machines(current, eps)) critical[i] = true;
    return !has_improving_job(instance, schedule.assignment(), current, critical, eps);
}

bool is_lex_jump_optimal(const Instance& instance, const Schedule& schedule, double eps) {
    const Vector current = loads(instance, schedule);
    std::vector<bool> every(instance.machine_count(), true);
    return !has_improving_job(instance, schedule.assignment(), current, every, eps);
}

bool is_locally_optimal(const Instance& instance, const Schedule& schedule, Neighborhood neighborhood, double eps) {
    return neighborhood == Neighborhood::jump ? is_jump_optimal(instance, schedule, eps)
                                              : is_lex_jump_optimal(instance, schedule, eps);
}

bool is_near_list(const Instance& instance, const Schedule& schedule, std::span<const int> job_order, double eps) {
    require_permutation(job_order, instance.job_count());
    const Vector current = loads(instance, schedule);
    // Walk each machine's jobs by their position in job_order, accumulating
    // the load contributed by jobs with a smaller index.
    std::vector<double> before(instance.machine_count(), 0.0);
    for (int j : job_order) {
        const int i = schedule.machine_of(j);
        const double threshold = current[i] - before[i];
        const double p = instance.requirement(j);
        bool ok = true;
        instance.allowed(j).for_each([&](int target) {
            if (!ok || target == i) return;
            if (current[target] + p / instance.speed(target) < threshold - eps) ok = false;
        });
        if (!ok) return false;
        before[i] += p / instance.speed(i);
    }
    return true;
}

std::optional<std::vector<int>> find_near_list_order(const Instance& instance, const Schedule& schedule, int limit,
                                                     double eps) {
    const int n = instance.job_count();
    if (n > limit) throw InvalidArgument("near-list order search is limited to " + std::to_string(limit) + " jobs");
    require_feasible(instance, schedule);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
        if (is_near_list(instance, schedule, order, eps)) return order;
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

} // namespace smoothsched
