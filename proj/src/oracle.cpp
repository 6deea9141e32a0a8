#include "smoothsched/oracle.hpp"

#include "smoothsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

namespace smoothsched {

namespace {

// Per-machine requirement sums accumulated in job-index order, one row per
// depth, so that every leaf reproduces loads() bit for bit.
class Odometer {
  public:
    explicit Odometer(const Instance& instance)
        : instance_(instance), n_(instance.job_count()), m_(instance.machine_count()),
          sums_(static_cast<std::size_t>(n_ + 1) * m_, 0.0), assignment_(n_, -1), loads_(m_) {}

    template <class Visit>
    void run(Visit&& visit) {
        descend(0, visit);
    }

  private:
    template <class Visit>
    void descend(int j, Visit& visit) {
        const double* row = &sums_[static_cast<std::size_t>(j) * m_];
        if (j == n_) {
            for (int i = 0; i < m_; ++i) loads_[i] = row[i] / instance_.speed(i);
            visit(assignment_, loads_);
            return;
        }
        double* next = &sums_[static_cast<std::size_t>(j + 1) * m_];
        const double p = instance_.requirement(j);
        instance_.allowed(j).for_each([&](int i) {
            std::copy(row, row + m_, next);
            next[i] += p;
            assignment_[j] = i;
            descend(j + 1, visit);
        });
    }

    const Instance& instance_;
    int n_, m_;
    std::vector<double> sums_;
    std::vector<int> assignment_;
    Vector loads_;
};

// All-pairs local optimality test on precomputed loads.
bool locally_optimal(const Instance& instance, const std::vector<int>& assignment, const Vector& loads,
                     Neighborhood neighborhood, double eps) {
    const double cmax = loads.maxCoeff();
    for (int j = 0; j < instance.job_count(); ++j) {
        const int from = assignment[j];
        if (neighborhood == Neighborhood::jump && loads[from] < cmax - eps) continue;
        const double p = instance.requirement(j);
        bool improving = false;
        instance.allowed(j).for_each([&](int to) {
            if (!improving && to != from && loads[to] + p / instance.speed(to) < loads[from] - eps) improving = true;
        });
        if (improving) return false;
    }
    return true;
}

double canonical_makespan(const Instance& instance, const std::vector<int>& assignment) {
    Vector requirement = Vector::Zero(instance.machine_count());
    for (int j = 0; j < instance.job_count(); ++j) requirement[assignment[j]] += instance.requirement(j);
    return requirement.cwiseQuotient(instance.speeds()).maxCoeff();
}

class BranchAndBound {
  public:
    BranchAndBound(const Instance& instance, double global_lb)
        : instance_(instance), n_(instance.job_count()), m_(instance.machine_count()), global_lb_(global_lb),
          order_(lpt_order(instance)), loads_(static_cast<std::size_t>(n_ + 1) * m_, 0.0),
          counts_(static_cast<std::size_t>(n_ + 1) * m_, 0), assignment_(n_, -1),
          class_start_(m_) {
        for (const auto& c : instance.speed_classes())
            for (int i = c.begin; i < c.end; ++i) class_start_[i] = c.begin;
    }

    void solve(double incumbent, std::vector<int> incumbent_assignment) {
        best_ = incumbent;
        best_assignment_ = std::move(incumbent_assignment);
        descend(0, 0.0);
    }

    double best() const { return best_; }
    const std::vector<int>& best_assignment() const { return best_assignment_; }

  private:
    bool worth_exploring(double lb) const { return !(lb > best_ * (1.0 + 1e-12)); }

    void descend(int depth, double partial_max) {
        if (depth == n_) {
            const double value = canonical_makespan(instance_, assignment_);
            if (value < best_) {
                best_ = value;
                best_assignment_ = assignment_;
            }
            return;
        }
        const double* row = &loads_[static_cast<std::size_t>(depth) * m_];
        const int* count = &counts_[static_cast<std::size_t>(depth) * m_];
        const int j = order_[depth];
        const double p = instance_.requirement(j);

        double next_job_lb = std::numeric_limits<double>::infinity();
        instance_.allowed(j).for_each([&](int i) { next_job_lb = std::min(next_job_lb, row[i] + p / instance_.speed(i)); });
        if (!worth_exploring(std::max({partial_max, global_lb_, next_job_lb}))) return;

        double* next = &loads_[static_cast<std::size_t>(depth + 1) * m_];
        int* next_count = &counts_[static_cast<std::size_t>(depth + 1) * m_];
        instance_.allowed(j).for_each([&](int i) {
            // Empty machines of equal speed are interchangeable without allowed sets.
            if (!instance_.restricted() && count[i] == 0 && i > class_start_[i] && count[i - 1] == 0) return;
            const double value = row[i] + p / instance_.speed(i);
            const double new_max = std::max(partial_max, value);
            if (!worth_exploring(std::max(new_max, global_lb_))) return;
            std::copy(row, row + m_, next);
            std::copy(count, count + m_, next_count);
            next[i] = value;
            ++next_count[i];
            assignment_[j] = i;
            descend(depth + 1, new_max);
        });
        assignment_[j] = -1;
    }

    const Instance& instance_;
    int n_, m_;
    double global_lb_;
    std::vector<int> order_;
    std::vector<double> loads_;
    std::vector<int> counts_;
    std::vector<int> assignment_;
    std::vector<int> class_start_;
    double best_ = 0.0;
    std::vector<int> best_assignment_;
};

} // namespace

double assignment_space(const Instance& instance) {
    double total = 1.0;
    for (int j = 0; j < instance.job_count(); ++j) total *= static_cast<double>(instance.allowed(j).size());
    return total;
}

void require_budget(const Instance& instance, double budget) {
    const double space = assignment_space(instance);
    if (space > budget)
        throw BudgetExceeded("assignment space " + std::to_string(space) + " exceeds budget " + std::to_string(budget));
}

OptimalSchedule optimal_makespan_exact(const Instance& instance, double budget) {
    require_budget(instance, budget);
    const Schedule lpt = lpt_schedule(instance);
    BranchAndBound search(instance, makespan_lower_bound(instance));
    search.solve(makespan(instance, lpt), lpt.assignment());
    return {search.best(), Schedule(search.best_assignment())};
}

OptimalSchedule optimal_makespan_enumerate(const Instance& instance, double budget) {
    require_budget(instance, budget);
    OptimalSchedule best{std::numeric_limits<double>::infinity(), {}};
    Odometer(instance).run([&](const std::vector<int>& assignment, const Vector& loads) {
        const double value = loads.maxCoeff();
        if (value < best.makespan) best = {value, Schedule(assignment)};
    });
    return best;
}

double makespan_lower_bound(const Instance& instance) {
    double bound = instance.total_requirement() / instance.total_speed();
    for (int j = 0; j < instance.job_count(); ++j) {
        // allowed sets are sorted by index, so the first is the fastest
        const int fastest = instance.allowed(j).front();
        bound = std::max(bound, instance.requirement(j) / instance.speed(fastest));
    }
    return bound;
}

WorstLocalOptimum worst_local_optimum_exact(const Instance& instance, Neighborhood neighborhood, double budget,
                                            double eps) {
    require_budget(instance, budget);
    WorstLocalOptimum result;
    result.optimum = std::numeric_limits<double>::infinity();
    result.worst_makespan = -1.0;
    Odometer(instance).run([&](const std::vector<int>& assignment, const Vector& loads) {
        const double value = loads.maxCoeff();
        result.optimum = std::min(result.optimum, value);
        if (!locally_optimal(instance, assignment, loads, neighborhood, eps)) return;
        ++result.local_optima;
        if (value > result.worst_makespan) {
            result.worst_makespan = value;
            result.witness = Schedule(assignment);
        }
    });
    if (result.local_optima == 0) throw Infeasible("no locally optimal assignment found");
    result.ratio = result.optimum > 0.0 ? result.worst_makespan / result.optimum : 1.0;
    return result;
}

std::vector<Schedule> enumerate_local_optima(const Instance& instance, Neighborhood neighborhood, double budget,
                                             double eps) {
    require_budget(instance, budget);
    std::vector<Schedule> out;
    Odometer(instance).run([&](const std::vector<int>& assignment, const Vector& loads) {
        if (locally_optimal(instance, assignment, loads, neighborhood, eps)) out.emplace_back(assignment);
    });
    return out;
}

std::vector<ListScheduleWitness> enumerate_list_schedules(const Instance& instance, double budget, double eps) {
    const int n = instance.job_count();
    std::vector<ListScheduleWitness> out;
    std::unordered_set<std::string> expanded;
    std::unordered_set<std::string> finished;
    std::vector<int> order;
    order.reserve(n);

    auto key_of = [](const std::vector<int>& assignment) {
        return std::string(reinterpret_cast<const char*>(assignment.data()), assignment.size() * sizeof(int));
    };

    auto visit = [&](auto& self, const ScheduleBuilder& builder) -> void {
        if (static_cast<int>(order.size()) == n) {
            Schedule schedule = list_schedule(instance, order, nullptr, eps);
            if (finished.insert(key_of(schedule.assignment())).second) out.push_back({std::move(schedule), order});
            return;
        }
        if (!expanded.insert(key_of(builder.assignment())).second) return;
        if (static_cast<double>(expanded.size()) > budget)
            throw BudgetExceeded("list schedule enumeration exceeds budget " + std::to_string(budget));
        for (int j = 0; j < n; ++j) {
            if (builder.assigned(j)) continue;
            ScheduleBuilder next = builder;
            next.list_place(j, nullptr, eps);
            order.push_back(j);
            self(self, next);
            order.pop_back();
        }
    };
    visit(visit, ScheduleBuilder(instance));
    return out;
}

double cho_sahni_bound(int m, int n) {
    if (m < 1 || n < 1) throw InvalidArgument("machine and job counts must be positive");
    return (1.0 + std::sqrt(4.0 * std::min(m, n) - 3.0)) / 2.0;
}

double restricted_jump_bound(int m, double s_max) {
    if (m < 1 || !(s_max >= 1.0)) throw InvalidArgument("need m >= 1 and s_max >= 1");
    return 0.5 + std::sqrt((m - 1) * s_max + 0.25);
}

double jump_quality_bound(const Instance& instance) {
    const int n = instance.job_count();
    if (n == 0) throw InvalidArgument("bound is undefined without jobs");
    if (instance.jobs().maxCoeff() > 1.0) throw InvalidArgument("bound requires processing requirements at most 1");
    return 1.0 + (n - 1) / instance.total_requirement();
}

double jump_smoothed_bound(double phi) {
    if (!(phi >= 1.0)) throw InvalidArgument("phi must be at least 1");
    return 5.1 * phi + 2.5;
}

double nl_tail_bound(double phi, double alpha, int n) {
    if (!(phi >= 2.0)) throw InvalidArgument("phi must be at least 2");
    if (!(alpha > 0.0) || n < 1) throw InvalidArgument("need alpha > 0 and n >= 1");
    const double base = 32.0 * phi / std::exp2(alpha / 6.0);
    return std::clamp(std::pow(base, n / 2.0), 0.0, 1.0);
}

double nl_expectation_bound(double phi) {
    if (!(phi >= 2.0)) throw InvalidArgument("phi must be at least 2");
    return 18.0 * std::log2(phi) + 30.0;
}

} // namespace smoothsched
