#pragma once

#include "smoothsched/algorithms.hpp"
#include "smoothsched/model.hpp"

#include <cstdint>
#include <vector>

namespace smoothsched {

inline constexpr double kDefaultBudget = 1e7;

/// Number of feasible assignments, prod_j |M_j|, as a double (saturates at inf).
double assignment_space(const Instance& instance);

/// Throws BudgetExceeded when assignment_space(instance) > budget.
void require_budget(const Instance& instance, double budget);

struct OptimalSchedule {
    double makespan = 0.0;
    Schedule schedule;
};

/// Exact optimum by depth-first branch-and-bound (largest jobs first, LPT
/// incumbent). The returned makespan is recomputed with `makespan()`, so it is
/// bit-identical to the minimum found by plain enumeration.
OptimalSchedule optimal_makespan_exact(const Instance& instance, double budget = kDefaultBudget);

/// Exact optimum by visiting every feasible assignment. Reference for the
/// branch-and-bound solver.
OptimalSchedule optimal_makespan_enumerate(const Instance& instance, double budget = kDefaultBudget);

/// max(Q / sum_i s_i, max_j min_{i in M_j} p_j / s_i).
double makespan_lower_bound(const Instance& instance);

struct WorstLocalOptimum {
    double ratio = 1.0;
    Schedule witness;
    double worst_makespan = 0.0;
    double optimum = 0.0;
    std::uint64_t local_optima = 0;
};

/// Enumerates every feasible assignment, keeps the locally optimal ones, and
/// returns the largest makespan over the exact optimum.
WorstLocalOptimum worst_local_optimum_exact(const Instance& instance, Neighborhood neighborhood,
                                            double budget = kDefaultBudget, double eps = kDefaultEps);

/// Every local optimum of the given neighborhood, in odometer order.
std::vector<Schedule> enumerate_local_optima(const Instance& instance, Neighborhood neighborhood,
                                             double budget = kDefaultBudget, double eps = kDefaultEps);

struct ListScheduleWitness {
    Schedule schedule;
    std::vector<int> order;  ///< a job order for which list_schedule produces `schedule`
};

/// All distinct schedules that list scheduling can produce over the n! job
/// orders. Partial states reached by several orders are expanded once;
/// `budget` caps the number of expanded states.
std::vector<ListScheduleWitness> enumerate_list_schedules(const Instance& instance, double budget = kDefaultBudget,
                                                          double eps = kDefaultEps);

/// (1 + sqrt(4 min(m, n) - 3)) / 2, worst jump optimum on related machines.
double cho_sahni_bound(int m, int n);

/// 1/2 + sqrt((m - 1) s_max + 1/4) with s_min = 1, worst jump optimum on
/// restricted related machines.
double restricted_jump_bound(int m, double s_max);

/// 1 + (n - 1) / Q. Requires every p_j <= 1.
double jump_quality_bound(const Instance& instance);

/// 5.1 phi + 2.5, expected worst jump ratio on phi-smooth related instances.
double jump_smoothed_bound(double phi);

/// (32 phi / 2^(alpha/6))^(n/2) clamped to [0, 1]; tail of the worst near-list
/// ratio. Requires phi >= 2.
double nl_tail_bound(double phi, double alpha, int n);

/// 18 log2(phi) + 30. Requires phi >= 2.
double nl_expectation_bound(double phi);

} // namespace smoothsched
