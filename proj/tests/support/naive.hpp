#pragma once

// Deliberately simple reference implementations used as test oracles. They
// recompute everything from the raw instance data on every call.

#include "smoothsched/model.hpp"
#include "smoothsched/rng.hpp"

#include <functional>
#include <vector>

namespace naive {

using smoothsched::Instance;

std::vector<double> loads(const Instance& inst, const std::vector<int>& assignment);
double makespan(const Instance& inst, const std::vector<int>& assignment);

/// Calls f on every feasible assignment (first job varies slowest).
void for_each_assignment(const Instance& inst, const std::function<void(const std::vector<int>&)>& f);

/// A job on a critical machine can finish strictly earlier elsewhere.
bool jump_optimal(const Instance& inst, const std::vector<int>& assignment, double eps = 1e-9);

/// Some job anywhere can finish strictly earlier elsewhere.
bool lex_jump_optimal(const Instance& inst, const std::vector<int>& assignment, double eps = 1e-9);

/// For every job j on machine i and every other allowed machine k:
/// L_k + p_j / s_k >= (sum of p_l / s_i over jobs l on i indexed at or after j) - eps.
bool near_list(const Instance& inst, const std::vector<int>& assignment, const std::vector<int>& order,
               double eps = 1e-9);

/// Earliest completion, lowest index on ties within eps.
std::vector<int> list_schedule(const Instance& inst, const std::vector<int>& order, double eps = 1e-9);

double optimum(const Instance& inst);

struct Worst {
    double worst = 0.0;
    double optimum = 0.0;
    int local_optima = 0;
};

Worst worst_local(const Instance& inst, bool lex, double eps = 1e-9);

/// Sorted-load vectors, a strictly lexicographically smaller than b.
bool lex_smaller(const std::vector<double>& a, const std::vector<double>& b);

struct RandomShape {
    int n_min = 1, n_max = 7;
    int m_min = 1, m_max = 3;
    double speed_low = 1.0, speed_high = 4.0;
    bool restricted = false;
};

Instance random_instance(smoothsched::Stream& stream, const RandomShape& shape);

} // namespace naive
