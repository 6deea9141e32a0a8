#pragma once

#include "smoothsched/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smoothsched {

/// Whether the optimum handed to the classifier is exact or only an upper
/// bound. Structural guarantees bind only for the exact optimum; with an
/// upper bound the checks are advisory.
enum class OptimumMode { exact, upper_bound };

std::string to_string(OptimumMode mode);

/// Machines grouped by how many multiples of the optimum their load reaches.
/// H_k is the longest prefix of machines (fastest first) whose loads all
/// reach k * optimum; R_k = H_k \ H_{k+1} for k < c and R_c = H_c.
struct Classification {
    int c = 0;
    double optimum = 0.0;
    OptimumMode mode = OptimumMode::exact;
    int machine_count = 0;
    /// prefix[k] = |H_k| for k = 0..c.
    std::vector<int> prefix;
    /// R_k index of every machine.
    std::vector<int> class_of;
    /// R_k members, k = 0..c.
    std::vector<std::vector<int>> members;

    /// |H_k| for any integer k; m for k <= 0, 0 for k > c + 1 beyond the
    /// recorded prefixes.
    int h_size(int k) const;
    bool in_h(int machine, int k) const { return machine < h_size(k); }
};

/// Loads within eps of a threshold count as reaching it, so
/// c = floor((C_max + eps) / optimum) - 1. Throws InvalidArgument when
/// optimum <= 0 or C_max is below optimum - eps.
Classification classify(const Instance& instance, const Schedule& schedule, double optimum,
                        OptimumMode mode = OptimumMode::exact, double eps = kDefaultEps);

/// Shortest prefix, in `job_order`, of the jobs on `machine` whose load
/// contribution reaches t * optimum. Throws PreconditionError when the
/// machine's load falls short.
std::vector<int> prefix_set(const Instance& instance, const Schedule& schedule, std::span<const int> job_order,
                            int machine, int t, double optimum, double eps = kDefaultEps);

struct StructureCheck {
    std::string name;
    bool pass = true;
    /// No instance of the statement applied (e.g. too few classes).
    bool vacuous = false;
    /// 1-based machine or job indices that violate the check.
    std::vector<int> witnesses;
    std::string detail;
};

struct StructureReport {
    Classification classification;
    std::vector<StructureCheck> checks;
    bool advisory = false;

    bool all_pass() const;
    const StructureCheck* find(const std::string& name) const;
};

/// Structural properties every near-list schedule satisfies relative to the
/// exact optimum:
///   top_machine_in_top_class      machine 1 lies in R_c
///   no_two_empty_classes          H_{k-2} \ H_k is non-empty for 1 <= k <= c-1
///   speeds_halve_every_four       machines in H_k are twice as fast as any outside H_{k-4}, k >= 5
///   speeds_double_every_six       s_{i1} >= s_{i2} 2^floor((k1-k2)/6) for i1 in R_k1, i2 in R_k2, k1 > k2
///   half_the_jobs_small           at least n/2 jobs have p_j <= p_max 2^(2 - c/6)
/// Given an optimal schedule, two more:
///   prefix_jobs_stay_high         jobs of J_{i,>=t}, i in H_k, run on H_{k-t-1} in the optimum
///   low_machines_get_small_jobs   the optimum puts only jobs with p_j <= p_max 2^(2 - c/6) outside H_2
/// Throws PreconditionError when `job_order` does not witness the near-list
/// property.
StructureReport validate_nl_structure(const Instance& instance, const Schedule& schedule,
                                      std::span<const int> job_order, double optimum,
                                      OptimumMode mode = OptimumMode::exact,
                                      const Schedule* optimal_schedule = nullptr, double eps = kDefaultEps);

} // namespace smoothsched
