#pragma once

#include "smoothsched/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smoothsched {

enum class Neighborhood { jump, lex_jump };

enum class PivotKind { first, max_gain, min_gain, random };

/// Selection rule among improving moves. `first` scans jobs by index and,
/// per job, targets by machine index.
struct PivotRule {
    PivotKind kind = PivotKind::first;
    std::uint64_t seed = 0;

    static PivotRule parse(std::string_view text, std::uint64_t seed = 0);
};

std::string to_string(Neighborhood neighborhood);
std::string to_string(const PivotRule& pivot);
Neighborhood parse_neighborhood(std::string_view text);

struct Move {
    int job = -1;
    int from = -1;
    int to = -1;
    double gain = 0.0;  ///< L_from - (L_to + p_job / s_to)
};

/// Partial schedule with incrementally maintained loads; the working state
/// of list scheduling and of the construction procedures.
class ScheduleBuilder {
  public:
    explicit ScheduleBuilder(const Instance& instance);

    void assign(int job, int machine);

    /// Places `job` on the eligible machine (restricted to `filter` when
    /// given) where it completes earliest. Ties within `eps` go to the lowest
    /// machine index. Returns the chosen machine.
    int list_place(int job, const MachineSet* filter = nullptr, double eps = kDefaultEps);

    bool assigned(int job) const { return assignment_[job] >= 0; }
    const Vector& loads() const { return loads_; }
    double load(int machine) const { return loads_[machine]; }
    const std::vector<int>& assignment() const { return assignment_; }

    /// Throws PreconditionError if some job is still unassigned.
    Schedule finish() const;

  private:
    const Instance* instance_;
    std::vector<int> assignment_;
    Vector loads_;
};

/// Greedy list scheduling in the given job order.
Schedule list_schedule(const Instance& instance, std::span<const int> order,
                       const MachineSet* machine_filter = nullptr, double eps = kDefaultEps);

/// Jobs sorted by non-increasing requirement, ties by ascending index.
std::vector<int> lpt_order(const Instance& instance, std::span<const int> jobs);
std::vector<int> lpt_order(const Instance& instance);

Schedule lpt_schedule(const Instance& instance, const MachineSet* machine_filter = nullptr,
                      double eps = kDefaultEps);

std::optional<Move> find_improving_move(const Instance& instance, const Schedule& schedule,
                                        Neighborhood neighborhood, const PivotRule& pivot = {},
                                        double eps = kDefaultEps);

struct LocalSearchResult {
    Schedule schedule;
    int steps = 0;
    std::vector<Move> moves;
    /// Sorted load vector before the first move and after every move.
    std::vector<std::vector<double>> sorted_load_trace;
};

/// Applies improving moves until none exists. Every accepted move must
/// strictly decrease the sorted load vector lexicographically; a violation
/// throws std::logic_error.
LocalSearchResult local_search(const Instance& instance, const Schedule& start, Neighborhood neighborhood,
                               const PivotRule& pivot = {}, double eps = kDefaultEps);

/// No job on a critical machine can finish strictly earlier elsewhere.
bool is_jump_optimal(const Instance& instance, const Schedule& schedule, double eps = kDefaultEps);

/// No job anywhere can finish strictly earlier elsewhere (pure Nash equilibrium).
bool is_lex_jump_optimal(const Instance& instance, const Schedule& schedule, double eps = kDefaultEps);

bool is_locally_optimal(const Instance& instance, const Schedule& schedule, Neighborhood neighborhood,
                        double eps = kDefaultEps);

/// Near-list inequality under the indexing given by `job_order`
/// (`job_order[0]` receives index 1). Targets range over the job's allowed
/// machines.
bool is_near_list(const Instance& instance, const Schedule& schedule, std::span<const int> job_order,
                  double eps = kDefaultEps);

/// Exhaustive search over job orders; throws InvalidArgument when n > limit.
std::optional<std::vector<int>> find_near_list_order(const Instance& instance, const Schedule& schedule,
                                                     int limit = 8, double eps = kDefaultEps);

/// Throws InvalidArgument unless `order` is a permutation of 0..n-1.
void require_permutation(std::span<const int> order, int n);

} // namespace smoothsched
