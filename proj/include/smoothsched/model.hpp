#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace smoothsched {

/// Absolute tolerance for load comparisons. A move or choice counts as an
/// improvement only when it is better by more than this amount.
inline constexpr double kDefaultEps = 1e-9;

using Vector = Eigen::VectorXd;

/// Half-open run of consecutive machine indices.
struct MachineRange {
    int begin = 0;
    int end = 0;

    friend bool operator==(const MachineRange&, const MachineRange&) = default;
    friend auto operator<=>(const MachineRange&, const MachineRange&) = default;
};

/// A set of machine indices stored as sorted, disjoint, non-adjacent runs.
///
/// Constructions assign allowed sets that are unions of whole machine classes,
/// so the run encoding keeps memory linear in the number of classes rather
/// than the number of machines.
class MachineSet {
  public:
    MachineSet() = default;

    static MachineSet from_indices(std::vector<int> indices);
    static MachineSet range(int begin, int end);
    static MachineSet from_ranges(std::vector<MachineRange> ranges);

    bool contains(int machine) const;
    bool empty() const { return ranges_.empty(); }
    std::size_t size() const;
    int front() const { return ranges_.front().begin; }
    int back() const { return ranges_.back().end - 1; }
    std::span<const MachineRange> ranges() const { return ranges_; }
    std::vector<int> indices() const;

    template <class F>
    void for_each(F&& f) const {
        for (const auto& r : ranges_)
            for (int i = r.begin; i < r.end; ++i) f(i);
    }

    friend bool operator==(const MachineSet&, const MachineSet&) = default;

  private:
    std::vector<MachineRange> ranges_;
};

/// Machine speeds (non-increasing), job processing requirements, and
/// optional per-job allowed machine sets. Indices are 0-based.
class Instance {
  public:
    /// Unrestricted related machines.
    Instance(Vector speeds, Vector jobs);

    /// Restricted machines, one allowed set per job.
    Instance(Vector speeds, Vector jobs, std::vector<MachineSet> allowed);

    /// Restricted machines with shared allowed sets: job j may run on
    /// `pool[set_of_job[j]]`.
    Instance(Vector speeds, Vector jobs, std::vector<MachineSet> pool, std::vector<int> set_of_job);

    int machine_count() const { return static_cast<int>(speeds_.size()); }
    int job_count() const { return static_cast<int>(jobs_.size()); }

    const Vector& speeds() const { return speeds_; }
    const Vector& jobs() const { return jobs_; }
    double speed(int machine) const { return speeds_[machine]; }
    double requirement(int job) const { return jobs_[job]; }

    bool restricted() const { return !set_of_job_.empty(); }
    bool normalized() const { return normalized_; }

    bool eligible(int job, int machine) const;

    /// Allowed set of `job`; the full machine set when unrestricted.
    const MachineSet& allowed(int job) const;

    /// Identifier of the job's allowed set in `allowed_sets()`; always 0 when unrestricted.
    int allowed_set_id(int job) const { return set_of_job_.empty() ? 0 : set_of_job_[job]; }
    std::span<const MachineSet> allowed_sets() const { return pool_; }

    /// Maximal runs of machines with equal speed, in index order.
    const std::vector<MachineRange>& speed_classes() const { return speed_classes_; }

    double total_requirement() const { return jobs_.sum(); }
    double total_speed() const { return speeds_.sum(); }

    friend Instance normalize(const Instance& instance);

  private:
    void validate();

    Vector speeds_;
    Vector jobs_;
    std::vector<MachineSet> pool_;
    std::vector<int> set_of_job_;
    std::vector<MachineRange> speed_classes_;
    bool normalized_ = false;
};

/// Total job-to-machine assignment.
class Schedule {
  public:
    Schedule() = default;
    explicit Schedule(std::vector<int> assignment) : assignment_(std::move(assignment)) {}

    int machine_of(int job) const { return assignment_[job]; }
    int job_count() const { return static_cast<int>(assignment_.size()); }
    const std::vector<int>& assignment() const { return assignment_; }

    /// J_i for every machine, jobs in increasing index order.
    std::vector<std::vector<int>> jobs_by_machine(int machine_count) const;

    friend bool operator==(const Schedule&, const Schedule&) = default;

  private:
    std::vector<int> assignment_;
};

struct ScheduleReport {
    bool ok = true;
    bool wrong_length = false;
    std::vector<int> out_of_range_jobs;
    std::vector<int> disallowed_jobs;

    std::string message() const;
};

ScheduleReport validate_schedule(const Instance& instance, const Schedule& schedule);

/// Throws InvalidArgument unless the schedule is total and feasible.
void require_feasible(const Instance& instance, const Schedule& schedule);

/// Vector of machine loads L_i = sum_{j in J_i} p_j / s_i.
Vector loads(const Instance& instance, const Schedule& schedule);

double load(const Instance& instance, const Schedule& schedule, int machine);

double makespan(const Instance& instance, const Schedule& schedule);

/// Machines whose load is within `eps` of the maximum.
std::vector<int> critical_machines(const Vector& loads, double eps = kDefaultEps);

/// Loads sorted non-increasingly; the order used by the lex-jump potential.
std::vector<double> sorted_loads(const Vector& loads);

/// Scales speeds by 1/s_min and requirements by 1/p_max.
Instance normalize(const Instance& instance);

} // namespace smoothsched
