#pragma once

#include "smoothsched/model.hpp"
#include "smoothsched/recurrence.hpp"
#include "smoothsched/smoothing.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace smoothsched {

/// Strict mode rejects parameters below the thresholds under which the
/// family's guarantees are proven; lenient mode accepts them and records
/// each unmet premise as a warning.
enum class ParameterMode { strict, lenient };

/// Generators refuse to materialize more jobs or machines than this.
inline constexpr double kDefaultSizeCap = 5e6;

struct NamedRange {
    std::string name;
    int begin = 0;
    int end = 0;
};

struct EventFlag {
    std::string name;
    bool holds = false;
    double value = 0.0;
    double threshold = 0.0;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    /// Guaranteed only when every event flag holds.
    bool conditional = false;
    std::string detail;
};

struct ConstructionSample {
    explicit ConstructionSample(Instance sampled) : instance(std::move(sampled)) {}

    Instance instance;
    Schedule bad;
    Schedule good;
    std::vector<EventFlag> events;
    std::vector<CheckResult> checks;
    double bad_makespan = 0.0;
    double good_makespan = 0.0;
    /// Proven upper bound on the optimum used by the ratio guarantee.
    double reference_makespan = 0.0;
    /// Lower bound on bad_makespan / reference_makespan when events hold.
    double predicted_ratio = 0.0;
    /// Job order whose list schedule is `bad`, when the family defines one.
    std::vector<int> list_order;

    bool event_holds() const;
    /// Unconditional checks pass, and conditional ones too when events hold.
    bool checks_pass() const;
    const CheckResult* find_check(const std::string& name) const;
};

/// Densities shared by a contiguous block of jobs.
struct DensityBlock {
    NamedRange jobs;
    DensitySpec density;
};

struct ConstructionInfo {
    std::string family;
    ParameterMode mode = ParameterMode::strict;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<NamedRange> machine_classes;
    std::vector<NamedRange> job_classes;
    std::vector<std::string> warnings;
    Vector speeds;
    int job_count = 0;
};

class Construction {
  public:
    virtual ~Construction() = default;

    const ConstructionInfo& info() const { return info_; }

    /// The smoothed instance the samples are drawn from, one density per job.
    SmoothedInstanceSpec spec() const;

    /// Requirement vector for `seed`; equal to sample_requirements(spec(), seed).
    Vector sample_requirements(std::uint64_t seed) const;

    virtual ConstructionSample sample(std::uint64_t seed) const = 0;

  protected:
    virtual std::optional<std::vector<MachineSet>> allowed_sets() const { return std::nullopt; }

    ConstructionInfo info_;
    std::vector<DensityBlock> blocks_;
};

/// Related machines: one fast machine and n - 1 unit machines with n = ceil(4 phi^2 + 1).
/// The bad schedule is jump optimal with makespan above (phi - 1) times an
/// upper bound on the optimum whenever the small jobs sum to at least s_1.
std::unique_ptr<Construction> build_jump_related_lb(double phi, ParameterMode mode = ParameterMode::strict,
                                                    double size_cap = kDefaultSizeCap);

/// Related machines in classes of speed 2^k, r = floor(log4 phi). The bad
/// schedule is both a list schedule and lex-jump optimal for every sample.
std::unique_ptr<Construction> build_lexlist_lb(double phi, ParameterMode mode = ParameterMode::strict,
                                               double size_cap = kDefaultSizeCap);

/// Restricted related machines in three speed classes with two job classes.
std::unique_ptr<Construction> build_restricted_jump_lb(int m, double s_max, int z,
                                                       ParameterMode mode = ParameterMode::strict,
                                                       double size_cap = kDefaultSizeCap);

/// Restricted identical machines in classes sized by recurrence_a(k).
/// Throws ResourceLimit when the machine or job count exceeds `size_cap`.
std::unique_ptr<Construction> build_restricted_lex_lb(int k, ParameterMode mode = ParameterMode::strict,
                                                      double size_cap = kDefaultSizeCap);

struct ConstructionParams {
    double phi = 0.0;
    int m = 0;
    double s_max = 0.0;
    int z = 0;
    int k = 0;
    ParameterMode mode = ParameterMode::strict;
    double size_cap = kDefaultSizeCap;
};

/// Dispatch by family name: jump-related, lexlist, restricted-jump, restricted-lex.
std::unique_ptr<Construction> make_construction(const std::string& family, const ConstructionParams& params);

std::string to_string(ParameterMode mode);

} // namespace smoothsched
