#pragma once

#include "smoothsched/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace smoothsched {

/// Constant height `h` on [a, b).
struct DensityPiece {
    double a = 0.0;
    double b = 0.0;
    double h = 0.0;
};

/// Piecewise-constant density on [0, scale] whose height never exceeds
/// phi / scale.
struct DensitySpec {
    std::vector<DensityPiece> pieces;
    double phi = 1.0;
    double scale = 1.0;

    /// Throws InvalidArgument on overlapping pieces, negative heights, mass
    /// differing from 1 by more than 1e-9, support outside [0, scale], or a
    /// height above phi / scale.
    void validate() const;

    double mean() const;
    double support_low() const;
    double support_high() const;

    /// Inverse CDF at u in (0, 1). The result is strictly positive and lies in
    /// a piece with positive height.
    double quantile(double u) const;
};

/// Uniform density on [a, b). With `phi` unset, the smallest admissible value
/// scale / (b - a) is used.
DensitySpec uniform_spec(double a, double b, double scale = 1.0, std::optional<double> phi = std::nullopt);

/// Deterministic speeds and allowed sets plus one density per job.
struct SmoothedInstanceSpec {
    Vector speeds;
    std::optional<std::vector<MachineSet>> allowed;
    std::vector<DensitySpec> densities;

    int job_count() const { return static_cast<int>(densities.size()); }
    int machine_count() const { return static_cast<int>(speeds.size()); }
    double phi() const;

    void validate() const;
};

/// Draws p_j from densities[j] with the stream keyed by (seed, j).
Instance sample_instance(const SmoothedInstanceSpec& spec, std::uint64_t seed);

/// Requirement vector only; same draws as sample_instance.
Vector sample_requirements(const SmoothedInstanceSpec& spec, std::uint64_t seed);

/// exp(-2 t^2 / sum_j (b_j - a_j)^2), one-sided deviation bound for a sum of
/// independent variables X_j in [a_j, b_j].
double hoeffding_tail(std::span<const std::pair<double, double>> ranges, double t);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// mean +- range * sqrt(ln(2/delta) / (2 count)).
Interval hoeffding_ci(std::span<const double> samples, double range, double delta);

double hoeffding_half_width(std::size_t count, double range, double delta);

struct RatioEstimate {
    std::size_t count = 0;
    std::vector<double> ratios;
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double delta = 0.05;
    /// Width of the interval the ratios are known to lie in; drives the CI.
    double range = 0.0;
    /// True when ratios are lower estimates of the quantity (multistart search
    /// instead of exhaustive enumeration).
    bool worst_is_lower_bound = false;
    /// True when some ratio was divided by a lower bound on the optimum
    /// rather than the optimum itself.
    bool optimum_is_lower_bound = false;
};

/// Builds the estimate and its interval from per-sample ratios.
RatioEstimate summarize_ratios(std::vector<double> ratios, double range, double delta);

/// Fraction of trials in which n i.i.d. uniform [0, 1/phi] draws sum to at
/// most (n - sqrt(n ln n)) / (2 phi).
double check_sum_lower_tail(int n, double phi, int trials, std::uint64_t seed);

} // namespace smoothsched
