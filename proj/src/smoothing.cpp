#include "smoothsched/smoothing.hpp"

#include "smoothsched/errors.hpp"
#include "smoothsched/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smoothsched {

namespace {

constexpr double kMassTolerance = 1e-9;

std::vector<DensityPiece> sorted_pieces(const std::vector<DensityPiece>& pieces) {
    auto out = pieces;
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    return out;
}

} // namespace

void DensitySpec::validate() const {
    if (!(scale > 0.0)) throw InvalidArgument("density scale must be positive");
    if (!(phi >= 1.0)) throw InvalidArgument("phi must be at least 1");
    if (pieces.empty()) throw InvalidArgument("density needs at least one piece");
    const auto sorted = sorted_pieces(pieces);
    double mass = 0.0;
    double highest = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const auto& piece = sorted[k];
        if (!(piece.a >= 0.0 && piece.b <= scale && piece.a < piece.b))
            throw InvalidArgument("density piece must satisfy 0 <= a < b <= scale");
        if (!(piece.h >= 0.0)) throw InvalidArgument("density heights must be non-negative");
        if (k > 0 && piece.a < sorted[k - 1].b) throw InvalidArgument("density pieces overlap");
        mass += (piece.b - piece.a) * piece.h;
        highest = std::max(highest, piece.h);
    }
    if (std::abs(mass - 1.0) > kMassTolerance) throw InvalidArgument("density must integrate to 1");
    const double cap = phi / scale;
    if (highest > cap * (1.0 + 1e-12)) throw InvalidArgument("density height exceeds phi / scale");
}

double DensitySpec::mean() const {
    double total = 0.0;
    for (const auto& piece : pieces) total += piece.h * (piece.b * piece.b - piece.a * piece.a) / 2.0;
    return total;
}

double DensitySpec::support_low() const {
    double low = scale;
    for (const auto& piece : pieces)
        if (piece.h > 0.0) low = std::min(low, piece.a);
    return low;
}

double DensitySpec::support_high() const {
    double high = 0.0;
    for (const auto& piece : pieces)
        if (piece.h > 0.0) high = std::max(high, piece.b);
    return high;
}

double DensitySpec::quantile(double u) const {
    const auto sorted = sorted_pieces(pieces);
    double total = 0.0;
    for (const auto& piece : sorted) total += (piece.b - piece.a) * piece.h;
    const double target = u * total;
    double below = 0.0;
    const DensityPiece* last = nullptr;
    for (const auto& piece : sorted) {
        if (piece.h <= 0.0) continue;
        last = &piece;
        const double mass = (piece.b - piece.a) * piece.h;
        if (target < below + mass) {
            double x = piece.a + (target - below) / piece.h;
            if (x >= piece.b) x = std::nextafter(piece.b, piece.a);
            if (x < piece.a) x = piece.a;
            if (x <= 0.0) x = std::nextafter(0.0, 1.0);
            return x;
        }
        below += mass;
    }
    // rounding left target at the very top of the mass
    return std::nextafter(last->b, last->a);
}

DensitySpec uniform_spec(double a, double b, double scale, std::optional<double> phi) {
    if (!(scale > 0.0)) throw InvalidArgument("density scale must be positive");
    if (!(a >= 0.0 && a < b && b <= scale)) throw InvalidArgument("uniform density needs 0 <= a < b <= scale");
    DensitySpec spec;
    spec.pieces = {{a, b, 1.0 / (b - a)}};
    spec.scale = scale;
    spec.phi = phi.value_or(scale / (b - a));
    spec.validate();
    return spec;
}

double SmoothedInstanceSpec::phi() const {
    double out = 1.0;
    for (const auto& d : densities) out = std::max(out, d.phi);
    return out;
}

void SmoothedInstanceSpec::validate() const {
    if (speeds.size() == 0) throw InvalidArgument("spec needs at least one machine");
    for (Eigen::Index i = 0; i < speeds.size(); ++i) {
        if (!(speeds[i] > 0.0)) throw InvalidArgument("machine speeds must be positive");
        if (i > 0 && speeds[i] > speeds[i - 1]) throw InvalidArgument("machine speeds must be non-increasing");
    }
    if (allowed && static_cast<int>(allowed->size()) != job_count())
        throw InvalidArgument("allowed sets must be given for every job");
    for (const auto& d : densities) d.validate();
}

Vector sample_requirements(const SmoothedInstanceSpec& spec, std::uint64_t seed) {
    spec.validate();
    Vector p(spec.job_count());
    for (int j = 0; j < spec.job_count(); ++j) {
        Stream stream(seed, static_cast<std::uint64_t>(j));
        p[j] = spec.densities[j].quantile(stream.next_open01());
    }
    return p;
}

Instance sample_instance(const SmoothedInstanceSpec& spec, std::uint64_t seed) {
    Vector p = sample_requirements(spec, seed);
    if (spec.allowed) return Instance(spec.speeds, std::move(p), *spec.allowed);
    return Instance(spec.speeds, std::move(p));
}

double hoeffding_tail(std::span<const std::pair<double, double>> ranges, double t) {
    if (!(t > 0.0)) throw InvalidArgument("deviation t must be positive");
    double spread = 0.0;
    for (const auto& [a, b] : ranges) {
        if (!(b >= a)) throw InvalidArgument("range needs b >= a");
        spread += (b - a) * (b - a);
    }
    if (spread == 0.0) return 0.0;
    return std::exp(-2.0 * t * t / spread);
}

double hoeffding_half_width(std::size_t count, double range, double delta) {
    if (count == 0) throw InvalidArgument("need at least one sample");
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
    if (!(range >= 0.0)) throw InvalidArgument("range must be non-negative");
    const double log_term = std::max(0.0, std::log(2.0 / delta));
    return range * std::sqrt(log_term / (2.0 * static_cast<double>(count)));
}

Interval hoeffding_ci(std::span<const double> samples, double range, double delta) {
    const double half = hoeffding_half_width(samples.size(), range, delta);
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    return {mean - half, mean + half};
}

RatioEstimate summarize_ratios(std::vector<double> ratios, double range, double delta) {
    RatioEstimate out;
    out.count = ratios.size();
    out.delta = delta;
    out.range = range;
    const auto ci = hoeffding_ci(ratios, range, delta);
    out.mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
    out.ci_low = ci.low;
    out.ci_high = ci.high;
    out.ratios = std::move(ratios);
    return out;
}

double check_sum_lower_tail(int n, double phi, int trials, std::uint64_t seed) {
    if (n < 1 || trials < 1) throw InvalidArgument("need n >= 1 and trials >= 1");
    if (!(phi >= 1.0)) throw InvalidArgument("phi must be at least 1");
    const double threshold = (n - std::sqrt(n * std::log(static_cast<double>(n)))) / (2.0 * phi);
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        Stream stream(seed, static_cast<std::uint64_t>(t));
        double q = 0.0;
        for (int j = 0; j < n; ++j) q += stream.next_open01() / phi;
        if (q <= threshold) ++hits;
    }
    return static_cast<double>(hits) / trials;
}

} // namespace smoothsched
