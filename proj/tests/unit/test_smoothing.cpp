#include "smoothsched/errors.hpp"
#include "smoothsched/smoothing.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace smoothsched;

namespace {

SmoothedInstanceSpec spec_of(int n, const DensitySpec& density) {
    SmoothedInstanceSpec spec;
    spec.speeds = Vector::Ones(2);
    spec.densities.assign(n, density);
    return spec;
}

} // namespace

TEST_SUITE("smoothing") {

TEST_CASE("uniform densities") {
    const auto unit = uniform_spec(0.0, 1.0);
    CHECK(unit.phi == 1.0);
    CHECK(unit.mean() == doctest::Approx(0.5));

    const auto half = uniform_spec(0.0, 0.5);
    CHECK(half.pieces.front().h == 2.0);
    CHECK(half.phi == 2.0);
    CHECK_THROWS_AS(uniform_spec(0.0, 0.5, 1.0, 1.5), InvalidArgument);

    const auto top = uniform_spec(0.9, 1.0, 1.0, 10.0);
    CHECK(top.support_low() == doctest::Approx(0.9));
    CHECK(top.support_high() == 1.0);

    const auto scaled = uniform_spec(2.0, 3.0, 4.0, 4.0);
    CHECK_NOTHROW(scaled.validate());
}

TEST_CASE("density validation") {
    DensitySpec bad;
    bad.pieces = {{0.0, 0.5, 1.0}};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);  // mass 1/2
    bad.pieces = {{0.0, 0.6, 1.0}, {0.5, 1.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);  // overlap
    bad.pieces = {{0.5, 1.5, 1.0}};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);  // outside [0, scale]
}

TEST_CASE("piecewise quantile") {
    DensitySpec two;
    two.pieces = {{0.0, 0.25, 2.0}, {0.5, 1.0, 1.0}};
    two.phi = 2.0;
    two.validate();
    CHECK(two.quantile(0.25) == doctest::Approx(0.125));
    CHECK(two.quantile(0.75) == doctest::Approx(0.75));
    CHECK(two.mean() == doctest::Approx(0.5 * 0.125 + 0.5 * 0.75));
}

TEST_CASE("sampling is reproducible and stays in the support") {
    const auto spec = spec_of(50, uniform_spec(0.9, 1.0, 1.0, 10.0));
    const Vector a = sample_requirements(spec, 17);
    const Vector b = sample_requirements(spec, 17);
    CHECK(a == b);
    CHECK(a != sample_requirements(spec, 18));
    CHECK(a.minCoeff() >= 0.9);
    CHECK(a.maxCoeff() <= 1.0);
    CHECK(sample_instance(spec, 17).jobs() == a);
}

TEST_CASE("uniform sample mean") {
    const auto spec = spec_of(100000, uniform_spec(0.0, 1.0));
    const Vector p = sample_requirements(spec, 3);
    CHECK(p.mean() == doctest::Approx(0.5).epsilon(0.02));
    CHECK(p.minCoeff() > 0.0);
}

TEST_CASE("hoeffding tail") {
    const std::vector<std::pair<double, double>> one{{0.0, 1.0}};
    CHECK(hoeffding_tail(one, 0.5) == doctest::Approx(std::exp(-0.5)));
    CHECK(hoeffding_tail(one, 1e-9) == doctest::Approx(1.0));

    const int n = 100;
    const double phi = 4.0;
    std::vector<std::pair<double, double>> many(n, {0.0, 1.0 / phi});
    const double t = std::sqrt(n * std::log(static_cast<double>(n))) / (2 * phi);
    CHECK(hoeffding_tail(many, t) == doctest::Approx(1.0 / std::sqrt(n)));
}

TEST_CASE("hoeffding interval") {
    const std::vector<double> constant(100, 0.3);
    const auto ci = hoeffding_ci(constant, 1.0, 0.05);
    const double half = std::sqrt(std::log(40.0) / 200.0);
    CHECK(half == doctest::Approx(0.1358).epsilon(1e-3));
    CHECK(ci.low == doctest::Approx(0.3 - half));
    CHECK(ci.high == doctest::Approx(0.3 + half));
    CHECK(hoeffding_half_width(100, 1.0, 2.0) == 0.0);

    const auto estimate = summarize_ratios({1.0, 1.5, 2.0}, 1.0, 0.1);
    CHECK(estimate.mean == doctest::Approx(1.5));
    CHECK(estimate.ci_low <= estimate.mean);
    CHECK(estimate.mean <= estimate.ci_high);
}

TEST_CASE("sum lower tail frequency") {
    CHECK(check_sum_lower_tail(100, 2.0, 2000, 1) <= 0.1);
    CHECK(check_sum_lower_tail(1, 2.0, 20000, 1) == doctest::Approx(0.5).epsilon(0.05));
}

} // TEST_SUITE
