#include "smoothsched/errors.hpp"
#include "smoothsched/harness.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>

using namespace smoothsched;

namespace {

int count_lines(const std::string& text) {
    int lines = 0;
    for (char c : text) lines += c == '\n';
    return lines;
}

std::vector<std::string> column(const std::string& csv, int index) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string cell;
        for (int k = 0; k <= index; ++k) std::getline(row, cell, ',');
        out.push_back(cell);
    }
    return out;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("single job on a single machine has ratio one") {
    const auto spec = make_smoothed_spec(1, 1, 4.0, "low");
    EstimateOptions options;
    options.trials = 10;
    const auto estimate = estimate_smoothed_ratio(spec, options);
    CHECK(estimate.mean == 1.0);
    CHECK(estimate.ci_low == 1.0);
    CHECK(estimate.ci_high == 1.0);
    for (double r : estimate.ratios) CHECK(r == 1.0);
}

TEST_CASE("exact estimate stays below the smoothed bound") {
    const auto spec = make_smoothed_spec(5, 4, 2.0, "spread");
    EstimateOptions options;
    options.trials = 20;
    options.seed = 3;
    const auto estimate = estimate_smoothed_ratio(spec, options);
    CHECK(estimate.mean <= jump_smoothed_bound(2.0));
    CHECK(estimate.ci_low <= estimate.mean);
    CHECK(estimate.mean <= estimate.ci_high);
    CHECK_FALSE(estimate.worst_is_lower_bound);
}

TEST_CASE("multistart never exceeds exact on paired seeds") {
    const auto spec = make_smoothed_spec(5, 3, 2.0, "spread");
    EstimateOptions exact;
    exact.trials = 15;
    exact.seed = 9;
    EstimateOptions multi = exact;
    multi.method = EstimateMethod::multistart;
    multi.starts = 8;
    multi.pivot = PivotKind::random;
    for (auto neighborhood : {Neighborhood::jump, Neighborhood::lex_jump}) {
        exact.neighborhood = multi.neighborhood = neighborhood;
        const auto e = estimate_smoothed_ratio(spec, exact);
        const auto m = estimate_smoothed_ratio(spec, multi);
        CHECK(m.worst_is_lower_bound);
        CHECK_FALSE(m.optimum_is_lower_bound);
        for (int t = 0; t < exact.trials; ++t) CHECK(m.ratios[t] <= e.ratios[t]);
        CHECK(m.mean <= e.mean);
    }
}

TEST_CASE("multistart falls back to the lower bound past the budget") {
    const auto spec = make_smoothed_spec(8, 4, 2.0, "spread");
    EstimateOptions options;
    options.method = EstimateMethod::multistart;
    options.trials = 3;
    options.starts = 2;
    options.budget = 100;
    const auto estimate = estimate_smoothed_ratio(spec, options);
    CHECK(estimate.optimum_is_lower_bound);
    options.method = EstimateMethod::exact;
    CHECK_THROWS_AS(estimate_smoothed_ratio(spec, options), BudgetExceeded);
}

TEST_CASE("worker count does not change results") {
    const auto spec = make_smoothed_spec(5, 3, 4.0, "spread");
    EstimateOptions options;
    options.trials = 12;
    options.threads = 1;
    const auto serial = estimate_smoothed_ratio(spec, options);
    options.threads = 4;
    const auto parallel = estimate_smoothed_ratio(spec, options);
    CHECK(serial.ratios == parallel.ratios);
}

TEST_CASE("argument checks") {
    const auto spec = make_smoothed_spec(2, 2, 2.0, "low");
    EstimateOptions options;
    options.trials = 0;
    CHECK_THROWS_AS(estimate_smoothed_ratio(spec, options), InvalidArgument);
    CHECK_THROWS_AS(make_smoothed_spec(2, 2, 2.0, "wide"), InvalidArgument);
    CHECK_THROWS_AS(parse_method("sample"), InvalidArgument);
}

TEST_CASE("smoothed sweep rows") {
    SmoothedGrid grid;
    grid.phis = {1, 2, 4, 8};
    grid.n = 4;
    grid.m = 3;
    grid.options.trials = 5;
    const std::string csv = sweep_smoothed_csv(grid);
    CHECK(count_lines(csv) == 5);
    CHECK(column(csv, 12) == std::vector<std::string>{"7.6", "12.7", "22.9", "43.3"});
    CHECK(csv == sweep_smoothed_csv(grid));

    grid.phis.clear();
    CHECK(sweep_smoothed_csv(grid) == csv_header());
}

TEST_CASE("construction sweep rows") {
    ConstructionGrid grid;
    grid.family = "lexlist";
    grid.values = {4, 16, 64, 256};
    grid.samples = 3;
    const std::string csv = sweep_construction_csv(grid);
    CHECK(count_lines(csv) == 5);
    CHECK(column(csv, 13) == std::vector<std::string>{"0.333333333333", "0.666666666667", "1", "1.33333333333"});
    for (const auto& f : column(csv, 14)) CHECK(f == "1");
}

TEST_CASE("number format") {
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(12.7) == "12.7");
    CHECK(format_number(1e-20) == "1e-20");
}

} // TEST_SUITE
