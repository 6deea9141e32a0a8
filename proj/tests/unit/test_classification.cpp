#include "smoothsched/algorithms.hpp"
#include "smoothsched/classification.hpp"
#include "smoothsched/constructions.hpp"
#include "smoothsched/errors.hpp"
#include "smoothsched/oracle.hpp"
#include "support/naive.hpp"

#include <doctest.h>

#include <numeric>

using namespace smoothsched;

namespace {

Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    int k = 0;
    for (double x : values) v[k++] = x;
    return v;
}

std::vector<int> identity(int n) {
    std::vector<int> out(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
}

} // namespace

TEST_SUITE("classification") {

TEST_CASE("classes from loads") {
    Instance inst(Vector::Ones(3), vec({3.2, 1.5, 0.4}));
    const auto cls = classify(inst, Schedule({0, 1, 2}), 1.0);
    CHECK(cls.c == 2);
    CHECK(cls.h_size(2) == 1);
    CHECK(cls.h_size(1) == 2);
    CHECK(cls.h_size(0) == 3);
    CHECK(cls.h_size(-4) == 3);
    CHECK(cls.h_size(3) == 0);
    CHECK(cls.members[2] == std::vector<int>{0});
    CHECK(cls.members[1] == std::vector<int>{1});
    CHECK(cls.members[0] == std::vector<int>{2});
}

TEST_CASE("degenerate classifications") {
    Instance inst(Vector::Ones(2), vec({1.0, 0.5}));
    const auto flat = classify(inst, Schedule({0, 1}), 1.0);
    CHECK(flat.c == 0);
    CHECK(flat.members[0] == std::vector<int>{0, 1});

    Instance high(Vector::Ones(2), vec({2.5, 2.0}));
    const auto top = classify(high, Schedule({0, 1}), 1.0);
    CHECK(top.c == 1);
    CHECK(top.h_size(1) == 2);
    CHECK(top.members[1] == std::vector<int>{0, 1});
    CHECK(top.members[0].empty());

    CHECK_THROWS_AS(classify(inst, Schedule({0, 1}), 0.0), InvalidArgument);
    CHECK_THROWS_AS(classify(inst, Schedule({0, 1}), 2.0), InvalidArgument);
}

TEST_CASE("loads within eps of a threshold reach it") {
    Instance inst(Vector::Ones(2), vec({2.0 - 1e-12, 1.0}));
    CHECK(classify(inst, Schedule({0, 1}), 1.0).c == 1);
}

TEST_CASE("prefix sets") {
    Instance inst(Vector::Ones(2), vec({0.5, 0.4, 0.3, 0.2}));
    const Schedule s({0, 0, 0, 1});
    const auto order = identity(4);
    CHECK(prefix_set(inst, s, order, 0, 1, 1.0) == std::vector<int>{0, 1, 2});
    CHECK(prefix_set(inst, s, order, 0, 1, 0.5) == std::vector<int>{0});
    CHECK_THROWS_AS(prefix_set(inst, s, order, 0, 2, 1.0), PreconditionError);
    CHECK_THROWS_AS(prefix_set(inst, s, order, 0, 0, 1.0), InvalidArgument);

    Instance one(vec({1}), vec({2.5}));
    CHECK(prefix_set(one, Schedule({0}), identity(1), 0, 2, 1.0) == std::vector<int>{0});
}

TEST_CASE("prefix sets are minimal") {
    Stream stream(8);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = naive::random_instance(stream, {3, 8, 1, 3, 1.0, 2.0, false});
        const Schedule s = lpt_schedule(inst);
        const double opt = optimal_makespan_exact(inst).makespan;
        const Vector l = loads(inst, s);
        for (int i = 0; i < inst.machine_count(); ++i) {
            for (int t = 1; t <= static_cast<int>(l[i] / opt); ++t) {
                const auto prefix = prefix_set(inst, s, identity(inst.job_count()), i, t, opt);
                double total = 0.0;
                for (int j : prefix) total += inst.requirement(j) / inst.speed(i);
                CHECK(total >= t * opt - 1e-9);
                total -= inst.requirement(prefix.back()) / inst.speed(i);
                CHECK(total < t * opt - 1e-9);
            }
        }
    }
}

TEST_CASE("structure checks on a flat schedule are vacuous") {
    Instance inst(vec({2, 1}), vec({0.9, 0.8, 0.7}));
    const Schedule s({0, 1, 0});
    const auto report = validate_nl_structure(inst, s, identity(3), 0.8);
    CHECK(report.classification.c == 0);
    CHECK(report.all_pass());
    CHECK(report.find("no_two_empty_classes")->vacuous);
    CHECK(report.find("speeds_double_every_six")->vacuous);
    CHECK(report.find("half_the_jobs_small")->pass);
    CHECK_FALSE(report.advisory);
}

TEST_CASE("structure validation requires the near-list property") {
    Instance inst(Vector::Ones(2), vec({1, 0.4}));
    CHECK_THROWS_AS(validate_nl_structure(inst, Schedule({0, 0}), identity(2), 0.7), PreconditionError);
}

TEST_CASE("upper-bound mode is advisory") {
    const auto c = build_lexlist_lb(256.0);
    const auto sample = c->sample(3);
    const auto report = validate_nl_structure(sample.instance, sample.bad, identity(sample.instance.job_count()),
                                              sample.good_makespan, OptimumMode::upper_bound);
    CHECK(report.advisory);
    CHECK(report.classification.mode == OptimumMode::upper_bound);
    CHECK(report.find("top_machine_in_top_class") != nullptr);
}

TEST_CASE("extended checks with an optimal schedule") {
    Stream stream(41);
    for (int trial = 0; trial < 30; ++trial) {
        const Instance inst = naive::random_instance(stream, {2, 8, 1, 4, 1.0, 4.0, false});
        const auto order = identity(inst.job_count());
        const Schedule s = list_schedule(inst, order);
        const std::vector<int> reversed(order.rbegin(), order.rend());
        const auto opt = optimal_makespan_exact(inst);
        const auto report = validate_nl_structure(inst, s, reversed, opt.makespan, OptimumMode::exact, &opt.schedule);
        CHECK(report.all_pass());
        CHECK(report.find("prefix_jobs_stay_high") != nullptr);
        CHECK(report.find("low_machines_get_small_jobs") != nullptr);
    }
}

} // TEST_SUITE
