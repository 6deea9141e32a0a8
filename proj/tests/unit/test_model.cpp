#include "smoothsched/errors.hpp"
#include "smoothsched/model.hpp"

#include <doctest.h>

using namespace smoothsched;

namespace {

Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    int k = 0;
    for (double x : values) v[k++] = x;
    return v;
}

} // namespace

TEST_SUITE("model") {

TEST_CASE("load sums requirements over speed") {
    Instance identical(vec({1, 1}), vec({0.5, 0.5, 0.5}));
    CHECK(load(identical, Schedule({0, 1, 0}), 0) == doctest::Approx(1.0));

    Instance related(vec({2, 1}), vec({0.9, 0.8, 0.7}));
    const Schedule s({1, 0, 0});
    CHECK(load(related, s, 0) == doctest::Approx(0.75));
    CHECK(makespan(related, s) == doctest::Approx(0.9));
    CHECK(load(related, Schedule({0, 0, 0}), 1) == 0.0);
    CHECK_THROWS_AS(load(related, s, 2), InvalidArgument);
}

TEST_CASE("critical machines and sorted loads") {
    CHECK(critical_machines(vec({1.0, 0.5})) == std::vector<int>{0});
    CHECK(critical_machines(vec({0.8, 0.8})) == std::vector<int>{0, 1});
    CHECK(critical_machines(vec({0.8, 0.8 - 1e-12})) == std::vector<int>{0, 1});
    CHECK(sorted_loads(vec({0.2, 0.9, 0.5})) == std::vector<double>{0.9, 0.5, 0.2});
}

TEST_CASE("normalize scales speeds and requirements") {
    Instance a = normalize(Instance(vec({4, 2}), vec({2, 1})));
    CHECK(a.speeds() == vec({2, 1}));
    CHECK(a.jobs() == vec({1, 0.5}));
    CHECK(a.normalized());

    Instance b = normalize(Instance(vec({3, 1}), vec({0.2, 0.4})));
    CHECK(b.speeds() == vec({3, 1}));
    CHECK(b.jobs()[0] == doctest::Approx(0.5));
    CHECK(b.jobs()[1] == 1.0);

    Instance c = normalize(b);
    CHECK(c.speeds() == b.speeds());
    CHECK(c.jobs() == b.jobs());
}

TEST_CASE("validate_schedule reports violations") {
    Instance restricted(vec({1, 1}), vec({1, 1}), {MachineSet::from_indices({1}), MachineSet::range(0, 2)});
    CHECK(validate_schedule(restricted, Schedule({1, 0})).ok);
    const auto bad = validate_schedule(restricted, Schedule({0, 0}));
    CHECK_FALSE(bad.ok);
    CHECK(bad.disallowed_jobs == std::vector<int>{0});
    CHECK_THROWS_AS(require_feasible(restricted, Schedule({0, 0})), InvalidArgument);

    const auto range = validate_schedule(restricted, Schedule({1, 5}));
    CHECK(range.out_of_range_jobs == std::vector<int>{1});
    CHECK(validate_schedule(restricted, Schedule({1})).wrong_length);

    Instance open(vec({2, 1}), vec({0.3, 0.3}));
    CHECK(validate_schedule(open, Schedule({1, 1})).ok);
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(Instance(vec({1, 2}), vec({0.5})), InvalidArgument);
    CHECK_THROWS_AS(Instance(vec({1, 0}), vec({0.5})), InvalidArgument);
    CHECK_THROWS_AS(Instance(vec({1}), vec({-0.5})), InvalidArgument);
    CHECK_THROWS_AS(Instance(Vector(0), vec({0.5})), InvalidArgument);
    CHECK_THROWS_AS(Instance(vec({1, 1}), vec({1}), {MachineSet::from_indices({3})}), InvalidArgument);
}

TEST_CASE("machine sets store runs") {
    const auto set = MachineSet::from_indices({5, 1, 2, 3, 7, 2});
    CHECK(set.size() == 5);
    CHECK(set.ranges().size() == 3);
    CHECK(set.indices() == std::vector<int>{1, 2, 3, 5, 7});
    CHECK(set.contains(3));
    CHECK_FALSE(set.contains(4));
    CHECK(set.front() == 1);
    CHECK(set.back() == 7);
}

TEST_CASE("shared allowed sets are deduplicated") {
    Instance inst(vec({2, 1, 1}), vec({1, 1, 1}),
                  {MachineSet::range(1, 3), MachineSet::from_indices({1, 2}), MachineSet::range(0, 3)});
    CHECK(inst.allowed_sets().size() == 2);
    CHECK(inst.allowed_set_id(0) == inst.allowed_set_id(1));
    CHECK(inst.speed_classes().size() == 2);
    CHECK(inst.eligible(0, 1));
    CHECK_FALSE(inst.eligible(0, 0));
}

} // TEST_SUITE
