// Randomized invariant checks across modules, each compared with the naive
// reference implementations where one exists.

#include "smoothsched/algorithms.hpp"
#include "smoothsched/classification.hpp"
#include "smoothsched/constructions.hpp"
#include "smoothsched/oracle.hpp"
#include "smoothsched/smoothing.hpp"
#include "support/naive.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace smoothsched;

namespace {

Schedule random_schedule(Stream& stream, const Instance& inst) {
    std::vector<int> a(inst.job_count());
    for (int j = 0; j < inst.job_count(); ++j) {
        const auto choices = inst.allowed(j).indices();
        a[j] = choices[stream.next_below(choices.size())];
    }
    return Schedule(std::move(a));
}

std::vector<int> random_order(Stream& stream, int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int k = n - 1; k > 0; --k) std::swap(order[k], order[stream.next_below(k + 1)]);
    return order;
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("loads are additive and bounded below by the average") {
    Stream stream(1);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = naive::random_instance(stream, {1, 10, 1, 4, 1.0, 4.0, trial % 2 == 0});
        const Schedule s = random_schedule(stream, inst);
        const Vector l = loads(inst, s);
        const auto reference = naive::loads(inst, s.assignment());
        for (int i = 0; i < inst.machine_count(); ++i) CHECK(l[i] == doctest::Approx(reference[i]).epsilon(1e-12));
        CHECK(makespan(inst, s) >= inst.total_requirement() / inst.total_speed() - 1e-12);

        const int j = static_cast<int>(stream.next_below(inst.job_count()));
        const int i = s.machine_of(j);
        double rest = 0.0;
        for (int k = 0; k < inst.job_count(); ++k)
            if (k != j && s.machine_of(k) == i) rest += inst.requirement(k) / inst.speed(i);
        CHECK(l[i] - inst.requirement(j) / inst.speed(i) == doctest::Approx(rest).epsilon(1e-9));
    }
}

TEST_CASE("normalize is idempotent and keeps makespan order") {
    Stream stream(2);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = naive::random_instance(stream, {2, 8, 1, 4, 1.0, 4.0, false});
        const Instance once = normalize(inst);
        const Instance twice = normalize(once);
        CHECK(once.speeds() == twice.speeds());
        CHECK(once.jobs() == twice.jobs());
        const Schedule a = random_schedule(stream, inst), b = random_schedule(stream, inst);
        const double da = makespan(inst, a) - makespan(inst, b);
        const double db = makespan(once, a) - makespan(once, b);
        if (std::abs(da) > 1e-9) CHECK((da > 0) == (db > 0));
    }
}

TEST_CASE("shortcut predicates agree with the naive scan") {
    Stream stream(3);
    for (int trial = 0; trial < 1000; ++trial) {
        const Instance inst = naive::random_instance(stream, {1, 10, 1, 4, 1.0, 4.0, trial % 3 == 0});
        Schedule s = random_schedule(stream, inst);
        if (trial % 2 == 1) {
            const auto neighborhood = trial % 4 == 1 ? Neighborhood::jump : Neighborhood::lex_jump;
            s = local_search(inst, s, neighborhood).schedule;
        }
        const bool jump = is_jump_optimal(inst, s);
        const bool lex = is_lex_jump_optimal(inst, s);
        CHECK(jump == naive::jump_optimal(inst, s.assignment()));
        CHECK(lex == naive::lex_jump_optimal(inst, s.assignment()));
        if (lex) CHECK(jump);

        const auto order = random_order(stream, inst.job_count());
        CHECK(is_near_list(inst, s, order) == naive::near_list(inst, s.assignment(), order));
        if (lex) CHECK(is_near_list(inst, s, order));
    }
}

TEST_CASE("local search ends in a local optimum through lexicographic descent") {
    Stream stream(4);
    const char* pivots[] = {"first", "max-gain", "min-gain", "random"};
    for (int trial = 0; trial < 300; ++trial) {
        const Instance inst = naive::random_instance(stream, {1, 10, 1, 4, 1.0, 4.0, trial % 3 == 0});
        const auto neighborhood = trial % 2 ? Neighborhood::jump : Neighborhood::lex_jump;
        const auto pivot = PivotRule::parse(pivots[trial % 4], trial);
        const auto result = local_search(inst, random_schedule(stream, inst), neighborhood, pivot);
        if (neighborhood == Neighborhood::jump)
            CHECK(naive::jump_optimal(inst, result.schedule.assignment()));
        else
            CHECK(naive::lex_jump_optimal(inst, result.schedule.assignment()));
        CHECK(result.sorted_load_trace.size() == static_cast<std::size_t>(result.steps) + 1);
        for (std::size_t k = 1; k < result.sorted_load_trace.size(); ++k)
            CHECK(naive::lex_smaller(result.sorted_load_trace[k], result.sorted_load_trace[k - 1]));
    }
}

TEST_CASE("list scheduling is deterministic and near-list in reverse") {
    Stream stream(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = naive::random_instance(stream, {1, 10, 1, 4, 1.0, 4.0, trial % 2 == 0});
        const auto order = random_order(stream, inst.job_count());
        const Schedule a = list_schedule(inst, order);
        CHECK(a == list_schedule(inst, order));
        CHECK(is_near_list(inst, a, std::vector<int>(order.rbegin(), order.rend())));
    }
}

TEST_CASE("oracle bounds are ordered") {
    Stream stream(6);
    for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = naive::random_instance(stream, {1, 7, 1, 3, 1.0, 4.0, trial % 3 == 0});
        const double opt = optimal_makespan_exact(inst).makespan;
        CHECK(makespan_lower_bound(inst) <= opt * (1 + 1e-12));
        CHECK(opt <= makespan(inst, lpt_schedule(inst)) * (1 + 1e-12));
        CHECK(opt <= makespan(inst, list_schedule(inst, random_order(stream, inst.job_count()))) * (1 + 1e-12));

        const auto jump = worst_local_optimum_exact(inst, Neighborhood::jump);
        const auto lex = worst_local_optimum_exact(inst, Neighborhood::lex_jump);
        CHECK(lex.ratio <= jump.ratio);
        if (!inst.restricted()) {
            CHECK(jump.ratio <= cho_sahni_bound(inst.machine_count(), inst.job_count()) + 1e-9);
            CHECK(jump.ratio <= jump_quality_bound(inst) + 1e-9);
        }
    }
}

TEST_CASE("sampled values stay in the pieces and follow the heights") {
    DensitySpec density;
    density.pieces = {{0.0, 0.2, 2.5}, {0.5, 0.6, 2.5}, {0.8, 1.0, 1.25}};
    density.phi = 2.5;
    density.validate();
    SmoothedInstanceSpec spec;
    spec.speeds = Vector::Ones(1);
    spec.densities.assign(100000, density);
    const Vector p = sample_requirements(spec, 12);

    std::vector<int> buckets(10, 0);
    for (double x : p) {
        const bool inside = (x >= 0.0 && x < 0.2) || (x >= 0.5 && x < 0.6) || (x >= 0.8 && x < 1.0);
        CHECK(inside);
        ++buckets[std::min(9, static_cast<int>(x * 10))];
    }
    const double expected[] = {0.25, 0.25, 0, 0, 0, 0.25, 0, 0, 0.125, 0.125};
    for (int b = 0; b < 10; ++b) {
        const double observed = buckets[b] / 100000.0;
        if (expected[b] == 0.0)
            CHECK(buckets[b] == 0);
        else
            CHECK(std::abs(observed - expected[b]) <= 0.05 * expected[b]);
    }
}

TEST_CASE("sampling does not depend on the other jobs") {
    SmoothedInstanceSpec small, large;
    small.speeds = large.speeds = Vector::Ones(2);
    small.densities.assign(5, uniform_spec(0.0, 0.5));
    large.densities = small.densities;
    large.densities.push_back(uniform_spec(0.9, 1.0));
    const Vector a = sample_requirements(small, 99);
    const Vector b = sample_requirements(large, 99);
    CHECK(a == b.head(5));
}

TEST_CASE("lexlist structure over phi and seeds") {
    for (double phi : {4.0, 16.0, 64.0, 256.0}) {
        const auto c = build_lexlist_lb(phi);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto sample = c->sample(seed);
            CHECK(validate_schedule(sample.instance, sample.bad).ok);
            CHECK(validate_schedule(sample.instance, sample.good).ok);
            CHECK(sample.find_check("class_structure")->pass);
            CHECK(is_lex_jump_optimal(sample.instance, sample.bad));
            CHECK(sample.bad_makespan / sample.reference_makespan >= sample.predicted_ratio);
        }
    }
}

TEST_CASE("event-conditional guarantees of the jump constructions") {
    const auto related = build_jump_related_lb(3.0);
    const auto restricted = build_restricted_jump_lb(20, 2.0, 3, ParameterMode::lenient);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (const Construction* c : {related.get(), restricted.get()}) {
            const auto sample = c->sample(seed);
            CHECK(validate_schedule(sample.instance, sample.bad).ok);
            CHECK(validate_schedule(sample.instance, sample.good).ok);
            if (!sample.event_holds()) continue;
            CHECK(is_jump_optimal(sample.instance, sample.bad));
            CHECK(sample.bad_makespan / sample.reference_makespan >= sample.predicted_ratio);
        }
    }
}

TEST_CASE("classification properties on random schedules") {
    Stream stream(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Instance inst = naive::random_instance(stream, {1, 8, 1, 4, 1.0, 4.0, false});
        const Schedule s = random_schedule(stream, inst);
        const double opt = optimal_makespan_exact(inst).makespan;
        const auto cls = classify(inst, s, opt);
        const auto l = naive::loads(inst, s.assignment());
        for (int k = 1; k <= cls.c; ++k) {
            CHECK(cls.h_size(k) <= cls.h_size(k - 1));
            for (int i = 0; i < cls.h_size(k); ++i) CHECK(l[i] >= k * opt - 1e-9);
            if (cls.h_size(k) < inst.machine_count()) CHECK(l[cls.h_size(k)] < k * opt);
        }
        CHECK(l[0] < (cls.c + 2) * opt);
        int members = 0;
        for (const auto& r : cls.members) members += static_cast<int>(r.size());
        CHECK(members == inst.machine_count());
    }
}

} // TEST_SUITE
