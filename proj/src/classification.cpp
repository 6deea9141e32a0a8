#include "smoothsched/classification.hpp"

#include "smoothsched/algorithms.hpp"
#include "smoothsched/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smoothsched {

namespace {

constexpr double kRelativeSlack = 1e-12;

int floor_div6(int delta) { return delta / 6; }

} // namespace

std::string to_string(OptimumMode mode) { return mode == OptimumMode::exact ? "exact" : "upper-bound"; }

int Classification::h_size(int k) const {
    if (k <= 0) return machine_count;
    if (k <= c) return prefix[k];
    return 0;
}

Classification classify(const Instance& instance, const Schedule& schedule, double optimum, OptimumMode mode,
                        double eps) {
    if (!(optimum > 0.0)) throw InvalidArgument("optimum must be positive");
    const Vector l = loads(instance, schedule);
    const double cmax = l.maxCoeff();
    if (cmax < optimum - eps) throw InvalidArgument("makespan below the optimum; inputs are inconsistent");

    Classification out;
    out.optimum = optimum;
    out.mode = mode;
    out.machine_count = instance.machine_count();
    out.c = static_cast<int>(std::floor((cmax + eps) / optimum)) - 1;
    const int m = out.machine_count;

    out.prefix.assign(out.c + 1, m);
    for (int k = 1; k <= out.c; ++k) {
        int i = 0;
        while (i < m && l[i] >= k * optimum - eps) ++i;
        out.prefix[k] = i;
    }
    out.class_of.assign(m, 0);
    out.members.assign(out.c + 1, {});
    for (int i = 0; i < m; ++i) {
        int k = out.c;
        while (k > 0 && i >= out.prefix[k]) --k;
        out.class_of[i] = k;
        out.members[k].push_back(i);
    }

    // Loads in H_k reach k * optimum; the first machine past H_k stays below it.
    for (int k = 1; k <= out.c; ++k) {
        for (int i = 0; i < out.prefix[k]; ++i)
            if (l[i] < k * optimum - eps) throw std::logic_error("classification lost a minimum-load property");
        if (out.prefix[k] < m && l[out.prefix[k]] >= k * optimum - eps)
            throw std::logic_error("classification prefix is not maximal");
    }
    if (!(l[0] < (out.c + 2) * optimum)) throw std::logic_error("classification top load exceeds its class");
    return out;
}

std::vector<int> prefix_set(const Instance& instance, const Schedule& schedule, std::span<const int> job_order,
                            int machine, int t, double optimum, double eps) {
    require_permutation(job_order, instance.job_count());
    if (machine < 0 || machine >= instance.machine_count()) throw InvalidArgument("machine index out of range");
    if (t < 1) throw InvalidArgument("prefix threshold t must be at least 1");
    if (!(optimum > 0.0)) throw InvalidArgument("optimum must be positive");
    const double target = t * optimum - eps;
    const double speed = instance.speed(machine);
    std::vector<int> out;
    double total = 0.0;
    for (int j : job_order) {
        if (schedule.machine_of(j) != machine) continue;
        out.push_back(j);
        total += instance.requirement(j) / speed;
        if (total >= target) return out;
    }
    throw PreconditionError("machine " + std::to_string(machine + 1) + " does not carry " + std::to_string(t) +
                            " times the optimum");
}

bool StructureReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const StructureCheck& c) { return c.pass; });
}

const StructureCheck* StructureReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

StructureReport validate_nl_structure(const Instance& instance, const Schedule& schedule,
                                      std::span<const int> job_order, double optimum, OptimumMode mode,
                                      const Schedule* optimal_schedule, double eps) {
    require_feasible(instance, schedule);
    if (!is_near_list(instance, schedule, job_order, eps))
        throw PreconditionError("job order does not witness the near-list property");
    if (optimal_schedule) require_feasible(instance, *optimal_schedule);

    StructureReport report;
    report.advisory = mode == OptimumMode::upper_bound;
    report.classification = classify(instance, schedule, optimum, mode, eps);
    const Classification& cls = report.classification;
    const int c = cls.c;
    const int m = instance.machine_count();
    const int n = instance.job_count();

    {
        StructureCheck check;
        check.name = "top_machine_in_top_class";
        check.pass = cls.class_of[0] == c;
        if (!check.pass) check.witnesses = {1};
        report.checks.push_back(check);
    }
    {
        StructureCheck check;
        check.name = "no_two_empty_classes";
        check.vacuous = c < 2;
        for (int k = 1; k <= c - 1; ++k) {
            if (cls.h_size(k - 2) <= cls.h_size(k)) {
                check.pass = false;
                check.witnesses.push_back(k);
            }
        }
        if (!check.pass) check.detail = "witnesses are class indices k";
        report.checks.push_back(check);
    }
    {
        StructureCheck check;
        check.name = "speeds_halve_every_four";
        check.vacuous = true;
        for (int k = 5; k <= c; ++k) {
            const int top = cls.h_size(k);
            const int rest = cls.h_size(k - 4);
            if (top == 0 || rest == m) continue;
            check.vacuous = false;
            // slowest of H_k against the fastest outside H_{k-4}
            if (instance.speed(top - 1) < 2.0 * instance.speed(rest) * (1.0 - kRelativeSlack)) {
                check.pass = false;
                check.witnesses.push_back(top);
                check.witnesses.push_back(rest + 1);
            }
        }
        report.checks.push_back(check);
    }
    {
        StructureCheck check;
        check.name = "speeds_double_every_six";
        check.vacuous = true;
        for (int k1 = 1; k1 <= c; ++k1) {
            if (cls.members[k1].empty()) continue;
            const double slowest_high = instance.speed(cls.members[k1].back());
            for (int k2 = 0; k2 < k1; ++k2) {
                if (cls.members[k2].empty()) continue;
                check.vacuous = false;
                const double fastest_low = instance.speed(cls.members[k2].front());
                const double factor = std::ldexp(1.0, floor_div6(k1 - k2));
                if (slowest_high < fastest_low * factor * (1.0 - kRelativeSlack)) {
                    check.pass = false;
                    check.witnesses.push_back(cls.members[k1].back() + 1);
                    check.witnesses.push_back(cls.members[k2].front() + 1);
                }
            }
        }
        report.checks.push_back(check);
    }

    const double p_max = n > 0 ? instance.jobs().maxCoeff() : 0.0;
    const double small = p_max * std::exp2(2.0 - c / 6.0) * (1.0 + kRelativeSlack);
    {
        StructureCheck check;
        check.name = "half_the_jobs_small";
        int count = 0;
        for (int j = 0; j < n; ++j)
            if (instance.requirement(j) <= small) ++count;
        check.pass = 2 * count >= n;
        check.vacuous = c <= 12;
        check.detail = std::to_string(count) + " of " + std::to_string(n) + " jobs at most " + std::to_string(small);
        report.checks.push_back(check);
    }

    if (optimal_schedule) {
        StructureCheck stay;
        stay.name = "prefix_jobs_stay_high";
        stay.vacuous = true;
        for (int k = 1; k <= c; ++k) {
            for (int i = 0; i < cls.h_size(k); ++i) {
                for (int t = 1; t <= k; ++t) {
                    const int allowed_prefix = cls.h_size(k - t - 1);
                    if (allowed_prefix == m) continue;
                    stay.vacuous = false;
                    for (int j : prefix_set(instance, schedule, job_order, i, t, optimum, eps)) {
                        if (optimal_schedule->machine_of(j) >= allowed_prefix) {
                            stay.pass = false;
                            stay.witnesses.push_back(j + 1);
                        }
                    }
                }
            }
        }
        std::sort(stay.witnesses.begin(), stay.witnesses.end());
        stay.witnesses.erase(std::unique(stay.witnesses.begin(), stay.witnesses.end()), stay.witnesses.end());
        report.checks.push_back(stay);

        StructureCheck low;
        low.name = "low_machines_get_small_jobs";
        const int h2 = cls.h_size(2);
        low.vacuous = c <= 12;  // the bound is at least p_max
        for (int j = 0; j < n; ++j) {
            if (optimal_schedule->machine_of(j) >= h2 && instance.requirement(j) > small) {
                low.pass = false;
                low.witnesses.push_back(j + 1);
            }
        }
        report.checks.push_back(low);
    }
    return report;
}

} // namespace smoothsched
