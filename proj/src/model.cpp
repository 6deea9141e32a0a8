#include "smoothsched/model.hpp"

#include "smoothsched/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace smoothsched {

MachineSet MachineSet::from_indices(std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    MachineSet set;
    for (int i : indices) {
        if (i < 0) throw InvalidArgument("machine index must be non-negative");
        if (!set.ranges_.empty() && set.ranges_.back().end == i)
            ++set.ranges_.back().end;
        else
            set.ranges_.push_back({i, i + 1});
    }
    return set;
}

MachineSet MachineSet::range(int begin, int end) {
    if (begin < 0 || end < begin) throw InvalidArgument("invalid machine range");
    MachineSet set;
    if (end > begin) set.ranges_.push_back({begin, end});
    return set;
}

MachineSet MachineSet::from_ranges(std::vector<MachineRange> ranges) {
    std::sort(ranges.begin(), ranges.end(), [](const auto& a, const auto& b) { return a.begin < b.begin; });
    MachineSet set;
    for (const auto& r : ranges) {
        if (r.begin < 0 || r.end < r.begin) throw InvalidArgument("invalid machine range");
        if (r.end == r.begin) continue;
        if (!set.ranges_.empty() && set.ranges_.back().end >= r.begin)
            set.ranges_.back().end = std::max(set.ranges_.back().end, r.end);
        else
            set.ranges_.push_back(r);
    }
    return set;
}

bool MachineSet::contains(int machine) const {
    auto it = std::upper_bound(ranges_.begin(), ranges_.end(), machine,
                               [](int m, const MachineRange& r) { return m < r.begin; });
    if (it == ranges_.begin()) return false;
    --it;
    return machine < it->end;
}

std::size_t MachineSet::size() const {
    std::size_t n = 0;
    for (const auto& r : ranges_) n += static_cast<std::size_t>(r.end - r.begin);
    return n;
}

std::vector<int> MachineSet::indices() const {
    std::vector<int> out;
    out.reserve(size());
    for_each([&](int i) { out.push_back(i); });
    return out;
}

Instance::Instance(Vector speeds, Vector jobs) : speeds_(std::move(speeds)), jobs_(std::move(jobs)) {
    validate();
    pool_.push_back(MachineSet::range(0, machine_count()));
}

Instance::Instance(Vector speeds, Vector jobs, std::vector<MachineSet> allowed)
    : speeds_(std::move(speeds)), jobs_(std::move(jobs)) {
    if (static_cast<int>(allowed.size()) != job_count())
        throw InvalidArgument("allowed sets must be given for every job");
    std::map<std::vector<MachineRange>, int> seen;
    set_of_job_.reserve(allowed.size());
    for (auto& set : allowed) {
        std::vector<MachineRange> key(set.ranges().begin(), set.ranges().end());
        auto [it, inserted] = seen.emplace(std::move(key), static_cast<int>(pool_.size()));
        if (inserted) pool_.push_back(std::move(set));
        set_of_job_.push_back(it->second);
    }
    validate();
}

Instance::Instance(Vector speeds, Vector jobs, std::vector<MachineSet> pool, std::vector<int> set_of_job)
    : speeds_(std::move(speeds)), jobs_(std::move(jobs)), pool_(std::move(pool)), set_of_job_(std::move(set_of_job)) {
    if (static_cast<int>(set_of_job_.size()) != job_count())
        throw InvalidArgument("allowed set index must be given for every job");
    for (int id : set_of_job_)
        if (id < 0 || id >= static_cast<int>(pool_.size())) throw InvalidArgument("allowed set index out of range");
    validate();
}

void Instance::validate() {
    const int m = machine_count();
    if (m == 0) throw InvalidArgument("instance needs at least one machine");
    for (int i = 0; i < m; ++i) {
        if (!(speeds_[i] > 0.0)) throw InvalidArgument("machine speeds must be positive");
        if (i > 0 && speeds_[i] > speeds_[i - 1]) throw InvalidArgument("machine speeds must be non-increasing");
    }
    for (int j = 0; j < job_count(); ++j)
        if (!(jobs_[j] > 0.0)) throw InvalidArgument("processing requirements must be positive");
    if (restricted()) {
        for (const auto& set : pool_) {
            if (set.empty()) throw InvalidArgument("allowed machine sets must be non-empty");
            if (set.back() >= m) throw InvalidArgument("allowed machine index out of range");
        }
    }
    speed_classes_.clear();
    for (int i = 0; i < m; ++i) {
        if (i > 0 && speeds_[i] == speeds_[i - 1])
            ++speed_classes_.back().end;
        else
            speed_classes_.push_back({i, i + 1});
    }
}

bool Instance::eligible(int job, int machine) const {
    if (machine < 0 || machine >= machine_count()) return false;
    if (!restricted()) return true;
    return pool_[set_of_job_[job]].contains(machine);
}

const MachineSet& Instance::allowed(int job) const { return pool_[allowed_set_id(job)]; }

std::vector<std::vector<int>> Schedule::jobs_by_machine(int machine_count) const {
    std::vector<std::vector<int>> out(machine_count);
    for (int j = 0; j < job_count(); ++j) out[assignment_[j]].push_back(j);
    return out;
}

std::string ScheduleReport::message() const {
    if (ok) return "ok";
    std::ostringstream os;
    if (wrong_length) os << "assignment length does not match job count; ";
    auto list = [&](const char* what, const std::vector<int>& jobs) {
        if (jobs.empty()) return;
        os << what << ":";
        for (int j : jobs) os << ' ' << j + 1;
        os << "; ";
    };
    list("jobs assigned to a nonexistent machine", out_of_range_jobs);
    list("jobs assigned outside their allowed set", disallowed_jobs);
    return os.str();
}

ScheduleReport validate_schedule(const Instance& instance, const Schedule& schedule) {
    ScheduleReport report;
    if (schedule.job_count() != instance.job_count()) {
        report.ok = false;
        report.wrong_length = true;
    }
    const int n = std::min(schedule.job_count(), instance.job_count());
    for (int j = 0; j < n; ++j) {
        const int i = schedule.machine_of(j);
        if (i < 0 || i >= instance.machine_count())
            report.out_of_range_jobs.push_back(j);
        else if (!instance.eligible(j, i))
            report.disallowed_jobs.push_back(j);
    }
    if (!report.out_of_range_jobs.empty() || !report.disallowed_jobs.empty()) report.ok = false;
    return report;
}

void require_feasible(const Instance& instance, const Schedule& schedule) {
    auto report = validate_schedule(instance, schedule);
    if (!report.ok) throw InvalidArgument("infeasible schedule: " + report.message());
}

Vector loads(const Instance& instance, const Schedule& schedule) {
    require_feasible(instance, schedule);
    Vector requirement = Vector::Zero(instance.machine_count());
    for (int j = 0; j < instance.job_count(); ++j) requirement[schedule.machine_of(j)] += instance.requirement(j);
    return requirement.cwiseQuotient(instance.speeds());
}

double load(const Instance& instance, const Schedule& schedule, int machine) {
    if (machine < 0 || machine >= instance.machine_count()) throw InvalidArgument("machine index out of range");
    return loads(instance, schedule)[machine];
}

double makespan(const Instance& instance, const Schedule& schedule) { return loads(instance, schedule).maxCoeff(); }

std::vector<int> critical_machines(const Vector& loads, double eps) {
    std::vector<int> out;
    if (loads.size() == 0) return out;
    const double cmax = loads.maxCoeff();
    for (int i = 0; i < loads.size(); ++i)
        if (loads[i] >= cmax - eps) out.push_back(i);
    return out;
}

std::vector<double> sorted_loads(const Vector& loads) {
    std::vector<double> out(loads.data(), loads.data() + loads.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

Instance normalize(const Instance& instance) {
    if (instance.job_count() == 0) throw InvalidArgument("cannot normalize an instance without jobs");
    Instance out = instance;
    const double slowest = instance.speeds_[instance.machine_count() - 1];
    const double largest = instance.jobs_.maxCoeff();
    out.speeds_ /= slowest;
    out.jobs_ /= largest;
    out.normalized_ = true;
    out.validate();
    return out;
}

} // namespace smoothsched
