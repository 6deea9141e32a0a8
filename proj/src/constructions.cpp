#include "smoothsched/constructions.hpp"

#include "smoothsched/algorithms.hpp"
#include "smoothsched/errors.hpp"
#include "smoothsched/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace smoothsched {

namespace {

std::string fmt(double value) {
    std::ostringstream os;
    os.precision(12);
    os << value;
    return os.str();
}

void add_check(ConstructionSample& sample, std::string name, bool pass, bool conditional, std::string detail = {}) {
    sample.checks.push_back({std::move(name), pass, conditional, std::move(detail)});
}

void check_feasible(ConstructionSample& sample) {
    const auto bad = validate_schedule(sample.instance, sample.bad);
    const auto good = validate_schedule(sample.instance, sample.good);
    add_check(sample, "feasible", bad.ok && good.ok, false,
              bad.ok && good.ok ? "" : "bad: " + bad.message() + " good: " + good.message());
}

void require_size(double count, double cap, const std::string& what) {
    if (count > cap)
        throw ResourceLimit(what + " count " + fmt(count) + " exceeds the size cap " + fmt(cap));
}

MachineSet machines_of(const NamedRange& range) { return MachineSet::range(range.begin, range.end); }

// ---------------------------------------------------------------------------

class JumpRelated final : public Construction {
  public:
    JumpRelated(double phi, ParameterMode mode, double cap) : phi_(phi) {
        if (!(phi > 2.0)) throw InvalidArgument("jump-related family needs phi > 2");
        const double n = std::ceil(4.0 * phi * phi + 1.0);
        require_size(n, cap, "job");
        n_ = static_cast<int>(n);
        s1_ = (n_ - 1) / (4.0 * phi);

        info_.family = "jump-related";
        info_.mode = mode;
        info_.parameters = {{"phi", phi}, {"n", n_}, {"m", n_}, {"s1", s1_}};
        info_.speeds = Vector::Ones(n_);
        info_.speeds[0] = s1_;
        info_.machine_classes = {{"fast", 0, 1}, {"unit", 1, n_}};
        info_.job_classes = {{"large", 0, 1}, {"small", 1, n_}};
        info_.job_count = n_;
        blocks_ = {{info_.job_classes[0], uniform_spec(1.0 - 1.0 / phi, 1.0, 1.0, phi)},
                   {info_.job_classes[1], uniform_spec(0.0, 1.0 / phi, 1.0, phi)}};
    }

    ConstructionSample sample(std::uint64_t seed) const override {
        ConstructionSample out(Instance(info_.speeds, sample_requirements(seed)));
        const Instance& inst = out.instance;

        // Job 1 alone on machine 2; fill machine 1 in index order until its load
        // enters [L_2 - 1/(phi s_1), L_2); every leftover job gets its own machine.
        ScheduleBuilder bad(inst);
        bad.assign(0, 1);
        const double window = 1.0 / (phi_ * s1_);
        int j = 1;
        for (; j < n_; ++j) {
            const double l1 = bad.load(0), l2 = bad.load(1);
            if (l1 >= l2 - window && l1 < l2) break;
            bad.assign(j, 0);
        }
        for (int machine = 2; j < n_; ++j, ++machine) bad.assign(j, machine);
        out.bad = bad.finish();

        std::vector<int> identity(n_);
        std::iota(identity.begin(), identity.end(), 0);
        out.good = Schedule(identity);

        const double q2 = inst.jobs().tail(n_ - 1).sum();
        out.events.push_back({"small_jobs_cover_fast_machine", q2 >= s1_, q2, s1_});

        out.bad_makespan = makespan(inst, out.bad);
        out.good_makespan = makespan(inst, out.good);
        out.reference_makespan = 1.0 / phi_;
        out.predicted_ratio = phi_ - 1.0;

        check_feasible(out);
        add_check(out, "good_within_reference", out.good_makespan <= out.reference_makespan + kDefaultEps, false,
                  "good makespan " + fmt(out.good_makespan));
        const Vector l = loads(inst, out.bad);
        add_check(out, "fill_window", l[0] >= l[1] - window - kDefaultEps && l[0] < l[1], true,
                  "L1 " + fmt(l[0]) + " L2 " + fmt(l[1]));
        add_check(out, "jump_optimal", is_jump_optimal(inst, out.bad), true);
        const double ratio = out.bad_makespan / out.reference_makespan;
        add_check(out, "ratio_above_prediction", ratio > out.predicted_ratio, true, "ratio " + fmt(ratio));
        return out;
    }

  private:
    double phi_;
    double s1_ = 0.0;
    int n_ = 0;
};

// ---------------------------------------------------------------------------

class LexList final : public Construction {
  public:
    LexList(double phi, ParameterMode mode, double cap) : phi_(phi) {
        if (!(phi >= 4.0)) throw InvalidArgument("lexlist family needs phi >= 4");
        for (double power = 4.0; power <= phi; power *= 4.0) ++r_;

        // r!/k! for k = 0..r
        std::vector<double> falling(r_ + 1, 1.0);
        for (int k = r_ - 1; k >= 0; --k) falling[k] = falling[k + 1] * (k + 1);
        double machines = 0.0;
        for (double c : falling) machines += c;
        require_size(machines, cap, "machine");
        require_size(machines - 1.0, cap, "job");

        info_.family = "lexlist";
        info_.mode = mode;
        info_.parameters = {{"phi", phi}, {"r", r_}};
        const double scale = std::ldexp(1.0, r_ + 1);
        info_.parameters.emplace_back("scale", scale);

        // fastest class first: M_r, M_{r-1}, ..., M_0
        machine_class_.resize(r_ + 1);
        std::vector<double> speeds;
        for (int k = r_; k >= 0; --k) {
            const int count = static_cast<int>(falling[k]);
            const int begin = static_cast<int>(speeds.size());
            speeds.insert(speeds.end(), count, std::ldexp(1.0, k));
            machine_class_[k] = {"M_" + std::to_string(k), begin, begin + count};
            info_.machine_classes.push_back(machine_class_[k]);
        }
        info_.speeds = Eigen::Map<Vector>(speeds.data(), static_cast<Eigen::Index>(speeds.size()));

        job_class_.resize(r_ + 1);
        int next = 0;
        for (int l = 1; l <= r_; ++l) {
            const int count = static_cast<int>(falling[l - 1]);
            job_class_[l] = {"J_" + std::to_string(l), next, next + count};
            next += count;
            info_.job_classes.push_back(job_class_[l]);
            const double low = std::ldexp(1.0, l);
            blocks_.push_back({job_class_[l], uniform_spec(low, low + scale / phi, scale, phi)});
        }
        info_.job_count = next;

        // Outer k = 1..r, inner l = r down to k: the next r!/l! jobs of J_l.
        std::vector<int> cursor(r_ + 1);
        for (int l = 1; l <= r_; ++l) cursor[l] = job_class_[l].begin;
        for (int k = 1; k <= r_; ++k)
            for (int l = r_; l >= k; --l)
                for (int t = 0; t < static_cast<int>(falling[l]); ++t) order_.push_back(cursor[l]++);
    }

    ConstructionSample sample(std::uint64_t seed) const override {
        ConstructionSample out(Instance(info_.speeds, sample_requirements(seed)));
        const Instance& inst = out.instance;

        ScheduleBuilder bad(inst);
        for (int j : order_) bad.list_place(j);
        out.bad = bad.finish();
        out.list_order = order_;

        // sigma': machine t of M_l takes job t of J_{l+1}; M_r stays empty
        std::vector<int> good(inst.job_count(), -1);
        for (int l = 0; l < r_; ++l) {
            const auto& machines = machine_class_[l];
            const auto& jobs = job_class_[l + 1];
            for (int t = 0; t < machines.end - machines.begin; ++t) good[jobs.begin + t] = machines.begin + t;
        }
        out.good = Schedule(std::move(good));

        out.bad_makespan = makespan(inst, out.bad);
        out.good_makespan = makespan(inst, out.good);
        out.reference_makespan = out.good_makespan;
        out.predicted_ratio = r_ / 3.0;

        check_feasible(out);
        add_check(out, "list_order_reproduces", list_schedule(inst, order_) == out.bad, false);

        const Vector l = loads(inst, out.bad);
        const auto by_machine = out.bad.jobs_by_machine(inst.machine_count());
        bool structure = true;
        bool window = true;
        std::string witness;
        for (int cls = 0; cls <= r_; ++cls) {
            const auto& machines = machine_class_[cls];
            const auto& jobs = cls > 0 ? job_class_[cls] : NamedRange{};
            for (int i = machines.begin; i < machines.end; ++i) {
                const auto& on = by_machine[i];
                const bool right_jobs = static_cast<int>(on.size()) == cls &&
                                        std::all_of(on.begin(), on.end(), [&](int j) {
                                            return j >= jobs.begin && j < jobs.end;
                                        });
                if (!right_jobs && structure) {
                    structure = false;
                    witness = "machine " + std::to_string(i + 1);
                }
                if (cls > 0 && !(l[i] >= cls - kDefaultEps && l[i] < cls + 1)) window = false;
            }
        }
        add_check(out, "class_structure", structure, false, witness);
        add_check(out, "load_window", window, false);
        add_check(out, "lex_jump_optimal", is_lex_jump_optimal(inst, out.bad), false);
        add_check(out, "good_below_three", out.good_makespan < 3.0, false, "good makespan " + fmt(out.good_makespan));
        const double ratio = out.bad_makespan / out.good_makespan;
        add_check(out, "ratio_at_least_prediction", ratio >= out.predicted_ratio - kDefaultEps, false,
                  "ratio " + fmt(ratio));
        return out;
    }

  private:
    double phi_;
    int r_ = 0;
    std::vector<NamedRange> machine_class_;  // indexed by k
    std::vector<NamedRange> job_class_;      // indexed by l, entry 0 unused
    std::vector<int> order_;
};

// ---------------------------------------------------------------------------

class RestrictedJump final : public Construction {
  public:
    RestrictedJump(int m, double s, int z, ParameterMode mode, double cap) : s_(s), z_(z) {
        if (m < 3) throw InvalidArgument("restricted-jump family needs m >= 3");
        if (!(s >= 1.0)) throw InvalidArgument("restricted-jump family needs s_max >= 1");
        if (z < 3) throw InvalidArgument("restricted-jump family needs an integer z > 2");
        const int m_prime = m - 2;
        k_prime_ = std::sqrt(m_prime / s);
        k_ = static_cast<int>(std::ceil(k_prime_));
        s_prime_ = std::max(1.0, s * k_prime_ / k_);

        info_.family = "restricted-jump";
        info_.mode = mode;
        const double scale_check = std::sqrt(m_prime * s);
        if (scale_check < 17.0) {
            const std::string msg = "sqrt((m-2) s_max) = " + fmt(scale_check) + " is below 17";
            if (mode == ParameterMode::strict) throw InvalidArgument(msg + "; use lenient mode");
            info_.warnings.push_back(msg);
        }
        if (k_prime_ < 1.0) {
            const std::string msg = "k' = sqrt((m-2)/s_max) = " + fmt(k_prime_) + " is below 1";
            if (mode == ParameterMode::strict) throw InvalidArgument(msg + "; use lenient mode");
            info_.warnings.push_back(msg);
        }

        const int fast = m_prime - (k_ - 1);
        const double j1 = std::floor(2.0 * z * s * k_prime_);
        const double j2 = std::ceil(32.0 * z * s * (m_prime - k_prime_));
        require_size(j1 + j2, cap, "job");
        const int n1 = static_cast<int>(j1), n2 = static_cast<int>(j2);

        info_.parameters = {{"m", m},         {"s_max", s},          {"z", z},   {"m_prime", m_prime},
                            {"k_prime", k_prime_}, {"k", k_}, {"s_prime", s_prime_}};
        // speeds non-increasing: M_3 (speed s), M_2 (speed s'), M_1 (speed 1)
        m3_ = {"M_3", 0, fast};
        m2_ = {"M_2", fast, fast + k_};
        m1_ = {"M_1", fast + k_, m};
        info_.machine_classes = {m3_, m2_, m1_};
        info_.speeds.resize(m);
        info_.speeds.segment(m3_.begin, fast).setConstant(s);
        info_.speeds.segment(m2_.begin, k_).setConstant(s_prime_);
        info_.speeds[m1_.begin] = 1.0;
        j1_ = {"J_1", 0, n1};
        j2_ = {"J_2", n1, n1 + n2};
        info_.job_classes = {j1_, j2_};
        info_.job_count = n1 + n2;
        blocks_ = {{j1_, uniform_spec(0.5, 1.0, 1.0, 2.0)}, {j2_, uniform_spec(0.0, 0.5, 1.0, 2.0)}};
        pool_ = {MachineSet::range(m2_.begin, m), MachineSet::range(0, m)};
    }

    ConstructionSample sample(std::uint64_t seed) const override {
        std::vector<int> set_of_job(info_.job_count, 1);
        std::fill(set_of_job.begin(), set_of_job.begin() + j1_.end, 0);
        ConstructionSample out(Instance(info_.speeds, sample_requirements(seed), pool_, std::move(set_of_job)));
        const Instance& inst = out.instance;
        const MachineSet m2 = machines_of(m2_), m3 = machines_of(m3_);
        const int slow = m1_.begin;
        const double window = 1.0 / (2.0 * s_prime_);

        auto filled = [&](const ScheduleBuilder& b) {
            const double l1 = b.load(slow);
            for (int i = m2_.begin; i < m2_.end; ++i)
                if (!(b.load(i) >= l1 - window && b.load(i) < l1)) return false;
            return true;
        };

        ScheduleBuilder bad(inst);
        for (int j = j1_.begin; j < j1_.end; ++j) bad.assign(j, slow);
        int j = j2_.begin;
        for (; j < j2_.end && !filled(bad); ++j) bad.list_place(j, &m2);
        for (; j < j2_.end; ++j) bad.list_place(j, &m3);
        const bool case_b = filled(bad);
        out.bad = bad.finish();

        ScheduleBuilder good(inst);
        for (int t = j1_.begin; t < j1_.end; ++t) good.list_place(t, &m2);
        for (int t = j2_.begin; t < j2_.end; ++t) good.list_place(t, &m3);
        out.good = good.finish();

        const double q = inst.jobs().segment(j2_.begin, j2_.end - j2_.begin).sum();
        const double threshold = 4.0 * z_ * (s_ * k_prime_) * (s_ * k_prime_);
        out.events.push_back({"flexible_volume_exceeds_m2_capacity", q > threshold, q, threshold});

        out.bad_makespan = makespan(inst, out.bad);
        out.good_makespan = makespan(inst, out.good);
        out.reference_makespan = out.good_makespan;
        const double floor_value = z_ * s_ * k_prime_ - 1.0;
        out.predicted_ratio = floor_value / (17.0 * z_);

        check_feasible(out);
        const Vector good_loads = loads(inst, out.good);
        const double m2_max = good_loads.segment(m2_.begin, k_).maxCoeff();
        const double m3_max = good_loads.segment(m3_.begin, m3_.end - m3_.begin).maxCoeff();
        add_check(out, "good_m2_loads", m2_max <= 2.0 * z_ + 1.0 + kDefaultEps, false, "max " + fmt(m2_max));
        add_check(out, "good_m3_loads", m3_max <= 16.0 * z_ + 1.0 + kDefaultEps, false, "max " + fmt(m3_max));
        add_check(out, "good_bound", out.good_makespan <= 17.0 * z_ + kDefaultEps, false,
                  "good makespan " + fmt(out.good_makespan));

        const Vector bad_loads = loads(inst, out.bad);
        add_check(out, "fill_case_b", case_b, true);
        bool unique = true;
        for (int i = 0; i < inst.machine_count(); ++i)
            if (i != slow && bad_loads[i] >= bad_loads[slow] - kDefaultEps) unique = false;
        add_check(out, "unique_critical", unique, true);
        add_check(out, "jump_optimal", is_jump_optimal(inst, out.bad), true);
        add_check(out, "makespan_floor", out.bad_makespan >= floor_value - kDefaultEps, true,
                  "makespan " + fmt(out.bad_makespan) + " floor " + fmt(floor_value));
        const double ratio = out.bad_makespan / out.good_makespan;
        add_check(out, "ratio_at_least_prediction", ratio >= out.predicted_ratio - kDefaultEps, true,
                  "ratio " + fmt(ratio));
        return out;
    }

  protected:
    std::optional<std::vector<MachineSet>> allowed_sets() const override {
        std::vector<MachineSet> out;
        out.reserve(info_.job_count);
        for (int j = 0; j < info_.job_count; ++j) out.push_back(pool_[j < j1_.end ? 0 : 1]);
        return out;
    }

  private:
    double s_;
    int z_;
    double k_prime_ = 0.0;
    int k_ = 0;
    double s_prime_ = 0.0;
    NamedRange m1_, m2_, m3_, j1_, j2_;
    std::vector<MachineSet> pool_;
};

// ---------------------------------------------------------------------------

// List scheduling onto one class of unit-speed machines. Agrees with
// ScheduleBuilder::list_place: when the two least-loaded machines are more
// than 2 eps apart the minimum wins outright, otherwise the index-order scan
// with its eps tie rule is replayed over the class.
class UnitClassPlacer {
  public:
    UnitClassPlacer(ScheduleBuilder& builder, const NamedRange& machines, double eps)
        : builder_(builder), machines_(machines), eps_(eps) {
        for (int i = machines.begin; i < machines.end; ++i) by_load_.insert({builder.load(i), i});
    }

    void place(int job, double p) {
        auto first = by_load_.begin();
        int target = first->second;
        auto second = std::next(first);
        if (second != by_load_.end() && second->first + p <= first->first + p + 2.0 * eps_) {
            double best = 0.0;
            target = -1;
            for (int i = machines_.begin; i < machines_.end; ++i) {
                const double completion = builder_.load(i) + p;
                if (target < 0 || completion < best - eps_) {
                    target = i;
                    best = completion;
                }
            }
        }
        by_load_.erase({builder_.load(target), target});
        builder_.assign(job, target);
        by_load_.insert({builder_.load(target), target});
    }

  private:
    ScheduleBuilder& builder_;
    NamedRange machines_;
    double eps_;
    std::set<std::pair<double, int>> by_load_;
};

class RestrictedLex final : public Construction {
  public:
    RestrictedLex(int k, ParameterMode mode, double cap) : k_(k), sizes_(recurrence_a(k)) {
        if (k < 68) {
            const std::string msg = "k = " + std::to_string(k) + " is below 68";
            if (mode == ParameterMode::strict) throw InvalidArgument(msg + "; use lenient mode");
            info_.warnings.push_back(msg);
        }
        const BigInt machines = sizes_.machine_count();
        const BigInt jobs = sizes_.job_count();
        const BigInt big_cap = static_cast<long long>(cap);
        if (machines > big_cap || jobs > big_cap)
            throw ResourceLimit("restricted-lex with k = " + std::to_string(k) + " needs " + machines.str() +
                                " machines and " + jobs.str() + " jobs, above the size cap " + fmt(cap));

        info_.family = "restricted-lex";
        info_.mode = mode;
        const int z = sizes_.z;
        info_.parameters = {{"k", k}, {"z", z}};
        std::vector<double> a(z + 1);
        for (int h = 0; h <= z; ++h) a[h] = sizes_.a[h].convert_to<double>();

        // M_h holds a_{h-1} unit machines, h = 1..z
        machine_class_.resize(z + 2);
        int next = 0;
        for (int h = 1; h <= z; ++h) {
            const int count = static_cast<int>(a[h - 1]);
            machine_class_[h] = {"M_" + std::to_string(h), next, next + count};
            next += count;
            info_.machine_classes.push_back(machine_class_[h]);
        }
        machine_class_[z + 1] = {"M_" + std::to_string(z + 1), next, next};
        info_.speeds = Vector::Ones(next);

        const DensitySpec type_a = uniform_spec(7.0 / 8.0, 1.0, 1.0, 8.0);
        const DensitySpec type_b = uniform_spec(0.0, 1.0 / 8.0, 1.0, 8.0);
        type_a_.resize(z + 1);
        type_b_.resize(z + 1);
        int job = 0;
        for (int h = 1; h <= z; ++h) {
            const int na = static_cast<int>(a[h]);
            const int nb = 17 * static_cast<int>(a[h - 1]);
            type_a_[h] = {"J_" + std::to_string(h) + "^A", job, job + na};
            type_b_[h] = {"J_" + std::to_string(h) + "^B", job + na, job + na + nb};
            job += na + nb;
            info_.job_classes.push_back(type_a_[h]);
            info_.job_classes.push_back(type_b_[h]);
            blocks_.push_back({type_a_[h], type_a});
            blocks_.push_back({type_b_[h], type_b});
        }
        info_.job_count = job;

        // pool entry 2(h-1): M_h (type B); 2(h-1)+1: M_h plus M_{h+1} (type A)
        for (int h = 1; h <= z; ++h) {
            pool_.push_back(machines_of(machine_class_[h]));
            pool_.push_back(MachineSet::range(machine_class_[h].begin, machine_class_[h + 1].end));
        }
        set_of_job_.resize(job);
        for (int h = 1; h <= z; ++h) {
            std::fill(set_of_job_.begin() + type_a_[h].begin, set_of_job_.begin() + type_a_[h].end, 2 * (h - 1) + 1);
            std::fill(set_of_job_.begin() + type_b_[h].begin, set_of_job_.begin() + type_b_[h].end, 2 * (h - 1));
        }
    }

    ConstructionSample sample(std::uint64_t seed) const override {
        ConstructionSample out(Instance(info_.speeds, sample_requirements(seed), pool_, set_of_job_));
        const Instance& inst = out.instance;
        const int z = sizes_.z;

        // sigma: LPT of J_h onto M_h, class by class
        ScheduleBuilder bad(inst);
        for (int h = 1; h <= z; ++h) {
            std::vector<int> jobs(type_b_[h].end - type_a_[h].begin);
            std::iota(jobs.begin(), jobs.end(), type_a_[h].begin);
            UnitClassPlacer placer(bad, machine_class_[h], kDefaultEps);
            for (int j : lpt_order(inst, jobs)) placer.place(j, inst.requirement(j));
        }
        out.bad = bad.finish();

        // sigma': type A of class h one per machine of M_{h+1} (the last class
        // stays on M_z), type B seventeen per machine of its own class
        std::vector<int> good(inst.job_count(), -1);
        for (int h = 1; h <= z; ++h) {
            const auto& target = h < z ? machine_class_[h + 1] : machine_class_[h];
            for (int t = 0; t < type_a_[h].end - type_a_[h].begin; ++t) good[type_a_[h].begin + t] = target.begin + t;
            for (int t = 0; t < type_b_[h].end - type_b_[h].begin; ++t)
                good[type_b_[h].begin + t] = machine_class_[h].begin + t / 17;
        }
        out.good = Schedule(std::move(good));

        const Vector& p = inst.jobs();
        for (int h = 1; h <= z; ++h) {
            const double mh = machine_class_[h].end - machine_class_[h].begin;
            const double qa = p.segment(type_a_[h].begin, type_a_[h].end - type_a_[h].begin).sum();
            const double qb = p.segment(type_b_[h].begin, type_b_[h].end - type_b_[h].begin).sum();
            const double ea = 15.0 / 16.0 * (type_a_[h].end - type_a_[h].begin);
            const double eb = 17.0 / 16.0 * mh;
            out.events.push_back({"type_a_sum_near_mean_" + std::to_string(h), std::abs(qa - ea) <= mh / 16.0,
                                  std::abs(qa - ea), mh / 16.0});
            out.events.push_back({"type_b_sum_near_mean_" + std::to_string(h), std::abs(qb - eb) <= mh / 32.0,
                                  std::abs(qb - eb), mh / 32.0});
        }

        out.bad_makespan = makespan(inst, out.bad);
        out.good_makespan = makespan(inst, out.good);
        out.reference_makespan = out.good_makespan;
        out.predicted_ratio = (15.0 * k_ / 16.0) / 5.0;

        check_feasible(out);
        add_check(out, "good_bound", out.good_makespan <= 5.0 + kDefaultEps, false,
                  "good makespan " + fmt(out.good_makespan));

        const Vector l = loads(inst, out.bad);
        double spread = 0.0, offset = 0.0;
        for (int h = 1; h <= z; ++h) {
            const auto& cls = machine_class_[h];
            const auto segment = l.segment(cls.begin, cls.end - cls.begin);
            spread = std::max(spread, segment.maxCoeff() - segment.minCoeff());
            const double mh = cls.end - cls.begin;
            const double center = (15.0 / 16.0 * (type_a_[h].end - type_a_[h].begin) + 17.0 / 16.0 * mh) / mh;
            offset = std::max(offset, (segment.array() - center).abs().maxCoeff());
        }
        add_check(out, "load_spread", spread <= 1.0 / 8.0 + kDefaultEps, true, "max spread " + fmt(spread));
        add_check(out, "load_center", offset <= 7.0 / 32.0 + kDefaultEps, true, "max offset " + fmt(offset));
        add_check(out, "lex_jump_optimal", is_lex_jump_optimal(inst, out.bad), true);
        const double floor_value = 15.0 * k_ / 16.0;
        add_check(out, "makespan_floor", out.bad_makespan >= floor_value - kDefaultEps, true,
                  "makespan " + fmt(out.bad_makespan));
        const double ratio = out.bad_makespan / out.good_makespan;
        add_check(out, "ratio_at_least_prediction", ratio >= out.predicted_ratio - kDefaultEps, true,
                  "ratio " + fmt(ratio));
        return out;
    }

  protected:
    std::optional<std::vector<MachineSet>> allowed_sets() const override {
        std::vector<MachineSet> out;
        out.reserve(set_of_job_.size());
        for (int id : set_of_job_) out.push_back(pool_[id]);
        return out;
    }

  private:
    int k_;
    ClassSizes sizes_;
    std::vector<NamedRange> machine_class_;  // indexed by h = 1..z+1
    std::vector<NamedRange> type_a_, type_b_;
    std::vector<MachineSet> pool_;
    std::vector<int> set_of_job_;
};

} // namespace

bool ConstructionSample::event_holds() const {
    return std::all_of(events.begin(), events.end(), [](const EventFlag& e) { return e.holds; });
}

bool ConstructionSample::checks_pass() const {
    const bool conditional_apply = event_holds();
    return std::all_of(checks.begin(), checks.end(),
                       [&](const CheckResult& c) { return c.pass || (c.conditional && !conditional_apply); });
}

const CheckResult* ConstructionSample::find_check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

SmoothedInstanceSpec Construction::spec() const {
    SmoothedInstanceSpec out;
    out.speeds = info_.speeds;
    out.allowed = allowed_sets();
    out.densities.resize(info_.job_count);
    for (const auto& block : blocks_)
        for (int j = block.jobs.begin; j < block.jobs.end; ++j) out.densities[j] = block.density;
    return out;
}

Vector Construction::sample_requirements(std::uint64_t seed) const {
    Vector p(info_.job_count);
    for (const auto& block : blocks_) {
        for (int j = block.jobs.begin; j < block.jobs.end; ++j) {
            Stream stream(seed, static_cast<std::uint64_t>(j));
            p[j] = block.density.quantile(stream.next_open01());
        }
    }
    return p;
}

std::unique_ptr<Construction> build_jump_related_lb(double phi, ParameterMode mode, double size_cap) {
    return std::make_unique<JumpRelated>(phi, mode, size_cap);
}

std::unique_ptr<Construction> build_lexlist_lb(double phi, ParameterMode mode, double size_cap) {
    return std::make_unique<LexList>(phi, mode, size_cap);
}

std::unique_ptr<Construction> build_restricted_jump_lb(int m, double s_max, int z, ParameterMode mode,
                                                       double size_cap) {
    return std::make_unique<RestrictedJump>(m, s_max, z, mode, size_cap);
}

std::unique_ptr<Construction> build_restricted_lex_lb(int k, ParameterMode mode, double size_cap) {
    return std::make_unique<RestrictedLex>(k, mode, size_cap);
}

std::unique_ptr<Construction> make_construction(const std::string& family, const ConstructionParams& params) {
    if (family == "jump-related") return build_jump_related_lb(params.phi, params.mode, params.size_cap);
    if (family == "lexlist") return build_lexlist_lb(params.phi, params.mode, params.size_cap);
    if (family == "restricted-jump")
        return build_restricted_jump_lb(params.m, params.s_max, params.z, params.mode, params.size_cap);
    if (family == "restricted-lex") return build_restricted_lex_lb(params.k, params.mode, params.size_cap);
    throw InvalidArgument("unknown construction family: " + family);
}

std::string to_string(ParameterMode mode) { return mode == ParameterMode::strict ? "strict" : "lenient"; }

} // namespace smoothsched
