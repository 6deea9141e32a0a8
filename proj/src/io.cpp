#include "smoothsched/io.hpp"

#include "smoothsched/errors.hpp"

#include <fstream>
#include <stdexcept>

namespace smoothsched {

namespace {

std::vector<int> one_based(const std::vector<int>& indices) {
    std::vector<int> out(indices);
    for (int& i : out) ++i;
    return out;
}

MachineSet machine_set_from_json(const Json& json, int machine_count) {
    std::vector<int> indices;
    for (const auto& v : json) {
        const int i = v.get<int>();
        if (i < 1 || i > machine_count) throw InvalidArgument("allowed machine index out of range");
        indices.push_back(i - 1);
    }
    if (indices.empty()) throw InvalidArgument("allowed machine sets must be non-empty");
    return MachineSet::from_indices(std::move(indices));
}

Vector vector_from_json(const Json& json) {
    if (!json.is_array()) throw InvalidArgument("expected an array of numbers");
    Vector out(static_cast<Eigen::Index>(json.size()));
    for (std::size_t k = 0; k < json.size(); ++k) out[static_cast<Eigen::Index>(k)] = json[k].get<double>();
    return out;
}

Json vector_to_json(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

template <class F>
auto wrap_json_errors(F&& f) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("malformed JSON input: ") + e.what());
    }
}

} // namespace

Json to_json(const Instance& instance) {
    Json jobs = Json::array();
    for (int j = 0; j < instance.job_count(); ++j) {
        Json job{{"p", instance.requirement(j)}};
        if (instance.restricted()) job["allowed"] = one_based(instance.allowed(j).indices());
        jobs.push_back(std::move(job));
    }
    return {{"speeds", vector_to_json(instance.speeds())}, {"jobs", std::move(jobs)}};
}

Instance instance_from_json(const Json& json) {
    return wrap_json_errors([&] {
        Vector speeds = vector_from_json(json.at("speeds"));
        const auto& jobs = json.at("jobs");
        Vector p(static_cast<Eigen::Index>(jobs.size()));
        std::vector<MachineSet> allowed;
        bool any_allowed = false;
        for (const auto& job : jobs) any_allowed = any_allowed || (job.is_object() && job.contains("allowed"));
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            const auto& job = jobs[j];
            p[static_cast<Eigen::Index>(j)] = job.is_number() ? job.get<double>() : job.at("p").get<double>();
            if (!any_allowed) continue;
            if (job.is_object() && job.contains("allowed"))
                allowed.push_back(machine_set_from_json(job.at("allowed"), static_cast<int>(speeds.size())));
            else
                allowed.push_back(MachineSet::range(0, static_cast<int>(speeds.size())));
        }
        if (any_allowed) return Instance(std::move(speeds), std::move(p), std::move(allowed));
        return Instance(std::move(speeds), std::move(p));
    });
}

Json to_json(const Schedule& schedule) { return {{"assignment", one_based(schedule.assignment())}}; }

Schedule schedule_from_json(const Json& json) {
    return wrap_json_errors([&] {
        std::vector<int> assignment = json.at("assignment").get<std::vector<int>>();
        for (int& i : assignment) --i;
        return Schedule(std::move(assignment));
    });
}

Json to_json(const DensitySpec& density) {
    Json pieces = Json::array();
    for (const auto& piece : density.pieces) pieces.push_back({{"a", piece.a}, {"b", piece.b}, {"h", piece.h}});
    return {{"pieces", std::move(pieces)}, {"scale", density.scale}, {"phi", density.phi}};
}

DensitySpec density_from_json(const Json& json) {
    return wrap_json_errors([&] {
        DensitySpec out;
        out.scale = json.value("scale", 1.0);
        double highest = 0.0;
        for (const auto& piece : json.at("pieces")) {
            out.pieces.push_back({piece.at("a").get<double>(), piece.at("b").get<double>(), piece.at("h").get<double>()});
            highest = std::max(highest, out.pieces.back().h);
        }
        out.phi = json.contains("phi") ? json.at("phi").get<double>() : std::max(1.0, highest * out.scale);
        out.validate();
        return out;
    });
}

Json to_json(const SmoothedInstanceSpec& spec) {
    Json jobs = Json::array();
    for (int j = 0; j < spec.job_count(); ++j) {
        Json job{{"density", to_json(spec.densities[j])}};
        if (spec.allowed) job["allowed"] = one_based((*spec.allowed)[j].indices());
        jobs.push_back(std::move(job));
    }
    return {{"speeds", vector_to_json(spec.speeds)}, {"jobs", std::move(jobs)}};
}

SmoothedInstanceSpec spec_from_json(const Json& json) {
    return wrap_json_errors([&] {
        SmoothedInstanceSpec out;
        out.speeds = vector_from_json(json.at("speeds"));
        const int m = static_cast<int>(out.speeds.size());
        bool any_allowed = false;
        for (const auto& job : json.at("jobs")) any_allowed = any_allowed || job.contains("allowed");
        if (any_allowed) out.allowed.emplace();
        for (const auto& job : json.at("jobs")) {
            out.densities.push_back(density_from_json(job.at("density")));
            if (any_allowed)
                out.allowed->push_back(job.contains("allowed") ? machine_set_from_json(job.at("allowed"), m)
                                                               : MachineSet::range(0, m));
        }
        out.validate();
        return out;
    });
}

Json to_json(const ScheduleReport& report) {
    return {{"ok", report.ok},
            {"wrong_length", report.wrong_length},
            {"out_of_range_jobs", one_based(report.out_of_range_jobs)},
            {"disallowed_jobs", one_based(report.disallowed_jobs)}};
}

Json to_json(const Classification& classification) {
    Json classes = Json::array();
    for (const auto& members : classification.members) classes.push_back(one_based(members));
    return {{"c", classification.c},
            {"optimum", classification.optimum},
            {"optimum_mode", to_string(classification.mode)},
            {"h_sizes", classification.prefix},
            {"classes", std::move(classes)}};
}

Json to_json(const StructureReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks)
        checks.push_back(
            {{"name", c.name}, {"pass", c.pass}, {"vacuous", c.vacuous}, {"witnesses", c.witnesses}, {"detail", c.detail}});
    return {{"classification", to_json(report.classification)},
            {"advisory", report.advisory},
            {"all_pass", report.all_pass()},
            {"checks", std::move(checks)}};
}

Json to_json(const RatioEstimate& estimate) {
    return {{"count", estimate.count},
            {"mean", estimate.mean},
            {"ci_low", estimate.ci_low},
            {"ci_high", estimate.ci_high},
            {"delta", estimate.delta},
            {"range", estimate.range},
            {"worst_is_lower_bound", estimate.worst_is_lower_bound},
            {"optimum_is_lower_bound", estimate.optimum_is_lower_bound},
            {"ratios", estimate.ratios}};
}

Json metadata_json(const Construction& construction, const ConstructionSample& sample) {
    const auto& info = construction.info();
    auto ranges = [](const std::vector<NamedRange>& list) {
        Json out = Json::array();
        for (const auto& r : list) out.push_back({{"name", r.name}, {"first", r.begin + 1}, {"last", r.end}});
        return out;
    };
    Json parameters = Json::object();
    for (const auto& [name, value] : info.parameters) parameters[name] = value;
    Json events = Json::array();
    for (const auto& e : sample.events)
        events.push_back({{"name", e.name}, {"holds", e.holds}, {"value", e.value}, {"threshold", e.threshold}});
    Json checks = Json::array();
    for (const auto& c : sample.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"conditional", c.conditional}, {"detail", c.detail}});
    return {{"family", info.family},
            {"mode", to_string(info.mode)},
            {"parameters", std::move(parameters)},
            {"machine_classes", ranges(info.machine_classes)},
            {"job_classes", ranges(info.job_classes)},
            {"warnings", info.warnings},
            {"events", std::move(events)},
            {"event_holds", sample.event_holds()},
            {"checks", std::move(checks)},
            {"checks_pass", sample.checks_pass()},
            {"bad_makespan", sample.bad_makespan},
            {"good_makespan", sample.good_makespan},
            {"reference_makespan", sample.reference_makespan},
            {"predicted_ratio", sample.predicted_ratio}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InvalidArgument("cannot parse " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

void write_json_file(const std::string& path, const Json& json) { write_text_file(path, json.dump(2) + "\n"); }

} // namespace smoothsched
