// Command-line driver: sample, solve, verify, construct, estimate, sweep.

#include "smoothsched/algorithms.hpp"
#include "smoothsched/classification.hpp"
#include "smoothsched/constructions.hpp"
#include "smoothsched/errors.hpp"
#include "smoothsched/harness.hpp"
#include "smoothsched/io.hpp"
#include "smoothsched/oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

using namespace smoothsched;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    double eps = kDefaultEps;
    double budget = kDefaultBudget;
    bool lenient = false;
};

void emit(const Json& json, const std::string& path) {
    if (path.empty())
        std::cout << json.dump(2) << "\n";
    else
        write_json_file(path, json);
}

void emit_text(const std::string& text, const std::string& path) {
    if (path.empty())
        std::cout << text;
    else
        write_text_file(path, text);
}

std::vector<int> zero_based(std::vector<int> order) {
    for (int& j : order) --j;
    return order;
}

std::vector<int> one_based(std::vector<int> order) {
    for (int& j : order) ++j;
    return order;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local search scheduling on related and restricted machines under smoothed inputs"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Root seed for every random stream")->capture_default_str();
    app.add_option("--eps", g.eps, "Tolerance for load comparisons")->capture_default_str();
    app.add_option("--budget", g.budget, "Cap on enumerated assignments for exact oracles")->capture_default_str();
    app.add_flag("--lenient", g.lenient, "Run constructions with unmet parameter premises, with warnings");

    // gen
    auto* gen = app.add_subcommand("gen", "Sample an instance from a smoothed spec");
    std::string gen_spec, gen_out, gen_spec_out, gen_family = "low";
    int gen_n = 6, gen_m = 6;
    double gen_phi = 2.0;
    gen->add_option("--spec", gen_spec, "Smoothed spec JSON; overrides --n/--m/--phi/--family");
    gen->add_option("--n", gen_n, "Number of jobs")->capture_default_str();
    gen->add_option("--m", gen_m, "Number of machines, speeds m..1")->capture_default_str();
    gen->add_option("--phi", gen_phi, "Density bound")->capture_default_str();
    gen->add_option("--family", gen_family, "low | high | spread")->capture_default_str();
    gen->add_option("--spec-out", gen_spec_out, "Also write the spec used");
    gen->add_option("--out", gen_out, "Instance JSON path (stdout if omitted)");

    // solve
    auto* solve = app.add_subcommand("solve", "Run a heuristic or the exact oracle on an instance");
    std::string solve_instance, solve_algo = "lpt", solve_start, solve_pivot = "first", solve_out;
    std::vector<int> solve_order;
    solve->add_option("--instance", solve_instance, "Instance JSON")->required();
    solve->add_option("--algo", solve_algo, "list | lpt | jump | lex-jump | optimal")->capture_default_str();
    solve->add_option("--order", solve_order, "1-based job order for list scheduling")->delimiter(',');
    solve->add_option("--start", solve_start, "Starting schedule JSON for local search (default: LPT)");
    solve->add_option("--pivot", solve_pivot, "first | max-gain | min-gain | random")->capture_default_str();
    solve->add_option("--out", solve_out, "Schedule JSON path (stdout if omitted)");

    // verify
    auto* verify = app.add_subcommand("verify", "Check a schedule: feasibility, local optimality, structure");
    std::string verify_instance, verify_schedule, verify_out;
    std::vector<int> verify_order;
    std::optional<double> verify_optimum;
    verify->add_option("--instance", verify_instance, "Instance JSON")->required();
    verify->add_option("--schedule", verify_schedule, "Schedule JSON")->required();
    verify->add_option("--order", verify_order, "1-based job order witnessing the near-list property")
        ->delimiter(',');
    verify->add_option("--optimum", verify_optimum, "Upper bound on the optimum (default: exact oracle)");
    verify->add_option("--out", verify_out, "Report JSON path (stdout if omitted)");

    // construct
    auto* construct = app.add_subcommand("construct", "Sample a lower-bound construction");
    std::string construct_family, construct_dir;
    ConstructionParams params;
    construct->add_option("--family", construct_family, "jump-related | lexlist | restricted-jump | restricted-lex")
        ->required();
    construct->add_option("--phi", params.phi, "Density bound (jump-related, lexlist)");
    construct->add_option("--m", params.m, "Machine count (restricted-jump)");
    construct->add_option("--s-max", params.s_max, "Fastest speed (restricted-jump)");
    construct->add_option("--z", params.z, "Depth parameter (restricted-jump)");
    construct->add_option("--k", params.k, "Class parameter (restricted-lex)");
    construct->add_option("--size-cap", params.size_cap, "Largest machine or job count allowed")->capture_default_str();
    construct->add_option("--out-dir", construct_dir,
                          "Write instance.json, bad.json, good.json and metadata.json here");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Estimate the smoothed worst-local-optimum ratio");
    std::string est_spec, est_family = "low", est_neighborhood = "jump", est_method = "exact", est_pivot = "first",
                est_out;
    int est_n = 6, est_m = 6;
    double est_phi = 2.0;
    EstimateOptions options;
    estimate->add_option("--spec", est_spec, "Smoothed spec JSON; overrides --n/--m/--phi/--family");
    estimate->add_option("--n", est_n, "Number of jobs")->capture_default_str();
    estimate->add_option("--m", est_m, "Number of machines")->capture_default_str();
    estimate->add_option("--phi", est_phi, "Density bound")->capture_default_str();
    estimate->add_option("--family", est_family, "low | high | spread")->capture_default_str();
    estimate->add_option("--neighborhood", est_neighborhood, "jump | lex-jump")->capture_default_str();
    estimate->add_option("--method", est_method, "exact | multistart")->capture_default_str();
    estimate->add_option("--starts", options.starts, "Local search runs per trial (multistart)")->capture_default_str();
    estimate->add_option("--pivot", est_pivot, "Pivot rule (multistart)")->capture_default_str();
    estimate->add_option("--trials", options.trials, "Sampled instances")->capture_default_str();
    estimate->add_option("--delta", options.delta, "Confidence level parameter")->capture_default_str();
    estimate->add_option("--threads", options.threads, "Worker count, 0 for automatic")->capture_default_str();
    estimate->add_option("--out", est_out, "Estimate JSON path (stdout if omitted)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Grid of estimates or construction samples as CSV");
    std::vector<double> sweep_phis, sweep_values;
    std::string sweep_family = "spread", sweep_construction, sweep_neighborhood = "jump", sweep_method = "exact",
                sweep_pivot = "first", sweep_out;
    SmoothedGrid smoothed;
    ConstructionGrid cgrid;
    sweep->add_option("--phis", sweep_phis, "Comma-separated phi grid")->delimiter(',');
    sweep->add_option("--n", smoothed.n, "Number of jobs")->capture_default_str();
    sweep->add_option("--m", smoothed.m, "Number of machines")->capture_default_str();
    sweep->add_option("--family", sweep_family, "low | high | spread")->capture_default_str();
    sweep->add_option("--neighborhood", sweep_neighborhood, "jump | lex-jump")->capture_default_str();
    sweep->add_option("--method", sweep_method, "exact | multistart")->capture_default_str();
    sweep->add_option("--starts", smoothed.options.starts, "Local search runs per trial")->capture_default_str();
    sweep->add_option("--pivot", sweep_pivot, "Pivot rule (multistart)")->capture_default_str();
    sweep->add_option("--trials", smoothed.options.trials, "Trials per grid point")->capture_default_str();
    sweep->add_option("--delta", smoothed.options.delta, "Confidence level parameter")->capture_default_str();
    sweep->add_option("--construction", sweep_construction,
                      "Sweep a construction family instead; grid values from --values");
    sweep->add_option("--values", sweep_values,
                      "Comma-separated phi (jump-related, lexlist), m (restricted-jump) or k (restricted-lex)")
        ->delimiter(',');
    sweep->add_option("--samples", cgrid.samples, "Samples per construction grid point")->capture_default_str();
    sweep->add_option("--s-max", cgrid.params.s_max, "Fastest speed (restricted-jump)");
    sweep->add_option("--z", cgrid.params.z, "Depth parameter (restricted-jump)");
    sweep->add_option("--out", sweep_out, "CSV path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);
    const ParameterMode mode = g.lenient ? ParameterMode::lenient : ParameterMode::strict;

    try {
        if (*gen) {
            const auto spec = gen_spec.empty() ? make_smoothed_spec(gen_n, gen_m, gen_phi, gen_family)
                                               : spec_from_json(read_json_file(gen_spec));
            if (!gen_spec_out.empty()) write_json_file(gen_spec_out, to_json(spec));
            emit(to_json(sample_instance(spec, g.seed)), gen_out);
        } else if (*solve) {
            const Instance instance = instance_from_json(read_json_file(solve_instance));
            Json out;
            if (solve_algo == "list") {
                std::vector<int> order = zero_based(solve_order);
                if (solve_order.empty())
                    for (int j = 0; j < instance.job_count(); ++j) order.push_back(j);
                out = to_json(list_schedule(instance, order, nullptr, g.eps));
                out["order"] = one_based(order);
            } else if (solve_algo == "lpt") {
                out = to_json(lpt_schedule(instance, nullptr, g.eps));
            } else if (solve_algo == "jump" || solve_algo == "lex-jump") {
                const Schedule start = solve_start.empty() ? lpt_schedule(instance, nullptr, g.eps)
                                                           : schedule_from_json(read_json_file(solve_start));
                const auto result = local_search(instance, start, parse_neighborhood(solve_algo),
                                                 PivotRule::parse(solve_pivot, g.seed), g.eps);
                out = to_json(result.schedule);
                out["steps"] = result.steps;
                out["sorted_load_trace"] = result.sorted_load_trace;
            } else if (solve_algo == "optimal") {
                out = to_json(optimal_makespan_exact(instance, g.budget).schedule);
            } else {
                throw InvalidArgument("unknown algorithm '" + solve_algo + "'");
            }
            out["makespan"] = makespan(instance, schedule_from_json(out));
            emit(out, solve_out);
        } else if (*verify) {
            const Instance instance = instance_from_json(read_json_file(verify_instance));
            const Schedule schedule = schedule_from_json(read_json_file(verify_schedule));
            const auto report = validate_schedule(instance, schedule);
            Json out{{"feasibility", to_json(report)}};
            if (report.ok) {
                out["makespan"] = makespan(instance, schedule);
                out["jump_optimal"] = is_jump_optimal(instance, schedule, g.eps);
                out["lex_jump_optimal"] = is_lex_jump_optimal(instance, schedule, g.eps);

                std::optional<std::vector<int>> order;
                if (!verify_order.empty())
                    order = zero_based(verify_order);
                else if (instance.job_count() <= 8)
                    order = find_near_list_order(instance, schedule, 8, g.eps);
                const bool near_list = order && is_near_list(instance, schedule, *order, g.eps);
                out["near_list"] = near_list;
                if (order) out["near_list_order"] = one_based(*order);

                std::optional<OptimalSchedule> optimal;
                if (!verify_optimum && assignment_space(instance) <= g.budget)
                    optimal = optimal_makespan_exact(instance, g.budget);
                if (optimal) out["optimum"] = optimal->makespan;
                if (near_list && (optimal || verify_optimum)) {
                    const double opt = optimal ? optimal->makespan : *verify_optimum;
                    const auto structure =
                        validate_nl_structure(instance, schedule, *order, opt,
                                              optimal ? OptimumMode::exact : OptimumMode::upper_bound,
                                              optimal ? &optimal->schedule : nullptr, g.eps);
                    out["structure"] = to_json(structure);
                }
            }
            emit(out, verify_out);
        } else if (*construct) {
            params.mode = mode;
            const auto construction = make_construction(construct_family, params);
            const auto sample = construction->sample(g.seed);
            const Json meta = metadata_json(*construction, sample);
            if (!construct_dir.empty()) {
                std::filesystem::create_directories(construct_dir);
                const std::filesystem::path dir(construct_dir);
                write_json_file((dir / "instance.json").string(), to_json(sample.instance));
                Json bad = to_json(sample.bad);
                if (!sample.list_order.empty()) bad["order"] = one_based(sample.list_order);
                write_json_file((dir / "bad.json").string(), bad);
                write_json_file((dir / "good.json").string(), to_json(sample.good));
                write_json_file((dir / "metadata.json").string(), meta);
            }
            std::cout << meta.dump(2) << "\n";
        } else if (*estimate) {
            const auto spec = est_spec.empty() ? make_smoothed_spec(est_n, est_m, est_phi, est_family)
                                               : spec_from_json(read_json_file(est_spec));
            options.neighborhood = parse_neighborhood(est_neighborhood);
            options.method = parse_method(est_method);
            options.pivot = PivotRule::parse(est_pivot).kind;
            options.seed = g.seed;
            options.budget = g.budget;
            options.eps = g.eps;
            Json out = to_json(estimate_smoothed_ratio(spec, options));
            out["method"] = to_string(options.method);
            out["neighborhood"] = to_string(options.neighborhood);
            emit(out, est_out);
        } else if (*sweep) {
            if (!sweep_construction.empty()) {
                cgrid.family = sweep_construction;
                cgrid.values = sweep_values;
                cgrid.params.mode = mode;
                cgrid.seed = g.seed;
                cgrid.delta = smoothed.options.delta;
                emit_text(sweep_construction_csv(cgrid), sweep_out);
            } else {
                smoothed.phis = sweep_phis;
                smoothed.family = sweep_family;
                smoothed.options.neighborhood = parse_neighborhood(sweep_neighborhood);
                smoothed.options.method = parse_method(sweep_method);
                smoothed.options.pivot = PivotRule::parse(sweep_pivot).kind;
                smoothed.options.seed = g.seed;
                smoothed.options.budget = g.budget;
                smoothed.options.eps = g.eps;
                emit_text(sweep_smoothed_csv(smoothed), sweep_out);
            }
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --budget or use a smaller instance)\n";
        return 3;
    } catch (const ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
