// Command-line front end: simulate | pipeline | validity | tf | grid.
// Exit codes: 0 success, 1 I/O failure, 2 validation failure.

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tidalsim/batch.hpp"
#include "tidalsim/error.hpp"
#include "tidalsim/io.hpp"
#include "tidalsim/pipeline.hpp"

namespace {

using nlohmann::json;
using namespace tidalsim;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> preset;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON run configuration file");
    cmd->add_option("--seed", args.seed, "Override the run seed");
    cmd->add_option("--preset", args.preset,
                    "Cohort preset: paper-stated, reproduction or spread-study");
    cmd->add_option("--out", args.out_dir, "Output directory");
}

RunConfig resolve_config(const CommonArgs& args) {
    RunConfig cfg = args.config_path.empty() ? RunConfig{}
                                             : RunConfig::from_json_file(args.config_path);
    if (args.seed) cfg.seed = *args.seed;
    if (args.preset) cfg.preset = parse_preset(*args.preset);
    if (args.out_dir) cfg.out_dir = *args.out_dir;
    cfg.validate();
    return cfg;
}

std::string prepare_out_dir(const RunConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "'");
    return cfg.out_dir;
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

int cmd_simulate(const CommonArgs& common, double r_eq, double e_eq) {
    RunConfig cfg = resolve_config(common);
    prepare_out_dir(cfg);

    const LungParams params = split_equivalent({r_eq, e_eq});
    const VolumeSignal sig = simulate_bi(params, cfg.pressure, cfg.grid);
    const FeatureVector features = extract_features(sig);

    PipelineArtifacts artifacts;
    artifacts.out_dir = cfg.out_dir;
    const auto out_path = [&](const std::string& name) {
        artifacts.files.push_back(name);
        return join_path(cfg.out_dir, name);
    };
    write_signal_csv(sig, cfg.pressure, out_path("signal.csv"));
    write_loop_csv(pv_loop(sig, cfg.pressure), out_path("pv_loop.csv"));
    write_loop_csv(fv_loop(sig), out_path("fv_loop.csv"));
    write_manifest(cfg, "simulate", artifacts);

    json line;
    line["r_eq"] = r_eq;
    line["e_eq"] = e_eq;
    line["mu"] = features.mu;
    line["sigma"] = features.sigma;
    std::cout << line.dump() << '\n';
    return 0;
}

int cmd_pipeline(const CommonArgs& common) {
    const RunConfig cfg = resolve_config(common);
    const PipelineArtifacts artifacts = run_pipeline(cfg);
    std::cout << "wrote " << artifacts.files.size() << " artifacts to " << artifacts.out_dir
              << '\n';
    return 0;
}

int cmd_validity(const CommonArgs& common, const std::vector<double>& probe,
                 const std::string& measurements_path, bool ellipses) {
    RunConfig cfg = resolve_config(common);
    prepare_out_dir(cfg);

    PipelineArtifacts artifacts;
    artifacts.out_dir = cfg.out_dir;
    const auto out_path = [&](const std::string& name) {
        artifacts.files.push_back(name);
        return join_path(cfg.out_dir, name);
    };

    const SimConfig sim{cfg.pressure, cfg.grid};
    const FeaturePolygon poly =
        map_rectangle_boundary(cfg.rectangle, sim, cfg.samples_per_edge, cfg.exec);
    write_polygon_csv(poly, out_path("polygon.csv"));

    if (ellipses) {
        for (const ClassSpec& spec : default_class_specs(cfg.preset)) {
            const auto curve = map_ellipse(class_ellipse(spec), sim, cfg.ellipse_points,
                                           cfg.floors, cfg.exec);
            FeaturePolygon wrap;
            wrap.vertices = curve;
            write_polygon_csv(wrap, out_path(std::string("ellipse_") +
                                             label_name(spec.label) + ".csv"));
        }
    }

    std::vector<FeatureVector> measurements;
    if (!probe.empty()) measurements.push_back({probe[0], probe[1]});
    if (!measurements_path.empty()) {
        const auto rows = read_measurements_csv(measurements_path);
        measurements.insert(measurements.end(), rows.begin(), rows.end());
    }

    std::string verdict_lines;
    for (std::size_t i = 0; i < measurements.size(); ++i) {
        const ValidationResult result = validate_measurement(poly, measurements[i]);
        json line;
        line["id"] = i;
        line["verdict"] =
            result.verdict == Verdict::Accepted ? "accepted" : "wrong_acquisition";
        line["message"] = result.message;
        verdict_lines += line.dump() + "\n";
    }
    if (!measurements.empty()) {
        std::cout << verdict_lines;
        write_file(out_path("verdicts.jsonl"), verdict_lines);
    }
    write_manifest(cfg, "validity", artifacts);
    return 0;
}

int cmd_tf(const CommonArgs& common, double r_eq, double e_eq, double omega_min,
           double omega_max, std::size_t points) {
    RunConfig cfg = resolve_config(common);
    prepare_out_dir(cfg);
    if (!(omega_min > 0.0) || !(omega_max > omega_min) || points < 2) {
        throw std::invalid_argument("tf needs 0 < omega-min < omega-max and at least 2 points");
    }

    const LungParams params = split_equivalent({r_eq, e_eq});
    PipelineArtifacts artifacts;
    artifacts.out_dir = cfg.out_dir;
    artifacts.files.push_back("bode.csv");
    const std::string path = join_path(cfg.out_dir, "bode.csv");
    std::string body = "omega,magnitude,phase\n";
    const double log_lo = std::log10(omega_min);
    const double log_hi = std::log10(omega_max);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        const double omega = std::pow(10.0, log_lo + f * (log_hi - log_lo));
        const ComplexGain gain = transfer_function(params, omega);
        body += format_double(omega) + "," + format_double(gain.magnitude) + "," +
                format_double(gain.phase) + "\n";
    }
    write_file(path, body);
    write_manifest(cfg, "tf", artifacts);
    std::cout << "wrote " << path << '\n';
    return 0;
}

int cmd_grid(const CommonArgs& common, std::size_t n_per_class) {
    RunConfig cfg = resolve_config(common);
    if (n_per_class > 0) cfg.n_per_class = n_per_class;
    prepare_out_dir(cfg);

    // Cohort -> features -> scale on the full set, then cross-validated
    // accuracy per (gamma, C) cell on the scaled features.
    CohortConfig cohort_cfg;
    cohort_cfg.specs = default_class_specs(cfg.preset);
    cohort_cfg.n_per_class = cfg.n_per_class;
    cohort_cfg.seed = derive_seed(cfg.seed, 0);
    cohort_cfg.floors = cfg.floors;
    const auto cohort = generate_cohort(cohort_cfg, cfg.exec);
    const SimConfig sim{cfg.pressure, cfg.grid};
    const auto features = cohort_features(cohort, sim, cfg.exec);
    const DataMatrix x = DataMatrix::from_features(features);
    std::vector<int> y(cohort.size());
    for (std::size_t i = 0; i < cohort.size(); ++i) y[i] = static_cast<int>(cohort[i].label);
    const ScalerParams scaler = fit_scaler(x);
    const DataMatrix x_scaled = apply_scaler(scaler, x);

    const GridSearchResult result =
        grid_search_svm(x_scaled, y, cfg.grid_gammas, cfg.grid_cs, cfg.cv_folds,
                        derive_seed(cfg.seed, 4), cfg.learn.svm.tol, cfg.exec);

    PipelineArtifacts artifacts;
    artifacts.out_dir = cfg.out_dir;
    artifacts.files.push_back("grid.csv");
    write_grid_csv(result, join_path(cfg.out_dir, "grid.csv"));
    write_manifest(cfg, "grid", artifacts);

    std::cout << "best accuracy " << result.best_accuracy << " at gamma="
              << result.gammas[result.best_gamma_index] << ", C="
              << result.cs[result.best_c_index] << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();

    CLI::App app{"Tidal-breathing lung simulation and classification toolkit"};
    app.require_subcommand(1);

    CommonArgs sim_args;
    double sim_r = 3.0;
    double sim_e = 10.0;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "Simulate one subject and export signal, loops and features");
    add_common(sim_cmd, sim_args);
    sim_cmd->add_option("--r-eq", sim_r, "Equivalent resistance (cmH2O*s/L)");
    sim_cmd->add_option("--e-eq", sim_e, "Equivalent elastance (cmH2O/L)");

    CommonArgs pipe_args;
    CLI::App* pipe_cmd = app.add_subcommand(
        "pipeline", "Cohort, simulation, training and evaluation end to end");
    add_common(pipe_cmd, pipe_args);

    CommonArgs val_args;
    std::vector<double> probe;
    std::string measurements_path;
    bool ellipses = false;
    CLI::App* val_cmd =
        app.add_subcommand("validity", "Physiological validity polygon and verdicts");
    add_common(val_cmd, val_args);
    val_cmd->add_option("--probe", probe, "Single measurement: <mu> <sigma>")
        ->expected(2);
    val_cmd->add_option("--measurements", measurements_path,
                        "CSV of measurements (header mu,sigma)");
    val_cmd->add_flag("--ellipses", ellipses, "Also export per-class ellipse images");

    CommonArgs tf_args;
    double tf_r = 3.0;
    double tf_e = 10.0;
    double omega_min = 0.01;
    double omega_max = 100.0;
    std::size_t tf_points = 200;
    CLI::App* tf_cmd = app.add_subcommand("tf", "Transfer-function Bode data");
    add_common(tf_cmd, tf_args);
    tf_cmd->add_option("--r-eq", tf_r, "Equivalent resistance (cmH2O*s/L)");
    tf_cmd->add_option("--e-eq", tf_e, "Equivalent elastance (cmH2O/L)");
    tf_cmd->add_option("--omega-min", omega_min, "Lowest angular frequency (rad/s)");
    tf_cmd->add_option("--omega-max", omega_max, "Highest angular frequency (rad/s)");
    tf_cmd->add_option("--points", tf_points, "Number of log-spaced samples");

    CommonArgs grid_args;
    std::size_t grid_n = 0;
    CLI::App* grid_cmd =
        app.add_subcommand("grid", "Cross-validated SVM hyper-parameter heat map");
    add_common(grid_cmd, grid_args);
    grid_cmd->add_option("--n-per-class", grid_n,
                         "Cohort size per class for the search (default from config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion") {
            return app.exit(e);
        }
        app.exit(e);
        return 2;
    }

    try {
        if (sim_cmd->parsed()) return cmd_simulate(sim_args, sim_r, sim_e);
        if (pipe_cmd->parsed()) return cmd_pipeline(pipe_args);
        if (val_cmd->parsed()) {
            return cmd_validity(val_args, probe, measurements_path, ellipses);
        }
        if (tf_cmd->parsed()) {
            return cmd_tf(tf_args, tf_r, tf_e, omega_min, omega_max, tf_points);
        }
        if (grid_cmd->parsed()) return cmd_grid(grid_args, grid_n);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
