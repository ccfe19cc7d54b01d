// Command-line front end: track / eval / ablate / sweep / synth.
//
// Exit codes: 0 success, 2 configuration or input error, 3 I/O error,
// 4 solver divergence, 1 anything else.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gfs/config.hpp"
#include "gfs/diagnostics.hpp"
#include "gfs/metrics.hpp"
#include "gfs/parallel.hpp"
#include "gfs/results.hpp"
#include "gfs/sequence.hpp"
#include "gfs/synthetic.hpp"
#include "gfs/tracker.hpp"

namespace {

struct RunInput {
    gfs::LoadedSequence seq;
    std::string name;
};

std::string trim_copy(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

gfs::ConfigKV merged_config(const std::string& config_path, const std::vector<std::string>& sets) {
    gfs::ConfigKV kv;
    if (!config_path.empty()) kv = gfs::parse_config_file(config_path);
    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw gfs::ConfigError("--set expects key=value, got: " + s);
        kv[trim_copy(s.substr(0, eq))] = trim_copy(s.substr(eq + 1));
    }
    return kv;
}

RunInput load_run_input(const std::string& seq_dir, const std::string& synth_path,
                        long long seed, bool seed_given) {
    RunInput input;
    if (!seq_dir.empty()) {
        input.seq = gfs::load_sequence(seq_dir);
        input.name = input.seq.name;
        return input;
    }
    gfs::SyntheticSpec spec = gfs::synthetic_spec_from(gfs::parse_config_file(synth_path));
    if (seed_given) spec.seed = static_cast<std::uint64_t>(seed);
    const gfs::SyntheticSequence synth = gfs::generate_synthetic(spec);
    const bool external = spec.informative_channels + spec.noise_channels > 0;
    input.seq = gfs::as_loaded(synth, external);
    input.name = "synthetic";
    return input;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"gfsdcf: correlation-filter tracking with joint channel/spatial group "
                 "feature selection and temporally smoothed filters"};
    app.require_subcommand(1);
    app.footer(gfs::config_keys_help());

    int threads = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all available cores)");
    // Main-app options are consumed before the subcommand runs its callback.
    auto apply_threads = [&] { gfs::set_thread_budget(threads); };

    std::string seq_dir, synth_path, config_path, out_path;
    std::vector<std::string> sets;
    long long seed = 0;
    bool seed_given = false;

    auto add_input_options = [&](CLI::App* cmd, bool needs_out) {
        auto* sq = cmd->add_option("--seq", seq_dir, "Sequence directory (frames + groundtruth_rect.txt)");
        auto* sy = cmd->add_option("--synthetic", synth_path, "Synthetic sequence spec file");
        sq->excludes(sy);
        cmd->add_option("--config", config_path, "Tracker config file (key = value lines)");
        cmd->add_option("--set", sets, "Override one config key (key=value; flags win over the file)");
        cmd->add_option("--seed", seed, "Synthetic generator seed (overrides the spec file)")
            ->each([&](const std::string&) { seed_given = true; });
        auto* out = cmd->add_option("--out", out_path, "Results file to write (JSON)");
        if (needs_out) out->required();
    };

    // track
    CLI::App* track = app.add_subcommand("track", "Track one sequence and write a results file");
    add_input_options(track, true);
    track->callback([&] {
        apply_threads();
        if (seq_dir.empty() && synth_path.empty())
            throw gfs::ConfigError("track: one of --seq or --synthetic is required");
        RunInput input = load_run_input(seq_dir, synth_path, seed, seed_given);
        const gfs::TrackerConfig cfg = gfs::tracker_config_from(merged_config(config_path, sets));
        const gfs::TrackResult result =
            gfs::track_sequence(input.seq, input.seq.gt.front(), cfg);
        gfs::MetricsReport metrics;
        const gfs::MetricsReport* mp = nullptr;
        if (!input.seq.gt.empty()) {
            metrics = gfs::compute_metrics(result.boxes, input.seq.gt);
            mp = &metrics;
        }
        gfs::RankDiagnostic rank;
        const gfs::RankDiagnostic* rp = nullptr;
        if (!result.filter_history.empty()) {
            rank = gfs::rank_diagnostic(result.filter_history);
            rp = &rank;
        }
        gfs::write_json_file(out_path, gfs::track_result_json(input.name, result, mp, rp));
        if (mp) std::cout << gfs::metrics_table(metrics);
    });

    // eval
    std::string results_path, gt_path, csv_prefix;
    double dp_threshold = 20.0, op_iou = 0.5;
    CLI::App* eval = app.add_subcommand("eval", "Score a results file against ground truth");
    eval->add_option("--results", results_path, "Results file produced by `track`")->required();
    eval->add_option("--gt", gt_path, "Ground-truth file (groundtruth_rect.txt convention)")->required();
    eval->add_option("--dp-threshold", dp_threshold, "Distance-precision threshold, pixels");
    eval->add_option("--op-iou", op_iou, "Overlap-precision IoU threshold");
    eval->add_option("--csv", csv_prefix, "Write <prefix>_precision.csv / <prefix>_success.csv");
    eval->callback([&] {
        apply_threads();
        const std::vector<gfs::BoundingBox> pred =
            gfs::boxes_from_results(gfs::read_json_file(results_path));
        const std::vector<gfs::BoundingBox> gt = gfs::parse_groundtruth(gt_path);
        const gfs::MetricsReport m = gfs::compute_metrics(pred, gt, dp_threshold, op_iou);
        std::cout << gfs::metrics_table(m);
        std::cout << gfs::metrics_json(m).dump(2) << "\n";
        if (!csv_prefix.empty()) {
            gfs::write_curve_csv(csv_prefix + "_precision.csv", m.precision_curve);
            gfs::write_curve_csv(csv_prefix + "_success.csv", m.success_curve);
        }
    });

    // ablate
    CLI::App* ablate = app.add_subcommand("ablate", "Run the five component variants");
    add_input_options(ablate, true);
    ablate->callback([&] {
        apply_threads();
        if (seq_dir.empty() && synth_path.empty())
            throw gfs::ConfigError("ablate: one of --seq or --synthetic is required");
        RunInput input = load_run_input(seq_dir, synth_path, seed, seed_given);
        const gfs::TrackerConfig cfg = gfs::tracker_config_from(merged_config(config_path, sets));
        const auto outcomes = gfs::run_ablation(input.seq, cfg);
        gfs::write_json_file(out_path, gfs::ablation_json(input.name, outcomes));
        for (const auto& [variant, out] : outcomes) {
            if (out.failed)
                std::printf("%-9s FAILED: %s\n", variant.c_str(), out.error.c_str());
            else
                std::printf("%-9s mean CLE %8.3f px   AUC %6.3f\n", variant.c_str(),
                            out.metrics.mean_cle, out.metrics.auc);
        }
    });

    // sweep
    std::vector<double> ls_grid, lc_grid, lt_grid;
    CLI::App* sweep = app.add_subcommand("sweep", "Regularisation sensitivity sweep");
    add_input_options(sweep, true);
    sweep->add_option("--lambda-spatial", ls_grid, "Spatial weights to sweep")->delimiter(',');
    sweep->add_option("--lambda-channel", lc_grid, "Channel weights to sweep")->delimiter(',');
    sweep->add_option("--lambda-temporal", lt_grid, "Temporal weights to sweep")->delimiter(',');
    sweep->callback([&] {
        apply_threads();
        if (seq_dir.empty() && synth_path.empty())
            throw gfs::ConfigError("sweep: one of --seq or --synthetic is required");
        RunInput input = load_run_input(seq_dir, synth_path, seed, seed_given);
        const gfs::TrackerConfig cfg = gfs::tracker_config_from(merged_config(config_path, sets));
        if (ls_grid.empty()) ls_grid = {cfg.reg.lambda_spatial};
        if (lc_grid.empty()) lc_grid = {cfg.reg.lambda_channel};
        if (lt_grid.empty()) lt_grid = {cfg.reg.lambda_temporal};
        const auto points = gfs::sensitivity_sweep(input.seq, cfg, ls_grid, lc_grid, lt_grid);
        gfs::write_json_file(out_path, gfs::sweep_json(input.name, points));
        for (const gfs::SweepPoint& p : points)
            std::printf("ls %-8g lc %-8g lt %-8g  AUC %6.3f  mean CLE %8.3f px\n",
                        p.lambda_spatial, p.lambda_channel, p.lambda_temporal, p.auc, p.mean_cle);
    });

    // synth
    std::string spec_path, synth_out;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic sequence directory");
    synth->add_option("--spec", spec_path, "Synthetic sequence spec file")->required();
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--seed", seed, "Generator seed (overrides the spec file)")
        ->each([&](const std::string&) { seed_given = true; });
    synth->callback([&] {
        apply_threads();
        gfs::SyntheticSpec spec = gfs::synthetic_spec_from(gfs::parse_config_file(spec_path));
        if (seed_given) spec.seed = static_cast<std::uint64_t>(seed);
        gfs::write_synthetic(synth_out, gfs::generate_synthetic(spec));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const gfs::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const gfs::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gfs::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gfs::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gfs::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gfs::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gfs::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gfs::ConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gfs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
