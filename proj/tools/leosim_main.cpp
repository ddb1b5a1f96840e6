// leosim command line: run scenarios, compare routers, sweep tile
// parameters, and emit scenario presets. All outputs are CSV/JSON/SVG files
// under --out.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "leosim/config.hpp"
#include "leosim/harness.hpp"
#include "leosim/svg.hpp"

namespace fs = std::filesystem;
using namespace leosim;

namespace {

constexpr int kExitConfigError = 2;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string run_and_dump(const SimConfig& cfg, RouterKind router, const fs::path& out_dir,
                         std::vector<RunResult>* collected) {
    fs::create_directories(out_dir);
    std::string router_name = router_kind_name(router);
    for (std::uint64_t seed : cfg.seeds) {
        RunResult run = run_simulation_with(cfg, router, seed);
        fs::path csv = out_dir / ("metrics_" + router_name + "_s" + std::to_string(seed) + ".csv");
        write_metrics_csv(csv.string(), run.records, router_name, seed);
        if (collected != nullptr) collected->push_back(std::move(run));
    }
    return router_name;
}

svg::Series to_series(const RunResult& run, double value(const MetricsRecord&),
                      const std::string& label, double slot_duration_s) {
    svg::Series s;
    s.label = label;
    for (const auto& rec : run.records) {
        s.x.push_back(rec.slot * slot_duration_s / 3600.0);
        s.y.push_back(value(rec));
    }
    return s;
}

void emit_run_plots(const std::vector<RunResult>& runs, const SimConfig& cfg,
                    const fs::path& out_dir) {
    if (runs.empty()) return;
    std::vector<svg::Series> cost, drop, tp;
    for (const auto& run : runs) {
        std::string label =
            router_kind_name(run.router) + " s" + std::to_string(run.seed);
        cost.push_back(to_series(
            run, [](const MetricsRecord& r) { return r.cost_s; }, label, cfg.slot_duration_s));
        drop.push_back(to_series(
            run, [](const MetricsRecord& r) { return r.drop_rate; }, label, cfg.slot_duration_s));
        tp.push_back(to_series(
            run, [](const MetricsRecord& r) { return r.throughput_bps; }, label,
            cfg.slot_duration_s));
    }
    svg::write((out_dir / "cost.svg").string(),
               svg::line_chart(cost, "Network cost", "hours", "cost [s]"));
    svg::write((out_dir / "drop_rate.svg").string(),
               svg::line_chart(drop, "Drop rate", "hours", "drop rate"));
    svg::write((out_dir / "throughput.svg").string(),
               svg::line_chart(tp, "Throughput", "hours", "bit/s"));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"leosim: time-slotted LEO broadband network simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir, router_override, routers_csv, widths_csv, partitions_csv;
    std::string preset = "desk", preset_out, bandit_out, bandit_in;
    std::uint64_t seed_override = 0;

    auto* run_cmd = app.add_subcommand("run", "run one scenario and write per-slot metrics");
    run_cmd->add_option("--config", config_path, "scenario file")->required();
    run_cmd->add_option("--out", out_dir, "output directory")->required();
    run_cmd->add_option("--seed", seed_override, "override the config seed list");
    run_cmd->add_option("--router", router_override, "override the configured router");
    run_cmd->add_option("--bandit-out", bandit_out,
                        "dump learner state JSON after the last seed (learning routers)");
    run_cmd->add_option("--bandit-in", bandit_in,
                        "warm-start learner state from a JSON dump (learning routers)");

    auto* compare_cmd = app.add_subcommand("compare", "run several routers on one scenario");
    compare_cmd->add_option("--config", config_path, "scenario file")->required();
    compare_cmd->add_option("--routers", routers_csv, "comma-separated router list")->required();
    compare_cmd->add_option("--out", out_dir, "output directory")->required();

    auto* sweep_cmd = app.add_subcommand("sweep-tiles", "grid of tile-coding parameters");
    sweep_cmd->add_option("--config", config_path, "scenario file")->required();
    sweep_cmd->add_option("--widths-km", widths_csv, "comma-separated tile widths in km")
        ->required();
    sweep_cmd->add_option("--partitions", partitions_csv, "comma-separated partition counts")
        ->required();
    sweep_cmd->add_option("--out", out_dir, "output directory")->required();

    auto* gen_cmd = app.add_subcommand("gen-scenario", "write a scenario preset");
    gen_cmd->add_option("--preset", preset, "desk or paper-shape")
        ->check(CLI::IsMember({"desk", "paper-shape"}));
    gen_cmd->add_option("--out", preset_out, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) {
            write_text(preset_out, preset == "desk" ? desk_preset_toml()
                                                    : paper_shape_preset_toml());
            std::cout << "wrote " << preset_out << "\n";
            return 0;
        }

        SimConfig cfg = load_config(config_path);
        if (run_cmd->parsed() && run_cmd->count("--seed") > 0) cfg.seeds = {seed_override};

        if (run_cmd->parsed()) {
            RouterKind kind = cfg.router;
            if (!router_override.empty()) {
                auto parsed = parse_router_kind(router_override);
                if (!parsed) throw ConfigError("unknown router '" + router_override + "'");
                kind = *parsed;
            }
            fs::create_directories(out_dir);
            std::vector<RunResult> runs;
            for (std::uint64_t seed : cfg.seeds) {
                auto router = make_router(kind, cfg.k_paths, cfg.skylink);
                auto* learner = dynamic_cast<SkyLinkRouter*>(router.get());
                if (!bandit_in.empty() && learner != nullptr) {
                    std::ifstream in(bandit_in);
                    if (!in) throw std::runtime_error("cannot read " + bandit_in);
                    learner->states_from_json(nlohmann::json::parse(in));
                }
                RunResult run = run_with_router(cfg, *router, kind, seed);
                fs::path csv = fs::path(out_dir) / ("metrics_" + router_kind_name(kind) + "_s" +
                                                    std::to_string(seed) + ".csv");
                write_metrics_csv(csv.string(), run.records, router_kind_name(kind), seed);
                if (!bandit_out.empty() && learner != nullptr && seed == cfg.seeds.back())
                    write_text(bandit_out, learner->states_to_json().dump(2) + "\n");
                runs.push_back(std::move(run));
            }
            emit_run_plots(runs, cfg, out_dir);

            nlohmann::json summary;
            summary["router"] = router_kind_name(kind);
            summary["seeds"] = cfg.seeds;
            nlohmann::json per_seed = nlohmann::json::array();
            for (const auto& run : runs)
                per_seed.push_back({{"seed", run.seed},
                                    {"mean_cost_s", run.mean_cost()},
                                    {"mean_drop_rate", run.mean_drop()},
                                    {"mean_throughput_bps", run.mean_throughput()}});
            summary["per_seed"] = per_seed;
            write_text(fs::path(out_dir) / "run_summary.json", summary.dump(2) + "\n");
            std::cout << "wrote " << runs.size() << " metric file(s) to " << out_dir << "\n";
            return 0;
        }

        if (compare_cmd->parsed()) {
            std::vector<RouterKind> routers;
            for (const auto& name : split_list(routers_csv)) {
                auto parsed = parse_router_kind(name);
                if (!parsed) throw ConfigError("unknown router '" + name + "'");
                routers.push_back(*parsed);
            }
            fs::create_directories(out_dir);
            std::vector<RunResult> plot_runs;
            for (RouterKind kind : routers) {
                std::vector<RunResult> runs;
                run_and_dump(cfg, kind, out_dir, &runs);
                if (!runs.empty()) plot_runs.push_back(std::move(runs.front()));
            }
            ComparisonReport report = compare_routers(cfg, routers);
            write_text(fs::path(out_dir) / "comparison.json", report.to_json().dump(2) + "\n");

            std::string csv = "router,mean_cost_s,mean_drop_rate,mean_throughput_bps\n";
            char buf[200];
            for (const auto& a : report.aggregates) {
                std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g\n",
                              router_kind_name(a.router).c_str(), a.mean_cost_s,
                              a.mean_drop_rate, a.mean_throughput_bps);
                csv += buf;
            }
            write_text(fs::path(out_dir) / "comparison.csv", csv);
            emit_run_plots(plot_runs, cfg, out_dir);
            std::cout << "compared " << routers.size() << " routers; results in " << out_dir
                      << "\n";
            return 0;
        }

        if (sweep_cmd->parsed()) {
            std::vector<double> widths_m;
            for (const auto& w : split_list(widths_csv)) widths_m.push_back(std::stod(w) * 1000.0);
            std::vector<int> partitions;
            for (const auto& p : split_list(partitions_csv)) partitions.push_back(std::stoi(p));
            TileSweepResult sweep = sweep_tiles(cfg, widths_m, partitions);

            fs::create_directories(out_dir);
            std::string csv = "tile_width_km";
            for (int p : partitions) csv += ",partitions_" + std::to_string(p);
            csv += "\n";
            char buf[64];
            for (std::size_t w = 0; w < widths_m.size(); ++w) {
                std::snprintf(buf, sizeof(buf), "%.12g", widths_m[w] / 1000.0);
                csv += buf;
                for (std::size_t p = 0; p < partitions.size(); ++p) {
                    std::snprintf(buf, sizeof(buf), ",%.12g", sweep.mean_cost_s[w][p]);
                    csv += buf;
                }
                csv += "\n";
            }
            write_text(fs::path(out_dir) / "tile_sweep.csv", csv);

            std::vector<std::string> row_labels, col_labels;
            for (double w : widths_m) {
                std::snprintf(buf, sizeof(buf), "%g km", w / 1000.0);
                row_labels.push_back(buf);
            }
            for (int p : partitions) col_labels.push_back(std::to_string(p));
            svg::write((fs::path(out_dir) / "tile_sweep.svg").string(),
                       svg::heat_map(sweep.mean_cost_s, row_labels, col_labels,
                                     "Mean cost [s] per tile configuration"));
            std::cout << "swept " << widths_m.size() * partitions.size() << " cells; results in "
                      << out_dir << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
