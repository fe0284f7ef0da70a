#include "levy_spectra/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>
#include <ostream>
#include <sstream>

#include "levy_spectra/acceptance.hpp"
#include "levy_spectra/campaign_io.hpp"
#include "levy_spectra/error.hpp"

namespace levy_spectra {

namespace fs = std::filesystem;

CampaignConfig resolve_campaign(const Overrides& o) {
    if (!o.preset && !o.config_path) throw ConfigError("one of --config or --preset is required");
    ConfigTable table;
    if (o.preset) table = preset_table(*o.preset);
    if (o.config_path) table.merge(ConfigTable::load(*o.config_path));
    if (o.read_env) {
        if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0')
            table.set("seed", fmt::format("{}", parse_seed(kSeedEnv, env)));
    }
    if (o.seed) table.set("seed", fmt::format("{}", *o.seed));
    if (o.realizations) table.set("run.realizations", fmt::format("{}", *o.realizations));
    if (o.workers) table.set("run.workers", fmt::format("{}", *o.workers));
    if (o.format) table.set("output.format", fmt::format("\"{}\"", *o.format));
    if (o.out_dir) table.set("output.dir", fmt::format("\"{}\"", *o.out_dir));
    return campaign_from_table(table);
}

namespace {

// Collects written files so the manifest can list them with their hashes.
class Writer {
public:
    Writer(const CampaignConfig& cfg, std::ostream& log) : cfg_(cfg), log_(log), dir_(cfg.out_dir) {
        fs::create_directories(dir_);
    }

    void put(const std::string& name, const std::string& text) {
        write_text(dir_ / name, text);
        files_.emplace_back(name, fnv1a_hex(text));
    }

    void put_json(const std::string& name, const Json& doc) { put(name, doc.dump(2) + "\n"); }

    bool csv() const { return cfg_.format != OutputFormat::Json; }
    bool json() const { return cfg_.format != OutputFormat::Csv; }

    void manifest(const std::string& command) {
        std::sort(files_.begin(), files_.end());
        Json files = Json::array();
        for (const auto& [name, hash] : files_) files.push_back({{"name", name}, {"fnv1a", hash}});
        const auto canonical = cfg_.canonical();
        const Json doc = {{"tool", kToolName},
                          {"version", kToolVersion},
                          {"command", command},
                          {"config_hash", fnv1a_hex(canonical)},
                          {"seed", cfg_.seed},
                          {"config", canonical},
                          {"files", files}};
        const auto name = fmt::format("manifest_{}.json", command);
        write_text(dir_ / name, doc.dump(2) + "\n");
        fmt::print(log_, "{}: {} files, manifest {}\n", command, files_.size(), (dir_ / name).string());
    }

private:
    const CampaignConfig& cfg_;
    std::ostream& log_;
    fs::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

RunOptions run_options(const CampaignConfig& cfg) {
    RunOptions opts;
    opts.workers = cfg.workers;
    return opts;
}

// The configured interval [a, b] rescaled to length |I|.
EnergyWindow window_for_length(const CampaignConfig& cfg, const LatticeBox& box, double length) {
    const double base = cfg.b - cfg.a;
    if (base > 0.0) {
        const double f = length / base;
        return local_window(box, cfg.center, cfg.a * f, cfg.b * f);
    }
    return local_window(box, cfg.center, length);
}

std::string index_text(const EmpiricalPMF& pmf) {
    if (pmf.mean() <= 0.0 || pmf.realizations() < 2) return "n/a";
    return fmt::format("{:.4f}", poisson_index(pmf));
}

void put_pmf(Writer& out, const CampaignConfig& cfg, const std::string& stat, int L, double length,
             const EmpiricalPMF& pmf, const LatticeBox& box, const EnergyWindow& window, std::size_t dropped) {
    if (out.csv()) out.put(artifact_name(stat, L, length, "csv"), pmf_csv(pmf));
    if (out.json()) out.put_json(artifact_name(stat, L, length, "json"), pmf_json(pmf, cfg.model, box, L, window, cfg.seed, dropped));
}

double mean_abs_difference(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
    double total = 0.0;
    std::size_t n = 0;
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (x[r] < 0 || y[r] < 0) continue;
        total += static_cast<double>(std::abs(x[r] - y[r]));
        ++n;
    }
    return n == 0 ? 0.0 : total / static_cast<double>(n);
}

std::optional<EmpiricalPMF> load_pmf(const fs::path& dir, const std::string& stat, int L, double length) {
    const auto json_path = dir / artifact_name(stat, L, length, "json");
    if (fs::exists(json_path)) return pmf_from_json(Json::parse(read_text(json_path)));
    const auto csv_path = dir / artifact_name(stat, L, length, "csv");
    if (fs::exists(csv_path)) return pmf_from_csv(read_text(csv_path));
    return std::nullopt;
}

std::optional<Json> load_json(const fs::path& path) {
    if (!fs::exists(path)) return std::nullopt;
    return Json::parse(read_text(path));
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return grid;
}

ScalingTable rows_for(const ScalingTable& table, int L) {
    ScalingTable sub{table.statistic, {}};
    for (const auto* r : table.for_half_side(L)) sub.rows.push_back(*r);
    return sub;
}

}  // namespace

int cmd_simulate(const CampaignConfig& cfg, std::ostream& log) {
    Writer out(cfg, log);
    const auto opts = run_options(cfg);
    for (int L : cfg.boxes) {
        const auto box = fit_box(cfg.model, L);
        std::vector<EnergyWindow> windows;
        for (double len : cfg.lengths) windows.push_back(window_for_length(cfg, box, len));
        const auto samples = sample_counts(cfg.model, box, windows, cfg.realizations, cfg.seed, opts);
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const auto pmf = samples.pmf(w);
            put_pmf(out, cfg, "xi", L, cfg.lengths[w], pmf, box, windows[w], samples.dropped.size());
            fmt::print(log, "xi L={} |I|={} R={} mean={:.4f} var/mean={}\n", L, cfg.lengths[w], pmf.realizations(),
                       pmf.mean(), index_text(pmf));
        }
        if (!cfg.blocks_enabled) continue;
        const int ell = cfg.blocks_half_side > 0 ? cfg.blocks_half_side
                                                 : default_block_half_side(L, box.side(), cfg.blocks_epsilon);
        const auto scheme = BlockScheme::tile(box, ell);
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const auto run = run_eta_blocks(cfg.model, box, scheme, windows[w], cfg.realizations, cfg.seed, opts);
            put_pmf(out, cfg, "zeta", L, cfg.lengths[w], run.zeta, box, windows[w], run.dropped.size());
            const auto est = block_sum_estimator(run.per_block, cfg.model.rank());
            EmpiricalPMF pooled;
            for (const auto& b : run.per_block) pooled.merge(b);
            Json pooled_counts = Json::object();
            for (const auto& [j, c] : pooled.counts()) pooled_counts[std::to_string(j)] = c;
            const Json doc = {{"block_half_side", ell},
                              {"blocks", scheme.block_count()},
                              {"window", window_json(windows[w])},
                              {"R", run.xi.realizations()},
                              {"seed", cfg.seed},
                              {"eta_pooled", pooled_counts},
                              {"block_sum", {{"weights", weights_json(est.weights)}, {"tail_mass", est.tail_mass}}},
                              {"mean_xi", run.xi.mean()},
                              {"mean_zeta", run.zeta.mean()},
                              {"mean_abs_xi_minus_zeta", mean_abs_difference(run.xi_samples, run.zeta_samples)}};
            out.put_json(artifact_name("eta", L, cfg.lengths[w], "json"), doc);
            fmt::print(log, "eta L={} |I|={} ell={} blocks={} tail_mass={:.5f} mean|xi-zeta|={:.5f}\n", L,
                       cfg.lengths[w], ell, scheme.block_count(), est.tail_mass,
                       mean_abs_difference(run.xi_samples, run.zeta_samples));
        }
    }
    out.manifest("simulate");
    return kExitOk;
}

int cmd_dos(const CampaignConfig& cfg, std::ostream& log) {
    Writer out(cfg, log);
    const auto grid = linear_grid(cfg.dos_e_min, cfg.dos_e_max, cfg.dos_points);
    for (int L : cfg.boxes) {
        const auto box = fit_box(cfg.model, L);
        const auto ids = estimate_ids(cfg.model, box, grid, cfg.realizations, cfg.seed, run_options(cfg));
        const auto dos = estimate_dos(ids, cfg.dos_bandwidth);
        if (out.csv()) {
            out.put(fmt::format("ids_{}.csv", L), curve_csv(ids));
            out.put(fmt::format("dos_{}.csv", L), curve_csv(dos));
        }
        if (out.json()) {
            out.put_json(fmt::format("ids_{}.json", L), curve_json(ids));
            out.put_json(fmt::format("dos_{}.json", L), curve_json(dos));
        }
        const auto peak = std::max_element(dos.begin(), dos.end(),
                                           [](const CurvePoint& x, const CurvePoint& y) { return x.value < y.value; });
        fmt::print(log, "dos L={} points={} max={:.4f} at E={:.4f}\n", L, dos.size(), peak->value, peak->energy);
    }
    out.manifest("dos");
    return kExitOk;
}

namespace {

int scaling_command(const CampaignConfig& cfg, std::ostream& log, const std::string& stat) {
    const bool wegner = stat == "wegner";
    const auto& lengths = wegner ? cfg.wegner_lengths : cfg.minami_lengths;
    if (lengths.size() < 2) throw ConfigError(fmt::format("field '{}.lengths' needs at least two entries", stat));
    Writer out(cfg, log);
    const auto table = wegner ? wegner_scan(cfg.model, cfg.boxes, lengths, cfg.center, cfg.realizations, cfg.seed,
                                            run_options(cfg))
                              : minami_scan(cfg.model, cfg.boxes, lengths, cfg.center, cfg.realizations, cfg.seed,
                                            run_options(cfg));
    for (int L : cfg.boxes) {
        const auto sub = rows_for(table, L);
        const auto fit = wegner ? wegner_slope(table, L) : minami_exponent(table, L);
        if (out.csv()) out.put(fmt::format("{}_{}.csv", stat, L), scaling_csv(sub));
        if (out.json()) out.put_json(fmt::format("{}_{}.json", stat, L), scaling_json(sub, fit));
        fmt::print(log, "{} L={} {} slope={:.4f} intercept={:.4f} R^2={:.4f}\n", stat, L, table.statistic, fit.slope,
                   fit.intercept, fit.r_squared);
    }
    out.manifest(stat);
    return kExitOk;
}

}  // namespace

int cmd_wegner(const CampaignConfig& cfg, std::ostream& log) { return scaling_command(cfg, log, "wegner"); }
int cmd_minami(const CampaignConfig& cfg, std::ostream& log) { return scaling_command(cfg, log, "minami"); }

int cmd_fit(const CampaignConfig& cfg, std::ostream& log) {
    const fs::path dir(cfg.out_dir);
    bool missing = false;
    for (int L : cfg.boxes)
        for (double len : cfg.lengths) missing = missing || !load_pmf(dir, "xi", L, len);
    if (missing) {
        fmt::print(log, "fit: xi artifacts missing in {}, running simulate\n", dir.string());
        cmd_simulate(cfg, log);
    }

    Writer out(cfg, log);
    const int m = cfg.model.rank();
    const auto grid = default_t_grid();
    for (int L : cfg.boxes) {
        for (double len : cfg.lengths) {
            const auto pmf = *load_pmf(dir, "xi", L, len);
            const auto w = fit_weights(pmf, m);
            Json doc = {{"source", artifact_name("xi", L, len, "json")},
                        {"half_side", L},
                        {"length", len},
                        {"R", pmf.realizations()},
                        {"m", m},
                        {"weights", weights_json(w)},
                        {"intensity", w.intensity()}};
            doc["poisson_index"] = pmf.mean() > 0.0 ? Json(poisson_index(pmf)) : Json(nullptr);
            doc["char_fn_distance"] = char_fn_distance(pmf, w, grid);
            doc["tail_mass"] = nullptr;
            if (const auto eta = load_json(dir / artifact_name("eta", L, len, "json"))) {
                doc["tail_mass"] = (*eta)["block_sum"]["tail_mass"];
                doc["block_sum_weights"] = (*eta)["block_sum"]["weights"];
            }
            out.put_json(artifact_name("fit", L, len, "json"), doc);
            if (out.csv()) {
                std::string csv = "j,weight\n";
                for (std::size_t j = 0; j < w.weights.size(); ++j) csv += fmt::format("{},{}\n", j + 1, w.weights[j]);
                out.put(artifact_name("fit", L, len, "csv"), csv);
            }
            fmt::print(log, "fit L={} |I|={} weights=[{}] distance={:.4f}\n", L, len,
                       fmt::join(w.weights, ", "), doc["char_fn_distance"].get<double>());
        }
    }
    out.manifest("fit");
    return kExitOk;
}

// ---- report ------------------------------------------------------------------

namespace {

struct Check {
    std::string name;
    std::optional<bool> passed;  // nullopt: informational
    std::string detail;
};

std::optional<CampaignConfig> campaign_from_manifests(const fs::path& dir) {
    std::vector<fs::path> manifests;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("manifest_", 0) == 0 && entry.path().extension() == ".json") manifests.push_back(entry.path());
    }
    if (manifests.empty()) return std::nullopt;
    std::sort(manifests.begin(), manifests.end());
    auto chosen = manifests.front();
    for (const auto& p : manifests)
        if (p.filename() == "manifest_simulate.json") chosen = p;
    const auto doc = Json::parse(read_text(chosen));
    return campaign_from_table(ConfigTable::parse(doc.at("config").get<std::string>()));
}

bool pure_multiplicity(const ModelSpec& spec) {
    return spec.variant == Variant::Diagonal || spec.variant == Variant::MatrixValued;
}

void check_xi(const fs::path& dir, const CampaignConfig& cfg, int L, double len, std::vector<Check>& checks) {
    const auto pmf = load_pmf(dir, "xi", L, len);
    if (!pmf) return;
    const int m = cfg.model.rank();
    const auto tag = fmt::format("L={} |I|={}", L, len);

    if (pure_multiplicity(cfg.model) && m > 1) {
        bool ok = true;
        for (const auto& [j, c] : pmf->counts()) ok = ok && j % m == 0;
        checks.push_back({fmt::format("{}: counts divisible by m={}", tag, m), ok,
                          fmt::format("support max {}", pmf->max_value())});
    }
    if (pmf->mean() > 0.0 && pmf->realizations() >= 2) {
        const double idx = poisson_index(*pmf);
        checks.push_back({fmt::format("{}: poisson index in [0.9, {}.1]", tag, m), idx >= 0.9 && idx <= m + 0.1,
                          fmt::format("{:.4f}", idx)});
    }
    if (pmf->realizations() < 1000) {
        checks.push_back({fmt::format("{}: Levy fit", tag), std::nullopt, "skipped, fewer than 1000 realizations"});
        return;
    }
    LevyWeights w;
    if (const auto fit = load_json(dir / artifact_name("fit", L, len, "json")))
        w.weights = (*fit)["weights"].get<std::vector<double>>();
    else
        w = fit_weights(*pmf, m);
    const double distance = char_fn_distance(*pmf, w, default_t_grid());
    checks.push_back({fmt::format("{}: compound Poisson fit, char-fn distance <= 0.05", tag), distance <= 0.05,
                      fmt::format("{:.4f}, weights [{}]", distance, fmt::join(w.weights, ", "))});
    if (pure_multiplicity(cfg.model) && m > 1) {
        double lower = 0.0;
        for (int j = 0; j + 1 < m; ++j) lower += w.weights[static_cast<std::size_t>(j)];
        const double top = w.weights.back();
        const double predicted = pmf->mean() / m;
        const bool ok = lower <= 0.02 + 0.05 * top && std::abs(top - predicted) <= 0.05 * std::max(predicted, 0.1);
        checks.push_back({fmt::format("{}: Levy measure concentrated on j={}", tag, m), ok,
                          fmt::format("p_{}={:.4f} (mean/m={:.4f}), sum of lower weights {:.4f}", m, top, predicted,
                                      lower)});
    }
    if (const auto eta = load_json(dir / artifact_name("eta", L, len, "json"))) {
        checks.push_back({fmt::format("{}: block decomposition", tag), std::nullopt,
                          fmt::format("ell={} blocks={} tail mass {:.5f}, mean|xi-zeta| {:.5f}",
                                      (*eta)["block_half_side"].get<int>(), (*eta)["blocks"].get<std::size_t>(),
                                      (*eta)["block_sum"]["tail_mass"].get<double>(),
                                      (*eta)["mean_abs_xi_minus_zeta"].get<double>())});
    }
}

void check_scaling(const fs::path& dir, int L, std::vector<Check>& checks) {
    const auto wegner = dir / fmt::format("wegner_{}.csv", L);
    if (fs::exists(wegner)) {
        const auto table = scaling_from_csv(read_text(wegner), "mean_xi");
        const auto fit = wegner_slope(table, L);
        checks.push_back({fmt::format("L={}: E[xi] linear in |I|, R^2 >= 0.99", L), fit.r_squared >= 0.99,
                          fmt::format("slope {:.4f}, intercept {:.4f}, R^2 {:.4f}", fit.slope, fit.intercept,
                                      fit.r_squared)});
    }
    const auto minami = dir / fmt::format("minami_{}.csv", L);
    if (fs::exists(minami)) {
        const auto table = scaling_from_csv(read_text(minami), "prob_xi_gt_rank");
        const auto fit = minami_exponent(table, L);
        checks.push_back({fmt::format("L={}: P{{xi > m}} log-log exponent", L), std::nullopt,
                          fmt::format("{:.3f} (R^2 {:.3f}); 2 expected when the limit is simple", fit.slope,
                                      fit.r_squared)});
    }
    const auto dos = dir / fmt::format("dos_{}.csv", L);
    if (fs::exists(dos)) {
        const auto curve = curve_from_csv(read_text(dos));
        const bool ok = std::all_of(curve.begin(), curve.end(), [](const CurvePoint& p) { return p.value >= 0.0; });
        checks.push_back({fmt::format("L={}: density of states nonnegative", L), ok,
                          fmt::format("{} grid points", curve.size())});
    }
}

}  // namespace

int cmd_report(const fs::path& dir, std::ostream& out, std::ostream& err) {
    std::optional<CampaignConfig> cfg;
    if (fs::is_directory(dir)) cfg = campaign_from_manifests(dir);
    if (!cfg) {
        fmt::print(err, "report: no campaign artifacts in '{}'\n", dir.string());
        return kExitNoArtifacts;
    }
    std::vector<Check> checks;
    for (int L : cfg->boxes) {
        for (double len : cfg->lengths) check_xi(dir, *cfg, L, len, checks);
        check_scaling(dir, L, checks);
    }
    if (checks.empty()) {
        fmt::print(err, "report: no campaign artifacts in '{}'\n", dir.string());
        return kExitNoArtifacts;
    }

    std::string text = fmt::format("# {} report\n\nmodel: {} (rank {}), d={}, h={}, E0={}, seed {}\n\n", cfg->name,
                                   to_string(cfg->model.variant), cfg->model.rank(), cfg->model.dim,
                                   cfg->model.hopping, cfg->center, cfg->seed);
    text += "| check | result | detail |\n|---|---|---|\n";
    bool all_ok = true;
    for (const auto& c : checks) {
        const char* result = !c.passed ? "info" : (*c.passed ? "pass" : "FAIL");
        if (c.passed && !*c.passed) all_ok = false;
        text += fmt::format("| {} | {} | {} |\n", c.name, result, c.detail);
    }
    write_text(dir / "report.md", text);
    out << text;
    return all_ok ? kExitOk : kExitFailure;
}

// ---- argument parsing ----------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eigenvalue statistics for Anderson models with finite-rank perturbations", "levy_spectra"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string config_path, preset, out_dir, format;
    std::uint64_t seed = 0;
    std::size_t realizations = 0;
    int workers = 0;
    std::vector<CLI::Option*> seen;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "campaign config file (TOML subset)");
        sub->add_option("--preset", preset, "built-in preset")->check(CLI::IsMember(preset_names()));
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "master seed, overrides LEVY_SPECTRA_SEED and the config");
        sub->add_option("--realizations", realizations, "number of disorder realizations")->check(CLI::PositiveNumber);
        sub->add_option("--workers", workers, "OpenMP threads, 0 for the runtime default")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", format, "artifact format")->check(CLI::IsMember({"csv", "json", "both"}));
    };

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const CampaignConfig&, std::ostream&);
    };
    const Command commands[] = {
        {"simulate", "sample xi (and block statistics) for every box and window", cmd_simulate},
        {"dos", "integrated density of states and its derivative", cmd_dos},
        {"wegner", "E[xi] against |I|", cmd_wegner},
        {"minami", "P{xi > m} against |I|", cmd_minami},
        {"fit", "fit Levy weights to the sampled xi laws", cmd_fit},
    };
    std::vector<CLI::App*> subs;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub);
        subs.push_back(sub);
    }

    std::string report_dir;
    auto* report = app.add_subcommand("report", "check campaign artifacts against the predicted limits");
    report->add_option("dir", report_dir, "campaign output directory");
    report->add_option("--out", report_dir, "campaign output directory");

    std::string show;
    auto* presets = app.add_subcommand("presets", "list presets or print one");
    presets->add_option("--show", show, "preset to print");

    std::vector<int> only;
    std::string scratch = "acceptance_scratch";
    int acceptance_workers = 0;
    auto* acceptance = app.add_subcommand("acceptance", "run the acceptance criteria");
    acceptance->add_option("--only", only, "criterion numbers")->delimiter(',');
    acceptance->add_option("--workers", acceptance_workers, "OpenMP threads")->check(CLI::NonNegativeNumber);
    acceptance->add_option("--scratch", scratch, "scratch directory for file comparisons");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            auto* sub = subs[i];
            if (!sub->parsed()) continue;
            Overrides o;
            if (sub->count("--config")) o.config_path = config_path;
            if (sub->count("--preset")) o.preset = preset;
            if (sub->count("--out")) o.out_dir = out_dir;
            if (sub->count("--seed")) o.seed = seed;
            if (sub->count("--realizations")) o.realizations = realizations;
            if (sub->count("--workers")) o.workers = workers;
            if (sub->count("--format")) o.format = format;
            const auto cfg = resolve_campaign(o);
            return commands[i].run(cfg, out);
        }
        if (report->parsed()) {
            if (report_dir.empty()) throw ConfigError("report needs a directory");
            return cmd_report(report_dir, out, err);
        }
        if (presets->parsed()) {
            if (show.empty()) {
                for (const auto& name : preset_names()) fmt::print(out, "{}\n", name);
                return kExitOk;
            }
            const auto text = preset_text(show);
            if (!text) throw ConfigError(fmt::format("unknown preset '{}'", show));
            out << *text;
            return kExitOk;
        }
        if (acceptance->parsed()) {
            AcceptanceOptions opts;
            opts.workers = acceptance_workers;
            opts.scratch_dir = scratch;
            opts.only = only;
            return run_acceptance_suite(opts, out);
        }
    } catch (const ConfigError& e) {
        fmt::print(err, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const TilingError& e) {
        fmt::print(err, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace levy_spectra
