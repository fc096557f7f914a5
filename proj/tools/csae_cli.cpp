#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csae/errors.hpp"
#include "csae/io.hpp"

namespace {

using nlohmann::json;

// Options may come from flags or from a JSON config file; flags win and
// unknown config keys are rejected.
class ConfigMerger {
public:
    explicit ConfigMerger(const std::string& path) {
        if (path.empty()) return;
        cfg_ = json::parse(csae::read_file(path));
        if (!cfg_.is_object()) throw std::invalid_argument("config file must hold a JSON object");
    }

    template <class T>
    bool apply(const CLI::Option* opt, const std::string& key, T& target) {
        known_.insert(key);
        if (!cfg_.is_object()) return false;
        auto it = cfg_.find(key);
        if (it == cfg_.end() || opt->count() > 0) return false;
        try {
            target = it->get<T>();
        } catch (const json::exception&) {
            throw std::invalid_argument("config key '" + key + "' has the wrong type");
        }
        return true;
    }

    void reject_unknown() const {
        if (!cfg_.is_object()) return;
        for (const auto& item : cfg_.items()) {
            if (!known_.contains(item.key())) {
                throw std::invalid_argument("unknown config key: " + item.key());
            }
        }
    }

private:
    json cfg_;
    std::set<std::string> known_;
};

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_given = false;

    // Array / schedule selection.
    std::string preset;
    std::vector<int> depths;
    std::vector<int> levels;
    int order_q = 4;
    double shot_scale = 4.0;

    // Search knobs.
    int window = 5;
    int grid = 0;
    int max_ula = 0;
    bool renormalize = false;
    std::string esprit = "auto";

    CLI::Option* preset_opt = nullptr;
    CLI::Option* depths_opt = nullptr;
    CLI::Option* levels_opt = nullptr;
    CLI::Option* q_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* window_opt = nullptr;
    CLI::Option* grid_opt = nullptr;
    CLI::Option* max_ula_opt = nullptr;
    CLI::Option* renorm_opt = nullptr;
    CLI::Option* esprit_opt = nullptr;
    CLI::Option* out_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_search) {
    cmd->add_option("--config", o.config_path, "JSON config file; flags override its keys");
    o.out_opt = cmd->add_option("--out", o.out_path, "write the JSON result here instead of stdout");
    o.preset_opt = cmd->add_option("--preset", o.preset,
                                   "published configuration: table3 (99%), table4 (95%), table5 (68%)");
    o.depths_opt = cmd->add_option("--depths", o.depths, "explicit query depths")->delimiter(',');
    o.levels_opt = cmd->add_option("--levels", o.levels, "nested-array levels N_1..N_2q")->delimiter(',');
    o.q_opt = cmd->add_option("--q", o.order_q, "virtual array order q");
    o.k_opt = cmd->add_option("--k", o.shot_scale, "shot-schedule constant K");
    o.seed_opt = cmd->add_option("--seed", o.seed, "RNG seed (falls back to CSAE_SEED)");
    if (with_search) {
        o.window_opt = cmd->add_option("--window", o.window, "sliding-window width");
        o.grid_opt = cmd->add_option("--grid", o.grid, "sign-search grid size (0 = 4|D|)");
        o.max_ula_opt = cmd->add_option("--max-ula", o.max_ula,
                                        "cap on the virtual ULA length (0 = full run)");
        o.renorm_opt = cmd->add_flag("--renormalize", o.renormalize,
                                     "rescale virtual signal values to unit modulus");
        o.esprit_opt = cmd->add_option("--esprit", o.esprit, "dense | lanczos | auto")
                           ->check(CLI::IsMember({"dense", "lanczos", "auto"}));
    }
}

void merge_common(ConfigMerger& m, CommonOpts& o, bool with_search) {
    m.apply(o.out_opt, "out", o.out_path);
    m.apply(o.preset_opt, "preset", o.preset);
    m.apply(o.depths_opt, "depths", o.depths);
    m.apply(o.levels_opt, "levels", o.levels);
    m.apply(o.q_opt, "q", o.order_q);
    m.apply(o.k_opt, "k", o.shot_scale);
    const bool seed_from_config = m.apply(o.seed_opt, "seed", o.seed);
    if (with_search) {
        m.apply(o.window_opt, "window", o.window);
        m.apply(o.grid_opt, "grid", o.grid);
        m.apply(o.max_ula_opt, "max_ula", o.max_ula);
        m.apply(o.renorm_opt, "renormalize", o.renormalize);
        m.apply(o.esprit_opt, "esprit", o.esprit);
    }
    o.seed_given = o.seed_opt->count() > 0 || seed_from_config;
}

void resolve_seed(CommonOpts& o) {
    if (o.seed_given || o.seed != 0) return;
    if (const char* env = std::getenv("CSAE_SEED")) {
        o.seed = std::strtoull(env, nullptr, 10);
    }
}

csae::EspritMethod esprit_method(const std::string& name) {
    if (name == "dense") return csae::EspritMethod::Dense;
    if (name == "lanczos") return csae::EspritMethod::Lanczos;
    return csae::EspritMethod::Auto;
}

csae::PhysicalArray resolve_array(const CommonOpts& o) {
    if (!o.preset.empty()) return csae::preset_config(o.preset).array;
    if (!o.depths.empty()) return csae::PhysicalArray::from_positions(o.depths, o.order_q);
    if (!o.levels.empty()) return csae::nested_positions(o.order_q, o.levels);
    throw std::invalid_argument("no array given: use --preset, --depths, or --levels");
}

csae::EstimatorConfig resolve_estimator(const CommonOpts& o) {
    csae::EstimatorConfig cfg;
    if (!o.preset.empty()) {
        cfg = csae::preset_config(o.preset);
    } else if (!o.depths.empty()) {
        cfg = csae::EstimatorConfig::from_depths(o.depths, o.order_q, o.shot_scale);
    } else if (!o.levels.empty()) {
        cfg = csae::EstimatorConfig::nested(o.order_q, o.levels, o.shot_scale);
    } else {
        throw std::invalid_argument("no array given: use --preset, --depths, or --levels");
    }
    cfg.search.window_width = o.window;
    cfg.search.grid_size = o.grid;
    cfg.search.max_ula = o.max_ula;
    cfg.search.renormalize = o.renormalize;
    cfg.search.esprit.method = esprit_method(o.esprit);
    return cfg;
}

void emit(const CommonOpts& o, const std::string& payload, const std::string& summary) {
    if (o.out_path.empty()) {
        std::cout << payload;
        if (!summary.empty()) std::cerr << summary << '\n';
    } else {
        csae::write_file(o.out_path, payload);
        if (!summary.empty()) std::cout << summary << '\n';
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"csAE: amplitude estimation via classical signal processing"};
    app.require_subcommand(1);

    // ---- estimate ----
    auto* est_cmd = app.add_subcommand("estimate", "simulate one run and estimate the amplitude");
    CommonOpts est_o;
    double theta = -1.0, amplitude = -1.0;
    add_common(est_cmd, est_o, true);
    auto* theta_opt = est_cmd->add_option("--theta", theta, "true angle in [0, pi/2]");
    auto* amp_opt = est_cmd->add_option("--amplitude", amplitude, "true amplitude in [0, 1]");

    // ---- benchmark ----
    auto* bench_cmd = app.add_subcommand("benchmark", "Monte Carlo error/query statistics");
    CommonOpts bench_o;
    int trials = 100, jobs = 0;
    double amin = 0.1, amax = 0.9, fixed_a = -1.0;
    std::vector<double> deltas;
    std::string trials_csv_path;
    add_common(bench_cmd, bench_o, true);
    auto* trials_opt = bench_cmd->add_option("--trials", trials, "number of Monte Carlo trials");
    auto* amin_opt = bench_cmd->add_option("--amin", amin, "amplitude range lower edge");
    auto* amax_opt = bench_cmd->add_option("--amax", amax, "amplitude range upper edge");
    auto* fixed_opt = bench_cmd->add_option("--amplitude", fixed_a, "fix the amplitude instead");
    auto* delta_opt = bench_cmd->add_option("--delta", deltas, "confidence levels to report")
                          ->delimiter(',');
    auto* jobs_opt = bench_cmd->add_option("--jobs", jobs, "concurrent trials (0 = cores)");
    auto* csv_opt = bench_cmd->add_option("--csv", trials_csv_path, "write per-trial CSV here");
    std::string point_csv_path;
    auto* point_csv_opt = bench_cmd->add_option(
        "--point-csv", point_csv_path, "write (epsilon, queries) rows here, one per --delta");

    // ---- fit ----
    auto* fit_cmd = app.add_subcommand("fit", "weighted-least-squares fit of N = C/eps + b");
    CommonOpts fit_o;
    std::string points_path;
    std::vector<std::string> inline_points;
    fit_cmd->add_option("--config", fit_o.config_path, "JSON config file");
    fit_o.out_opt = fit_cmd->add_option("--out", fit_o.out_path, "write the JSON result here");
    auto* points_opt = fit_cmd->add_option("--points", points_path, "CSV of epsilon,queries rows");
    fit_cmd->add_option("--point", inline_points, "inline point 'epsilon,queries' (repeatable)");

    // ---- arrays ----
    auto* arrays_cmd = app.add_subcommand("arrays", "physical array, co-array, and ULA report");
    CommonOpts arrays_o;
    add_common(arrays_cmd, arrays_o, false);

    // ---- schedule ----
    auto* sched_cmd = app.add_subcommand("schedule", "shot schedule and query accounting");
    CommonOpts sched_o;
    add_common(sched_cmd, sched_o, false);

    // ---- speedup ----
    auto* speedup_cmd = app.add_subcommand("speedup", "parallel depth versus QPU count");
    CommonOpts speedup_o;
    int max_qpus = 0;
    std::string speedup_csv_path;
    add_common(speedup_cmd, speedup_o, false);
    auto* qpus_opt = speedup_cmd->add_option("--max-qpus", max_qpus, "largest QPU count (0 = to saturation)");
    auto* speedup_csv_opt = speedup_cmd->add_option("--csv", speedup_csv_path, "write the curve CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (est_cmd->parsed()) {
        ConfigMerger m(est_o.config_path);
        merge_common(m, est_o, true);
        m.apply(theta_opt, "theta", theta);
        m.apply(amp_opt, "amplitude", amplitude);
        m.reject_unknown();
        resolve_seed(est_o);

        if (theta < 0.0 && amplitude < 0.0) {
            throw std::invalid_argument("one of --theta or --amplitude is required");
        }
        const double theta_true = theta >= 0.0 ? theta : std::asin(amplitude);
        const double a_true = std::sin(theta_true);

        const auto cfg = resolve_estimator(est_o);
        const auto result = csae::run_csae(theta_true, cfg, est_o.seed);
        const std::string summary =
            "a_hat=" + fmt(result.a_hat) + " error=" + fmt(std::abs(a_true - result.a_hat)) +
            " queries=" + std::to_string(result.total_queries) +
            " max_depth=" + std::to_string(result.max_depth);
        emit(est_o, csae::estimate_json(result, a_true, est_o.seed), summary);
        return 0;
    }

    if (bench_cmd->parsed()) {
        ConfigMerger m(bench_o.config_path);
        merge_common(m, bench_o, true);
        m.apply(trials_opt, "trials", trials);
        m.apply(amin_opt, "amin", amin);
        m.apply(amax_opt, "amax", amax);
        m.apply(fixed_opt, "amplitude", fixed_a);
        m.apply(delta_opt, "delta", deltas);
        m.apply(jobs_opt, "jobs", jobs);
        m.apply(csv_opt, "csv", trials_csv_path);
        m.apply(point_csv_opt, "point_csv", point_csv_path);
        m.reject_unknown();
        resolve_seed(bench_o);
        if (deltas.empty()) deltas = {0.95};

        csae::MonteCarloConfig mc;
        mc.amplitude_min = amin;
        mc.amplitude_max = amax;
        mc.fixed_amplitude = fixed_a;
        mc.trials = trials;
        mc.base_seed = bench_o.seed;
        mc.jobs = jobs;
        mc.estimator = resolve_estimator(bench_o);

        const auto records = csae::monte_carlo(mc);
        if (!trials_csv_path.empty()) {
            csae::write_file(trials_csv_path, csae::trials_csv(records));
        }
        const long long queries = csae::total_queries(mc.estimator.schedule);
        if (!point_csv_path.empty()) {
            std::vector<std::pair<double, double>> points;
            for (double d : deltas) {
                points.emplace_back(csae::percentile_error(records, d),
                                    static_cast<double>(queries));
            }
            csae::write_file(point_csv_path, csae::fit_points_csv(points));
        }
        const std::string summary = "trials=" + std::to_string(records.size()) +
                                    " eps(" + fmt(deltas.front()) + ")=" +
                                    fmt(csae::percentile_error(records, deltas.front())) +
                                    " queries=" + std::to_string(queries);
        emit(bench_o, csae::benchmark_summary_json(records, deltas, queries), summary);
        return 0;
    }

    if (fit_cmd->parsed()) {
        ConfigMerger m(fit_o.config_path);
        m.apply(fit_o.out_opt, "out", fit_o.out_path);
        m.apply(points_opt, "points", points_path);
        m.reject_unknown();

        std::vector<std::pair<double, double>> points;
        if (!points_path.empty()) {
            points = csae::parse_fit_points_csv(csae::read_file(points_path));
        }
        for (const auto& p : inline_points) {
            const auto comma = p.find(',');
            if (comma == std::string::npos) {
                throw std::invalid_argument("--point expects 'epsilon,queries'");
            }
            points.emplace_back(std::stod(p.substr(0, comma)), std::stod(p.substr(comma + 1)));
        }
        const auto fit = csae::wls_fit(points);
        emit(fit_o, csae::fit_json(fit),
             "C=" + fmt(fit.C) + "+-" + fmt(fit.C_stderr) + " b=" + fmt(fit.b));
        return 0;
    }

    if (arrays_cmd->parsed()) {
        ConfigMerger m(arrays_o.config_path);
        merge_common(m, arrays_o, false);
        m.reject_unknown();
        const auto array = resolve_array(arrays_o);
        const auto virt = csae::coarray(array, array.order_q);
        emit(arrays_o, csae::arrays_json(array, virt), "");
        return 0;
    }

    if (sched_cmd->parsed()) {
        ConfigMerger m(sched_o.config_path);
        merge_common(m, sched_o, false);
        m.reject_unknown();
        const auto cfg = resolve_estimator(sched_o);
        emit(sched_o, csae::schedule_json(cfg.schedule), "");
        return 0;
    }

    if (speedup_cmd->parsed()) {
        ConfigMerger m(speedup_o.config_path);
        merge_common(m, speedup_o, false);
        m.apply(qpus_opt, "max_qpus", max_qpus);
        m.apply(speedup_csv_opt, "csv", speedup_csv_path);
        m.reject_unknown();

        const auto cfg = resolve_estimator(speedup_o);
        long long total_shots = 0;
        for (long long s : cfg.schedule.shots) total_shots += s;
        const int top = max_qpus > 0 ? max_qpus : static_cast<int>(total_shots);
        const auto curve = csae::speedup_curve(cfg.schedule, top);
        const long long saturation = 2LL * cfg.schedule.n_max() + 1;
        if (!speedup_csv_path.empty()) {
            csae::write_file(speedup_csv_path, csae::speedup_csv(curve));
        }
        emit(speedup_o, csae::speedup_json(curve, saturation), "");
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const csae::EstimationError& e) {
        std::cerr << "estimation error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
