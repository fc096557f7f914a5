#include "csae/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace csae {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

json schedule_fields(const Schedule& s) {
    return json{{"depths", s.depths},
                {"shots", s.shots},
                {"K", s.shot_scale},
                {"total_queries", total_queries(s)},
                {"max_depth", s.n_max()},
                {"total_u_applications", total_u_applications(s)}};
}

}  // namespace

std::string schedule_json(const Schedule& schedule) {
    return schedule_fields(schedule).dump(2) + "\n";
}

std::string arrays_json(const PhysicalArray& physical, const VirtualArray& virt) {
    json j{{"positions", physical.positions},
           {"order_q", physical.order_q},
           {"levels", physical.levels},
           {"coarray", virt.positions},
           {"coarray_size", virt.positions.size()},
           {"ula_length", virt.ula_length},
           {"symmetric_ula_size", 2 * virt.ula_length - 1}};
    return j.dump(2) + "\n";
}

std::string estimate_json(const EstimateResult& result, double amplitude_true,
                          std::uint64_t seed) {
    json j{{"theta_hat", result.theta_hat},
           {"a_hat", result.a_hat},
           {"signs", result.signs.signs},
           {"nll", result.nll},
           {"total_queries", result.total_queries},
           {"max_depth", result.max_depth},
           {"separation", result.separation},
           {"seed", seed}};
    if (amplitude_true >= 0.0) {
        j["amplitude_true"] = amplitude_true;
        j["error"] = std::abs(amplitude_true - result.a_hat);
    }
    return j.dump(2) + "\n";
}

std::string fit_json(const FitResult& fit) {
    json j{{"C", fit.C},
           {"C_stderr", fit.C_stderr},
           {"b", fit.b},
           {"b_stderr", fit.b_stderr}};
    return j.dump(2) + "\n";
}

std::string benchmark_summary_json(const std::vector<TrialRecord>& trials,
                                   const std::vector<double>& deltas,
                                   long long queries_per_trial) {
    json percentiles = json::object();
    for (double d : deltas) {
        percentiles[fmt_short(d)] = percentile_error(trials, d);
    }
    json j{{"trials", trials.size()},
           {"total_queries", queries_per_trial},
           {"percentile_error", percentiles}};
    return j.dump(2) + "\n";
}

std::string speedup_json(const std::vector<std::pair<int, long long>>& curve,
                         long long saturation) {
    json rows = json::array();
    for (const auto& [n, depth] : curve) {
        rows.push_back(json{{"n_qpus", n}, {"parallel_depth", depth}});
    }
    json j{{"curve", rows}, {"saturation_depth", saturation}};
    return j.dump(2) + "\n";
}

std::string trials_csv(const std::vector<TrialRecord>& trials) {
    std::ostringstream out;
    out << "amplitude,a_hat,error,queries,max_depth,seed\n";
    for (const auto& t : trials) {
        out << fmt_double(t.amplitude) << ',' << fmt_double(t.a_hat) << ','
            << fmt_double(t.error) << ',' << t.total_queries << ',' << t.max_depth << ','
            << t.seed << '\n';
    }
    return out.str();
}

std::string fit_points_csv(const std::vector<std::pair<double, double>>& points) {
    std::ostringstream out;
    out << "epsilon,queries\n";
    for (const auto& [eps, queries] : points) {
        out << fmt_double(eps) << ',' << fmt_double(queries) << '\n';
    }
    return out.str();
}

std::string speedup_csv(const std::vector<std::pair<int, long long>>& curve) {
    std::ostringstream out;
    out << "n_qpus,parallel_depth\n";
    for (const auto& [n, depth] : curve) out << n << ',' << depth << '\n';
    return out.str();
}

std::vector<std::pair<double, double>> parse_fit_points_csv(const std::string& text) {
    std::vector<std::pair<double, double>> points;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("expected two comma-separated columns: " + line);
        }
        try {
            points.emplace_back(std::stod(line.substr(0, comma)),
                                std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            continue;  // header row
        }
    }
    if (points.empty()) throw std::invalid_argument("no data rows in points file");
    return points;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace csae
