#include "gsqg/run_output.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gsqg/checkpoint.hpp"

namespace gsqg {

namespace {

constexpr const char* kCsvHeader = "t,l2,gamma_energy,hs,hs_log,u_max,dt,s_t";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void emit_diagnostics(const std::vector<DiagnosticsRecord>& series, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const DiagnosticsRecord& r : series) {
        out << fmt17(r.t) << ',' << fmt17(r.l2) << ',' << fmt17(r.gamma_energy) << ',' << fmt17(r.hs)
            << ',' << fmt17(r.hs_log) << ',' << fmt17(r.u_max) << ',' << fmt17(r.dt) << ','
            << fmt17(r.s_t) << "\n";
    }
}

void emit_diagnostics(const std::vector<DiagnosticsRecord>& series, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open diagnostics file for writing: " + path);
    emit_diagnostics(series, out);
    if (!out) throw std::runtime_error("diagnostics write failed: " + path);
}

std::vector<DiagnosticsRecord> parse_diagnostics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open diagnostics file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("diagnostics CSV header mismatch in " + path);
    std::vector<DiagnosticsRecord> series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        DiagnosticsRecord r;
        char comma;
        if (!(ls >> r.t >> comma >> r.l2 >> comma >> r.gamma_energy >> comma >> r.hs >> comma >>
              r.hs_log >> comma >> r.u_max >> comma >> r.dt >> comma >> r.s_t))
            throw std::runtime_error("malformed diagnostics row in " + path);
        series.push_back(r);
    }
    return series;
}

int configured_threads() {
    if (const char* env = std::getenv("GSQG_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

void write_run_directory(const SimulationConfig& cfg, const RunResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    const nlohmann::json cfg_json = to_json(cfg);
    {
        std::ofstream out(dir + "/config.json", std::ios::trunc);
        out << cfg_json.dump(2) << "\n";
    }
    {
        nlohmann::json meta;
        meta["seed"] = cfg.ic.seed;
        meta["threads"] = configured_threads();
        meta["checkpoint_format"] = "GSQG1";
        meta["checkpoint_version"] = 1;
        meta["csv_schema"] = "t,l2,gamma_energy,hs,hs_log,u_max,dt,s_t";
        meta["blew_up"] = result.blowup.blew_up;
        if (result.blowup.blew_up) {
            meta["blowup"] = {{"t", result.blowup.t},
                              {"step", result.blowup.step},
                              {"reason", result.blowup.reason}};
        }
        std::ofstream out(dir + "/metadata.json", std::ios::trunc);
        out << meta.dump(2) << "\n";
    }
    emit_diagnostics(result.series, dir + "/diagnostics.csv");

    CheckpointMeta cmeta{model_to_json(cfg.model).dump(), cfg.ic.seed};
    for (const auto& [t, theta] : result.checkpoints) {
        char name[64];
        std::snprintf(name, sizeof(name), "/checkpoint_t%.6f.gsqg", t);
        SimulationState snap{t, theta, 0};
        write_checkpoint(snap, cmeta, dir + name);
    }
    write_checkpoint(result.final_state, cmeta, dir + "/final.gsqg");
}

}  // namespace gsqg
