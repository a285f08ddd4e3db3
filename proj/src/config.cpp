#include "gsqg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "gsqg/multiplier.hpp"

namespace gsqg {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

// Typed, path-reporting accessors over one JSON object.
struct Section {
    const json& j;
    std::string path;

    void allow(std::initializer_list<const char*> keys) const {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!ok.count(it.key())) throw ConfigError(join(path, it.key()), "unknown key");
    }
    bool has(const char* k) const { return j.contains(k); }
    const json& raw(const char* k) const { return j.at(k); }

    double number(const char* k, double def) const {
        if (!has(k)) return def;
        if (!j.at(k).is_number()) throw ConfigError(join(path, k), "expected a number");
        return j.at(k).get<double>();
    }
    double number_required(const char* k) const {
        if (!has(k)) throw ConfigError(join(path, k), "required key missing");
        return number(k, 0.0);
    }
    int integer(const char* k, int def) const {
        if (!has(k)) return def;
        if (!j.at(k).is_number_integer()) throw ConfigError(join(path, k), "expected an integer");
        return j.at(k).get<int>();
    }
    bool boolean(const char* k, bool def) const {
        if (!has(k)) return def;
        if (!j.at(k).is_boolean()) throw ConfigError(join(path, k), "expected a boolean");
        return j.at(k).get<bool>();
    }
    std::string text(const char* k, const std::string& def) const {
        if (!has(k)) return def;
        if (!j.at(k).is_string()) throw ConfigError(join(path, k), "expected a string");
        return j.at(k).get<std::string>();
    }
    Section section(const char* k) const {
        if (!j.at(k).is_object()) throw ConfigError(join(path, k), "expected an object");
        return Section{j.at(k), join(path, k)};
    }
};

MultiplierSpec multiplier_from_section(const Section& s, double default_shift) {
    s.allow({"family", "delta", "beta", "alpha", "shift", "sign", "nodes"});
    MultiplierSpec m;
    const std::string fam = s.text("family", "");
    if (fam.empty()) throw ConfigError(join(s.path, "family"), "required key missing");
    try {
        m.family = family_from_name(fam);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(join(s.path, "family"), e.what());
    }
    m.delta = s.number("delta", 0.0);
    m.beta = s.number("beta", 0.0);
    m.alpha = s.number("alpha", 0.0);
    m.shift = s.number("shift", default_shift);
    m.sign = s.number("sign", 1.0);
    if (s.has("nodes")) {
        const json& nd = s.raw("nodes");
        if (!nd.is_array()) throw ConfigError(join(s.path, "nodes"), "expected an array of [r, value]");
        for (const auto& e : nd) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigError(join(s.path, "nodes"), "each node must be [r, value]");
            m.nodes.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
    }
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(s.path, e.what());
    }
    return m;
}

json multiplier_to_json(const MultiplierSpec& m) {
    json j;
    j["family"] = family_name(m.family);
    j["shift"] = m.shift;
    j["sign"] = m.sign;
    switch (m.family) {
        case SymbolFamily::PowerShift:
        case SymbolFamily::Rescaled: j["delta"] = m.delta; break;
        case SymbolFamily::LogPow: j["beta"] = m.beta; break;
        case SymbolFamily::LogOfLog:
        case SymbolFamily::FracLap: j["alpha"] = m.alpha; break;
        case SymbolFamily::Tabulated: {
            json nodes = json::array();
            for (const auto& [r, v] : m.nodes) nodes.push_back({r, v});
            j["nodes"] = nodes;
            break;
        }
        default: break;
    }
    return j;
}

StudyConfig study_from_section(const Section& s) {
    s.allow({"delta_ladder", "tau_end", "dt_tau", "s_cmp", "m_cmp", "samples", "order_threshold",
             "refine_check"});
    StudyConfig c;
    if (s.has("delta_ladder")) {
        c.delta_ladder.clear();
        for (const auto& v : s.raw("delta_ladder")) c.delta_ladder.push_back(v.get<double>());
    }
    c.tau_end = s.number("tau_end", c.tau_end);
    c.dt_tau = s.number("dt_tau", c.dt_tau);
    c.s_cmp = s.number("s_cmp", c.s_cmp);
    c.m_cmp = s.number("m_cmp", c.m_cmp);
    c.samples = s.integer("samples", c.samples);
    c.order_threshold = s.number("order_threshold", c.order_threshold);
    c.refine_check = s.boolean("refine_check", c.refine_check);
    if (c.delta_ladder.size() < 2)
        throw ConfigError(join(s.path, "delta_ladder"), "need at least two rungs");
    for (std::size_t i = 0; i < c.delta_ladder.size(); ++i) {
        const double d = c.delta_ladder[i];
        if (!(d > 0.0 && d < 1.0))
            throw ConfigError(join(s.path, "delta_ladder"), "rungs must lie in (0,1)");
        if (i > 0 && !(d < c.delta_ladder[i - 1]))
            throw ConfigError(join(s.path, "delta_ladder"), "rungs must be strictly decreasing");
    }
    if (!(c.tau_end > 0.0)) throw ConfigError(join(s.path, "tau_end"), "must be positive");
    if (!(c.dt_tau > 0.0)) throw ConfigError(join(s.path, "dt_tau"), "must be positive");
    if (c.samples < 2) throw ConfigError(join(s.path, "samples"), "need >= 2 samples");
    return c;
}

}  // namespace

void SimulationConfig::validate() const {
    if (grid.n % 2 != 0 || grid.n < 8) throw ConfigError("grid.n", "must be an even integer >= 8");
    if (!(grid.length > 0.0)) throw ConfigError("grid.length", "must be positive");
    if (!(grid.shift >= 1.0)) throw ConfigError("grid.shift", "must be >= 1");

    try {
        model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("model", e.what());
    }

    if (!(time.t_end >= 0.0)) throw ConfigError("time.t_end", "must be >= 0");
    if (time.mode == TimeConfig::Mode::fixed) {
        if (!(time.dt > 0.0)) throw ConfigError("time.dt", "must be positive in fixed mode");
    } else {
        if (!(time.cfl > 0.0 && time.cfl <= 1.0)) throw ConfigError("time.cfl", "must lie in (0,1]");
        if (!(time.dt_max > 0.0)) throw ConfigError("time.dt_max", "must be positive");
    }

    const int cutoff = (model.dealias_rule == DealiasRule::two_thirds) ? grid.n / 3 : grid.n / 2;
    if (ic.kind == IcConfig::Kind::random_band) {
        if (ic.band_lo < 1 || ic.band_hi < ic.band_lo) throw ConfigError("ic.band", "need 1 <= lo <= hi");
        if (ic.band_hi > cutoff)
            throw ConfigError("ic.band", "band exceeds the retained mode range of the grid");
        if (!(ic.amplitude > 0.0)) throw ConfigError("ic.amplitude", "must be positive");
    } else if (ic.kind == IcConfig::Kind::modes) {
        if (ic.modes.empty()) throw ConfigError("ic.modes", "mode list is empty");
        for (const auto& m : ic.modes)
            if (std::abs(m.k1) > grid.n / 2 || std::abs(m.k2) > grid.n / 2)
                throw ConfigError("ic.modes", "mode outside the grid's frequency range");
    }

    if (output.record_every < 1) throw ConfigError("output.record_every", "must be >= 1");
    for (double t : output.checkpoint_times)
        if (t < 0.0 || t > time.t_end + 1.0e-12)
            throw ConfigError("output.checkpoint_times", "times must lie in [0, t_end]");

    if (!(norms.s0 > 4.0)) throw ConfigError("norms.s0", "must exceed 4");
    if (!(norms.rate >= 0.0)) throw ConfigError("norms.M", "must be >= 0");
    if (!norms.auto_rate && norms.rate > 0.0 && !(norms.s0 - norms.rate * time.t_end > 4.0))
        throw ConfigError("norms.M", "schedule reaches s(t) <= 4 before t_end");
    if (!(blowup_ceiling >= 0.0)) throw ConfigError("blowup_ceiling", "must be >= 0 (0 disables)");
}

SimulationConfig parse_config_json(const json& root) {
    if (!root.is_object()) throw ConfigError("", "config root must be an object");
    Section top{root, ""};
    top.allow({"grid", "model", "time", "ic", "output", "norms", "blowup_ceiling", "study", "probe_a",
               "probe_c", "probe_d"});

    SimulationConfig cfg;

    if (top.has("grid")) {
        Section s = top.section("grid");
        s.allow({"n", "length", "shift"});
        cfg.grid.n = s.integer("n", cfg.grid.n);
        cfg.grid.length = s.number("length", cfg.grid.length);
        cfg.grid.shift = s.number("shift", cfg.grid.shift);
    }

    if (top.has("model")) {
        Section s = top.section("model");
        s.allow({"preset", "delta", "kappa", "beta", "alpha", "dealias", "advection", "rescaled_time",
                 "biot_savart", "dissipation"});
        cfg.preset = s.text("preset", "");
        const double shift = cfg.grid.shift;
        const bool explicit_bs = s.has("biot_savart");
        if (!cfg.preset.empty() && explicit_bs)
            throw ConfigError("model.biot_savart", "give either model.preset or model.biot_savart");
        if (cfg.preset.empty() && !explicit_bs)
            throw ConfigError("model.preset", "required key missing (or give model.biot_savart)");

        if (!cfg.preset.empty()) {
            auto need = [&](const char* k) {
                if (!s.has(k)) throw ConfigError(join("model", k), "required by this preset");
                return s.number_required(k);
            };
            if (cfg.preset == "ohkitani") {
                cfg.model = ModelSpec::ohkitani(shift);
            } else if (cfg.preset == "delta_sqg") {
                cfg.model = ModelSpec::delta_sqg(need("delta"), shift);
            } else if (cfg.preset == "rescaled_delta_sqg") {
                cfg.model = ModelSpec::rescaled_delta_sqg(need("delta"), shift);
            } else if (cfg.preset == "dissipative_delta_sqg") {
                const double delta = need("delta");
                const double kappa = need("kappa");
                MultiplierSpec psi = MultiplierSpec::log_law(shift);
                cfg.model = ModelSpec::dissipative_delta_sqg(delta, kappa, psi, shift);
            } else if (cfg.preset == "logdiss_ohkitani") {
                cfg.model = ModelSpec::logdiss_ohkitani(need("kappa"), need("beta"), shift);
            } else {
                throw ConfigError("model.preset", "unknown preset '" + cfg.preset + "'");
            }
        } else {
            cfg.model.biot_savart = multiplier_from_section(s.section("biot_savart"), shift);
        }

        if (s.has("dissipation")) {
            Section d = s.section("dissipation");
            d.allow({"kappa", "symbol"});
            Dissipation diss;
            diss.kappa = d.number_required("kappa");
            diss.symbol = d.has("symbol") ? multiplier_from_section(d.section("symbol"), shift)
                                          : MultiplierSpec::log_law(shift);
            cfg.model.dissipation = diss;
        }

        const std::string rule = s.text("dealias", "two_thirds");
        if (rule == "two_thirds")
            cfg.model.dealias_rule = DealiasRule::two_thirds;
        else if (rule == "none")
            cfg.model.dealias_rule = DealiasRule::none;
        else
            throw ConfigError("model.dealias", "expected 'two_thirds' or 'none'");
        cfg.model.advection = s.boolean("advection", true);
        if (s.has("rescaled_time")) cfg.model.rescaled_time = s.boolean("rescaled_time", false);
    } else {
        throw ConfigError("model", "required section missing");
    }

    if (top.has("time")) {
        Section s = top.section("time");
        s.allow({"mode", "dt", "cfl", "dt_max", "t_end"});
        const std::string mode = s.text("mode", "cfl");
        if (mode == "fixed")
            cfg.time.mode = TimeConfig::Mode::fixed;
        else if (mode == "cfl")
            cfg.time.mode = TimeConfig::Mode::cfl;
        else
            throw ConfigError("time.mode", "expected 'fixed' or 'cfl'");
        cfg.time.dt = s.number("dt", cfg.time.dt);
        cfg.time.cfl = s.number("cfl", cfg.time.cfl);
        cfg.time.dt_max = s.number("dt_max", cfg.time.dt_max);
        cfg.time.t_end = s.number("t_end", cfg.time.t_end);
    }

    if (top.has("ic")) {
        Section s = top.section("ic");
        s.allow({"kind", "band", "amplitude", "seed", "modes"});
        const std::string kind = s.text("kind", "random_band");
        if (kind == "shear")
            cfg.ic.kind = IcConfig::Kind::shear;
        else if (kind == "random_band")
            cfg.ic.kind = IcConfig::Kind::random_band;
        else if (kind == "modes")
            cfg.ic.kind = IcConfig::Kind::modes;
        else
            throw ConfigError("ic.kind", "expected 'shear', 'random_band', or 'modes'");
        if (s.has("band")) {
            const json& b = s.raw("band");
            if (!b.is_array() || b.size() != 2) throw ConfigError("ic.band", "expected [k_min, k_max]");
            cfg.ic.band_lo = b[0].get<int>();
            cfg.ic.band_hi = b[1].get<int>();
        }
        cfg.ic.amplitude = s.number("amplitude", cfg.ic.amplitude);
        if (s.has("seed")) cfg.ic.seed = s.raw("seed").get<std::uint64_t>();
        if (s.has("modes")) {
            for (const auto& e : s.raw("modes")) {
                if (!e.is_array() || e.size() != 4)
                    throw ConfigError("ic.modes", "each entry must be [k1, k2, re, im]");
                cfg.ic.modes.push_back(
                    ExplicitMode{e[0].get<int>(), e[1].get<int>(), Complex(e[2].get<double>(), e[3].get<double>())});
            }
        }
    }

    if (top.has("output")) {
        Section s = top.section("output");
        s.allow({"record_every", "checkpoint_times"});
        cfg.output.record_every = s.integer("record_every", cfg.output.record_every);
        if (s.has("checkpoint_times"))
            for (const auto& v : s.raw("checkpoint_times"))
                cfg.output.checkpoint_times.push_back(v.get<double>());
    }

    if (top.has("norms")) {
        Section s = top.section("norms");
        s.allow({"s0", "M", "log_weight"});
        cfg.norms.s0 = s.number("s0", cfg.norms.s0);
        if (s.has("M")) {
            const json& m = s.raw("M");
            if (m.is_string()) {
                if (m.get<std::string>() != "auto")
                    throw ConfigError("norms.M", "expected a number or 'auto'");
                cfg.norms.auto_rate = true;
            } else if (m.is_number()) {
                cfg.norms.rate = m.get<double>();
            } else {
                throw ConfigError("norms.M", "expected a number or 'auto'");
            }
        }
        cfg.norms.log_weight = s.boolean("log_weight", cfg.norms.log_weight);
    }

    cfg.blowup_ceiling = top.number("blowup_ceiling", cfg.blowup_ceiling);

    if (top.has("study")) cfg.study = study_from_section(top.section("study"));
    if (top.has("probe_a")) {
        Section s = top.section("probe_a");
        s.allow({"m0", "m_ceiling", "bound_factor"});
        ProbeAConfig p;
        p.m0 = s.number("m0", p.m0);
        p.m_ceiling = s.number("m_ceiling", p.m_ceiling);
        p.bound_factor = s.number("bound_factor", p.bound_factor);
        cfg.probe_a = p;
    }
    if (top.has("probe_c")) {
        Section s = top.section("probe_c");
        s.allow({"delta_ladder", "ic_scale", "sweep_kappa", "sweep_t_end", "sweep_amplitude"});
        ProbeCConfig p;
        if (s.has("delta_ladder")) {
            p.delta_ladder.clear();
            for (const auto& v : s.raw("delta_ladder")) p.delta_ladder.push_back(v.get<double>());
        }
        p.ic_scale = s.number("ic_scale", p.ic_scale);
        p.sweep_kappa = s.number("sweep_kappa", p.sweep_kappa);
        p.sweep_t_end = s.number("sweep_t_end", p.sweep_t_end);
        p.sweep_amplitude = s.number("sweep_amplitude", p.sweep_amplitude);
        cfg.probe_c = p;
    }
    if (top.has("probe_d")) {
        Section s = top.section("probe_d");
        s.allow({"bound_factor"});
        ProbeDConfig p;
        p.bound_factor = s.number("bound_factor", p.bound_factor);
        cfg.probe_d = p;
    }

    cfg.validate();
    return cfg;
}

SimulationConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file: " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_config_json(root);
}

json model_to_json(const ModelSpec& model) {
    json m;
    m["biot_savart"] = multiplier_to_json(model.biot_savart);
    if (model.dissipation) {
        m["dissipation"] = {{"kappa", model.dissipation->kappa},
                            {"symbol", multiplier_to_json(model.dissipation->symbol)}};
    }
    m["dealias"] = model.dealias_rule == DealiasRule::two_thirds ? "two_thirds" : "none";
    m["advection"] = model.advection;
    m["rescaled_time"] = model.rescaled_time;
    return m;
}

ModelSpec model_from_json(const json& j, const std::string& base_path) {
    Section s{j, base_path};
    s.allow({"biot_savart", "dissipation", "dealias", "advection", "rescaled_time"});
    ModelSpec m;
    m.biot_savart = multiplier_from_section(s.section("biot_savart"), 10.0);
    if (s.has("dissipation")) {
        Section d = s.section("dissipation");
        d.allow({"kappa", "symbol"});
        m.dissipation = Dissipation{d.number_required("kappa"),
                                    multiplier_from_section(d.section("symbol"), 10.0)};
    }
    m.dealias_rule =
        s.text("dealias", "two_thirds") == "none" ? DealiasRule::none : DealiasRule::two_thirds;
    m.advection = s.boolean("advection", true);
    m.rescaled_time = s.boolean("rescaled_time", false);
    return m;
}

json to_json(const SimulationConfig& cfg) {
    json j;
    j["grid"] = {{"n", cfg.grid.n}, {"length", cfg.grid.length}, {"shift", cfg.grid.shift}};
    j["model"] = model_to_json(cfg.model);
    json t;
    t["mode"] = cfg.time.mode == TimeConfig::Mode::fixed ? "fixed" : "cfl";
    if (cfg.time.mode == TimeConfig::Mode::fixed)
        t["dt"] = cfg.time.dt;
    else {
        t["cfl"] = cfg.time.cfl;
        t["dt_max"] = cfg.time.dt_max;
    }
    t["t_end"] = cfg.time.t_end;
    j["time"] = t;
    json ic;
    switch (cfg.ic.kind) {
        case IcConfig::Kind::shear: ic["kind"] = "shear"; break;
        case IcConfig::Kind::random_band: ic["kind"] = "random_band"; break;
        case IcConfig::Kind::modes: ic["kind"] = "modes"; break;
    }
    ic["band"] = {cfg.ic.band_lo, cfg.ic.band_hi};
    ic["amplitude"] = cfg.ic.amplitude;
    ic["seed"] = cfg.ic.seed;
    if (!cfg.ic.modes.empty()) {
        json modes = json::array();
        for (const auto& m : cfg.ic.modes) modes.push_back({m.k1, m.k2, m.c.real(), m.c.imag()});
        ic["modes"] = modes;
    }
    j["ic"] = ic;
    j["output"] = {{"record_every", cfg.output.record_every},
                   {"checkpoint_times", cfg.output.checkpoint_times}};
    json norms;
    norms["s0"] = cfg.norms.s0;
    if (cfg.norms.auto_rate)
        norms["M"] = "auto";
    else
        norms["M"] = cfg.norms.rate;
    norms["log_weight"] = cfg.norms.log_weight;
    j["norms"] = norms;
    j["blowup_ceiling"] = cfg.blowup_ceiling;
    if (cfg.study) {
        const StudyConfig& c = *cfg.study;
        j["study"] = {{"delta_ladder", c.delta_ladder}, {"tau_end", c.tau_end},
                      {"dt_tau", c.dt_tau},             {"s_cmp", c.s_cmp},
                      {"m_cmp", c.m_cmp},               {"samples", c.samples},
                      {"order_threshold", c.order_threshold}, {"refine_check", c.refine_check}};
    }
    if (cfg.probe_a) {
        const ProbeAConfig& p = *cfg.probe_a;
        j["probe_a"] = {{"m0", p.m0}, {"m_ceiling", p.m_ceiling}, {"bound_factor", p.bound_factor}};
    }
    if (cfg.probe_c) {
        const ProbeCConfig& p = *cfg.probe_c;
        j["probe_c"] = {{"delta_ladder", p.delta_ladder},
                        {"ic_scale", p.ic_scale},
                        {"sweep_kappa", p.sweep_kappa},
                        {"sweep_t_end", p.sweep_t_end},
                        {"sweep_amplitude", p.sweep_amplitude}};
    }
    if (cfg.probe_d) j["probe_d"] = {{"bound_factor", cfg.probe_d->bound_factor}};
    return j;
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Portable Box-Muller; avoids implementation-defined std distributions so a
// seed pins the IC bit-exactly.
std::pair<double, double> gauss_pair(std::mt19937_64& rng) {
    const double u = 1.0 - uniform01(rng);
    const double v = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * Grid::pi() * v;
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

SpectralField build_initial_condition(const Grid& grid, const IcConfig& ic, const NormConfig& norms,
                                      DealiasRule rule) {
    SpectralField theta(grid);
    switch (ic.kind) {
        case IcConfig::Kind::shear:
            theta.set_pair(1, 0, Complex(0.5 * ic.amplitude, 0.0));
            break;
        case IcConfig::Kind::random_band: {
            std::mt19937_64 rng(ic.seed);
            const long lo2 = static_cast<long>(ic.band_lo) * ic.band_lo;
            const long hi2 = static_cast<long>(ic.band_hi) * ic.band_hi;
            for (int i = 0; i < grid.rows(); ++i) {
                const long k1 = grid.k1(i);
                for (int j = 0; j < grid.cols(); ++j) {
                    const long kk = k1 * k1 + static_cast<long>(j) * j;
                    if (kk < lo2 || kk > hi2) continue;
                    auto [re, im] = gauss_pair(rng);
                    theta(i, j) = Complex(re, im);
                }
            }
            enforce_hermitian(theta);
            dealias_in_place(theta, rule);
            theta(0, 0) = Complex{};  // mean-free by convention
            const double norm = hs_norm(theta, norms.s0, grid.shift());
            if (!(norm > 0.0)) throw ConfigError("ic.band", "band contains no retained modes");
            theta *= ic.amplitude / norm;
            break;
        }
        case IcConfig::Kind::modes: {
            for (const auto& m : ic.modes) theta.set_pair(m.k1, m.k2, m.c);
            enforce_hermitian(theta);
            dealias_in_place(theta, rule);
            theta *= ic.amplitude;
            break;
        }
    }
    return theta;
}

}  // namespace gsqg
