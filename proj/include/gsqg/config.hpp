#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsqg/diagnostics.hpp"
#include "gsqg/model.hpp"

#include <nlohmann/json_fwd.hpp>

namespace gsqg {

/// Configuration error carrying the offending key path (e.g. "model.delta").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct GridConfig {
    int n = 128;
    double length = 2.0 * Grid::pi();
    double shift = 10.0;
};

struct TimeConfig {
    enum class Mode { fixed, cfl };
    Mode mode = Mode::cfl;
    double dt = 0.0;       // fixed mode
    double cfl = 0.5;      // cfl mode
    double dt_max = 0.05;  // cfl mode cap
    double t_end = 1.0;
};

struct ExplicitMode {
    int k1 = 0;
    int k2 = 0;
    Complex c;
};

struct IcConfig {
    enum class Kind { shear, random_band, modes };
    Kind kind = Kind::random_band;
    int band_lo = 1;
    int band_hi = 10;
    double amplitude = 1.0;  // target H^{s0} norm (random_band), cosine
                             // amplitude (shear), scale factor (modes)
    std::uint64_t seed = 1;
    std::vector<ExplicitMode> modes;
};

struct OutputConfig {
    int record_every = 1;
    std::vector<double> checkpoint_times;
};

struct NormConfig {
    double s0 = 5.0;
    double rate = 0.0;  // "M"; auto_rate runs the doubling search instead
    bool auto_rate = false;
    bool log_weight = true;
};

/// Config sections for the pre-packaged experiment harnesses. Optional in
/// the file; defaults reproduce the desk-scale studies.
struct StudyConfig {
    std::vector<double> delta_ladder = {0.4, 0.2, 0.1};
    double tau_end = 0.5;
    double dt_tau = 0.005;
    double s_cmp = 5.0;
    double m_cmp = 1.0;
    int samples = 10;
    double order_threshold = 0.8;
    bool refine_check = true;
};

struct ProbeAConfig {
    double m0 = 1.0;
    double m_ceiling = 64.0;
    double bound_factor = 1.1;
};

struct ProbeCConfig {
    std::vector<double> delta_ladder = {0.8, 0.4, 0.2, 0.1, 0.05, 0.025};
    double ic_scale = 4.0;
    double sweep_kappa = 0.4;
    double sweep_t_end = 20.0;
    double sweep_amplitude = 0.0;  // 0: reuse ic.amplitude
};

struct ProbeDConfig {
    double bound_factor = 1.5;
};

struct SimulationConfig {
    GridConfig grid;
    ModelSpec model;
    std::string preset;  // "ohkitani", "delta_sqg", "dissipative_delta_sqg",
                         // "logdiss_ohkitani", "rescaled_delta_sqg", or ""
    TimeConfig time;
    IcConfig ic;
    OutputConfig output;
    NormConfig norms;
    double blowup_ceiling = 1.0e6;

    std::optional<StudyConfig> study;
    std::optional<ProbeAConfig> probe_a;
    std::optional<ProbeCConfig> probe_c;
    std::optional<ProbeDConfig> probe_d;

    /// Cross-field validation; throws ConfigError naming the key path.
    void validate() const;
};

SimulationConfig parse_config(const std::string& path);
SimulationConfig parse_config_json(const nlohmann::json& j);
nlohmann::json to_json(const SimulationConfig& cfg);
nlohmann::json model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j, const std::string& base_path);

/// Deterministic initial condition from the recipe; dealiased under `rule`,
/// Hermitian, mean-free for random_band.
SpectralField build_initial_condition(const Grid& grid, const IcConfig& ic, const NormConfig& norms,
                                      DealiasRule rule);

}  // namespace gsqg
