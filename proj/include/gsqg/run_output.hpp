#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gsqg/config.hpp"
#include "gsqg/dynamics.hpp"

namespace gsqg {

/// CSV schema: header `t,l2,gamma_energy,hs,hs_log,u_max,dt,s_t`, one row
/// per record, 17 significant digits (doubles round-trip exactly).
void emit_diagnostics(const std::vector<DiagnosticsRecord>& series, std::ostream& out);
void emit_diagnostics(const std::vector<DiagnosticsRecord>& series, const std::string& path);

/// Parses CSV produced by emit_diagnostics; throws on schema mismatch.
std::vector<DiagnosticsRecord> parse_diagnostics_csv(const std::string& path);

/// Writes a complete, reproducible run directory: resolved config.json,
/// metadata.json (seed, thread configuration, format versions),
/// diagnostics.csv, requested checkpoints, and final.gsqg.
void write_run_directory(const SimulationConfig& cfg, const RunResult& result, const std::string& dir);

/// Thread configuration recorded in run metadata (env GSQG_THREADS, default 1).
int configured_threads();

}  // namespace gsqg
