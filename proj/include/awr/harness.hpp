#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "awr/diagnostics.hpp"
#include "awr/solver.hpp"
#include "awr/sticky.hpp"

namespace awr {

// Smooth periodic initial-data families. Band-limited seeded perturbations
// (first 3 Fourier modes) are available for ensemble sampling.
struct InitialData {
    enum class Family { sinusoidal, two_plateau };
    Family family = Family::sinusoidal;

    // sinusoidal: rho = rho_mean + rho_amp sin(2 pi x/L + rho_phase),
    //             u = -u_amp sin(2 pi x/L + u_phase)
    double rho_mean = 0.7;
    double rho_amp = 0.0;
    double rho_phase = 0.0;
    double u_amp = 0.0;
    double u_phase = 0.0;

    // two_plateau: left value on (0, L/2), right value on (L/2, L), blended
    // by opposed tanh ramps of the given interface sharpness.
    double rho_left = 0.6;
    double rho_right = 0.6;
    double u_left = 0.0;
    double u_right = 0.0;
    double sharpness = 0.05;

    double perturb_rho = 0.0;
    double perturb_u = 0.0;
    std::uint64_t seed = 0;
};

struct RunConfig {
    ModelParams model;
    std::size_t n_cells = 512;
    double length = 1.0;
    double t_end = 0.5;
    SolverConfig solver;
    Formulation formulation = Formulation::primitive;
    InitialData initial;
    double ceiling_margin_c0 = 0.5;  // C0 of the admissibility margin

    // sweep / oracle controls
    std::vector<double> epsilons;  // descending
    bool with_oracle = false;
    std::size_t n_particles = 400;
    std::size_t workers = 0;  // 0 = hardware concurrency
    std::size_t oracle_samples = 33;

    std::string out_dir = "awrsim_out";

    std::set<std::string> keys_present;  // config keys seen by the parser
    bool has(const std::string& key) const { return keys_present.count(key) > 0; }
};

// Flat key-value config text: one `key = value` per line, `#` comments.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Samples the descriptor at cell centers (no validation).
State build_initial(const InitialData& d, const Grid& g);

// Admissibility checks: strict positivity, max rho <= 1 - C0 eps^(1/(beta-1)),
// and total mass strictly inside (0, length). Raises ErrorKind::validation
// with the violated hypothesis named in the error detail.
void validate_initial(const State& initial, const ModelParams& p, double c0);

// build_initial + validate_initial against the config's model parameters.
State build_validated_initial(const RunConfig& cfg);

struct RunOutput {
    RunResult result;
    double max_oleinik_excess = 0.0;  // over samples with t >= 0.05 t_end
    double sup_pi_h1 = 0.0;
    double sup_visc_flux_l1 = 0.0;
    double energy_drift = 0.0;  // max(0, sup_t E - E0)/max(E0, tiny)
    double max_bd_ratio = 0.0;  // sup_t bd_norm(t)/bd_norm(0)
    std::string summary_json;
};

RunOutput run_simulation(const RunConfig& cfg);

struct SweepRow {
    double epsilon = 0.0;
    double max_rho = 0.0;
    double ceiling_gap = 0.0;
    double max_oleinik_excess = 0.0;
    double sup_pi_h1 = 0.0;
    double sup_visc_flux_l1 = 0.0;
    double energy_drift = 0.0;
    double oracle_distance = -1.0;  // negative when the oracle was not run
};

struct SweepReport {
    std::vector<SweepRow> rows;  // sorted by epsilon descending
    PowerLawFit ceiling_fit;
    PowerLawFit pi_h1_fit;
    PowerLawFit visc_flux_fit;
    std::string to_json() const;
};

// Runs every epsilon of the config (in parallel up to `workers`), assembles
// rows in epsilon order, and fits the scaling laws. Each member run is
// independently reproducible via run_simulation with that epsilon.
struct SweepResult {
    SweepReport report;
    std::vector<RunOutput> outputs;  // per epsilon, same order as rows
};
SweepResult sweep(const RunConfig& base);

// L1 distance between the cumulative mass of a terminal state and of an
// oracle block system, on the state's grid.
double compare_to_oracle(const State& terminal, const BlockSystem& blocks);

struct OracleOutput {
    std::vector<BlockSystem> snapshots;  // uniform times from 0 to t_end
    std::string series_json;
};
OracleOutput run_oracle(const RunConfig& cfg);

// File emission (CSV/JSON/plot script); creates the directory if needed.
void write_run_outputs(const RunOutput& out, const std::string& dir);
void write_sweep_outputs(const SweepResult& res, const std::string& dir);
void write_oracle_outputs(const OracleOutput& out, const std::string& dir);

std::string state_to_csv(const State& state);
State state_from_csv(const std::string& text);

}  // namespace awr
