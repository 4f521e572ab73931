#include "awr/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace awr {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v))
            fail(ErrorKind::parse, "key " + key + " has malformed number '" + value + "'", key);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorKind::parse, "key " + key + " has malformed number '" + value + "'", key);
    }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v < 0.0 || v != std::floor(v))
        fail(ErrorKind::parse, "key " + key + " must be a nonnegative integer", key);
    return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail(ErrorKind::parse, "key " + key + " must be true or false", key);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) fail(ErrorKind::parse, "key " + key + " has an empty list", key);
    return out;
}

void require_key(const RunConfig& cfg, const std::string& key) {
    if (!cfg.has(key)) fail(ErrorKind::parse, "missing key: " + key, key);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void set_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "epsilon") cfg.model.epsilon = parse_double(key, value);
    else if (key == "gamma") cfg.model.gamma = parse_double(key, value);
    else if (key == "beta") cfg.model.beta = parse_double(key, value);
    else if (key == "alpha") cfg.model.alpha = parse_double(key, value);
    else if (key == "quad_tol") cfg.model.quad_tol = parse_double(key, value);
    else if (key == "n_cells") cfg.n_cells = parse_size(key, value);
    else if (key == "length") cfg.length = parse_double(key, value);
    else if (key == "t_end") cfg.t_end = parse_double(key, value);
    else if (key == "cfl") cfg.solver.cfl = parse_double(key, value);
    else if (key == "max_dt_halvings")
        cfg.solver.max_dt_halvings = static_cast<int>(parse_size(key, value));
    else if (key == "picard_iters")
        cfg.solver.picard_iters = static_cast<int>(parse_size(key, value));
    else if (key == "linear_tol") cfg.solver.linear_tol = parse_double(key, value);
    else if (key == "sample_every") cfg.solver.sample_every = parse_size(key, value);
    else if (key == "formulation") {
        if (value == "primitive") cfg.formulation = Formulation::primitive;
        else if (value == "dual") cfg.formulation = Formulation::dual;
        else fail(ErrorKind::parse, "formulation must be primitive or dual", key);
    } else if (key == "init") {
        if (value == "sinusoidal") cfg.initial.family = InitialData::Family::sinusoidal;
        else if (value == "two_plateau") cfg.initial.family = InitialData::Family::two_plateau;
        else fail(ErrorKind::parse, "init must be sinusoidal or two_plateau", key);
    } else if (key == "rho_mean") cfg.initial.rho_mean = parse_double(key, value);
    else if (key == "rho_amp") cfg.initial.rho_amp = parse_double(key, value);
    else if (key == "rho_phase") cfg.initial.rho_phase = parse_double(key, value);
    else if (key == "u_amp") cfg.initial.u_amp = parse_double(key, value);
    else if (key == "u_phase") cfg.initial.u_phase = parse_double(key, value);
    else if (key == "rho_left") cfg.initial.rho_left = parse_double(key, value);
    else if (key == "rho_right") cfg.initial.rho_right = parse_double(key, value);
    else if (key == "u_left") cfg.initial.u_left = parse_double(key, value);
    else if (key == "u_right") cfg.initial.u_right = parse_double(key, value);
    else if (key == "sharpness") cfg.initial.sharpness = parse_double(key, value);
    else if (key == "perturb_rho") cfg.initial.perturb_rho = parse_double(key, value);
    else if (key == "perturb_u") cfg.initial.perturb_u = parse_double(key, value);
    else if (key == "seed") cfg.initial.seed = parse_size(key, value);
    else if (key == "ceiling_margin_c0") cfg.ceiling_margin_c0 = parse_double(key, value);
    else if (key == "epsilons") cfg.epsilons = parse_list(key, value);
    else if (key == "with_oracle") cfg.with_oracle = parse_bool(key, value);
    else if (key == "n_particles") cfg.n_particles = parse_size(key, value);
    else if (key == "workers") cfg.workers = parse_size(key, value);
    else if (key == "oracle_samples") cfg.oracle_samples = parse_size(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else fail(ErrorKind::parse, "unknown key: " + key, key);
    cfg.keys_present.insert(key);
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::parse,
                 "line " + std::to_string(lineno) + " is not of the form key = value");
        set_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

State build_initial(const InitialData& d, const Grid& g) {
    Field rho(g), u(g);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t j = 0; j < g.n_cells; ++j) {
        const double x = g.center(j);
        const double theta = two_pi * x / g.length;
        if (d.family == InitialData::Family::sinusoidal) {
            rho[j] = d.rho_mean + d.rho_amp * std::sin(theta + d.rho_phase);
            u[j] = -d.u_amp * std::sin(theta + d.u_phase);
        } else {
            // Two opposed tanh ramps, written through sin so the profile is
            // exactly periodic: ~1 on the left half, ~0 on the right half,
            // transition width `sharpness` at x = 0 and x = L/2.
            const double s =
                0.5 * (1.0 + std::tanh(std::sin(theta) * g.length / (two_pi * d.sharpness)));
            rho[j] = d.rho_right + (d.rho_left - d.rho_right) * s;
            u[j] = d.u_right + (d.u_left - d.u_right) * s;
        }
    }

    if (d.perturb_rho > 0.0 || d.perturb_u > 0.0) {
        std::mt19937_64 rng(d.seed);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        double rho_coef[6], u_coef[6];
        for (double& c : rho_coef) c = coef(rng);
        for (double& c : u_coef) c = coef(rng);
        for (std::size_t j = 0; j < g.n_cells; ++j) {
            const double theta = two_pi * g.center(j) / g.length;
            double drho = 0.0, du = 0.0;
            for (int k = 1; k <= 3; ++k) {
                drho += rho_coef[2 * k - 2] * std::sin(k * theta) +
                        rho_coef[2 * k - 1] * std::cos(k * theta);
                du += u_coef[2 * k - 2] * std::sin(k * theta) +
                      u_coef[2 * k - 1] * std::cos(k * theta);
            }
            rho[j] += d.perturb_rho * drho / 3.0;
            u[j] += d.perturb_u * du / 3.0;
        }
    }
    return State{std::move(rho), std::move(u), 0.0};
}

void validate_initial(const State& initial, const ModelParams& p, double c0) {
    p.validate();
    for (std::size_t j = 0; j < initial.rho.size(); ++j) {
        if (!(initial.rho[j] > 0.0))
            fail(ErrorKind::validation,
                 "initial density must be strictly positive (cell " + std::to_string(j) + ")",
                 "positivity");
    }
    const double margin = c0 * std::pow(p.epsilon, 1.0 / (p.beta - 1.0));
    const double max_rho = max_value(initial.rho);
    if (!(max_rho <= 1.0 - margin))
        fail(ErrorKind::validation,
             "initial density violates the ceiling margin: max rho = " +
                 format_double(max_rho) + " exceeds 1 - " + format_double(margin),
             "ceiling_margin");
    const double mass = integrate(initial.rho);
    if (!(mass > 0.0 && mass < initial.grid().length))
        fail(ErrorKind::validation,
             "total mass " + format_double(mass) + " must lie strictly inside (0, " +
                 format_double(initial.grid().length) + ")",
             "total_mass");
    initial.u.require_finite("initial velocity");
}

State build_validated_initial(const RunConfig& cfg) {
    const Grid g = make_grid(cfg.n_cells, cfg.length);
    State s = build_initial(cfg.initial, g);
    validate_initial(s, cfg.model, cfg.ceiling_margin_c0);
    return s;
}

namespace {

void check_run_keys(const RunConfig& cfg) {
    for (const char* key : {"epsilon", "gamma", "beta", "alpha", "n_cells", "t_end", "init"})
        require_key(cfg, key);
    if (cfg.initial.family == InitialData::Family::sinusoidal) {
        require_key(cfg, "rho_mean");
    } else {
        require_key(cfg, "rho_left");
        require_key(cfg, "rho_right");
    }
}

ordered_json config_echo(const RunConfig& cfg) {
    ordered_json j;
    j["epsilon"] = cfg.model.epsilon;
    j["gamma"] = cfg.model.gamma;
    j["beta"] = cfg.model.beta;
    j["alpha"] = cfg.model.alpha;
    j["n_cells"] = cfg.n_cells;
    j["length"] = cfg.length;
    j["t_end"] = cfg.t_end;
    j["cfl"] = cfg.solver.cfl;
    j["formulation"] = cfg.formulation == Formulation::primitive ? "primitive" : "dual";
    j["init"] =
        cfg.initial.family == InitialData::Family::sinusoidal ? "sinusoidal" : "two_plateau";
    j["seed"] = cfg.initial.seed;
    return j;
}

}  // namespace

RunOutput run_simulation(const RunConfig& cfg) {
    check_run_keys(cfg);
    const State initial = build_validated_initial(cfg);
    RunOutput out;
    out.result = run(initial, cfg.model, cfg.t_end, cfg.solver, cfg.formulation);

    const auto& rows = out.result.diagnostics.rows;
    const double t_cut = 0.05 * cfg.t_end;
    double max_excess = -std::numeric_limits<double>::infinity();
    double bd0 = rows.front().bd_norm;
    for (const auto& r : rows) {
        if (r.time >= t_cut)
            max_excess = std::max(max_excess, r.oleinik_max - r.oleinik_bound);
        out.sup_pi_h1 = std::max(out.sup_pi_h1, r.pi_h1);
        out.sup_visc_flux_l1 = std::max(out.sup_visc_flux_l1, r.visc_flux_l1);
        out.max_bd_ratio = std::max(out.max_bd_ratio, r.bd_norm / std::max(bd0, 1e-30));
    }
    out.max_oleinik_excess = max_excess;
    const RunStats& st = out.result.stats;
    out.energy_drift =
        std::max(0.0, (st.energy_sup - st.energy0) / std::max(st.energy0, 1e-30));

    ordered_json j;
    j["tool"] = "awrsim";
    j["kind"] = "run_summary";
    j["config"] = config_echo(cfg);
    j["steps"] = out.result.trajectory.steps;
    j["rejections"] = out.result.trajectory.rejections;
    j["mass_drift"] = st.mass_drift_rel;
    j["momentum_drift"] = st.momentum_drift_rel;
    j["energy_initial"] = st.energy0;
    j["energy_drift"] = out.energy_drift;
    j["max_energy_step_increase"] = st.max_energy_step_increase_rel;
    j["min_rho"] = st.min_rho;
    j["max_rho"] = st.max_rho;
    j["ceiling_gap"] = 1.0 - st.max_rho;
    j["oleinik_A"] = out.result.diagnostics.oleinik_A;
    j["max_oleinik_excess"] = out.max_oleinik_excess;
    j["sup_pi_h1"] = out.sup_pi_h1;
    j["sup_visc_flux_l1"] = out.sup_visc_flux_l1;
    j["bd_initial"] = bd0;
    j["max_bd_ratio"] = out.max_bd_ratio;
    const State& terminal = out.result.trajectory.terminal;
    j["terminal"] = {{"time", terminal.time},
                     {"min_rho", min_value(terminal.rho)},
                     {"max_rho", max_value(terminal.rho)},
                     {"energy", energy(terminal)}};
    out.summary_json = j.dump(2) + "\n";
    return out;
}

double compare_to_oracle(const State& terminal, const BlockSystem& blocks) {
    if (std::abs(terminal.grid().length - blocks.length) >
        1e-12 * std::max(1.0, blocks.length))
        fail(ErrorKind::argument, "state and block system have different torus lengths");
    return cdf_distance(density_cdf(terminal, terminal.grid()),
                        density_cdf(blocks, terminal.grid()));
}

SweepResult sweep(const RunConfig& base) {
    require_key(base, "epsilons");
    const auto& eps = base.epsilons;
    if (eps.size() < 3)
        fail(ErrorKind::validation, "sweep needs at least 3 epsilon values", "epsilons");
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        if (!(eps[i] > eps[i + 1]))
            fail(ErrorKind::validation, "epsilons must be strictly descending", "epsilons");
    }

    // The oracle limit is epsilon-independent: evolve it once on shared data.
    std::optional<BlockSystem> oracle;
    if (base.with_oracle) {
        const Grid g = make_grid(base.n_cells, base.length);
        const State initial = build_initial(base.initial, g);
        oracle = evolve(discretize(initial.rho, initial.u, base.n_particles), base.t_end);
    }

    struct Member {
        SweepRow row;
        RunOutput output;
    };
    std::vector<std::optional<Member>> members(eps.size());
    std::vector<std::optional<std::pair<ErrorKind, std::string>>> failures(eps.size());
    std::atomic<std::size_t> cursor{0};

    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= eps.size()) return;
            RunConfig cfg = base;
            cfg.model.epsilon = eps[i];
            cfg.keys_present.insert("epsilon");
            try {
                RunOutput out = run_simulation(cfg);
                Member m;
                m.row.epsilon = eps[i];
                m.row.max_rho = out.result.stats.max_rho;
                m.row.ceiling_gap = 1.0 - out.result.stats.max_rho;
                m.row.max_oleinik_excess = out.max_oleinik_excess;
                m.row.sup_pi_h1 = out.sup_pi_h1;
                m.row.sup_visc_flux_l1 = out.sup_visc_flux_l1;
                m.row.energy_drift = out.energy_drift;
                if (oracle)
                    m.row.oracle_distance =
                        compare_to_oracle(out.result.trajectory.terminal, *oracle);
                m.output = std::move(out);
                members[i] = std::move(m);
            } catch (const Error& e) {
                failures[i] = std::make_pair(e.kind(), std::string(e.what()));
            } catch (const std::exception& e) {
                failures[i] = std::make_pair(ErrorKind::runtime, std::string(e.what()));
            }
        }
    };

    std::size_t n_workers = base.workers != 0
                                ? base.workers
                                : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min(n_workers, eps.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i + 1 < n_workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (failures[i])
            fail(failures[i]->first, "sweep member epsilon = " + format_double(eps[i]) +
                                         " failed: " + failures[i]->second);
    }

    SweepResult res;
    std::vector<std::pair<double, double>> gap_pts, pi_pts, visc_pts;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        res.report.rows.push_back(members[i]->row);
        res.outputs.push_back(std::move(members[i]->output));
        gap_pts.emplace_back(eps[i], members[i]->row.ceiling_gap);
        pi_pts.emplace_back(eps[i], members[i]->row.sup_pi_h1);
        visc_pts.emplace_back(eps[i], members[i]->row.sup_visc_flux_l1);
    }
    res.report.ceiling_fit = powerlaw_fit(gap_pts);
    res.report.pi_h1_fit = powerlaw_fit(pi_pts);
    res.report.visc_flux_fit = powerlaw_fit(visc_pts);
    return res;
}

std::string SweepReport::to_json() const {
    ordered_json j;
    j["tool"] = "awrsim";
    j["kind"] = "sweep_report";
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json row;
        row["epsilon"] = r.epsilon;
        row["max_rho"] = r.max_rho;
        row["ceiling_gap"] = r.ceiling_gap;
        row["max_oleinik_excess"] = r.max_oleinik_excess;
        row["sup_pi_h1"] = r.sup_pi_h1;
        row["sup_visc_flux_l1"] = r.sup_visc_flux_l1;
        row["energy_drift"] = r.energy_drift;
        if (r.oracle_distance >= 0.0) row["oracle_distance"] = r.oracle_distance;
        j["rows"].push_back(row);
    }
    auto fit_json = [](const PowerLawFit& f) {
        return ordered_json{{"slope", f.slope},
                            {"r_squared", f.r_squared},
                            {"log_intercept", f.log_intercept}};
    };
    j["ceiling_slope"] = ceiling_fit.slope;
    j["fits"] = {{"ceiling_gap", fit_json(ceiling_fit)},
                 {"pi_h1", fit_json(pi_h1_fit)},
                 {"visc_flux_l1", fit_json(visc_flux_fit)}};
    return j.dump(2) + "\n";
}

OracleOutput run_oracle(const RunConfig& cfg) {
    for (const char* key : {"n_cells", "t_end", "init"}) require_key(cfg, key);
    const Grid g = make_grid(cfg.n_cells, cfg.length);
    const State initial = build_initial(cfg.initial, g);

    OracleOutput out;
    BlockSystem blocks = discretize(initial.rho, initial.u, cfg.n_particles);
    const std::size_t samples = std::max<std::size_t>(cfg.oracle_samples, 2);
    out.snapshots.push_back(blocks);
    for (std::size_t i = 1; i < samples; ++i) {
        const double t = cfg.t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
        blocks = evolve(std::move(blocks), t);
        out.snapshots.push_back(blocks);
    }

    ordered_json j;
    j["tool"] = "awrsim";
    j["kind"] = "block_series";
    j["length"] = g.length;
    j["n_particles"] = cfg.n_particles;
    j["snapshots"] = ordered_json::array();
    for (const auto& snap : out.snapshots) {
        ordered_json s;
        s["time"] = snap.time;
        s["clusters"] = ordered_json::array();
        for (const auto& c : snap.clusters)
            s["clusters"].push_back(
                {{"mass", c.mass}, {"center", c.center}, {"velocity", c.velocity}});
        j["snapshots"].push_back(s);
    }
    out.series_json = j.dump(2) + "\n";
    return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot open " + path.string() + " for writing");
    out << content;
    if (!out) fail(ErrorKind::io, "write failed for " + path.string());
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::io, "cannot create output directory " + dir);
}

}  // namespace

std::string state_to_csv(const State& state) {
    const Grid& g = state.grid();
    std::string out = "# awrsim state v1\n";
    out += "# n_cells = " + std::to_string(g.n_cells) + "\n";
    out += "# length = " + format_double(g.length) + "\n";
    out += "# time = " + format_double(state.time) + "\n";
    out += "x,rho,u\n";
    char buf[160];
    for (std::size_t j = 0; j < g.n_cells; ++j) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", g.center(j), state.rho[j],
                      state.u[j]);
        out += buf;
    }
    return out;
}

State state_from_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    std::size_t n_cells = 0;
    double length = 0.0, time = 0.0;
    std::vector<double> rho, u;
    while (std::getline(ss, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = trim(line.substr(1, eq - 1));
            const std::string value = trim(line.substr(eq + 1));
            if (key == "n_cells") n_cells = parse_size(key, value);
            else if (key == "length") length = parse_double(key, value);
            else if (key == "time") time = parse_double(key, value);
            continue;
        }
        if (line.rfind("x,", 0) == 0) continue;  // header
        std::stringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(parse_double("state row", cell));
        if (vals.size() != 3) fail(ErrorKind::parse, "state CSV rows need x,rho,u columns");
        rho.push_back(vals[1]);
        u.push_back(vals[2]);
    }
    if (n_cells == 0 || rho.size() != n_cells)
        fail(ErrorKind::parse, "state CSV metadata does not match its row count");
    const Grid g = make_grid(n_cells, length);
    return State{Field(g, std::move(rho)), Field(g, std::move(u)), time};
}

void write_run_outputs(const RunOutput& out, const std::string& dir) {
    ensure_dir(dir);
    const std::filesystem::path base(dir);
    write_file(base / "diagnostics.csv", out.result.diagnostics.to_csv());
    write_file(base / "state.csv", state_to_csv(out.result.trajectory.terminal));
    write_file(base / "summary.json", out.summary_json);
}

void write_sweep_outputs(const SweepResult& res, const std::string& dir) {
    ensure_dir(dir);
    const std::filesystem::path base(dir);
    write_file(base / "report.json", res.report.to_json());

    for (std::size_t i = 0; i < res.report.rows.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "diagnostics_eps_%.3e.csv",
                      res.report.rows[i].epsilon);
        write_file(base / name, res.outputs[i].result.diagnostics.to_csv());
    }

    std::string csv =
        "# awrsim sweep v1\n"
        "epsilon,ceiling_gap,sup_pi_h1,sup_visc_flux_l1,max_oleinik_excess,energy_drift,"
        "oracle_distance\n";
    char buf[256];
    for (const auto& r : res.report.rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      r.epsilon, r.ceiling_gap, r.sup_pi_h1, r.sup_visc_flux_l1,
                      r.max_oleinik_excess, r.energy_drift, r.oracle_distance);
        csv += buf;
    }
    write_file(base / "sweep_summary.csv", csv);

    const PowerLawFit& fit = res.report.ceiling_fit;
    std::string gp =
        "# Render with: gnuplot plot_ceiling.gp\n"
        "set terminal pngcairo size 800,600\n"
        "set output 'ceiling_gap.png'\n"
        "set logscale xy\n"
        "set xlabel 'epsilon'\n"
        "set ylabel '1 - max rho'\n"
        "set key top left\n"
        "set grid\n"
        "fit_gap(x) = exp(" +
        format_double(fit.log_intercept) + ") * x**" + format_double(fit.slope) +
        "\n"
        "plot 'sweep_summary.csv' using 1:2 with linespoints pt 7 title 'measured gap', \\\n"
        "     fit_gap(x) with lines dashtype 2 title sprintf('fit: slope %.3f', " +
        format_double(fit.slope) + ")\n";
    write_file(base / "plot_ceiling.gp", gp);
}

void write_oracle_outputs(const OracleOutput& out, const std::string& dir) {
    ensure_dir(dir);
    write_file(std::filesystem::path(dir) / "blocks.json", out.series_json);
}

}  // namespace awr
