#include <cmath>
#include <numbers>

#include "awr/harness.hpp"
#include "doctest.h"

using namespace awr;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

const char* kSmallRun =
    "# smoke configuration\n"
    "epsilon = 1e-2\n"
    "gamma = 2\n"
    "beta = 3\n"
    "alpha = 0.25\n"
    "n_cells = 64\n"
    "t_end = 0.05\n"
    "init = sinusoidal\n"
    "rho_mean = 0.6\n"
    "rho_amp = 0.1\n"
    "u_amp = 0.3\n"
    "sample_every = 8\n";

}  // namespace

TEST_CASE("config parsing: values, comments, errors") {
    const RunConfig cfg = parse_config(kSmallRun);
    CHECK(cfg.model.epsilon == 1e-2);
    CHECK(cfg.model.gamma == 2.0);
    CHECK(cfg.n_cells == 64);
    CHECK(cfg.t_end == 0.05);
    CHECK(cfg.initial.family == InitialData::Family::sinusoidal);
    CHECK(cfg.initial.rho_mean == 0.6);
    CHECK(cfg.solver.sample_every == 8);
    CHECK(cfg.has("epsilon"));
    CHECK_FALSE(cfg.has("length"));

    CHECK_THROWS_WITH_AS(parse_config("no_such_key = 1\n"),
                         doctest::Contains("unknown key"), Error);
    CHECK_THROWS_WITH_AS(parse_config("epsilon\n"), doctest::Contains("key = value"), Error);
    CHECK_THROWS_WITH_AS(parse_config("epsilon = abc\n"),
                         doctest::Contains("malformed number"), Error);
    CHECK_THROWS_AS(parse_config("formulation = spectral\n"), Error);
}

TEST_CASE("missing required keys are named") {
    RunConfig cfg = parse_config("gamma = 2\nbeta = 3\nalpha = 0.25\n"
                                 "n_cells = 64\nt_end = 0.1\ninit = sinusoidal\n"
                                 "rho_mean = 0.6\n");
    try {
        run_simulation(cfg);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find("missing key: epsilon") != std::string::npos);
        CHECK(e.detail() == "epsilon");
    }
}

TEST_CASE("sinusoidal initial data hits the documented extrema and mass") {
    RunConfig cfg = parse_config(kSmallRun);
    set_key(cfg, "n_cells", "512");
    set_key(cfg, "rho_mean", "0.7");
    set_key(cfg, "rho_amp", "0.2");
    set_key(cfg, "u_amp", "0.5");
    const State s = build_validated_initial(cfg);
    CHECK(max_value(s.rho) == doctest::Approx(0.9).epsilon(1e-4));
    CHECK(min_value(s.rho) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(integrate(s.rho) == doctest::Approx(0.7).epsilon(1e-12));
    // u = -a_u sin(2 pi x): compressive toward x = 0.
    const Grid& g = s.grid();
    CHECK(s.u[g.n_cells / 8] < 0.0);
}

TEST_CASE("validation failures name the violated hypothesis") {
    RunConfig cfg = parse_config(kSmallRun);
    set_key(cfg, "rho_mean", "0.7");
    set_key(cfg, "rho_amp", "0.35");  // max rho = 1.05
    try {
        build_validated_initial(cfg);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
        CHECK(e.detail() == "ceiling_margin");
    }

    RunConfig neg = parse_config(kSmallRun);
    set_key(neg, "rho_mean", "0.05");
    set_key(neg, "rho_amp", "0.2");  // min rho < 0
    try {
        build_validated_initial(neg);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::validation);
        CHECK(e.detail() == "positivity");
    }

    // The margin shrinks with epsilon: the same profile can pass at small
    // epsilon and fail at a large one.
    RunConfig margin = parse_config(kSmallRun);
    set_key(margin, "rho_mean", "0.75");
    set_key(margin, "rho_amp", "0.2");  // max rho = 0.95
    set_key(margin, "epsilon", "1e-4");
    CHECK_NOTHROW(build_validated_initial(margin));
    set_key(margin, "epsilon", "1e-2");  // margin 0.05: max must be <= 0.95... boundary
    set_key(margin, "rho_mean", "0.76");
    CHECK_THROWS_AS(build_validated_initial(margin), Error);
}

TEST_CASE("two-plateau data reduces to constants when sides agree") {
    RunConfig cfg = parse_config(
        "epsilon = 1e-3\ngamma = 2\nbeta = 3\nalpha = 0.25\nn_cells = 128\nt_end = 0.1\n"
        "init = two_plateau\nrho_left = 0.6\nrho_right = 0.6\nu_left = 0.4\n"
        "u_right = -0.4\nsharpness = 0.05\n");
    const State s = build_validated_initial(cfg);
    for (std::size_t j = 0; j < s.rho.size(); ++j) CHECK(s.rho[j] == 0.6);
    // Left half moves right, right half moves left: collision at x = 1/2.
    // Plateau centers saturate the tanh blend to within ~(1 - tanh(L/2 pi sigma)).
    CHECK(s.u[s.rho.size() / 4] == doctest::Approx(0.4).epsilon(5e-3));
    CHECK(s.u[3 * s.rho.size() / 4] == doctest::Approx(-0.4).epsilon(5e-3));
    const double blend =
        0.5 * (1.0 + std::tanh(std::sin(two_pi * s.grid().center(32)) / (two_pi * 0.05)));
    CHECK(s.u[32] == doctest::Approx(-0.4 + 0.8 * blend).epsilon(1e-12));
    // Exactly periodic construction: the seam sees an antisymmetric blend.
    CHECK(s.u[0] + s.u[s.rho.size() - 1] == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("seeded band-limited perturbations") {
    RunConfig cfg = parse_config(kSmallRun);
    set_key(cfg, "perturb_rho", "0.01");
    set_key(cfg, "perturb_u", "0.01");
    set_key(cfg, "seed", "42");
    const State a = build_validated_initial(cfg);
    const State b = build_validated_initial(cfg);
    for (std::size_t j = 0; j < a.rho.size(); ++j) CHECK(a.rho[j] == b.rho[j]);

    set_key(cfg, "seed", "43");
    const State c = build_validated_initial(cfg);
    double diff = 0.0;
    for (std::size_t j = 0; j < a.rho.size(); ++j) diff += std::abs(a.rho[j] - c.rho[j]);
    CHECK(diff > 0.0);

    // Band-limited: no spectral content above mode 3 (the base data has mode 1).
    const Grid& g = a.grid();
    for (int mode : {4, 5, 7}) {
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < g.n_cells; ++j) {
            re += a.rho[j] * std::cos(mode * two_pi * g.center(j));
            im += a.rho[j] * std::sin(mode * two_pi * g.center(j));
        }
        CHECK(std::abs(re) * g.dx < 1e-12);
        CHECK(std::abs(im) * g.dx < 1e-12);
    }
}

TEST_CASE("run_simulation: uniform state has zero drift, byte-stable summary") {
    RunConfig cfg = parse_config(
        "epsilon = 1e-2\ngamma = 2\nbeta = 3\nalpha = 0.25\nn_cells = 64\nt_end = 0.2\n"
        "init = sinusoidal\nrho_mean = 0.5\nrho_amp = 0\nu_amp = 0\nsample_every = 50\n");
    const RunOutput a = run_simulation(cfg);
    CHECK(a.energy_drift <= 1e-12);
    CHECK(a.result.stats.mass_drift_rel <= 1e-13);
    CHECK(a.summary_json.find("\"ceiling_gap\"") != std::string::npos);

    const RunOutput b = run_simulation(cfg);
    CHECK(a.summary_json == b.summary_json);  // reproducibility, byte for byte
}

TEST_CASE("sweep: preconditions, row ordering, recomputability") {
    RunConfig cfg = parse_config(kSmallRun);
    set_key(cfg, "t_end", "0.02");
    set_key(cfg, "workers", "2");

    SUBCASE("needs at least three descending epsilons") {
        set_key(cfg, "epsilons", "1e-2");
        CHECK_THROWS_AS(sweep(cfg), Error);
        set_key(cfg, "epsilons", "1e-3, 1e-2, 3e-3");
        CHECK_THROWS_AS(sweep(cfg), Error);
    }

    SUBCASE("rows are computed per epsilon and match standalone runs") {
        set_key(cfg, "epsilons", "1e-2, 3e-3, 1e-3");
        const SweepResult res = sweep(cfg);
        REQUIRE(res.report.rows.size() == 3);
        CHECK(res.report.rows[0].epsilon == 1e-2);
        CHECK(res.report.rows[2].epsilon == 1e-3);

        RunConfig single = cfg;
        set_key(single, "epsilon", "3e-3");
        const RunOutput out = run_simulation(single);
        CHECK(res.report.rows[1].max_rho == out.result.stats.max_rho);
        CHECK(res.report.rows[1].sup_pi_h1 == out.sup_pi_h1);

        const std::string json = res.report.to_json();
        CHECK(json.find("\"ceiling_slope\"") != std::string::npos);
    }
}

TEST_CASE("oracle comparison on uniform data is bounded by half a blocklet") {
    RunConfig cfg = parse_config(
        "epsilon = 1e-2\ngamma = 2\nbeta = 3\nalpha = 0.25\nn_cells = 256\nt_end = 0\n"
        "init = sinusoidal\nrho_mean = 0.5\nrho_amp = 0\nu_amp = 0\nn_particles = 50\n");
    const State s = build_validated_initial(cfg);
    const BlockSystem blocks = discretize(s.rho, s.u, 50);
    const double m = 0.5 / 50.0;
    CHECK(compare_to_oracle(s, blocks) <= 0.5 * m);

    BlockSystem other = blocks;
    other.length = 2.0;
    CHECK_THROWS_AS(compare_to_oracle(s, other), Error);
}

TEST_CASE("state CSV round trip is exact") {
    RunConfig cfg = parse_config(kSmallRun);
    const State s = build_validated_initial(cfg);
    const State back = state_from_csv(state_to_csv(s));
    REQUIRE(back.rho.size() == s.rho.size());
    CHECK(back.grid().length == s.grid().length);
    for (std::size_t j = 0; j < s.rho.size(); ++j) {
        CHECK(back.rho[j] == s.rho[j]);
        CHECK(back.u[j] == s.u[j]);
    }
}

TEST_CASE("ensemble property sweep: invariants hold for perturbed data") {
    // Band-limited seeded perturbations around the smooth base profile;
    // every member must keep the structural guarantees of the scheme.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        RunConfig cfg = parse_config(kSmallRun);
        set_key(cfg, "t_end", "0.03");
        set_key(cfg, "perturb_rho", "0.05");
        set_key(cfg, "perturb_u", "0.1");
        set_key(cfg, "seed", std::to_string(seed));
        if (seed % 2 == 0) set_key(cfg, "formulation", "dual");
        CAPTURE(seed);
        const RunOutput out = run_simulation(cfg);
        const RunStats& st = out.result.stats;
        CHECK(st.min_rho > 0.0);
        CHECK(st.max_rho < 1.0);
        CHECK(st.mass_drift_rel <= 1e-12);
        CHECK(st.momentum_drift_rel <= 1e-10);
        if (seed % 2 == 1) {
            CHECK(st.max_energy_step_increase_rel <= 1e-10);
            CHECK(out.max_bd_ratio <= 1.0 + 1e-3);
        }
        for (const auto& row : out.result.diagnostics.rows) CHECK(row.min_rho > 0.0);
    }
}

TEST_CASE("oracle run emits a snapshot series") {
    RunConfig cfg = parse_config(
        "epsilon = 1e-3\ngamma = 2\nbeta = 3\nalpha = 0.25\nn_cells = 128\nt_end = 0.5\n"
        "init = two_plateau\nrho_left = 0.6\nrho_right = 0.6\nu_left = 0.4\n"
        "u_right = -0.4\nsharpness = 0.05\nn_particles = 40\noracle_samples = 5\n");
    const OracleOutput out = run_oracle(cfg);
    REQUIRE(out.snapshots.size() == 5);
    CHECK(out.snapshots.front().time == 0.0);
    CHECK(out.snapshots.back().time == doctest::Approx(0.5));
    CHECK(out.snapshots.back().clusters.size() < out.snapshots.front().clusters.size());
    const BlockSystem parsed = block_system_from_json(out.series_json);
    CHECK(parsed.time == doctest::Approx(0.5));
}
