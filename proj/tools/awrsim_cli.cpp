// Command-line front end; talks to the simulator exclusively through the
// C API in awrsim.h.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "awrsim.h"

namespace {

constexpr int kExitUsage = 64;

struct ConfigDeleter {
    void operator()(awrsim_config* c) const { awrsim_config_free(c); }
};
struct ResultDeleter {
    void operator()(awrsim_result* r) const { awrsim_result_free(r); }
};
using ConfigPtr = std::unique_ptr<awrsim_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<awrsim_result, ResultDeleter>;

int report_failure(awrsim_status status) {
    std::fprintf(stderr, "%s\n", awrsim_last_error());
    return static_cast<int>(status);
}

ConfigPtr load_config_or_exit(const std::string& path,
                              const std::vector<std::string>& overrides, int& exit_code) {
    awrsim_config* raw = nullptr;
    awrsim_status status = awrsim_config_load(path.c_str(), &raw);
    if (status != AWRSIM_OK) {
        exit_code = report_failure(status);
        return nullptr;
    }
    ConfigPtr cfg(raw);
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr,
                         "{\"code\":\"argument\",\"message\":\"--set expects key=value, got "
                         "'%s'\"}\n",
                         kv.c_str());
            exit_code = kExitUsage;
            return nullptr;
        }
        status = awrsim_config_set(cfg.get(), kv.substr(0, eq).c_str(),
                                   kv.substr(eq + 1).c_str());
        if (status != AWRSIM_OK) {
            exit_code = report_failure(status);
            return nullptr;
        }
    }
    exit_code = 0;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("awrsim ") + awrsim_version() +
                 " - congested traffic/suspension flow simulator"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes:\n"
        "  0  success\n"
        "  1  invalid argument\n"
        "  2  malformed config or input file\n"
        "  3  initial-data validation failure\n"
        "  4  solver hard failure\n"
        "  5  file I/O failure\n"
        "  64 command-line usage error\n"
        "Failures print a machine-readable error JSON on stderr.");

    std::string config_path, out_dir, state_path, blocks_path, compare_out;
    std::vector<std::string> overrides;
    bool quiet = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (default: config out_dir)");
        sub->add_option("--set", overrides, "override a config key, e.g. --set epsilon=1e-3");
        sub->add_flag("--quiet", quiet, "suppress the result JSON on stdout");
    };

    CLI::App* cmd_run = app.add_subcommand(
        "run", "one simulation; writes diagnostics.csv, state.csv, summary.json");
    add_common(cmd_run);
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "epsilon sweep; writes report.json, per-epsilon CSVs, plot script");
    add_common(cmd_sweep);
    CLI::App* cmd_oracle =
        app.add_subcommand("oracle", "sticky-blocks reference run; writes blocks.json");
    add_common(cmd_oracle);

    CLI::App* cmd_compare = app.add_subcommand(
        "compare", "cumulative-mass distance between a run state and oracle blocks");
    cmd_compare->add_option("--state", state_path, "state.csv from `run`")->required();
    cmd_compare->add_option("--blocks", blocks_path, "blocks.json from `oracle`")->required();
    cmd_compare->add_option("--out", compare_out, "optional file for the comparison JSON");
    cmd_compare->add_flag("--quiet", quiet, "suppress the result JSON on stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    awrsim_status status = AWRSIM_OK;
    ResultPtr result;

    if (app.got_subcommand(cmd_compare)) {
        awrsim_result* raw = nullptr;
        status = awrsim_compare(state_path.c_str(), blocks_path.c_str(), &raw);
        result.reset(raw);
        if (status != AWRSIM_OK) return report_failure(status);
        if (!compare_out.empty()) {
            std::FILE* f = std::fopen(compare_out.c_str(), "wb");
            if (!f) {
                std::fprintf(stderr,
                             "{\"code\":\"io\",\"message\":\"cannot open %s for writing\"}\n",
                             compare_out.c_str());
                return AWRSIM_ERR_IO;
            }
            std::fputs(awrsim_result_json(result.get()), f);
            std::fclose(f);
        }
    } else {
        int exit_code = 0;
        ConfigPtr cfg = load_config_or_exit(config_path, overrides, exit_code);
        if (!cfg) return exit_code;
        const char* dir = out_dir.empty() ? nullptr : out_dir.c_str();
        awrsim_result* raw = nullptr;
        if (app.got_subcommand(cmd_run)) status = awrsim_run(cfg.get(), dir, &raw);
        else if (app.got_subcommand(cmd_sweep)) status = awrsim_sweep(cfg.get(), dir, &raw);
        else status = awrsim_oracle(cfg.get(), dir, &raw);
        result.reset(raw);
        if (status != AWRSIM_OK) return report_failure(status);
    }

    if (!quiet && result) std::fputs(awrsim_result_json(result.get()), stdout);
    return 0;
}
