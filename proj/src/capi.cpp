#include "awrsim.h"

#include <fstream>
#include <sstream>
#include <string>

#include "awr/harness.hpp"
#include "json.hpp"

struct awrsim_config {
    awr::RunConfig cfg;
};

struct awrsim_result {
    nlohmann::ordered_json doc;
    std::string text;
};

namespace {

thread_local std::string g_last_error = "{}";

const char* code_name(awrsim_status s) {
    switch (s) {
        case AWRSIM_OK: return "ok";
        case AWRSIM_ERR_ARGUMENT: return "argument";
        case AWRSIM_ERR_PARSE: return "parse";
        case AWRSIM_ERR_VALIDATE: return "validate";
        case AWRSIM_ERR_RUN: return "run";
        case AWRSIM_ERR_IO: return "io";
    }
    return "unknown";
}

awrsim_status status_of(awr::ErrorKind kind) {
    switch (kind) {
        case awr::ErrorKind::argument: return AWRSIM_ERR_ARGUMENT;
        case awr::ErrorKind::parse: return AWRSIM_ERR_PARSE;
        case awr::ErrorKind::validation: return AWRSIM_ERR_VALIDATE;
        case awr::ErrorKind::runtime: return AWRSIM_ERR_RUN;
        case awr::ErrorKind::io: return AWRSIM_ERR_IO;
    }
    return AWRSIM_ERR_RUN;
}

awrsim_status set_error(awrsim_status status, const std::string& message,
                        const std::string& detail = "") {
    nlohmann::ordered_json j;
    j["code"] = code_name(status);
    j["message"] = message;
    if (!detail.empty()) j["detail"] = detail;
    g_last_error = j.dump();
    return status;
}

template <typename Fn>
awrsim_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error = "{}";
        return AWRSIM_OK;
    } catch (const awr::Error& e) {
        return set_error(status_of(e.kind()), e.what(), e.detail());
    } catch (const std::exception& e) {
        return set_error(AWRSIM_ERR_RUN, e.what());
    }
}

awrsim_status require(bool cond, const char* message) {
    if (cond) return AWRSIM_OK;
    return set_error(AWRSIM_ERR_ARGUMENT, message);
}

awrsim_result* make_result(nlohmann::ordered_json doc) {
    auto* res = new awrsim_result;
    res->doc = std::move(doc);
    res->text = res->doc.dump(2) + "\n";
    return res;
}

}  // namespace

extern "C" {

const char* awrsim_version(void) { return "1.0.0"; }

const char* awrsim_status_name(awrsim_status status) { return code_name(status); }

const char* awrsim_last_error(void) { return g_last_error.c_str(); }

awrsim_status awrsim_config_load(const char* path, awrsim_config** out) {
    if (require(path && out, "config_load needs a path and an output handle") != AWRSIM_OK)
        return AWRSIM_ERR_ARGUMENT;
    *out = nullptr;
    return guarded([&] { *out = new awrsim_config{awr::load_config(path)}; });
}

awrsim_status awrsim_config_parse(const char* text, awrsim_config** out) {
    if (require(text && out, "config_parse needs text and an output handle") != AWRSIM_OK)
        return AWRSIM_ERR_ARGUMENT;
    *out = nullptr;
    return guarded([&] { *out = new awrsim_config{awr::parse_config(text)}; });
}

awrsim_status awrsim_config_set(awrsim_config* cfg, const char* key, const char* value) {
    if (require(cfg && key && value, "config_set needs a config, key and value") != AWRSIM_OK)
        return AWRSIM_ERR_ARGUMENT;
    return guarded([&] { awr::set_key(cfg->cfg, key, value); });
}

void awrsim_config_free(awrsim_config* cfg) { delete cfg; }

awrsim_status awrsim_run(const awrsim_config* cfg, const char* out_dir, awrsim_result** out) {
    if (require(cfg != nullptr, "run needs a config handle") != AWRSIM_OK)
        return AWRSIM_ERR_ARGUMENT;
    if (out) *out = nullptr;
    return guarded([&] {
        awr::RunOutput ro = awr::run_simulation(cfg->cfg);
        const std::string dir = out_dir ? out_dir : cfg->cfg.out_dir;
        awr::write_run_outputs(ro, dir);
        if (out) *out = make_result(nlohmann::ordered_json::parse(ro.summary_json));
    });
}

awrsim_status awrsim_sweep(const awrsim_config* cfg, const char* out_dir,
                           awrsim_result** out) {
    if (require(cfg != nullptr, "sweep needs a config handle") != AWRSIM_OK)
        return AWRSIM_ERR_ARGUMENT;
    if (out) *out = nullptr;
    return guarded([&] {
        awr::SweepResult sr = awr::sweep(cfg->cfg);
        const std::string dir = out_dir ? out_dir : cfg->cfg.out_dir;
        awr::write_sweep_outputs(sr, dir);
        if (out) *out = make_result(nlohmann::ordered_json::parse(sr.report.to_json()));
    });
}

awrsim_status awrsim_oracle(const awrsim_config* cfg, const char* out_dir,
                            awrsim_result** out) {
    if (require(cfg != nullptr, "oracle needs a config handle") != AWRSIM_OK)
        return AWRSIM_ERR_ARGUMENT;
    if (out) *out = nullptr;
    return guarded([&] {
        awr::OracleOutput oo = awr::run_oracle(cfg->cfg);
        const std::string dir = out_dir ? out_dir : cfg->cfg.out_dir;
        awr::write_oracle_outputs(oo, dir);
        if (out) *out = make_result(nlohmann::ordered_json::parse(oo.series_json));
    });
}

awrsim_status awrsim_compare(const char* state_csv_path, const char* blocks_json_path,
                             awrsim_result** out) {
    if (require(state_csv_path && blocks_json_path, "compare needs both input paths") !=
        AWRSIM_OK)
        return AWRSIM_ERR_ARGUMENT;
    if (out) *out = nullptr;
    return guarded([&] {
        auto slurp = [](const char* path) {
            std::ifstream in(path);
            if (!in) awr::fail(awr::ErrorKind::io, std::string("cannot open ") + path);
            std::stringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        const awr::State state = awr::state_from_csv(slurp(state_csv_path));
        const awr::BlockSystem blocks = awr::block_system_from_json(slurp(blocks_json_path));
        const double distance = awr::compare_to_oracle(state, blocks);
        nlohmann::ordered_json j;
        j["tool"] = "awrsim";
        j["kind"] = "compare";
        j["cdf_distance"] = distance;
        j["state_time"] = state.time;
        j["blocks_time"] = blocks.time;
        if (out) *out = make_result(std::move(j));
    });
}

const char* awrsim_result_json(const awrsim_result* res) {
    return res ? res->text.c_str() : nullptr;
}

awrsim_status awrsim_result_number(const awrsim_result* res, const char* json_pointer,
                                   double* value) {
    if (require(res && json_pointer && value, "result_number needs result, pointer, output") !=
        AWRSIM_OK)
        return AWRSIM_ERR_ARGUMENT;
    try {
        const auto& node = res->doc.at(nlohmann::json::json_pointer(json_pointer));
        if (!node.is_number())
            return set_error(AWRSIM_ERR_ARGUMENT,
                             std::string(json_pointer) + " is not a number");
        *value = node.get<double>();
        g_last_error = "{}";
        return AWRSIM_OK;
    } catch (const std::exception& e) {
        return set_error(AWRSIM_ERR_ARGUMENT, e.what());
    }
}

void awrsim_result_free(awrsim_result* res) { delete res; }

}  // extern "C"
