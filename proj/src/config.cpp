#include "ternion/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ternion/errors.hpp"

namespace ternion {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SimulateParams, mode, g, M2, z0, z1, z_start, M0,
                                                M1, y0, y1, y_start, state, t_end, max_step,
                                                max_steps, allow_singular_stop, compare_closed_form)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(VerifyParams, suite, inject_fault)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ScatterParams, g, v_in, M1, M2)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FormParams, preset, rho, phi, a1, a2, phi_lo,
                                                phi_hi, center_frame, radius, box)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(FieldScanParams, l, r1, r2, n)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, command, seed, tol, drift_tol, out,
                                                manifest, verify, simulate, scatter, form, field_scan)

namespace {

// Every key of `given` must exist in the default serialization `known`.
void reject_unknown_keys(const nlohmann::json& given, const nlohmann::json& known,
                         const std::string& where) {
    for (const auto& [key, value] : given.items()) {
        if (where.empty() && key == "results") continue;
        if (!known.contains(key)) throw ConfigError("unknown configuration key '" + where + key + "'");
        if (value.is_object() && known[key].is_object()) {
            reject_unknown_keys(value, known[key], where + key + ".");
        }
    }
}

}  // namespace

std::string serialize(const RunConfig& c) { return nlohmann::json(c).dump(2); }

RunConfig parse_config(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ConfigError("configuration is empty");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed configuration JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    reject_unknown_keys(j, nlohmann::json(RunConfig{}), "");
    try {
        return j.get<RunConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid configuration value: ") + e.what());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& c) {
    if (!(c.tol > 0)) throw ConfigError("tol must be positive");
    if (!(c.drift_tol > 0)) throw ConfigError("drift_tol must be positive");
    if (c.command == "simulate") {
        const auto& s = c.simulate;
        static const std::set<std::string> modes{"planar", "general", "state"};
        if (!modes.count(s.mode)) throw ConfigError("simulate.mode must be planar, general or state");
        if (!(s.t_end > 0)) throw ConfigError("simulate.t_end must be positive");
        if (s.max_step < 0) throw ConfigError("simulate.max_step must be >= 0");
        if (s.max_steps <= 0) throw ConfigError("simulate.max_steps must be positive");
        if (s.compare_closed_form && s.mode == "state") {
            throw ConfigError("--compare-closed-form needs simulate.mode planar or general");
        }
    } else if (c.command == "scatter") {
        if (c.scatter.M1.empty() || c.scatter.M2.empty()) {
            throw ConfigError("scatter grid needs at least one M1 and one M2 value");
        }
    } else if (c.command == "integrate-form") {
        static const std::set<std::string> presets{"trisectrice-loop", "cubic-band", "polar-band",
                                                   "sphere", "box-divergence"};
        if (!presets.count(c.form.preset)) throw ConfigError("unknown form preset '" + c.form.preset + "'");
    } else if (c.command == "field-scan") {
        for (int n : c.field_scan.n) {
            if (n < 1) throw ConfigError("field_scan.n entries must be >= 1");
        }
    } else if (c.command == "verify") {
        static const std::set<std::string> suites{"algebra", "calculus", "field", "dynamics", "all"};
        if (!suites.count(c.verify.suite)) throw ConfigError("unknown verify suite '" + c.verify.suite + "'");
        if (!c.verify.inject_fault.empty() && c.verify.inject_fault != "multisine-offset") {
            throw ConfigError("unknown fault '" + c.verify.inject_fault + "'");
        }
    } else {
        throw ConfigError("unknown command '" + c.command + "'");
    }
}

}  // namespace ternion
