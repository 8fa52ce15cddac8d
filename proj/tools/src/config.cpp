#include "conecal_cli/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace conecal::cli {

using nlohmann::json;

const char* command_name(Command c) {
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::sweep: return "sweep";
        case Command::calibrate: return "calibrate";
        case Command::compare: return "compare";
        case Command::compact_analog: return "compact-analog";
    }
    return "?";
}

std::optional<Command> parse_command(const std::string& name) {
    for (Command c : {Command::spectrum, Command::sweep, Command::calibrate,
                      Command::compare, Command::compact_analog})
        if (name == command_name(c)) return c;
    return std::nullopt;
}

namespace {

struct Checker {
    std::vector<std::string> violations;

    void fail(const std::string& msg) { violations.push_back(msg); }

    void known_keys(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
        for (const auto& [key, _] : obj.items())
            if (!allowed.count(key)) fail(where + ": unknown key '" + key + "'");
    }

    bool number(const json& obj, const char* key, double& out) {
        if (!obj.contains(key)) return false;
        if (!obj[key].is_number()) {
            fail(std::string(key) + " must be a number");
            return false;
        }
        out = obj[key].get<double>();
        return true;
    }
};

}  // namespace

ConfigParse validate_config(const std::string& json_text, Command expected) {
    ConfigParse result;
    Checker ck;

    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        ck.fail(std::string("configuration is not valid JSON: ") + e.what());
        result.violations = std::move(ck.violations);
        return result;
    }
    if (!doc.is_object()) {
        result.violations = {"configuration root must be a JSON object"};
        return result;
    }

    RunConfig cfg;
    cfg.command = expected;

    ck.known_keys(doc, "root",
                  {"command", "domain", "solver", "sweep", "compact", "calibrate",
                   "compare"});

    if (doc.contains("command")) {
        if (!doc["command"].is_string()) {
            ck.fail("command must be a string");
        } else {
            const auto named = parse_command(doc["command"].get<std::string>());
            if (!named)
                ck.fail("unknown command '" + doc["command"].get<std::string>() + "'");
            else if (*named != expected)
                ck.fail(std::string("config command '") + command_name(*named) +
                        "' does not match the invoked subcommand '" +
                        command_name(expected) + "'");
        }
    }

    if (doc.contains("domain")) {
        const json& d = doc["domain"];
        if (!d.is_object()) {
            ck.fail("domain must be an object");
        } else {
            ck.known_keys(d, "domain", {"K", "upsilon"});
            double x;
            if (ck.number(d, "K", x)) cfg.domain.K = x;
            if (ck.number(d, "upsilon", x)) cfg.domain.upsilon = x;
        }
    }
    if (!(cfg.domain.upsilon > 0.0))
        ck.fail("upsilon must be positive");
    else if (cfg.domain.upsilon > 0.3)
        ck.fail("upsilon must be at most 0.3");
    if (!std::isfinite(cfg.domain.K)) ck.fail("K must be finite");

    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        if (!s.is_object()) {
            ck.fail("solver must be an object");
        } else {
            ck.known_keys(s, "solver", {"Z", "step", "coordinate", "boundary"});
            double x;
            if (ck.number(s, "Z", x)) cfg.solver.Z = x;
            if (ck.number(s, "step", x)) cfg.solver.step = x;
            if (s.contains("coordinate")) {
                const std::string c = s["coordinate"].is_string()
                                          ? s["coordinate"].get<std::string>()
                                          : std::string();
                if (c == "z")
                    cfg.solver.coordinate = spectral::RadialCoordinate::z_form;
                else if (c == "t")
                    cfg.solver.coordinate = spectral::RadialCoordinate::t_form;
                else
                    ck.fail("solver.coordinate must be \"z\" or \"t\"");
            }
            if (s.contains("boundary")) {
                const std::string b = s["boundary"].is_string()
                                          ? s["boundary"].get<std::string>()
                                          : std::string();
                if (b == "robin")
                    cfg.solver.boundary = spectral::BoundaryConditionKind::robin;
                else if (b == "dirichlet")
                    cfg.solver.boundary = spectral::BoundaryConditionKind::dirichlet;
                else
                    ck.fail("solver.boundary must be \"robin\" or \"dirichlet\"");
            }
        }
    }
    cfg.solver.K = cfg.domain.K;
    if (!(cfg.solver.step > 0.0)) {
        ck.fail("step must be positive");
    } else if (cfg.solver.step > 0.1) {
        ck.fail("step must be at most 0.1 (radial solver refuses coarser grids)");
    } else if (!(cfg.solver.Z > 0.0)) {
        ck.fail("Z must be positive");
    } else {
        const double ratio = cfg.solver.Z / cfg.solver.step;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio) ||
            std::round(ratio) < 10.0)
            ck.fail("Z/step must be an integer of at least 10");
        if (cfg.solver.coordinate == spectral::RadialCoordinate::t_form &&
            cfg.solver.Z > 140.0)
            ck.fail("t-form truncation is limited to Z <= 140; use the z-form");
    }

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        if (!s.is_object()) {
            ck.fail("sweep must be an object");
        } else {
            ck.known_keys(s, "sweep", {"K_values"});
            if (s.contains("K_values")) {
                if (!s["K_values"].is_array()) {
                    ck.fail("sweep.K_values must be an array of numbers");
                } else {
                    cfg.K_values.clear();
                    for (const auto& v : s["K_values"]) {
                        if (!v.is_number()) {
                            ck.fail("sweep.K_values must contain only numbers");
                            break;
                        }
                        cfg.K_values.push_back(v.get<double>());
                    }
                }
            }
        }
    }
    if (expected == Command::sweep && cfg.K_values.empty())
        ck.fail("sweep.K_values must not be empty");

    if (doc.contains("compact")) {
        const json& s = doc["compact"];
        if (!s.is_object()) {
            ck.fail("compact must be an object");
        } else {
            ck.known_keys(s, "compact", {"kappa_values"});
            if (s.contains("kappa_values")) {
                if (!s["kappa_values"].is_array()) {
                    ck.fail("compact.kappa_values must be an array of numbers");
                } else {
                    cfg.kappa_values.clear();
                    for (const auto& v : s["kappa_values"]) {
                        if (!v.is_number()) {
                            ck.fail("compact.kappa_values must contain only numbers");
                            break;
                        }
                        cfg.kappa_values.push_back(v.get<double>());
                    }
                }
            }
        }
    }
    if (expected == Command::compact_analog) {
        if (cfg.kappa_values.empty()) ck.fail("compact.kappa_values must not be empty");
        for (double k : cfg.kappa_values)
            if (k == 0.0 || !std::isfinite(k))
                ck.fail("compact.kappa_values must be finite and nonzero");
    }

    if (doc.contains("calibrate")) {
        const json& s = doc["calibrate"];
        if (!s.is_object()) {
            ck.fail("calibrate must be an object");
        } else {
            ck.known_keys(s, "calibrate", {"samples_per_side", "stencil_h", "leaf_tol"});
            double x;
            if (s.contains("samples_per_side")) {
                if (!s["samples_per_side"].is_number_integer())
                    ck.fail("calibrate.samples_per_side must be an integer");
                else
                    cfg.samples_per_side = s["samples_per_side"].get<int>();
            }
            if (ck.number(s, "stencil_h", x)) cfg.stencil_h = x;
            if (ck.number(s, "leaf_tol", x)) cfg.leaf_tol = x;
        }
    }
    if (cfg.samples_per_side < 1) ck.fail("calibrate.samples_per_side must be at least 1");
    if (!(cfg.stencil_h > 0.0 && cfg.stencil_h <= 0.01))
        ck.fail("calibrate.stencil_h must lie in (0, 0.01]");
    if (!(cfg.leaf_tol > 0.0 && cfg.leaf_tol <= 1e-8))
        ck.fail("calibrate.leaf_tol must lie in (0, 1e-8]");

    if (doc.contains("compare")) {
        const json& s = doc["compare"];
        if (!s.is_object()) {
            ck.fail("compare must be an object");
        } else {
            ck.known_keys(s, "compare", {"seeds", "vertices", "volume_match"});
            if (s.contains("seeds")) {
                if (!s["seeds"].is_array()) {
                    ck.fail("compare.seeds must be an array of integers");
                } else {
                    cfg.seeds.clear();
                    for (const auto& v : s["seeds"]) {
                        if (!v.is_number_integer() || v.get<long long>() < 0) {
                            ck.fail("compare.seeds must contain nonnegative integers");
                            break;
                        }
                        cfg.seeds.push_back(v.get<std::uint64_t>());
                    }
                }
            }
            if (s.contains("vertices")) {
                if (!s["vertices"].is_number_integer() ||
                    s["vertices"].get<long long>() < 16)
                    ck.fail("compare.vertices must be an integer of at least 16");
                else
                    cfg.competitor_vertices = s["vertices"].get<std::size_t>();
            }
            if (s.contains("volume_match")) {
                if (!s["volume_match"].is_boolean())
                    ck.fail("compare.volume_match must be a boolean");
                else
                    cfg.volume_match = s["volume_match"].get<bool>();
            }
        }
    }
    if (expected == Command::compare && cfg.seeds.empty())
        ck.fail("compare.seeds must not be empty");

    if (!ck.violations.empty()) {
        result.violations = std::move(ck.violations);
        return result;
    }
    result.config = std::move(cfg);
    return result;
}

}  // namespace conecal::cli
