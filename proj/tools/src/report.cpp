#include "conecal_cli/report.hpp"

namespace conecal::cli {

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["config"] = config;
    j["results"] = results;
    nlohmann::ordered_json checks_json = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks_json.push_back(cj);
    }
    j["checks"] = checks_json;
    j["pass"] = pass();
    nlohmann::ordered_json t;
    for (const auto& [name, ms] : timings_ms) t[name] = ms;
    j["timings_ms"] = t;
    return j;
}

}  // namespace conecal::cli
