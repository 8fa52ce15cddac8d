#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace conecal::cli {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Structured run report: command echo, resolved configuration, result rows,
/// per-check outcomes and timings.  Serialized to report.json.
struct Report {
    std::string command;
    nlohmann::ordered_json config;
    nlohmann::ordered_json results;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> timings_ms;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::ordered_json to_json() const;
};

}  // namespace conecal::cli
