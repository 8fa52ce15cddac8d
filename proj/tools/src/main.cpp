#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "conecal_cli/config.hpp"
#include "conecal_cli/runner.hpp"

namespace {

int run_subcommand(conecal::cli::Command command, const std::string& config_path,
                   const std::string& out_dir, bool verbose) {
    using namespace conecal::cli;

    std::string text = "{}";
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::fprintf(stderr, "error: cannot read config file '%s'\n",
                         config_path.c_str());
            return kExitIoError;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }

    const ConfigParse parsed = validate_config(text, command);
    if (!parsed.config) {
        std::fprintf(stderr, "invalid configuration:\n");
        for (const auto& v : parsed.violations)
            std::fprintf(stderr, "  - %s\n", v.c_str());
        return kExitInvalidConfig;
    }

    Report report;
    const int code = run(*parsed.config, out_dir, verbose, &report);
    for (const auto& check : report.checks)
        std::printf("%s  %s%s%s\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                    check.detail.empty() ? "" : ": ", check.detail.c_str());
    if (verbose) std::fprintf(stderr, "exit code %d\n", code);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simons cone stability and calibration toolkit"};
    app.require_subcommand(1);

    struct Sub {
        conecal::cli::Command command;
        CLI::App* app;
        std::string config;
        std::string out_dir = "out";
        bool verbose = false;
    };
    std::vector<Sub> subs;
    subs.reserve(5);
    const std::pair<conecal::cli::Command, const char*> defs[] = {
        {conecal::cli::Command::spectrum,
         "Radial eigenvalues for one K: closed form vs finite differences"},
        {conecal::cli::Command::sweep, "Stability sweep over a list of K values"},
        {conecal::cli::Command::calibrate,
         "Foliation field checks: divergence, Gauss-Green, boundary signs"},
        {conecal::cli::Command::compare,
         "Minimality inequality against seeded volume-matched competitors"},
        {conecal::cli::Command::compact_analog,
         "Robin eigenvalue of the compact interval analog"},
    };
    for (const auto& [cmd, desc] : defs) {
        Sub sub;
        sub.command = cmd;
        sub.app = app.add_subcommand(conecal::cli::command_name(cmd), desc);
        subs.push_back(sub);
        Sub& s = subs.back();
        s.app->add_option("--config", s.config, "JSON run configuration");
        s.app->add_option("--out-dir", s.out_dir, "Output directory (default: out)");
        s.app->add_flag("--verbose", s.verbose, "Progress to stderr");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return conecal::cli::kExitInvalidConfig;
    }

    for (const Sub& s : subs)
        if (s.app->parsed())
            return run_subcommand(s.command, s.config, s.out_dir, s.verbose);
    return conecal::cli::kExitInvalidConfig;
}
