// Command-line front end: runs one verification suite and emits its JSON
// report, plus a machine-parsable summary on the last line of stdout.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "elliptica/suites.hpp"

namespace {

using elliptica::HarnessConfig;

/// key=value configuration file mirroring the harness options; '#' comments
/// and blank lines are skipped.
void load_config_file(const std::string& path, HarnessConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos) {
            throw CLI::ValidationError(
                "--config", path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "window") cfg.window = std::stol(val);
            else if (key == "degree") cfg.degree = std::stoi(val);
            else if (key == "count") cfg.count = std::stol(val);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "r") cfg.r = std::stoi(val);
            else if (key == "variant") { cfg.variant = elliptica::parse_variant(val); cfg.variant_set = true; }
            else if (key == "constants") {
                if (val == "paper") cfg.constants = elliptica::ConstantsSource::paper;
                else if (val == "oracle") cfg.constants = elliptica::ConstantsSource::oracle;
                else throw std::invalid_argument("constants must be paper or oracle");
            }
            else if (key == "kmax") cfg.kmax = std::stol(val);
            else if (key == "ode_order") cfg.ode_order = std::stol(val);
            else if (key == "split_level") cfg.split_level = (val == "true" || val == "1");
            else if (key == "threads") cfg.threads = std::stoi(val);
            else throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("--config",
                                       path + ":" + std::to_string(lineno) + " (" + key + "): " +
                                           e.what());
        }
    }
}

/// phi file format: {"t^0": "1", "u t^-1": "2/3"} — keys are ring basis
/// monomials, values rational literals.
elliptica::TraceFunctional load_phi(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--phi", "cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    elliptica::TraceFunctional phi;
    for (const auto& [key, val] : j.items()) {
        std::string k = key;
        elliptica::Sector sector = elliptica::Sector::plain;
        auto strip = [&k](const std::string& what) {
            const auto pos = k.find(what);
            if (pos == std::string::npos) return false;
            k.erase(pos, what.size());
            return true;
        };
        if (strip("u ") || strip(" u") || strip("*u") || strip("u*")) {
            sector = elliptica::Sector::u;
        }
        if (k.rfind("t^", 0) != 0) {
            throw CLI::ValidationError("--phi", "bad monomial key '" + key +
                                                    "' (expected t^N or u t^N)");
        }
        const long n = std::stol(k.substr(2));
        phi.values[{n, sector}] = elliptica::Rational::parse(val.get<std::string>());
    }
    return phi;
}

void print_human(const elliptica::ordered_json& doc, std::ostream& os, int depth = 0) {
    const std::string pad(2 * depth, ' ');
    if (doc.contains("suites")) {
        for (const auto& s : doc["suites"]) print_human(s, os, depth);
        return;
    }
    os << pad << "suite " << doc["suite"].get<std::string>() << "\n";
    for (const auto& c : doc["cases"]) {
        if (c["kind"] == "asserted") {
            os << pad << "  [" << c["verdict"].get<std::string>() << "] "
               << c["name"].get<std::string>() << "\n";
            if (c["verdict"] != "pass") {
                os << pad << "      expected: " << c["expected"].get<std::string>() << "\n";
                os << pad << "      got:      " << c["got"].get<std::string>() << "\n";
            }
        } else {
            os << pad << "  [report] " << c["name"].get<std::string>() << "\n";
        }
    }
    const auto& s = doc["summary"];
    os << pad << "  summary: " << s["passed"] << "/" << s["asserted"] << " asserted passed, "
       << s["report_only"] << " report-only\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification harness for the elliptic affine Lie algebra"};
    app.set_version_flag("--version", std::string("elliptica ") + elliptica::kToolVersion);

    std::string suite;
    app.add_option("suite", suite,
                   "one of: pollaczek cocycle jacobi grading borel heisenberg twodim realize "
                   "calibrate jk jk-compare all algebra")
        ->required();

    HarnessConfig cfg;
    std::string config_path, json_out, phi_path, check, constants;
    bool human = false, compare = false;

    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--window,-w", cfg.window, "mode/exponent window of the sweep");
    app.add_option("--degree,-d", cfg.degree, "maximum degree of sampled states");
    app.add_option("--count", cfg.count, "number of sampled states");
    app.add_option("--seed,-s", cfg.seed, "seed for deterministic state sampling");
    app.add_option("--r", cfg.r, "oscillator vacuum convention (0 or 1)")
        ->check(CLI::IsMember({0, 1}));
    std::string variant;
    app.add_option("--variant", variant, "original | sigma_twisted_b | mixed");
    app.add_option("--constants", constants, "paper | oracle");
    app.add_option("--kmax", cfg.kmax, "largest index of the polynomial table");
    app.add_option("--ode-order", cfg.ode_order, "truncation order of the ODE residuals");
    app.add_flag("--split-level", cfg.split_level,
                 "separate the module level from the derivative-term scalar");
    app.add_option("--phi", phi_path, "JSON file with a trace functional");
    app.add_option("--check", check, "algebra sub-check: jacobi|grading|cocycle|borel; jk: rep");
    app.add_flag("--compare", compare, "jk: run the quotient comparison");
    app.add_option("--json", json_out, "write the JSON report to this file");
    app.add_flag("--human", human, "human-readable rendering instead of raw JSON");
    app.add_option("--threads", cfg.threads, "worker count (ELLIPTICA_THREADS overrides)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (const char* env = std::getenv("ELLIPTICA_THREADS")) {
            const int n = std::atoi(env);
            if (n >= 1) cfg.threads = n;
        }
        if (!variant.empty()) {
            cfg.variant = elliptica::parse_variant(variant);
            cfg.variant_set = true;
        }
        if (!constants.empty()) {
            if (constants == "paper") cfg.constants = elliptica::ConstantsSource::paper;
            else if (constants == "oracle") cfg.constants = elliptica::ConstantsSource::oracle;
            else throw std::invalid_argument("--constants must be paper or oracle");
        }
        if (!phi_path.empty()) {
            cfg.phi = load_phi(phi_path);
            cfg.phi_given = true;
        }

        if (suite == "algebra") {
            if (check.empty()) throw std::invalid_argument("algebra requires --check");
            suite = check;
        }
        if (suite == "jk" && compare) suite = "jk-compare";

        const elliptica::SuiteResult res = elliptica::run_suite(suite, cfg);

        const std::string rendered = res.doc.dump(2) + "\n";
        if (!json_out.empty()) {
            std::ofstream out(json_out, std::ios::binary);
            out << rendered;
        }
        if (human) {
            print_human(res.doc, std::cout);
        } else {
            std::cout << rendered;
        }
        const int exit_code = res.pass() ? 0 : 1;
        std::cout << "ELLIPTICA suite=" << suite << " asserted=" << res.asserted
                  << " failed=" << res.failed << " report_only=" << res.report_only
                  << " exit=" << exit_code << "\n";
        return exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << "ELLIPTICA suite=" << suite << " asserted=0 failed=1 report_only=0 exit=2\n";
        return 2;
    }
}
