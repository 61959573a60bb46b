#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nileta/report.hpp"

namespace {

std::optional<std::int64_t> env_int(const char* name) {
    const char* raw = std::getenv(name);
    if (!raw || !*raw) return std::nullopt;
    try {
        return std::stoll(raw);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eta invariants and f-invariants of twisted nilmanifold bundles over even lattices"};
    app.require_subcommand(1, 1);

    nileta::RunConfig config;
    if (auto cap = env_int("NILETA_ENUM_CAP"); cap && *cap > 0) config.enumeration.cap = *cap;
    if (auto threads = env_int("NILETA_THREADS"); threads && *threads > 0)
        config.enumeration.threads = static_cast<unsigned>(*threads);

    std::string k_range;
    std::string out_path;
    const std::pair<const char*, const char*> commands[] = {
        {"info", "Smith form, discriminant group and Gauss sum"},
        {"eta", "adiabatic eta invariant and the polynomial lift of S(d)"},
        {"spectrum", "vertical and base spectra, kernel rank, base eta"},
        {"f-invariant", "f-invariant q-series over Q(zeta_N)"},
        {"classify", "stable homotopy verdict"},
        {"congruence", "divided congruence checks against the top form"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("lattice", config.lattice, "catalog name, inline Gram matrix or JSON file")->required();
        sub->add_option("--twist,-d", config.twist, "twist parameter d");
        sub->add_option("--level,-N", config.level, "cyclotomic level N");
        sub->add_option("--order,-M", config.order, "q-series truncation order");
        sub->add_option("--levels", config.n_cap, "Landau level cap for the vertical spectrum");
        sub->add_option("--k-range", k_range, "winding range a:b for the base spectrum");
        sub->add_flag("--oracle", config.oracle, "cross-check against brute-force enumeration");
        sub->add_option("--out", out_path, "write the JSON report to this file");
        sub->add_option("--threads", config.enumeration.threads, "worker threads for enumeration")
            ->check(CLI::PositiveNumber);
        sub->add_option("--cap", config.enumeration.cap, "enumeration cap")->check(CLI::PositiveNumber);
    }
    app.add_flag_callback("--catalog", [] {
        for (const auto& n : nileta::catalog_names()) std::cout << n << '\n';
        std::exit(0);
    }, "list built-in lattices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const std::string command = app.get_subcommands().front()->get_name();
    config.command = *nileta::parse_command(command);
    if (!k_range.empty()) {
        const auto colon = k_range.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument("no colon");
            config.k_min = std::stoll(k_range.substr(0, colon));
            config.k_max = std::stoll(k_range.substr(colon + 1));
        } catch (const std::exception&) {
            std::cerr << "--k-range expects a:b\n";
            return 1;
        }
    }
    if (!out_path.empty()) config.out = out_path;

    const nileta::RunResult result = nileta::run(config);
    const std::string text = result.report.dump(2) + "\n";
    if (config.out) {
        std::ofstream out(*config.out, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << *config.out << '\n';
            return 1;
        }
        out << text;
    } else {
        std::cout << text;
    }
    if (result.exit_code != 0) std::cerr << result.report["error"].dump() << '\n';
    return result.exit_code;
}
