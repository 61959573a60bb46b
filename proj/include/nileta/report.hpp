#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nileta/classify.hpp"
#include "nileta/error.hpp"
#include "nileta/eta.hpp"
#include "nileta/lattice.hpp"
#include "nileta/qseries.hpp"
#include "nileta/spectral.hpp"

namespace nileta {

using Json = nlohmann::ordered_json;

// Built-in lattices: A1, A2, 2A1 = diag(2,2), diag24 = diag(2,4),
// disc7 = [[2,1],[1,4]], 3A1 = diag(2,2,2).
std::vector<std::string> catalog_names();
std::optional<IntMatrix> catalog_gram(const std::string& name);

/// {"gram": [[int, ...], ...]}. Throws ParseError (with field context) or a
/// lattice validation error.
EvenLattice parse_lattice_json(const std::string& text);
/// Throws IoError when the file cannot be read.
EvenLattice parse_lattice_file(const std::string& path);
/// Catalog name, inline JSON Gram matrix ("[[2,1],[1,2]]"), or file path.
EvenLattice resolve_lattice(const std::string& source);

Json to_json(const EvenLattice& lattice);
Json to_json(const QSeries& series);
Json to_json(const SpectrumReport& report);
Json to_json(const PolynomialLift& lift);
Json to_json(const HomotopyVerdict& verdict);
Json to_json(const CongruenceVerdict& verdict);
Json to_json(const Error& error);

QSeries series_from_json(const Json& j);
Json sums_to_json(const std::map<std::int64_t, QmodZ>& sums);

enum class Command { Info, Eta, Spectrum, FInvariant, Classify, Congruence };
std::optional<Command> parse_command(const std::string& name);

struct RunConfig {
    Command command = Command::Info;
    std::string lattice;
    std::int64_t twist = 1;
    std::int64_t level = 3;
    std::int64_t order = 20;
    std::int64_t n_cap = 2;
    std::int64_t k_min = -1;
    std::int64_t k_max = 1;
    bool oracle = false;
    std::optional<std::string> out;
    EnumerationOptions enumeration;
};

struct RunResult {
    Json report;
    int exit_code = 0;
};

/// Exit code 0 on success, 1 on validation errors, 2 on certification or
/// oracle failures. Errors are rendered as {"error": {...}}.
RunResult run(const RunConfig& config);

}  // namespace nileta
