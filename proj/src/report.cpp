#include "nileta/report.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nileta/error.hpp"
#include "nileta/oracle.hpp"

namespace nileta {

namespace {

const std::vector<std::pair<std::string, IntMatrix>>& catalog() {
    static const std::vector<std::pair<std::string, IntMatrix>> entries = {
        {"A1", {{2}}},
        {"A2", {{2, 1}, {1, 2}}},
        {"2A1", {{2, 0}, {0, 2}}},
        {"diag24", {{2, 0}, {0, 4}}},
        {"disc7", {{2, 1}, {1, 4}}},
        {"3A1", {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}},
    };
    return entries;
}

IntMatrix gram_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, field + ": expected a non-empty array of rows");
    IntMatrix gram;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        const std::string where = field + "[" + std::to_string(i) + "]";
        if (!row.is_array()) fail(ErrorCode::ParseError, where + ": expected an array");
        IntVector values;
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!row[k].is_number_integer())
                fail(ErrorCode::ParseError, where + "[" + std::to_string(k) + "]: expected an integer");
            values.push_back(row[k].get<std::int64_t>());
        }
        gram.push_back(std::move(values));
    }
    for (std::size_t i = 0; i < gram.size(); ++i)
        if (gram[i].size() != gram.size())
            fail(ErrorCode::ParseError, field + ": non-square (row " + std::to_string(i) + " has " +
                                            std::to_string(gram[i].size()) + " entries, expected " +
                                            std::to_string(gram.size()) + ")");
    return gram;
}

std::string position(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::ParseError, "invalid JSON at " + position(text, e.byte == 0 ? 0 : e.byte - 1));
    }
}

Json cyclo_json(const CycloRational& c) {
    Json out = Json::array();
    for (const auto& v : c.coords()) out.push_back(to_string(v));
    return out;
}

CycloRational cyclo_from_json(const CyclotomicField& field, const Json& j) {
    if (!j.is_array() || j.size() != field.degree())
        fail(ErrorCode::ParseError, "series coefficient must have phi(N) = " + std::to_string(field.degree()) +
                                        " entries");
    RationalVector coords;
    for (const auto& v : j) {
        if (!v.is_string()) fail(ErrorCode::ParseError, "series coordinate must be a \"p/q\" string");
        coords.push_back(parse_rational(v.get<std::string>()));
    }
    return CycloRational(field, coords);
}

}  // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& [name, gram] : catalog()) names.push_back(name);
    return names;
}

std::optional<IntMatrix> catalog_gram(const std::string& name) {
    for (const auto& [n, gram] : catalog())
        if (n == name) return gram;
    return std::nullopt;
}

EvenLattice parse_lattice_json(const std::string& text) {
    const Json j = parse_json_text(text);
    if (!j.is_object()) fail(ErrorCode::ParseError, "lattice file must be a JSON object");
    if (!j.contains("gram")) fail(ErrorCode::ParseError, "missing field \"gram\"");
    return validate_even_lattice(gram_from_json(j["gram"], "gram"));
}

EvenLattice parse_lattice_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot read lattice file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_lattice_json(buffer.str());
}

EvenLattice resolve_lattice(const std::string& source) {
    if (auto gram = catalog_gram(source)) return validate_even_lattice(*gram);
    if (!source.empty() && source.front() == '[')
        return validate_even_lattice(gram_from_json(parse_json_text(source), "gram"));
    return parse_lattice_file(source);
}

Json to_json(const EvenLattice& lattice) {
    Json out;
    out["gram"] = lattice.gram();
    out["rank"] = lattice.rank();
    out["det"] = lattice.det();
    return out;
}

Json to_json(const QSeries& series) {
    Json out;
    out["N"] = series.level();
    out["order"] = series.order();
    if (series.constant())
        out["constant"] = cyclo_json(*series.constant());
    else
        out["constant"] = "UNKNOWN";
    Json coeffs = Json::array();
    for (std::int64_t n = 1; n <= series.order(); ++n) coeffs.push_back(cyclo_json(series.coeff(n)));
    out["coeffs"] = std::move(coeffs);
    return out;
}

QSeries series_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("N") || !j.contains("order") || !j.contains("coeffs") || !j.contains("constant"))
        fail(ErrorCode::ParseError, "series needs fields N, order, constant, coeffs");
    const CyclotomicField field(j["N"].get<std::int64_t>());
    const std::int64_t order = j["order"].get<std::int64_t>();
    QSeries out(field, order);
    const auto& coeffs = j["coeffs"];
    if (!coeffs.is_array() || static_cast<std::int64_t>(coeffs.size()) != order)
        fail(ErrorCode::ParseError, "coeffs must have exactly `order` entries");
    for (std::int64_t n = 1; n <= order; ++n) out.coeff(n) = cyclo_from_json(field, coeffs[n - 1]);
    if (j["constant"].is_string() && j["constant"].get<std::string>() == "UNKNOWN")
        out.set_constant(std::nullopt);
    else
        out.set_constant(cyclo_from_json(field, j["constant"]));
    return out;
}

Json to_json(const SpectrumReport& report) {
    Json out;
    out["operator"] = std::string(to_string(report.tag));
    out["unit"] = "2*pi";
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json entry;
        if (const auto* v = std::get_if<double>(&e.value))
            entry["value"] = *v;
        else
            entry["value"] = to_string(std::get<Rational>(e.value));
        entry["mult"] = e.multiplicity;
        if (e.label) {
            Json label;
            if (report.tag == OperatorTag::VerticalSquared) {
                label["n"] = e.label->levels;
                label["s"] = e.label->chirality;
            } else {
                label["k"] = e.label->winding;
                label["class"] = e.label->class_index;
            }
            entry["label"] = std::move(label);
        }
        entries.push_back(std::move(entry));
    }
    out["entries"] = std::move(entries);
    return out;
}

Json sums_to_json(const std::map<std::int64_t, QmodZ>& sums) {
    Json out = Json::object();
    for (const auto& [d, s] : sums) out[std::to_string(d)] = to_string(s);
    return out;
}

Json to_json(const PolynomialLift& lift) {
    Json out;
    out["alpha"] = to_string(lift.alpha);
    out["beta"] = to_string(lift.beta);
    out["gamma"] = to_string(lift.gamma);
    out["certified_to"] = lift.certified_range;
    if (lift.rank2_form) {
        out["form"] = "alpha d^3 + beta d";
        out["alpha_prime"] = to_string(lift.alpha_prime_exact);
    } else {
        out["form"] = "alpha d^(r+1) + beta d^r + gamma d^(r-1)";
    }
    return out;
}

Json to_json(const HomotopyVerdict& verdict) {
    Json out;
    out["rank"] = verdict.rank;
    out["disc"] = verdict.disc;
    out["verdict"] = std::string(to_string(verdict.verdict));
    Json evidence = Json::array();
    for (const auto& e : verdict.evidence) {
        Json item;
        item["check"] = e.check;
        item["passed"] = e.passed;
        item["detail"] = e.detail;
        evidence.push_back(std::move(item));
    }
    out["evidence"] = std::move(evidence);
    if (verdict.lift) out["lift"] = to_json(*verdict.lift);
    return out;
}

Json to_json(const CongruenceVerdict& verdict) {
    Json out;
    out["member_up_to_order"] = verdict.member_up_to_order;
    Json lambda = Json::array();
    for (const auto& l : verdict.combination) lambda.push_back(to_string(l));
    out["combination"] = std::move(lambda);
    out["residual"] = verdict.residual ? to_json(*verdict.residual) : Json(nullptr);
    out["caveat"] = verdict.caveat;
    return out;
}

Json to_json(const Error& error) {
    Json inner;
    inner["kind"] = std::string(error_name(error.code()));
    inner["message"] = error.what();
    Json out;
    out["error"] = std::move(inner);
    return out;
}

std::optional<Command> parse_command(const std::string& name) {
    if (name == "info") return Command::Info;
    if (name == "eta") return Command::Eta;
    if (name == "spectrum") return Command::Spectrum;
    if (name == "f-invariant") return Command::FInvariant;
    if (name == "classify") return Command::Classify;
    if (name == "congruence") return Command::Congruence;
    return std::nullopt;
}

namespace {

const char* command_name(Command c) {
    switch (c) {
        case Command::Info: return "info";
        case Command::Eta: return "eta";
        case Command::Spectrum: return "spectrum";
        case Command::FInvariant: return "f-invariant";
        case Command::Classify: return "classify";
        case Command::Congruence: return "congruence";
    }
    return "";
}

Json header(const RunConfig& config, const EvenLattice& lattice) {
    Json out;
    out["command"] = command_name(config.command);
    out["source"] = config.lattice;
    out["lattice"] = to_json(lattice);
    return out;
}

void require_twist(const RunConfig& config) {
    if (config.twist == 0) fail(ErrorCode::DomainError, "--twist must be nonzero");
}

std::map<std::int64_t, QmodZ> sums_for(const EvenLattice& lattice, std::int64_t max_twist,
                                       const EnumerationOptions& options) {
    std::map<std::int64_t, QmodZ> sums;
    for (std::int64_t d = 1; d <= max_twist; ++d) sums.emplace(d, discriminant_sum(lattice, d, options));
    return sums;
}

Json run_info(const RunConfig& config, const EvenLattice& lattice) {
    require_twist(config);
    Json out = header(config, lattice);
    const SmithDecomposition smith = smith_normal_form(lattice.gram());
    out["smith_diag"] = smith.diag;
    out["twist"] = config.twist;
    const DiscriminantGroup group = discriminant_group(lattice, config.twist, smith, config.enumeration);
    Json disc;
    disc["order"] = group.order();
    disc["invariant_factors"] = group.invariant_factors();
    Json values = Json::array();
    for (const auto& [num, count] : qbar_histogram(group, config.enumeration.threads)) {
        Json v;
        v["qbar"] = to_string(make_rational(num, group.qbar_modulus()));
        v["count"] = count;
        values.push_back(std::move(v));
    }
    disc["qbar_values"] = std::move(values);
    if (group.order() <= 64) {
        Json reps = Json::array();
        for (const auto& rho : group.representatives()) {
            Json v = Json::array();
            for (const auto& x : rho) v.push_back(to_string(x));
            reps.push_back(std::move(v));
        }
        disc["representatives"] = std::move(reps);
    }
    out["discriminant"] = std::move(disc);

    const GramSpectrum nu = gram_eigenvalues(lattice);
    out["gram_eigenvalues"] = nu.eigenvalues;

    const auto g = oracle::gauss_sum(lattice, config.enumeration.cap);
    Json gm;
    gm["abs_squared"] = std::norm(g);
    double turns = std::arg(g) / (2 * std::numbers::pi);
    if (turns < 0) turns += 1;
    gm["phase_turns"] = turns;
    gm["expected_phase_turns"] = std::fmod(static_cast<double>(lattice.rank()) / 8.0, 1.0);
    out["gauss_milgram"] = std::move(gm);
    return out;
}

struct OracleMismatch {
    std::string what;
};

Json run_eta(const RunConfig& config, const EvenLattice& lattice) {
    require_twist(config);
    Json out = header(config, lattice);
    out["twist"] = config.twist;
    const QmodZ eta = eta_adiabatic(lattice, config.twist, config.enumeration);
    out["eta"] = to_string(eta);

    std::optional<PolynomialLift> lift;
    std::string lift_error;
    try {
        lift = lattice.rank() == 2 ? rank2_lift(lattice, config.enumeration)
                                   : general_lift(lattice, kClassifyMaxTwist, config.enumeration);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::OrderOverflow) throw;
        lift_error = e.what();
    }
    std::map<std::int64_t, QmodZ> sums = lift ? lift->sums : std::map<std::int64_t, QmodZ>{};
    sums.emplace(config.twist, discriminant_sum(lattice, config.twist, config.enumeration));
    out["S"] = sums_to_json(sums);
    if (lift)
        out["lift"] = to_json(*lift);
    else
        out["lift"] = Json{{"error", lift_error}};

    if (config.oracle) {
        const QmodZ brute = oracle::eta(lattice, config.twist, config.enumeration.cap);
        std::map<std::int64_t, QmodZ> brute_sums;
        for (const auto& [d, s] : sums) brute_sums.emplace(d, oracle::discriminant_sum(lattice, d, config.enumeration.cap));
        Json o;
        o["eta"] = to_string(brute);
        o["S"] = sums_to_json(brute_sums);
        o["agrees"] = brute == eta && brute_sums == sums;
        out["oracle"] = o;
        if (!(brute == eta)) throw OracleMismatch{"eta: closed form " + to_string(eta) + ", brute force " + to_string(brute)};
        if (!(brute_sums == sums)) throw OracleMismatch{"discriminant sums differ from brute force"};
    }
    return out;
}

Json run_spectrum(const RunConfig& config, const EvenLattice& lattice) {
    require_twist(config);
    Json out = header(config, lattice);
    out["twist"] = config.twist;
    const GramSpectrum nu = gram_eigenvalues(lattice);
    out["gram_eigenvalues"] = nu.eigenvalues;
    out["kernel_dimension"] = kernel_dimension(lattice, config.twist, config.enumeration);
    out["vertical"] = to_json(vertical_spectrum(lattice, config.twist, config.n_cap, config.enumeration));
    out["base"] = to_json(base_spectrum(lattice, config.twist, config.k_min, config.k_max, config.enumeration));
    const QmodZ base = base_eta_reduced(lattice, config.twist, config.enumeration);
    const QmodZ adiabatic = eta_adiabatic(lattice, config.twist, config.enumeration);
    out["base_eta"] = to_string(base);
    out["eta_adiabatic"] = to_string(adiabatic);
    out["consistent"] = base == adiabatic;
    if (!(base == adiabatic))
        fail(ErrorCode::InternalMismatch, "base eta " + to_string(base) + " differs from adiabatic eta " +
                                              to_string(adiabatic));
    return out;
}

Json run_f_invariant(const RunConfig& config, const EvenLattice& lattice) {
    Json out = header(config, lattice);
    out["level"] = config.level;
    out["order"] = config.order;
    const auto sums = sums_for(lattice, config.order, config.enumeration);
    out["S"] = sums_to_json(sums);
    const QSeries f = f_invariant_series(lattice.rank(), sums, config.level, config.order);
    out["series"] = to_json(f);
    out["integral"] = f.is_integral();
    if (config.oracle) {
        std::map<std::int64_t, QmodZ> brute;
        for (std::int64_t d = 1; d <= config.order; ++d)
            brute.emplace(d, oracle::discriminant_sum(lattice, d, config.enumeration.cap));
        const bool agrees = brute == sums && f_invariant_series(lattice.rank(), brute, config.level, config.order) == f;
        out["oracle"] = Json{{"S", sums_to_json(brute)}, {"agrees", agrees}};
        if (!agrees) throw OracleMismatch{"f-invariant series differs from brute-force recomputation"};
    }
    return out;
}

Json run_classify(const RunConfig& config, const EvenLattice& lattice) {
    Json out = header(config, lattice);
    const HomotopyVerdict verdict = classify(lattice, config.enumeration);
    const Json body = to_json(verdict);
    for (const auto& [k, v] : body.items()) out[k] = v;
    return out;
}

Json run_congruence(const RunConfig& config, const EvenLattice& lattice) {
    Json out = header(config, lattice);
    const std::size_t r = lattice.rank();
    out["level"] = config.level;
    out["order"] = config.order;
    out["recommended_order"] = recommended_order(r, config.level);
    const auto sums = sums_for(lattice, config.order, config.enumeration);
    const QSeries f = f_invariant_series(r, sums, config.level, config.order);
    const QSeries top = top_form_series(r, config.level, config.order);
    Json checks = Json::array();
    Json plain = to_json(divided_congruence_member(f, {top}));
    plain["target"] = "f";
    plain["basis"] = Json::array({"top_form"});
    checks.push_back(std::move(plain));
    if (r == 2) {
        const QSeries shifted =
            f + Rational(Integer(static_cast<long>(lattice.det()))) * nu_squared_series(config.level, config.order);
        Json nu = to_json(divided_congruence_member(shifted, {top}));
        nu["target"] = "f + |dis| * nu_squared";
        nu["basis"] = Json::array({"top_form"});
        checks.push_back(std::move(nu));
    }
    out["checks"] = std::move(checks);
    return out;
}

}  // namespace

RunResult run(const RunConfig& config) {
    RunResult result;
    try {
        if (config.level < 2) fail(ErrorCode::DomainError, "--level must be >= 2");
        if (config.order < 1) fail(ErrorCode::DomainError, "--order must be >= 1");
        const EvenLattice lattice = resolve_lattice(config.lattice);
        switch (config.command) {
            case Command::Info: result.report = run_info(config, lattice); break;
            case Command::Eta: result.report = run_eta(config, lattice); break;
            case Command::Spectrum: result.report = run_spectrum(config, lattice); break;
            case Command::FInvariant: result.report = run_f_invariant(config, lattice); break;
            case Command::Classify: result.report = run_classify(config, lattice); break;
            case Command::Congruence: result.report = run_congruence(config, lattice); break;
        }
    } catch (const OracleMismatch& m) {
        result.report = Json{{"error", {{"kind", "OracleMismatch"}, {"message", m.what}}}};
        result.exit_code = 2;
    } catch (const Error& e) {
        result.report = to_json(e);
        result.exit_code = is_internal(e.code()) ? 2 : 1;
    }
    return result;
}

}  // namespace nileta
