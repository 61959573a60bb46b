#include "nileta/rational.hpp"

#include <limits>
#include <numeric>

#include "nileta/error.hpp"

namespace nileta {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::NotEvenDiagonal: return "NotEvenDiagonal";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::OrderOverflow: return "OrderOverflow";
        case ErrorCode::NotInDual: return "NotInDual";
        case ErrorCode::RankMismatch: return "RankMismatch";
        case ErrorCode::CertificationFailure: return "CertificationFailure";
        case ErrorCode::FitFailure: return "FitFailure";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::InternalMismatch: return "InternalMismatch";
        case ErrorCode::InconsistentLevels: return "InconsistentLevels";
        case ErrorCode::InconsistentOrders: return "InconsistentOrders";
        case ErrorCode::MissingSum: return "MissingSum";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
    }
    return "Unknown";
}

bool is_internal(ErrorCode code) {
    return code == ErrorCode::CertificationFailure || code == ErrorCode::InternalMismatch ||
           code == ErrorCode::FitFailure;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) fail(ErrorCode::DomainError, "zero denominator");
    Rational x(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    x.canonicalize();
    return x;
}

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    const auto slash = s.find('/');
    Integer num;
    Integer den(1);
    try {
        if (slash == std::string::npos) {
            num = Integer(s, 10);
        } else {
            num = Integer(s.substr(0, slash), 10);
            den = Integer(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::ParseError, "not a rational: \"" + s + "\"");
    }
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in \"" + s + "\"");
    Rational x(num, den);
    x.canonicalize();
    return x;
}

Integer floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& x) {
    Rational r = x - Rational(floor(x));
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::int64_t to_int64(const Integer& x) {
    if (!x.fits_slong_p()) fail(ErrorCode::ArithmeticOverflow, "integer exceeds 64 bits: " + x.get_str());
    return x.get_si();
}

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    const Integer l = lcm(Integer(static_cast<long>(a)), Integer(static_cast<long>(b)));
    return to_int64(l);
}

}  // namespace nileta
