#ifndef SKEXP_RENDER_HPP
#define SKEXP_RENDER_HPP

#include "skexp/expand.hpp"
#include "skexp/oracle.hpp"
#include "skexp/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace skexp {

enum class OutputFormat { plain, json, latex };

OutputFormat parse_format(const std::string& name); // throws ParseError

/// Plain text, e.g. "1/(1-beta^2)" or "-(beta^2+beta^4)/(1-beta^2)^4".
/// Denominators that are exactly a power of 1-beta^2 are displayed that way;
/// anything else prints verbatim.
std::string render_plain(const BetaRational& value);

/// LaTeX, e.g. "-\frac{\beta^{2}+\beta^{4}}{(1-\beta^{2})^{4}}".
std::string render_latex(const BetaRational& value);

nlohmann::ordered_json to_json(const BetaRational& value);
nlohmann::ordered_json to_json(const Expansion& e);

std::string render_expansion(const Expansion& e, OutputFormat format);

struct CoefficientVerdict {
    int power = 0;
    double engine = 0.0;
    double fitted = 0.0;
    double stderr_of_fit = 0.0;
    double z = 0.0;
    bool pass = false;
};

struct VerificationReport {
    Monomial mono;
    int order = 0;
    double beta = 0.0;
    std::vector<int> sizes;
    long samples = 0;
    std::uint64_t seed = 0;
    SeriesFit fit;
    std::vector<double> engine_at_beta; // C_j(beta), j = 1..order
    std::vector<CoefficientVerdict> verdicts;
    bool all_pass = false;
};

nlohmann::ordered_json to_json(const VerificationReport& report);
std::string render_report_plain(const VerificationReport& report);

} // namespace skexp

#endif
