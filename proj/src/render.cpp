#include "skexp/render.hpp"

#include "skexp/errors.hpp"
#include "skexp/parse.hpp"

#include <limits>
#include <sstream>

namespace skexp {

OutputFormat parse_format(const std::string& name) {
    if (name == "plain")
        return OutputFormat::plain;
    if (name == "json")
        return OutputFormat::json;
    if (name == "latex")
        return OutputFormat::latex;
    throw ParseError("unknown format '" + name + "' (expected plain, json or latex)", 1);
}

namespace {

struct Style {
    const char* var;       // "beta" or "\\beta"
    const char* mul;       // "*" or ""
    bool braced_exponents; // beta^{4} vs beta^4
};

constexpr Style kPlainStyle{"beta", "*", false};
constexpr Style kLatexStyle{"\\beta", "", true};

std::string format_power(const Style& st, int p) {
    std::ostringstream os;
    os << st.var;
    if (p > 1) {
        os << "^";
        if (st.braced_exponents)
            os << "{" << p << "}";
        else
            os << p;
    }
    return os.str();
}

std::string format_poly(const BetaPoly& poly, const Style& st) {
    if (poly.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    const auto& coeffs = poly.coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Int& c = coeffs[i];
        if (c == 0)
            continue;
        Int mag = boost::multiprecision::abs(c);
        if (first) {
            if (c < 0)
                os << "-";
            first = false;
        } else {
            os << (c < 0 ? "-" : "+");
        }
        if (i == 0) {
            os << mag;
        } else {
            if (mag != 1)
                os << mag << st.mul;
            os << format_power(st, static_cast<int>(i));
        }
    }
    return os.str();
}

// Detects den == +-(1-beta^2)^k; returns k and whether the sign flipped,
// or k = 0 when the denominator has no such form.
struct DenFactor {
    int power = 0;
    bool flipped = false;
};

DenFactor factor_denominator(const BetaPoly& den) {
    if (den.degree() < 2 || den.degree() % 2 != 0)
        return {};
    const int k = den.degree() / 2;
    BetaPoly probe = BetaPoly::one_minus_beta_sq().pow(k);
    if (probe == den)
        return {k, false};
    if (-probe == den)
        return {k, true};
    return {};
}

struct Rendered {
    bool negative = false;
    std::string scalar;  // "2/3", "5", or empty when the magnitude is 1
    std::string poly;    // "" when the polynomial part is 1
    std::string den;     // "" when the denominator is 1
    bool den_needs_parens = false;
    int den_power = 1;
};

Rendered decompose(const BetaRational& value, const Style& st) {
    Rendered r;
    DenFactor den_factor = factor_denominator(value.den());

    Int sn = boost::multiprecision::numerator(value.scale());
    const Int& sd = boost::multiprecision::denominator(value.scale());
    if (den_factor.flipped)
        sn = -sn;

    BetaPoly num = value.num();
    // put the sign on the lowest-order displayed coefficient
    if (!num.is_zero()) {
        for (const Int& c : num.coeffs())
            if (c != 0) {
                if (c < 0) {
                    num = -num;
                    sn = -sn;
                }
                break;
            }
    }
    r.negative = sn < 0;
    Int mag = boost::multiprecision::abs(sn);
    if (mag != 1 || sd != 1) {
        std::ostringstream os;
        os << mag;
        if (sd != 1)
            os << "/" << sd;
        r.scalar = os.str();
    }
    if (!num.is_one())
        r.poly = format_poly(num, st);

    if (den_factor.power > 0) {
        r.den = format_poly(BetaPoly::one_minus_beta_sq(), st);
        r.den_power = den_factor.power;
        r.den_needs_parens = true;
    } else if (!value.den().is_one()) {
        r.den = format_poly(value.den(), st);
        r.den_power = 1;
        r.den_needs_parens = true;
    }
    return r;
}

} // namespace

std::string render_plain(const BetaRational& value) {
    if (value.is_zero())
        return "0";
    Rendered r = decompose(value, kPlainStyle);
    std::ostringstream os;
    if (r.negative)
        os << "-";
    bool have_head = false;
    if (!r.scalar.empty()) {
        os << r.scalar;
        have_head = true;
    }
    if (!r.poly.empty()) {
        if (have_head)
            os << "*";
        const bool parens = have_head || r.negative || !r.den.empty();
        os << (parens ? "(" : "") << r.poly << (parens ? ")" : "");
        have_head = true;
    }
    if (!have_head)
        os << "1";
    if (!r.den.empty()) {
        os << "/(" << r.den << ")";
        if (r.den_power > 1)
            os << "^" << r.den_power;
    }
    return os.str();
}

std::string render_latex(const BetaRational& value) {
    if (value.is_zero())
        return "0";
    Rendered r = decompose(value, kLatexStyle);
    std::ostringstream os;
    if (r.negative)
        os << "-";

    bool scalar_fraction = false;
    std::string num_body;
    auto slash = r.scalar.find('/');
    if (!r.scalar.empty() && slash != std::string::npos) {
        os << "\\frac{" << r.scalar.substr(0, slash) << "}{"
           << r.scalar.substr(slash + 1) << "}";
        scalar_fraction = true;
        num_body = r.poly.empty() ? "1" : "\\left(" + r.poly + "\\right)";
    } else if (!r.scalar.empty()) {
        num_body = r.poly.empty() ? r.scalar : r.scalar + "\\left(" + r.poly + "\\right)";
    } else {
        num_body = r.poly.empty() ? "1" : r.poly;
    }

    if (r.den.empty()) {
        if (!(scalar_fraction && num_body == "1"))
            os << num_body;
        return os.str();
    }
    std::string den_body = r.den;
    if (r.den_power > 1)
        den_body = "(" + den_body + ")^{" + std::to_string(r.den_power) + "}";
    os << "\\frac{" << num_body << "}{" << den_body << "}";
    return os.str();
}

namespace {

nlohmann::ordered_json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi)
        return static_cast<std::int64_t>(v);
    return v.str(); // decimal string beyond 64 bits
}

nlohmann::ordered_json poly_to_json(const BetaPoly& p) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Int& c : p.coeffs())
        arr.push_back(int_to_json(c));
    return arr;
}

} // namespace

nlohmann::ordered_json to_json(const BetaRational& value) {
    nlohmann::ordered_json j;
    j["num"] = poly_to_json(value.num());
    j["den"] = poly_to_json(value.den());
    j["scale"] = nlohmann::ordered_json::array(
        {int_to_json(boost::multiprecision::numerator(value.scale())),
         int_to_json(boost::multiprecision::denominator(value.scale()))});
    return j;
}

nlohmann::ordered_json to_json(const Expansion& e) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json mono = nlohmann::ordered_json::array();
    for (const FactorPair& f : e.mono.factors())
        mono.push_back({f.a, f.b});
    j["monomial"] = mono;
    j["order"] = e.order;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (int p = 1; p <= e.order; ++p) {
        nlohmann::ordered_json entry;
        entry["power"] = p;
        entry["value"] = to_json(e.coeff(p));
        coeffs.push_back(entry);
    }
    j["coefficients"] = coeffs;
    return j;
}

std::string render_expansion(const Expansion& e, OutputFormat format) {
    std::ostringstream os;
    switch (format) {
    case OutputFormat::json:
        os << to_json(e).dump(2) << "\n";
        break;
    case OutputFormat::plain:
        for (int p = 1; p <= e.order; ++p)
            os << "C" << p << " = " << render_plain(e.coeff(p)) << "\n";
        break;
    case OutputFormat::latex:
        for (int p = 1; p <= e.order; ++p)
            os << "C_{" << p << "} = " << render_latex(e.coeff(p)) << "\n";
        break;
    }
    return os.str();
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json mono = nlohmann::ordered_json::array();
    for (const FactorPair& f : report.mono.factors())
        mono.push_back({f.a, f.b});
    j["monomial"] = mono;
    j["order"] = report.order;
    j["beta"] = report.beta;
    j["sizes"] = report.sizes;
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    j["fit"]["chat"] = report.fit.coeff;
    j["fit"]["stderr"] = report.fit.coeff_stderr;
    j["engine"]["coeffs_at_beta"] = report.engine_at_beta;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const CoefficientVerdict& v : report.verdicts) {
        nlohmann::ordered_json entry;
        entry["power"] = v.power;
        entry["engine"] = v.engine;
        entry["fitted"] = v.fitted;
        entry["stderr"] = v.stderr_of_fit;
        entry["z"] = v.z;
        entry["pass"] = v.pass;
        verdicts.push_back(entry);
    }
    j["verdict"] = verdicts;
    j["all_pass"] = report.all_pass;
    return j;
}

std::string render_report_plain(const VerificationReport& report) {
    std::ostringstream os;
    os << "monomial " << render_monomial(report.mono) << "  order " << report.order
       << "  beta " << report.beta << "  samples " << report.samples << "  seed "
       << report.seed << "\n";
    os << "sizes";
    for (int n : report.sizes)
        os << " " << n;
    os << "\n";
    for (const CoefficientVerdict& v : report.verdicts) {
        os << "c" << v.power << ": engine " << v.engine << "  fitted " << v.fitted
           << "  stderr " << v.stderr_of_fit << "  z " << v.z << "  "
           << (v.pass ? "pass" : "FAIL") << "\n";
    }
    os << (report.all_pass ? "verification passed" : "verification FAILED") << "\n";
    return os.str();
}

} // namespace skexp
