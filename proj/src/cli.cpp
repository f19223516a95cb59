#include "skexp/cli.hpp"

#include "skexp/errors.hpp"
#include "skexp/expand.hpp"
#include "skexp/oracle.hpp"
#include "skexp/parse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace skexp {

namespace {

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw ParseError("empty entry in size list", 1);
        try {
            sizes.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ParseError("invalid size '" + item + "'", 1);
        }
    }
    if (sizes.empty())
        throw ParseError("size list is empty", 1);
    return sizes;
}

void require_high_temperature(const Rational& beta) {
    if (boost::multiprecision::abs(beta) >= 1)
        throw PoleError("|beta| must be below 1");
}

} // namespace

VerificationReport run_verification(const Monomial& mono, int order,
                                    const Rational& beta, std::vector<int> sizes,
                                    long samples, std::uint64_t seed, double zmax,
                                    double rtol) {
    require_high_temperature(beta);
    Expansion expansion = expand(mono, order);
    const double beta_d = beta.convert_to<double>();

    VerificationReport report;
    report.mono = expansion.mono;
    report.order = order;
    report.beta = beta_d;
    std::sort(sizes.begin(), sizes.end());
    report.sizes = sizes;
    report.samples = samples;
    report.seed = seed;

    for (int j = 1; j <= order; ++j)
        report.engine_at_beta.push_back(expansion.coeff(j).evaluate(beta).convert_to<double>());

    std::vector<MomentEstimate> estimates;
    estimates.reserve(sizes.size());
    for (int n : sizes)
        estimates.push_back(estimate_moment(expansion.mono, beta_d, n, samples, seed));
    report.fit = fit_series(estimates, order);

    report.all_pass = true;
    for (int j = 1; j <= order; ++j) {
        CoefficientVerdict v;
        v.power = j;
        v.engine = report.engine_at_beta[static_cast<std::size_t>(j - 1)];
        v.fitted = report.fit.coeff[static_cast<std::size_t>(j - 1)];
        v.stderr_of_fit = report.fit.coeff_stderr[static_cast<std::size_t>(j - 1)];
        const double delta = std::abs(v.fitted - v.engine);
        v.z = v.stderr_of_fit > 0.0 ? delta / v.stderr_of_fit : 0.0;
        const double tol =
            std::max({zmax * v.stderr_of_fit, rtol * std::abs(v.engine), 1e-9});
        v.pass = delta <= tol;
        report.all_pass = report.all_pass && v.pass;
        report.verdicts.push_back(v);
    }
    return report;
}

namespace {

struct CliOptions {
    std::string format = "plain";
    std::string output_path;

    std::string expr;
    int order = 1;

    std::string beta_text = "0";
    long long size_n = 10;

    std::string sizes_text = "6,8,10,12";
    long samples = 20000;
    std::uint64_t seed = 42;
    double zmax = 3.0;
    double rtol = 0.02;
};

void emit(const std::string& text, const CliOptions& opt, std::ostream& out) {
    if (opt.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opt.output_path, std::ios::binary);
    if (!file)
        throw DomainError("cannot open output file '" + opt.output_path + "'");
    file << text;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"asymptotic 1/N expansions of mean-field overlap moments, "
                 "with an exact-enumeration Monte Carlo verifier"};
    app.require_subcommand(1);
    CliOptions opt;
    app.add_option("--format", opt.format, "output format: plain, json or latex")
        ->capture_default_str();
    app.add_option("--output", opt.output_path, "write the result to this file");

    CLI::App* cmd_expand =
        app.add_subcommand("expand", "expand nu(monomial) in powers of 1/N");
    cmd_expand->add_option("--expr", opt.expr, "monomial, e.g. [[1,2],[1,2]]")->required();
    cmd_expand->add_option("--order", opt.order, "target order m >= 1")->required();

    CLI::App* cmd_eval =
        app.add_subcommand("eval", "evaluate an expansion at exact beta and N");
    cmd_eval->add_option("--expr", opt.expr, "monomial, e.g. [[1,2],[1,2]]")->required();
    cmd_eval->add_option("--order", opt.order, "target order m >= 1")->required();
    cmd_eval->add_option("--beta", opt.beta_text, "exact rational, e.g. 1/2 or 0.2")
        ->required();
    cmd_eval->add_option("--n", opt.size_n, "system size N")->required();

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "check expansion coefficients against the numerical oracle");
    cmd_verify->add_option("--expr", opt.expr, "monomial, e.g. [[1,2],[1,2]]")->required();
    cmd_verify->add_option("--order", opt.order, "fit order m >= 1")->required();
    cmd_verify->add_option("--beta", opt.beta_text, "exact rational, e.g. 0.2")->required();
    cmd_verify->add_option("--sizes", opt.sizes_text, "comma-separated system sizes")
        ->capture_default_str();
    cmd_verify->add_option("--samples", opt.samples, "disorder samples per size")
        ->capture_default_str();
    cmd_verify->add_option("--seed", opt.seed, "base seed")->capture_default_str();
    cmd_verify->add_option("--zmax", opt.zmax, "allowed deviation in fit sigmas")
        ->capture_default_str();
    cmd_verify->add_option("--rtol", opt.rtol, "relative tolerance floor")
        ->capture_default_str();

    std::vector<std::string> cli_args(args.rbegin(), args.rend());
    try {
        app.parse(cli_args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        OutputFormat format = parse_format(opt.format);
        if (app.got_subcommand(cmd_expand)) {
            Expansion e = expand(parse_monomial(opt.expr), opt.order);
            emit(render_expansion(e, format), opt, out);
            return 0;
        }
        if (app.got_subcommand(cmd_eval)) {
            const Rational beta = parse_rational(opt.beta_text);
            require_high_temperature(beta);
            Expansion e = expand(parse_monomial(opt.expr), opt.order);
            const Rational value = evaluate_expansion(e, beta, opt.size_n);
            std::ostringstream os;
            switch (format) {
            case OutputFormat::plain:
                os << "exact = " << value.str() << "\n"
                   << "decimal = " << decimal_string(value) << "\n";
                break;
            case OutputFormat::latex: {
                const Int num = boost::multiprecision::numerator(value);
                const Int den = boost::multiprecision::denominator(value);
                if (den == 1)
                    os << num.str() << "\n";
                else
                    os << (num < 0 ? "-" : "") << "\\frac{"
                       << Int(boost::multiprecision::abs(num)).str() << "}{" << den.str()
                       << "}\n";
                break;
            }
            case OutputFormat::json: {
                nlohmann::ordered_json j;
                nlohmann::ordered_json mono_json = nlohmann::ordered_json::array();
                for (const FactorPair& f : e.mono.factors())
                    mono_json.push_back({f.a, f.b});
                j["monomial"] = mono_json;
                j["order"] = e.order;
                j["beta"] = opt.beta_text;
                j["n"] = opt.size_n;
                j["exact"] = value.str();
                j["decimal"] = decimal_string(value);
                os << j.dump(2) << "\n";
                break;
            }
            }
            emit(os.str(), opt, out);
            return 0;
        }
        // verify
        const Rational beta = parse_rational(opt.beta_text);
        VerificationReport report =
            run_verification(parse_monomial(opt.expr), opt.order, beta,
                             parse_sizes(opt.sizes_text), opt.samples, opt.seed,
                             opt.zmax, opt.rtol);
        std::string text = format == OutputFormat::json
                               ? to_json(report).dump(2) + "\n"
                               : render_report_plain(report);
        emit(text, opt, out);
        return report.all_pass ? 0 : 5;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace skexp
