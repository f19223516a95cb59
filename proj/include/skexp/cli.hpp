#ifndef SKEXP_CLI_HPP
#define SKEXP_CLI_HPP

#include "skexp/render.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace skexp {

/// Expands the monomial, estimates the same moment numerically across the
/// given sizes, fits the 1/N series, and compares coefficient by coefficient.
/// A coefficient passes when |fitted - engine| <= max(zmax * stderr,
/// rtol * |engine|, 1e-9).
VerificationReport run_verification(const Monomial& mono, int order,
                                    const Rational& beta, std::vector<int> sizes,
                                    long samples, std::uint64_t seed, double zmax,
                                    double rtol);

/// Command-line entry point (expand / eval / verify). Returns the process
/// exit code: 0 success, 2 parse or usage error, 3 domain or budget error,
/// 4 internal assertion, 5 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace skexp

#endif
