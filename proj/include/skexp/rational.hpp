#ifndef SKEXP_RATIONAL_HPP
#define SKEXP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <vector>

namespace skexp {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense univariate polynomial in beta with arbitrary-precision integer
/// coefficients, stored in ascending powers. Canonical form has no trailing
/// zero coefficient; the zero polynomial is the empty vector.
class BetaPoly {
public:
    BetaPoly() = default;
    explicit BetaPoly(std::vector<Int> coeffs);
    static BetaPoly constant(Int c);
    static BetaPoly beta_power(int k);      // beta^k
    static BetaPoly one_minus_beta_sq();    // 1 - beta^2

    const std::vector<Int>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Int& leading() const;
    bool is_one() const;

    // gcd of |coefficients|, 0 for the zero polynomial
    Int content() const;
    BetaPoly primitive_part() const;

    Rational evaluate(const Rational& beta) const;
    BetaPoly pow(int k) const;

    friend BetaPoly operator+(const BetaPoly&, const BetaPoly&);
    friend BetaPoly operator-(const BetaPoly&, const BetaPoly&);
    friend BetaPoly operator*(const BetaPoly&, const BetaPoly&);
    BetaPoly operator-() const;
    bool operator==(const BetaPoly&) const = default;

    std::string str() const; // e.g. "1-4*b^2+6*b^4", "0"

private:
    void trim();
    std::vector<Int> coeffs_;
};

// Primitive gcd with positive leading coefficient; gcd(0,0) = 0.
BetaPoly poly_gcd(const BetaPoly& a, const BetaPoly& b);
// Exact division; throws InternalError when b does not divide a.
BetaPoly poly_divexact(const BetaPoly& a, const BetaPoly& b);

/// Exact rational function of beta in canonical form:
///   value = scale * num(beta) / den(beta)
/// where num and den are primitive integer polynomials with positive leading
/// coefficients, gcd(num, den) = 1, and scale is a reduced rational carrying
/// the sign and the integer content. Zero is {scale 0, num 0, den 1}.
/// Two values are equal iff their canonical parts are componentwise equal.
class BetaRational {
public:
    BetaRational() : den_(BetaPoly::constant(1)) {}
    BetaRational(Rational scale, BetaPoly num, BetaPoly den);
    static BetaRational zero() { return BetaRational(); }
    static BetaRational one() { return integer(1); }
    static BetaRational integer(Int v);
    static BetaRational rational(Rational v);
    static BetaRational from_poly(BetaPoly p);
    static BetaRational beta_power(int k);

    const Rational& scale() const { return scale_; }
    const BetaPoly& num() const { return num_; }
    const BetaPoly& den() const { return den_; }
    bool is_zero() const { return scale_ == 0; }
    bool is_one() const;

    BetaRational operator+(const BetaRational&) const;
    BetaRational operator-(const BetaRational&) const;
    BetaRational operator*(const BetaRational&) const;
    BetaRational operator-() const;
    BetaRational& operator+=(const BetaRational& o) { return *this = *this + o; }
    BetaRational& operator*=(const BetaRational& o) { return *this = *this * o; }
    BetaRational scaled(const Rational& r) const;
    // 1/value; throws DomainError on zero
    BetaRational inverse() const;
    bool operator==(const BetaRational&) const = default;

    // Throws PoleError when den(beta) = 0.
    Rational evaluate(const Rational& beta) const;

    std::string str() const;

private:
    Rational scale_;
    BetaPoly num_;
    BetaPoly den_;
};

/// Order of a term in the 1/N hierarchy, in exact quarter-integer units.
struct QuarterOrder {
    int units = 0; // value = units / 4

    static QuarterOrder of_integer(int n) { return {4 * n}; }
    static QuarterOrder of_halves(int h) { return {2 * h}; }
    bool is_integer() const { return units % 4 == 0; }
    auto operator<=>(const QuarterOrder&) const = default;
    QuarterOrder operator+(QuarterOrder o) const { return {units + o.units}; }
    std::string str() const;
};

} // namespace skexp

#endif
