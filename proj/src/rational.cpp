#include "skexp/rational.hpp"

#include "skexp/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace skexp {

BetaPoly::BetaPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

void BetaPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

BetaPoly BetaPoly::constant(Int c) {
    if (c == 0)
        return BetaPoly();
    return BetaPoly({std::move(c)});
}

BetaPoly BetaPoly::beta_power(int k) {
    std::vector<Int> c(static_cast<std::size_t>(k) + 1, 0);
    c.back() = 1;
    return BetaPoly(std::move(c));
}

BetaPoly BetaPoly::one_minus_beta_sq() {
    return BetaPoly({1, 0, -1});
}

const Int& BetaPoly::leading() const {
    if (is_zero())
        throw InternalError("leading coefficient of zero polynomial");
    return coeffs_.back();
}

bool BetaPoly::is_one() const {
    return coeffs_.size() == 1 && coeffs_[0] == 1;
}

Int BetaPoly::content() const {
    Int g = 0;
    for (const Int& c : coeffs_)
        g = boost::multiprecision::gcd(g, c);
    return boost::multiprecision::abs(g);
}

BetaPoly BetaPoly::primitive_part() const {
    if (is_zero())
        return BetaPoly();
    Int c = content();
    if (c == 1)
        return *this;
    std::vector<Int> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        out[i] = coeffs_[i] / c;
    return BetaPoly(std::move(out));
}

Rational BetaPoly::evaluate(const Rational& beta) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * beta + Rational(*it);
    return acc;
}

BetaPoly BetaPoly::pow(int k) const {
    BetaPoly result = BetaPoly::constant(1);
    for (int i = 0; i < k; ++i)
        result = result * *this;
    return result;
}

BetaPoly operator+(const BetaPoly& a, const BetaPoly& b) {
    std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
        out[i] += b.coeffs_[i];
    return BetaPoly(std::move(out));
}

BetaPoly operator-(const BetaPoly& a, const BetaPoly& b) {
    return a + (-b);
}

BetaPoly BetaPoly::operator-() const {
    std::vector<Int> out(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        out[i] = -coeffs_[i];
    return BetaPoly(std::move(out));
}

BetaPoly operator*(const BetaPoly& a, const BetaPoly& b) {
    if (a.is_zero() || b.is_zero())
        return BetaPoly();
    std::vector<Int> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return BetaPoly(std::move(out));
}

std::string BetaPoly::str() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Int& c = coeffs_[i];
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
                os << mag << "*";
            os << "b";
            if (i > 1)
                os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a reduced mod b,
// all arithmetic over the integers.
BetaPoly pseudo_rem(const BetaPoly& a, const BetaPoly& b) {
    std::vector<Int> r = a.coeffs();
    const std::vector<Int>& d = b.coeffs();
    const Int& lead = d.back();
    int shift = static_cast<int>(r.size()) - static_cast<int>(d.size());
    while (shift >= 0 && !r.empty()) {
        Int top = r.back();
        for (Int& c : r)
            c *= lead;
        // subtract top * b * x^shift; the leading entry cancels exactly
        for (std::size_t i = 0; i < d.size(); ++i)
            r[static_cast<std::size_t>(shift) + i] -= top * d[i];
        while (!r.empty() && r.back() == 0)
            r.pop_back();
        shift = static_cast<int>(r.size()) - static_cast<int>(d.size());
    }
    return BetaPoly(std::move(r));
}

BetaPoly with_positive_leading(BetaPoly p) {
    if (!p.is_zero() && p.leading() < 0)
        return -p;
    return p;
}

} // namespace

BetaPoly poly_gcd(const BetaPoly& a, const BetaPoly& b) {
    BetaPoly u = a.primitive_part();
    BetaPoly v = b.primitive_part();
    if (u.is_zero())
        return with_positive_leading(v);
    if (v.is_zero())
        return with_positive_leading(u);
    if (u.degree() < v.degree())
        std::swap(u, v);
    while (!v.is_zero()) {
        BetaPoly r = pseudo_rem(u, v).primitive_part();
        u = std::move(v);
        v = std::move(r);
    }
    return with_positive_leading(u);
}

BetaPoly poly_divexact(const BetaPoly& a, const BetaPoly& b) {
    if (b.is_zero())
        throw InternalError("polynomial division by zero");
    if (a.is_zero())
        return BetaPoly();
    std::vector<Int> r = a.coeffs();
    const std::vector<Int>& d = b.coeffs();
    if (r.size() < d.size())
        throw InternalError("inexact polynomial division");
    std::vector<Int> q(r.size() - d.size() + 1, 0);
    for (int shift = static_cast<int>(q.size()) - 1; shift >= 0; --shift) {
        std::size_t top = static_cast<std::size_t>(shift) + d.size() - 1;
        if (r[top] == 0)
            continue;
        if (r[top] % d.back() != 0)
            throw InternalError("inexact polynomial division");
        Int f = r[top] / d.back();
        q[static_cast<std::size_t>(shift)] = f;
        for (std::size_t i = 0; i < d.size(); ++i)
            r[static_cast<std::size_t>(shift) + i] -= f * d[i];
    }
    for (const Int& c : r)
        if (c != 0)
            throw InternalError("inexact polynomial division");
    return BetaPoly(std::move(q));
}

BetaRational::BetaRational(Rational scale, BetaPoly num, BetaPoly den) {
    if (den.is_zero())
        throw InternalError("rational function with zero denominator");
    if (scale == 0 || num.is_zero()) {
        scale_ = 0;
        num_ = BetaPoly();
        den_ = BetaPoly::constant(1);
        return;
    }
    if (num.degree() > 0 && den.degree() > 0) {
        BetaPoly g = poly_gcd(num, den);
        if (g.degree() > 0) {
            num = poly_divexact(num, g);
            den = poly_divexact(den, g);
        }
    }
    Int cn = num.content();
    Int cd = den.content();
    num = num.primitive_part();
    den = den.primitive_part();
    if (num.leading() < 0) {
        num = -num;
        scale = -scale;
    }
    if (den.leading() < 0) {
        den = -den;
        scale = -scale;
    }
    scale_ = scale * Rational(cn, cd);
    num_ = std::move(num);
    den_ = std::move(den);
}

BetaRational BetaRational::integer(Int v) {
    return rational(Rational(std::move(v)));
}

BetaRational BetaRational::rational(Rational v) {
    BetaRational r;
    if (v == 0)
        return r;
    r.scale_ = std::move(v);
    r.num_ = BetaPoly::constant(1);
    r.den_ = BetaPoly::constant(1);
    return r;
}

BetaRational BetaRational::from_poly(BetaPoly p) {
    return BetaRational(1, std::move(p), BetaPoly::constant(1));
}

BetaRational BetaRational::beta_power(int k) {
    return from_poly(BetaPoly::beta_power(k));
}

bool BetaRational::is_one() const {
    return scale_ == 1 && num_.is_one() && den_.is_one();
}

BetaRational BetaRational::operator+(const BetaRational& o) const {
    if (is_zero())
        return o;
    if (o.is_zero())
        return *this;
    // bring both scales over a common integer denominator
    const Int an = boost::multiprecision::numerator(scale_);
    const Int ad = boost::multiprecision::denominator(scale_);
    const Int bn = boost::multiprecision::numerator(o.scale_);
    const Int bd = boost::multiprecision::denominator(o.scale_);
    if (den_ == o.den_) {
        BetaPoly num = BetaPoly::constant(an * bd) * num_ +
                       BetaPoly::constant(bn * ad) * o.num_;
        return BetaRational(Rational(1, ad * bd), std::move(num), den_);
    }
    BetaPoly num = BetaPoly::constant(an * bd) * num_ * o.den_ +
                   BetaPoly::constant(bn * ad) * o.num_ * den_;
    BetaPoly den = den_ * o.den_;
    return BetaRational(Rational(1, ad * bd), std::move(num), std::move(den));
}

BetaRational BetaRational::operator-(const BetaRational& o) const {
    return *this + (-o);
}

BetaRational BetaRational::operator*(const BetaRational& o) const {
    if (is_zero() || o.is_zero())
        return zero();
    return BetaRational(scale_ * o.scale_, num_ * o.num_, den_ * o.den_);
}

BetaRational BetaRational::operator-() const {
    BetaRational r = *this;
    r.scale_ = -r.scale_;
    return r;
}

BetaRational BetaRational::scaled(const Rational& r) const {
    if (r == 0 || is_zero())
        return zero();
    BetaRational out = *this;
    out.scale_ *= r;
    return out;
}

BetaRational BetaRational::inverse() const {
    if (is_zero())
        throw DomainError("inverse of zero rational function");
    Int n = boost::multiprecision::numerator(scale_);
    Int d = boost::multiprecision::denominator(scale_);
    if (n < 0) { // cpp_rational rejects negative denominators
        n = -n;
        d = -d;
    }
    return BetaRational(Rational(std::move(d), std::move(n)), den_, num_);
}

Rational BetaRational::evaluate(const Rational& beta) const {
    if (is_zero())
        return 0;
    Rational d = den_.evaluate(beta);
    if (d == 0)
        throw PoleError("rational function has a pole at beta = " + beta.str());
    return scale_ * num_.evaluate(beta) / d;
}

std::string BetaRational::str() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    os << scale_.str();
    if (!num_.is_one())
        os << "*(" << num_.str() << ")";
    if (!den_.is_one())
        os << "/(" << den_.str() << ")";
    return os.str();
}

std::string QuarterOrder::str() const {
    std::ostringstream os;
    if (units % 4 == 0)
        os << units / 4;
    else if (units % 2 == 0)
        os << units / 2 << "/2";
    else
        os << units << "/4";
    return os.str();
}

} // namespace skexp
