#include "skexp/parse.hpp"

#include "skexp/errors.hpp"

#include <cctype>
#include <sstream>

namespace skexp {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    std::size_t column() const { return pos_ + 1; }
    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "' at column " +
                                 std::to_string(column()),
                             column());
        ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
            ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == digits)
            throw ParseError("expected an integer at column " + std::to_string(start + 1),
                             start + 1);
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

FactorPair parse_pair(Cursor& cur) {
    std::size_t col = cur.column();
    cur.expect('[');
    long a = cur.parse_int();
    cur.expect(',');
    long b = cur.parse_int();
    cur.expect(']');
    if (a < 1 || b < 1 || a >= b)
        throw ParseError("pair indices must satisfy 1 <= first < second at column " +
                             std::to_string(col),
                         col);
    return {static_cast<int>(a), static_cast<int>(b), false};
}

Monomial parse_pair_list(Cursor& cur) {
    cur.expect('[');
    std::vector<FactorPair> factors;
    factors.push_back(parse_pair(cur));
    while (cur.accept(','))
        factors.push_back(parse_pair(cur));
    cur.expect(']');
    return Monomial(std::move(factors));
}

} // namespace

Monomial parse_monomial(std::string_view text) {
    Cursor cur(text);
    cur.skip_ws();
    // Probe the nesting depth to tolerate one redundant outer level.
    std::size_t depth = 0;
    {
        Cursor probe(text);
        while (probe.accept('['))
            ++depth;
    }
    if (depth < 2)
        throw ParseError("expected a bracketed list of pairs at column " +
                             std::to_string(cur.column()),
                         cur.column());
    Monomial mono;
    if (depth >= 3) {
        cur.expect('[');
        mono = parse_pair_list(cur);
        cur.expect(']');
    } else {
        mono = parse_pair_list(cur);
    }
    if (!cur.at_end())
        throw ParseError("unexpected trailing input at column " +
                             std::to_string(cur.column()),
                         cur.column());
    if (mono.empty())
        throw ParseError("monomial must contain at least one pair", 1);
    return mono;
}

std::string render_monomial(const Monomial& mono) {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const FactorPair& f : mono.factors()) {
        if (!first)
            os << ",";
        first = false;
        os << "[" << f.a << "," << f.b << "]";
    }
    os << "]";
    return os.str();
}

Rational parse_rational(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw ParseError(why + " in rational literal", pos + 1);
    };
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    auto read_digits = [&]() {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start)
            fail("expected digits");
        return std::string(text.substr(start, pos - start));
    };
    Int num(read_digits());
    Int den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = Int(read_digits());
        if (den == 0)
            fail("zero denominator");
    } else if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::string frac = read_digits();
        for (char c : frac) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
    }
    if (pos != text.size())
        fail("unexpected character");
    Rational r(num, den);
    return negative ? -r : r;
}

std::string decimal_string(const Rational& value, int digits) {
    Int pow10 = 1;
    for (int i = 0; i < digits; ++i)
        pow10 *= 10;
    const Int num = boost::multiprecision::numerator(value);
    const Int den = boost::multiprecision::denominator(value);
    Int scaled_num = boost::multiprecision::abs(num) * pow10 * 2 + den;
    Int scaled = scaled_num / (den * 2); // round half away from zero
    std::string body = scaled.str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    body.insert(body.size() - static_cast<std::size_t>(digits), 1, '.');
    while (body.back() == '0')
        body.pop_back();
    if (body.back() == '.')
        body.pop_back();
    if (num < 0 && scaled != 0)
        body.insert(0, 1, '-');
    return body;
}

} // namespace skexp
