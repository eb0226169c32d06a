#include "valkey/parse.hpp"

#include <cctype>

namespace valkey {

ParseError::ParseError(std::string_view text, std::size_t pos, const std::string &what)
    : InputError("parse error at position " + std::to_string(pos) + " in \"" + std::string(text) +
                 "\": " + what),
      pos_(pos)
{
}

namespace {

std::uint32_t parse_prime(std::string_view full, std::string_view digits, std::size_t offset)
{
    if (digits.empty() || digits.size() > 9)
        throw ParseError(full, offset, "expected a prime");
    for (std::size_t i = 0; i < digits.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(digits[i])))
            throw ParseError(full, offset + i, "expected a digit");
    return static_cast<std::uint32_t>(std::stoul(std::string(digits)));
}

class PolyParser {
public:
    PolyParser(const ValuedField &F, std::string_view s) : F_(F), s_(s) {}

    Poly run()
    {
        Poly p = expression();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &what) const { throw ParseError(s_, pos_, what); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_atom()
    {
        skip();
        if (pos_ >= s_.size())
            return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 't' || c == '(';
    }

    Poly expression()
    {
        skip();
        if (pos_ >= s_.size())
            fail("empty expression");
        bool negate = false;
        if (peek('-') || peek('+')) {
            negate = s_[pos_] == '-';
            ++pos_;
        }
        Poly acc = term();
        if (negate)
            acc = -acc;
        while (peek('+') || peek('-')) {
            const bool minus = s_[pos_] == '-';
            ++pos_;
            Poly t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    Poly term()
    {
        Poly acc = factor();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (peek('/')) {
                ++pos_;
                const std::size_t at = pos_;
                Poly d = factor();
                if (d.degree() != 0) {
                    pos_ = at;
                    fail(d.is_zero() ? "division by zero" : "division by a non-constant polynomial");
                }
                acc = (F_.one() / d.lead()) * acc;
            } else if (starts_atom()) {
                acc = acc * factor();
            } else {
                return acc;
            }
        }
    }

    Poly factor()
    {
        Poly base = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected a natural exponent");
            if (pos_ - start > 4)
                fail("exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    Poly atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expression();
            if (!peek(')'))
                fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (c == 'x') {
            ++pos_;
            return Poly::x(F_);
        }
        if (c == 't') {
            if (F_.kind() != FieldKind::TSeries)
                fail("'t' is only valid over fpt fields");
            ++pos_;
            return Poly::constant(F_, F_.uniformizer_power(1));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            mpz_class n(std::string(s_.substr(start, pos_ - start)));
            return Poly::constant(F_, F_.from_int(n));
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    const ValuedField &F_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

ValuedField parse_field(std::string_view s)
{
    auto colon = s.find(':');
    if (colon == std::string_view::npos)
        throw ParseError(s, 0, "expected qp:<prime> or fpt:<prime>");
    auto kind = s.substr(0, colon);
    auto prime = parse_prime(s, s.substr(colon + 1), colon + 1);
    try {
        if (kind == "qp")
            return ValuedField::padic(prime);
        if (kind == "fpt")
            return ValuedField::tseries(prime);
    } catch (const InputError &e) {
        throw ParseError(s, colon + 1, e.what());
    }
    throw ParseError(s, 0, "unknown field kind '" + std::string(kind) + "'");
}

ExtValue parse_value(std::string_view s)
{
    if (s == "inf")
        return ExtValue::inf();
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-')
        ++i;
    const std::size_t digits_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
    if (i == digits_start)
        throw ParseError(s, i, "expected a rational value or 'inf'");
    if (i < s.size() && s[i] == '/') {
        const std::size_t den_start = ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == den_start)
            throw ParseError(s, i, "expected denominator digits");
    }
    if (i != s.size())
        throw ParseError(s, i, "trailing characters in value");
    const std::string text(s);
    const auto slash = text.find('/');
    mpz_class num(text.substr(0, slash)), den(1);
    if (slash != std::string::npos)
        den = mpz_class(text.substr(slash + 1));
    if (den == 0)
        throw ParseError(s, 0, "zero denominator");
    return ExtValue(mpq_class(num, den));
}

Poly parse_poly(const ValuedField &F, std::string_view s)
{
    try {
        return PolyParser(F, s).run();
    } catch (const ParseError &) {
        throw;
    } catch (const std::exception &e) {
        throw ParseError(s, 0, e.what());
    }
}

FieldElem parse_elem(const ValuedField &F, std::string_view s)
{
    Poly p = parse_poly(F, s);
    if (p.degree() > 0)
        throw ParseError(s, s.find('x'), "expected a constant, found a polynomial in x");
    return p.is_zero() ? F.zero() : p.lead();
}

std::vector<std::string> split_top_level(std::string_view s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (s[i] == sep && depth == 0) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.emplace_back(s.substr(start));
    return out;
}

} // namespace valkey
