#ifndef BARGMANN_PARSE_HPP
#define BARGMANN_PARSE_HPP

#include "polynomial.hpp"
#include "scalar.hpp"
#include "weyl.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bargmann {

// Operator DSL
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := ('+'|'-') factor | primary ('^' INT)*
//   primary:= INT ['/' INT] | 'i' | 'z'INT | 'd'INT | '(' expr ')'
// Whitespace is insignificant. Products are composed in the Weyl algebra, so
// `d1*z1` denotes 1 + z1*d1.

enum class Alphabet { operators, polynomials, symbols };

namespace detail {

struct Token {
    enum Kind { number, imaginary, zvar, dvar, plus, minus, star, caret, lparen, rparen, end } kind;
    std::size_t pos;
    std::string text;   // number literal
    std::size_t index;  // variable index, 1-based
};

inline std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        return j;
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = digits(i);
            std::size_t k = j;
            while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k])))
                ++k;
            if (k < s.size() && s[k] == '/') {
                std::size_t m = k + 1;
                while (m < s.size() && std::isspace(static_cast<unsigned char>(s[m])))
                    ++m;
                const std::size_t e = digits(m);
                if (e == m)
                    throw ParseError("expected denominator after '/'", m);
                std::string lit(s.substr(i, j - i));
                lit += "/";
                lit += s.substr(m, e - m);
                if (s.substr(m, e - m).find_first_not_of('0') == std::string_view::npos)
                    throw ParseError("zero denominator", m);
                out.push_back({Token::number, start, lit, 0});
                i = e;
            } else {
                out.push_back({Token::number, start, std::string(s.substr(i, j - i)), 0});
                i = j;
            }
            continue;
        }
        if (c == 'z' || c == 'd') {
            const std::size_t j = digits(i + 1);
            if (j == i + 1)
                throw ParseError(std::string("expected variable index after '") + c + "'", i + 1);
            const std::size_t idx = std::stoul(std::string(s.substr(i + 1, j - i - 1)));
            if (idx == 0)
                throw ParseError("variable indices start at 1", i + 1);
            out.push_back({c == 'z' ? Token::zvar : Token::dvar, start, {}, idx});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
        case 'i': k = Token::imaginary; break;
        case '+': k = Token::plus; break;
        case '-': k = Token::minus; break;
        case '*': k = Token::star; break;
        case '^': k = Token::caret; break;
        case '(': k = Token::lparen; break;
        case ')': k = Token::rparen; break;
        default: throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
        }
        out.push_back({k, start, {}, 0});
        ++i;
    }
    out.push_back({Token::end, s.size(), {}, 0});
    return out;
}

class OperatorParser {
public:
    OperatorParser(std::string_view text, std::size_t n, Alphabet alphabet)
        : tokens_(tokenize(text)), n_(n), alphabet_(alphabet)
    {
    }

    WeylOp run()
    {
        if (tokens_.front().kind == Token::end)
            throw ParseError("empty expression", 0);
        WeylOp r = expr();
        if (peek().kind != Token::end)
            throw ParseError("unexpected token", peek().pos);
        return r;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    WeylOp expr()
    {
        WeylOp acc = term();
        while (peek().kind == Token::plus || peek().kind == Token::minus) {
            const bool minus = next().kind == Token::minus;
            WeylOp t = term();
            if (minus)
                acc -= t;
            else
                acc += t;
        }
        return acc;
    }

    WeylOp term()
    {
        WeylOp acc = factor();
        while (peek().kind == Token::star) {
            next();
            acc = multiply(acc, factor());
        }
        return acc;
    }

    WeylOp factor()
    {
        if (peek().kind == Token::minus) {
            next();
            return -factor();
        }
        if (peek().kind == Token::plus) {
            next();
            return factor();
        }
        WeylOp base = primary();
        while (peek().kind == Token::caret) {
            next();
            const Token& t = next();
            if (t.kind != Token::number || t.text.find('/') != std::string::npos)
                throw ParseError("expected nonnegative integer exponent", t.pos);
            if (t.text.size() > 4)
                throw ParseError("exponent too large", t.pos);
            const unsigned e = static_cast<unsigned>(std::stoul(t.text));
            WeylOp p = WeylOp::identity(n_);
            for (unsigned k = 0; k < e; ++k)
                p = multiply(p, base);
            base = std::move(p);
        }
        return base;
    }

    WeylOp primary()
    {
        const Token& t = next();
        switch (t.kind) {
        case Token::number:
            return WeylOp::scalar(n_, GaussianRational(parse_rational(t.text)));
        case Token::imaginary:
            return WeylOp::scalar(n_, GaussianRational::i());
        case Token::zvar:
        case Token::dvar: {
            const bool is_z = t.kind == Token::zvar;
            if (is_z && alphabet_ == Alphabet::symbols)
                throw ParseError("multiplication variable not allowed in a symbol (use d1, d2, ...)", t.pos);
            if (!is_z && alphabet_ == Alphabet::polynomials)
                throw ParseError("derivative not allowed in a polynomial", t.pos);
            if (t.index > n_)
                throw ParseError("variable index " + std::to_string(t.index) + " exceeds dimension " +
                                     std::to_string(n_),
                                 t.pos);
            return is_z ? WeylOp::z(n_, t.index - 1) : WeylOp::d(n_, t.index - 1);
        }
        case Token::lparen: {
            WeylOp inner = expr();
            if (peek().kind != Token::rparen)
                throw ParseError("expected ')'", peek().pos);
            next();
            return inner;
        }
        case Token::end:
            throw ParseError("unexpected end of expression", t.pos);
        default:
            throw ParseError("unexpected token", t.pos);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t n_;
    Alphabet alphabet_;
};

}  // namespace detail

/// Largest variable index (z or d) mentioned in the text; 0 if none.
inline std::size_t max_variable_index(std::string_view text)
{
    std::size_t m = 0;
    for (const auto& t : detail::tokenize(text))
        if (t.kind == detail::Token::zvar || t.kind == detail::Token::dvar)
            m = std::max(m, t.index);
    return m;
}

inline WeylOp parse_operator(std::string_view text, std::size_t n)
{
    return detail::OperatorParser(text, n, Alphabet::operators).run();
}

/// A polynomial in z1..zn; derivatives are rejected.
inline FockPoly parse_polynomial(std::string_view text, std::size_t n)
{
    const WeylOp op = detail::OperatorParser(text, n, Alphabet::polynomials).run();
    FockPoly p(n);
    for (const auto& [k, c] : op.terms())
        p.add_term(k.z, c);
    return p;
}

/// A constant-coefficient differential operator written in d1..dn, returned as its symbol.
inline SymbolPoly parse_symbol(std::string_view text, std::size_t n)
{
    const WeylOp op = detail::OperatorParser(text, n, Alphabet::symbols).run();
    SymbolPoly p(n);
    for (const auto& [k, c] : op.terms())
        p.add_term(k.d, c);
    return p;
}

}  // namespace bargmann

#endif  // BARGMANN_PARSE_HPP
