#ifndef BARGMANN_SCALAR_HPP
#define BARGMANN_SCALAR_HPP

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace bargmann {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised by every text front end; carries the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Rational parse_rational(std::string_view text)
{
    Rational r;
    if (text.empty() || r.set_str(std::string(text), 10) != 0)
        throw ParseError("malformed rational '" + std::string(text) + "'", 0);
    if (r.get_den() == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Exact complex number with rational real and imaginary parts (the field Q(i)).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& real() const noexcept { return re_; }
    const Rational& imag() const noexcept { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    /// |x|^2 = x * conj(x), always a nonnegative rational.
    Rational norm_sq() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o)
    {
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o)
    {
        if (o.is_zero())
            throw std::domain_error("division by zero");
        const Rational d = o.norm_sq();
        *this *= o.conj();
        re_ /= d;
        im_ /= d;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Canonical text: `a/b + c/d*i`, with absent parts omitted (`0`, `-i`, `3/2*i`).
    std::string str() const
    {
        if (is_zero())
            return "0";
        std::string out;
        if (sgn(re_) != 0)
            out = re_.get_str();
        if (sgn(im_) != 0) {
            Rational mag = abs(im_);
            std::string imag = (mag == 1) ? std::string("i") : mag.get_str() + "*i";
            if (out.empty())
                out = (sgn(im_) < 0 ? "-" : "") + imag;
            else
                out += (sgn(im_) < 0 ? " - " : " + ") + imag;
        }
        return out;
    }

    static GaussianRational parse(std::string_view text);

private:
    Rational re_{0};
    Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.str(); }

namespace detail {

// Lexes `[sign] part [(+|-) part]` where part is `q`, `q*i`, `i`.
class ScalarLexer {
public:
    explicit ScalarLexer(std::string_view s) : s_(s) {}

    GaussianRational parse_all()
    {
        skip_ws();
        if (pos_ == s_.size())
            throw ParseError("empty scalar", pos_);
        GaussianRational value = parse_signed_part(true);
        skip_ws();
        if (pos_ < s_.size()) {
            value += parse_signed_part(false);
            skip_ws();
        }
        if (pos_ != s_.size())
            throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return value;
    }

private:
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    GaussianRational parse_signed_part(bool leading)
    {
        int sign = 1;
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            sign = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
        } else if (!leading) {
            throw ParseError("expected '+' or '-'", pos_);
        }
        skip_ws();
        GaussianRational part = parse_part();
        return sign < 0 ? -part : part;
    }

    GaussianRational parse_part()
    {
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return GaussianRational::i();
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected number or 'i'", pos_);
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            const std::size_t den = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (den == pos_)
                throw ParseError("expected denominator", pos_);
        }
        Rational q;
        try {
            q = parse_rational(s_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), start);
        }
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != 'i')
                throw ParseError("expected 'i' after '*'", pos_);
            ++pos_;
            return {Rational(0), q};
        }
        return GaussianRational(q);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline GaussianRational GaussianRational::parse(std::string_view text)
{
    return detail::ScalarLexer(text).parse_all();
}

inline Integer factorial(unsigned long k)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    if (k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// n! / (n-k)!, the falling factorial; zero when k > n.
inline Integer falling_factorial(unsigned long n, unsigned long k)
{
    if (k > n)
        return 0;
    Integer r = 1;
    for (unsigned long t = n - k + 1; t <= n; ++t)
        r *= t;
    return r;
}

}  // namespace bargmann

#endif  // BARGMANN_SCALAR_HPP
