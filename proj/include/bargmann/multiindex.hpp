#ifndef BARGMANN_MULTIINDEX_HPP
#define BARGMANN_MULTIINDEX_HPP

#include "scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bargmann {

/// Exponent vector alpha = (alpha_1, ..., alpha_n) with nonnegative entries.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t dimension) : e_(dimension, 0) {}
    MultiIndex(std::initializer_list<unsigned> entries) : e_(entries) {}
    explicit MultiIndex(std::vector<unsigned> entries) : e_(std::move(entries)) {}

    static MultiIndex unit(std::size_t dimension, std::size_t j, unsigned power = 1)
    {
        MultiIndex m(dimension);
        m.e_.at(j) = power;
        return m;
    }

    std::size_t dimension() const noexcept { return e_.size(); }
    unsigned operator[](std::size_t j) const { return e_[j]; }
    unsigned& operator[](std::size_t j) { return e_[j]; }
    const std::vector<unsigned>& entries() const noexcept { return e_; }

    /// |alpha|
    unsigned degree() const { return std::accumulate(e_.begin(), e_.end(), 0u); }

    bool is_zero() const
    {
        return std::all_of(e_.begin(), e_.end(), [](unsigned v) { return v == 0; });
    }

    /// alpha! = alpha_1! ... alpha_n!
    Integer factorial() const
    {
        Integer r = 1;
        for (unsigned v : e_)
            r *= bargmann::factorial(v);
        return r;
    }

    /// Componentwise order.
    bool divides(const MultiIndex& o) const
    {
        check_dim(o);
        for (std::size_t j = 0; j < e_.size(); ++j)
            if (e_[j] > o.e_[j])
                return false;
        return true;
    }

    MultiIndex& operator+=(const MultiIndex& o)
    {
        check_dim(o);
        for (std::size_t j = 0; j < e_.size(); ++j)
            e_[j] += o.e_[j];
        return *this;
    }

    /// Defined only when o <= *this componentwise.
    MultiIndex& operator-=(const MultiIndex& o)
    {
        if (!o.divides(*this))
            throw std::domain_error("multiindex difference undefined: subtrahend not <= minuend");
        for (std::size_t j = 0; j < e_.size(); ++j)
            e_[j] -= o.e_[j];
        return *this;
    }

    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    /// Lexicographic comparison of the raw entries.
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.e_ <=> b.e_; }

    std::string str() const
    {
        std::string s = "(";
        for (std::size_t j = 0; j < e_.size(); ++j) {
            if (j)
                s += ",";
            s += std::to_string(e_[j]);
        }
        return s + ")";
    }

private:
    void check_dim(const MultiIndex& o) const
    {
        if (o.e_.size() != e_.size())
            throw DimensionError("multiindex dimension mismatch");
    }

    std::vector<unsigned> e_;
};

inline Integer multiindex_factorial(const MultiIndex& alpha) { return alpha.factorial(); }

/// All multiindices of the given dimension with |alpha| == degree, in descending lex order.
inline std::vector<MultiIndex> multiindices_of_degree(std::size_t dimension, unsigned degree)
{
    std::vector<MultiIndex> out;
    if (dimension == 0) {
        if (degree == 0)
            out.emplace_back(0);
        return out;
    }
    MultiIndex cur(dimension);
    auto rec = [&](auto&& self, std::size_t j, unsigned remaining) -> void {
        if (j + 1 == dimension) {
            cur[j] = remaining;
            out.push_back(cur);
            return;
        }
        for (unsigned v = remaining + 1; v-- > 0;) {
            cur[j] = v;
            self(self, j + 1, remaining - v);
        }
    };
    rec(rec, 0, degree);
    return out;
}

/// All multiindices with |alpha| <= max_degree, graded ascending.
inline std::vector<MultiIndex> multiindices_up_to(std::size_t dimension, unsigned max_degree)
{
    std::vector<MultiIndex> out;
    for (unsigned d = 0; d <= max_degree; ++d) {
        auto layer = multiindices_of_degree(dimension, d);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

/// Every beta with beta <= bound componentwise, in lex order.
inline std::vector<MultiIndex> multiindices_below(const MultiIndex& bound)
{
    std::vector<MultiIndex> out;
    MultiIndex cur(bound.dimension());
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == bound.dimension()) {
            out.push_back(cur);
            return;
        }
        for (unsigned v = 0; v <= bound[j]; ++v) {
            cur[j] = v;
            self(self, j + 1);
        }
    };
    rec(rec, 0);
    return out;
}

/// Graded order: total degree first, then descending lex (so z1 precedes z2).
struct GradedOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const
    {
        const unsigned da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        return b < a;
    }
};

}  // namespace bargmann

#endif  // BARGMANN_MULTIINDEX_HPP
