#pragma once

// Truncated power and Laurent series in one variable over F.

#include <map>
#include <optional>
#include <string>

#include "ltp/padic.hpp"

namespace ltp {

/// Series sum_k c_k T^k. Either an exact Laurent polynomial (no order) or a
/// series known modulo T^(order+1). Only coefficients that are not the exact
/// zero are stored; inexact zeros are kept because they carry precision.
class TruncSeries {
public:
    TruncSeries() = default;
    /// Zero series; exact unless an order is given.
    explicit TruncSeries(FieldPtr field, std::optional<long> order = std::nullopt);

    static TruncSeries constant(const FElement& c, std::optional<long> order = std::nullopt);
    static TruncSeries monomial(const FElement& c, long k, std::optional<long> order = std::nullopt);
    /// The variable T itself.
    static TruncSeries variable(const FieldPtr& field, std::optional<long> order = std::nullopt);

    const FieldPtr& field() const { return field_; }
    std::optional<long> order() const { return order_; }
    bool is_exact() const { return !order_.has_value(); }
    const std::map<long, FElement>& coeffs() const { return coeffs_; }

    /// Coefficient of T^k (exact zero when absent). Throws TruncationOverflow
    /// past the order.
    FElement coeff(long k) const;
    void set(long k, const FElement& c);

    /// Smallest index that may carry a nonzero coefficient; order+1 (or
    /// kExactPrec for the exact zero) when there is none.
    long ord() const;
    /// Lowest index in use, never above 0.
    long kmin() const;
    /// Largest stored index, or ord()-1 when empty.
    long max_index() const;
    bool is_exact_zero() const { return coeffs_.empty() && !order_; }
    /// Every known coefficient is zero at its precision.
    bool is_zero() const;

    TruncSeries truncated(long order) const;
    TruncSeries truncated(std::optional<long> order) const { return order ? truncated(*order) : *this; }
    /// Drop every coefficient to absolute precision at most `abs_prec`.
    TruncSeries prec_capped(long abs_prec) const;
    /// Pointwise precision cap, coefficient k capped at caps(k).
    template <class Fn>
    TruncSeries prec_capped_by(Fn caps) const {
        TruncSeries r(*this);
        for (auto& [k, c] : r.coeffs_) c = c.truncated(caps(k));
        return r;
    }
    /// Minimum absolute precision over stored coefficients.
    long min_abs_prec() const;

    TruncSeries operator-() const;
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const FElement& c, const TruncSeries& a);
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    /// Multiply by T^k.
    TruncSeries shift(long k) const;
    TruncSeries pow(long n, std::optional<long> cap = std::nullopt) const;
    /// Multiplicative inverse; needs a leading coefficient of known valuation.
    /// Exact inputs are expanded up to order `cap`.
    TruncSeries inverse(long cap) const;
    /// Exact quotient of polynomials (remainder must vanish).
    TruncSeries exact_div(const TruncSeries& d) const;
    /// d/dT.
    TruncSeries derivative() const;
    /// sigma^k applied to every coefficient.
    TruncSeries frobenius_pow(long k) const;

    /// f(g) for g(0) exactly zero. Negative powers of T in f require the
    /// linear coefficient of g to be a unit. `cap` bounds the order of the
    /// result (mandatory when f has negative powers).
    TruncSeries compose(const TruncSeries& g, std::optional<long> cap = std::nullopt) const;

    /// Difference is zero at the available precision up to the common order.
    bool equals(const TruncSeries& o) const;
    /// Same order, same support, identical coefficients.
    bool identical(const TruncSeries& o) const;

    std::string to_string() const;

private:
    FieldPtr field_;
    std::optional<long> order_;
    std::map<long, FElement> coeffs_;
};

inline std::optional<long> min_order(std::optional<long> a, std::optional<long> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace ltp
