#pragma once

// Truncated series in variables Y_0, ..., Y_(n-1) with truncation by total
// degree. Only Y_0 may carry negative exponents.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltp/series.hpp"

namespace ltp {

using Exponent = std::vector<long>;

long total_degree(const Exponent& e);

class MultiSeries {
public:
    MultiSeries() = default;
    MultiSeries(FieldPtr field, int nvars, std::optional<long> order = std::nullopt);

    static MultiSeries constant(const FElement& c, int nvars, std::optional<long> order = std::nullopt);
    static MultiSeries monomial(const FElement& c, const Exponent& e, std::optional<long> order = std::nullopt);
    static MultiSeries variable(const FieldPtr& field, int nvars, int j, std::optional<long> order = std::nullopt);
    /// A one-variable series placed in variable j.
    static MultiSeries embed(const TruncSeries& s, int nvars, int j);

    const FieldPtr& field() const { return field_; }
    int nvars() const { return nvars_; }
    std::optional<long> order() const { return order_; }
    bool is_exact() const { return !order_.has_value(); }
    const std::map<Exponent, FElement>& terms() const { return terms_; }

    FElement coeff(const Exponent& e) const;
    void set(const Exponent& e, const FElement& c);

    /// Smallest total degree that may carry a nonzero term.
    long ord() const;
    bool is_exact_zero() const { return terms_.empty() && !order_; }
    bool is_zero() const;
    /// Largest exponent of variable j among stored terms (0 when absent).
    long max_exp(int j) const;
    /// Smallest exponent of Y_0 among stored terms (0 when absent).
    long min_exp0() const;
    /// True when no stored term involves a variable other than Y_0.
    bool depends_only_on_y0() const;

    MultiSeries truncated(long order) const;
    MultiSeries truncated(std::optional<long> order) const { return order ? truncated(*order) : *this; }
    MultiSeries prec_capped(long abs_prec) const;
    long min_abs_prec() const;

    MultiSeries operator-() const;
    friend MultiSeries operator+(const MultiSeries& a, const MultiSeries& b);
    friend MultiSeries operator-(const MultiSeries& a, const MultiSeries& b);
    friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
    friend MultiSeries operator*(const FElement& c, const MultiSeries& a);
    MultiSeries& operator+=(const MultiSeries& o) { return *this = *this + o; }
    MultiSeries& operator-=(const MultiSeries& o) { return *this = *this - o; }
    MultiSeries& operator*=(const MultiSeries& o) { return *this = *this * o; }

    MultiSeries pow(long n, std::optional<long> cap = std::nullopt) const;
    /// Formal partial derivative with respect to Y_j.
    MultiSeries partial(int j) const;
    /// Termwise antiderivative in Y_j (Y_j^i -> Y_j^(i+1)/(i+1)).
    MultiSeries integral(int j) const;
    /// sigma^k on every coefficient.
    MultiSeries frobenius_pow(long k) const;
    /// Inverse of a series with invertible constant term, up to order `cap`.
    MultiSeries inverse(long cap) const;

    /// Replace each Y_j by the one-variable series subs[j](Y_j). Every
    /// substitution must vanish exactly at 0 and have a nonzero linear term
    /// (a unit one for Y_0 when negative exponents occur).
    MultiSeries substitute(const std::vector<TruncSeries>& subs, std::optional<long> cap = std::nullopt) const;

    /// Coefficient series in Y_0 of the monomial prod_{j>=1} Y_j^(e_j).
    TruncSeries y0_slice(const Exponent& rest) const;

    bool equals(const MultiSeries& o) const;
    bool identical(const MultiSeries& o) const;
    std::string to_string() const;

private:
    FieldPtr field_;
    int nvars_ = 0;
    std::optional<long> order_;
    std::map<Exponent, FElement> terms_;
};

} // namespace ltp
