#pragma once

// The fields F_k = F(u_k) presented as F[X]/(Q_k), with evaluation of
// polynomials in u at the torsion point u_k.

#include <memory>
#include <vector>

#include "ltp/formal_group.hpp"

namespace ltp {

class TorsionElement;

class TorsionField {
public:
    /// Level k >= 1; the modulus is lt.q_poly(k), checked to be Eisenstein.
    TorsionField(const LubinTate& lt, long k);

    long level() const { return level_; }
    long degree() const { return static_cast<long>(mod_.size()); }
    const FieldPtr& base() const { return field_; }
    const TruncSeries& modulus() const { return modulus_; }

    TorsionElement zero() const;
    TorsionElement one() const;
    /// The class of X, i.e. u_k.
    TorsionElement generator() const;
    TorsionElement from_coeffs(std::vector<FElement> c) const;
    /// f(u_k) for an exact Laurent polynomial f.
    TorsionElement eval(const TruncSeries& f) const;

private:
    friend class TorsionElement;
    friend TorsionElement operator*(const TorsionElement& a, const TorsionElement& b);
    std::vector<FElement> reduce(std::vector<FElement> c) const;
    std::vector<FElement> mul_x(const std::vector<FElement>& c) const;
    std::vector<FElement> div_x(const std::vector<FElement>& c) const;

    FieldPtr field_;
    long level_;
    TruncSeries modulus_;
    std::vector<FElement> mod_;  // X^d = -sum mod_[i] X^i
};

class TorsionElement {
public:
    TorsionElement(const TorsionField* field, std::vector<FElement> c) : tf_(field), c_(std::move(c)) {}

    const std::vector<FElement>& coeffs() const { return c_; }
    friend TorsionElement operator+(const TorsionElement& a, const TorsionElement& b);
    friend TorsionElement operator-(const TorsionElement& a, const TorsionElement& b);
    friend TorsionElement operator*(const TorsionElement& a, const TorsionElement& b);
    TorsionElement mul_x() const { return {tf_, tf_->mul_x(c_)}; }
    TorsionElement div_x() const { return {tf_, tf_->div_x(c_)}; }

    bool is_zero() const;
    bool equals(const TorsionElement& o) const { return (*this - o).is_zero(); }
    /// p-adic valuation in F_k, where val_p(u_k) = 1/(deg * e).
    Valuation val_p() const;

private:
    const TorsionField* tf_;
    std::vector<FElement> c_;
};

}  // namespace ltp
