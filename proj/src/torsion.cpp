#include "ltp/torsion.hpp"

namespace ltp {

TorsionField::TorsionField(const LubinTate& lt, long k) : field_(lt.field()), level_(k) {
    if (k < 1) throw InvalidArgument("torsion level must be at least 1");
    modulus_ = lt.q_poly(k);
    const long d = modulus_.max_index();
    if (!modulus_.coeff(d).equals(FElement::from_int(field_, 1))) throw InvalidArgument("modulus must be monic");
    mod_.resize(d, FElement::zero(field_));
    for (long i = 0; i < d; ++i) {
        mod_[i] = modulus_.coeff(i);
        if (mod_[i].val_lower_bound() < 1) throw InvalidArgument("modulus is not Eisenstein");
    }
    if (mod_[0].val_pi() != Valuation(1)) throw InvalidArgument("modulus is not Eisenstein");
}

std::vector<FElement> TorsionField::reduce(std::vector<FElement> c) const {
    const long d = degree();
    for (long top = static_cast<long>(c.size()) - 1; top >= d; --top) {
        const FElement t = c[top];
        if (t.is_exact_zero()) continue;
        for (long i = 0; i < d; ++i)
            if (!mod_[i].is_exact_zero()) c[top - d + i] -= t * mod_[i];
    }
    c.resize(d, FElement::zero(field_));
    return c;
}

std::vector<FElement> TorsionField::mul_x(const std::vector<FElement>& c) const {
    std::vector<FElement> r(c.size() + 1, FElement::zero(field_));
    for (size_t i = 0; i < c.size(); ++i) r[i + 1] = c[i];
    return reduce(std::move(r));
}

std::vector<FElement> TorsionField::div_x(const std::vector<FElement>& c) const {
    // X^(-1) = -(X^(d-1) + m_(d-1) X^(d-2) + ... + m_1) / m_0
    const long d = degree();
    std::vector<FElement> r(d, FElement::zero(field_));
    for (long i = 1; i < d; ++i) r[i - 1] = c[i];
    if (!c[0].is_exact_zero()) {
        const FElement s = -(c[0] / mod_[0]);
        r[d - 1] += s;
        for (long i = 1; i < d; ++i)
            if (!mod_[i].is_exact_zero()) r[i - 1] += s * mod_[i];
    }
    return r;
}

TorsionElement TorsionField::zero() const { return {this, std::vector<FElement>(degree(), FElement::zero(field_))}; }

TorsionElement TorsionField::one() const {
    auto z = zero();
    std::vector<FElement> c = z.coeffs();
    c[0] = FElement::from_int(field_, 1);
    return {this, c};
}

TorsionElement TorsionField::generator() const { return one().mul_x(); }

TorsionElement TorsionField::from_coeffs(std::vector<FElement> c) const { return {this, reduce(std::move(c))}; }

TorsionElement TorsionField::eval(const TruncSeries& f) const {
    if (!f.is_exact()) throw InvalidArgument("evaluation at a torsion point needs an exact Laurent polynomial");
    TorsionElement acc = zero();
    if (f.coeffs().empty()) return acc;
    const long top = f.coeffs().rbegin()->first;
    for (long j = top; j >= 0; --j) {
        acc = acc.mul_x();
        const FElement c = f.coeff(j);
        if (!c.is_exact_zero()) {
            auto v = acc.coeffs();
            v[0] += c;
            acc = TorsionElement(this, v);
        }
    }
    if (f.kmin() < 0) {
        TorsionElement neg = zero();
        for (long j = f.kmin(); j < 0; ++j) {
            const FElement c = f.coeff(j);
            if (!c.is_exact_zero()) {
                auto v = neg.coeffs();
                v[0] += c;
                neg = TorsionElement(this, v);
            }
            neg = neg.div_x();
        }
        acc = acc + neg;
    }
    return acc;
}

TorsionElement operator+(const TorsionElement& a, const TorsionElement& b) {
    std::vector<FElement> c = a.c_;
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return {a.tf_, c};
}

TorsionElement operator-(const TorsionElement& a, const TorsionElement& b) {
    std::vector<FElement> c = a.c_;
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
    return {a.tf_, c};
}

TorsionElement operator*(const TorsionElement& a, const TorsionElement& b) {
    const size_t d = a.c_.size();
    std::vector<FElement> c(2 * d - 1, FElement::zero(a.tf_->field_));
    for (size_t i = 0; i < d; ++i) {
        if (a.c_[i].is_exact_zero()) continue;
        for (size_t j = 0; j < d; ++j)
            if (!b.c_[j].is_exact_zero()) c[i + j] += a.c_[i] * b.c_[j];
    }
    return {a.tf_, a.tf_->reduce(std::move(c))};
}

bool TorsionElement::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

Valuation TorsionElement::val_p() const {
    // X is a uniformizer of F_k, so the terms b_i X^i have distinct valuations.
    const long d = static_cast<long>(c_.size());
    const long e = tf_->field_->e();
    long best = kExactPrec, bound = kExactPrec;
    for (long i = 0; i < d; ++i) {
        if (c_[i].is_exact_zero()) continue;
        if (c_[i].is_zero())
            bound = std::min(bound, d * c_[i].abs_prec() + i);
        else
            best = std::min(best, d * c_[i].shift() + i);
    }
    if (best == kExactPrec && bound == kExactPrec) return Valuation::infinity();
    if (bound < best) throw IndeterminateValuation("torsion-field element is zero at its precision");
    return Valuation(mpq_class(best, d * e));
}

}  // namespace ltp
