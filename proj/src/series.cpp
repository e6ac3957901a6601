#include "ltp/series.hpp"

#include <sstream>

namespace ltp {

TruncSeries::TruncSeries(FieldPtr field, std::optional<long> order) : field_(std::move(field)), order_(order) {}

TruncSeries TruncSeries::constant(const FElement& c, std::optional<long> order) { return monomial(c, 0, order); }

TruncSeries TruncSeries::monomial(const FElement& c, long k, std::optional<long> order) {
    TruncSeries s(c.field(), order);
    if (!order || k <= *order) s.set(k, c);
    return s;
}

TruncSeries TruncSeries::variable(const FieldPtr& field, std::optional<long> order) {
    return monomial(FElement::from_int(field, 1), 1, order);
}

FElement TruncSeries::coeff(long k) const {
    if (order_ && k > *order_)
        throw TruncationOverflow("coefficient of T^" + std::to_string(k) + " requested beyond order " +
                                 std::to_string(*order_));
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? FElement::zero(field_) : it->second;
}

void TruncSeries::set(long k, const FElement& c) {
    if (order_ && k > *order_)
        throw TruncationOverflow("cannot set T^" + std::to_string(k) + " beyond order " + std::to_string(*order_));
    if (c.is_exact_zero())
        coeffs_.erase(k);
    else
        coeffs_[k] = c;
}

long TruncSeries::ord() const {
    if (coeffs_.empty()) return order_ ? *order_ + 1 : kExactPrec;
    return coeffs_.begin()->first;
}

long TruncSeries::kmin() const {
    if (coeffs_.empty()) return 0;
    return std::min(0L, coeffs_.begin()->first);
}

long TruncSeries::max_index() const {
    if (coeffs_.empty()) return ord() - 1;
    return coeffs_.rbegin()->first;
}

bool TruncSeries::is_zero() const {
    for (const auto& [k, c] : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

TruncSeries TruncSeries::truncated(long order) const {
    TruncSeries r(field_, order_ ? std::min(*order_, order) : order);
    for (const auto& [k, c] : coeffs_) {
        if (k > *r.order_) break;
        r.coeffs_.emplace(k, c);
    }
    return r;
}

TruncSeries TruncSeries::prec_capped(long abs_prec) const {
    return prec_capped_by([abs_prec](long) { return abs_prec; });
}

long TruncSeries::min_abs_prec() const {
    long m = kExactPrec;
    for (const auto& [k, c] : coeffs_) m = std::min(m, c.abs_prec());
    return m;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r(*this);
    for (auto& [k, c] : r.coeffs_) c = -c;
    return r;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    if (!a.field_) return b;
    if (!b.field_) return a;
    const auto order = min_order(a.order_, b.order_);
    TruncSeries r(a.field_, order);
    for (const auto& [k, c] : a.coeffs_) {
        if (order && k > *order) break;
        r.coeffs_.emplace(k, c);
    }
    for (const auto& [k, c] : b.coeffs_) {
        if (order && k > *order) break;
        auto it = r.coeffs_.find(k);
        if (it == r.coeffs_.end()) {
            r.coeffs_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_exact_zero()) r.coeffs_.erase(it);
        }
    }
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (a.is_exact_zero()) return a;
    if (b.is_exact_zero()) return b;
    std::optional<long> order;
    if (a.order_) order = *a.order_ + b.ord();
    if (b.order_) order = min_order(order, *b.order_ + a.ord());
    TruncSeries r(a.field_, order);
    for (const auto& [i, ci] : a.coeffs_) {
        for (const auto& [j, cj] : b.coeffs_) {
            const long k = i + j;
            if (order && k > *order) break;
            FElement t = ci * cj;
            auto it = r.coeffs_.find(k);
            if (it == r.coeffs_.end())
                r.coeffs_.emplace(k, std::move(t));
            else
                it->second += t;
        }
    }
    for (auto it = r.coeffs_.begin(); it != r.coeffs_.end();)
        it = it->second.is_exact_zero() ? r.coeffs_.erase(it) : std::next(it);
    return r;
}

TruncSeries operator*(const FElement& c, const TruncSeries& a) {
    if (c.is_exact_zero()) return TruncSeries(a.field_);
    TruncSeries r(a.field_, a.order_);
    for (const auto& [k, x] : a.coeffs_) r.coeffs_.emplace(k, c * x);
    return r;
}

TruncSeries TruncSeries::shift(long k) const {
    TruncSeries r(field_, order_ ? std::optional<long>(*order_ + k) : std::nullopt);
    for (const auto& [i, c] : coeffs_) r.coeffs_.emplace(i + k, c);
    return r;
}

TruncSeries TruncSeries::pow(long n, std::optional<long> cap) const {
    if (n < 0) {
        if (!cap) throw InvalidArgument("negative series power needs a truncation cap");
        return inverse(*cap + ord() * (n + 1)).pow(-n, cap);
    }
    TruncSeries acc = constant(FElement::from_int(field_, 1), cap);
    TruncSeries base = truncated(cap);
    while (n > 0) {
        if (n & 1) acc = (acc * base).truncated(cap);
        n >>= 1;
        if (n > 0) base = (base * base).truncated(cap);
    }
    return acc;
}

TruncSeries TruncSeries::inverse(long cap) const {
    if (coeffs_.empty()) throw PrecisionExhausted("inverse of a series indistinguishable from zero");
    const long m = coeffs_.begin()->first;
    const FElement& w0 = coeffs_.begin()->second;
    if (w0.is_zero())
        throw PrecisionExhausted("leading coefficient of the series to invert is zero at its precision");
    long n = cap + m;
    if (order_) n = std::min(n, *order_ - m);
    if (n < 0) throw PrecisionExhausted("series inverse has no known coefficients at this truncation");
    const FElement inv0 = w0.inverse();
    std::vector<FElement> w(n + 1, FElement::zero(field_)), b(n + 1, FElement::zero(field_));
    for (const auto& [k, c] : coeffs_) {
        if (k - m > n) break;
        w[k - m] = c;
    }
    b[0] = inv0;
    for (long i = 1; i <= n; ++i) {
        FElement s = FElement::zero(field_);
        for (long j = 1; j <= i; ++j)
            if (!w[j].is_exact_zero() && !b[i - j].is_exact_zero()) s += w[j] * b[i - j];
        b[i] = -(s * inv0);
    }
    TruncSeries r(field_, n - m);
    for (long i = 0; i <= n; ++i)
        if (!b[i].is_exact_zero()) r.coeffs_.emplace(i - m, b[i]);
    return r;
}

TruncSeries TruncSeries::exact_div(const TruncSeries& d) const {
    if (order_ || d.order_) throw InvalidArgument("exact division needs exact polynomials");
    if (d.coeffs_.empty()) throw PrecisionExhausted("division by the zero polynomial");
    if (kmin() < 0 || d.kmin() < 0) throw InvalidArgument("exact division needs polynomials without negative powers");
    TruncSeries rem = *this;
    TruncSeries quo(field_);
    const long dd = d.coeffs_.rbegin()->first;
    const FElement lead_inv = d.coeffs_.rbegin()->second.inverse();
    while (!rem.coeffs_.empty() && rem.coeffs_.rbegin()->first >= dd) {
        auto top = *rem.coeffs_.rbegin();
        if (top.second.is_zero()) {
            rem.coeffs_.erase(top.first);
            continue;
        }
        const FElement c = top.second * lead_inv;
        quo.set(top.first - dd, c);
        rem = rem - monomial(c, top.first - dd) * d;
        rem.coeffs_.erase(top.first);
    }
    if (!rem.is_zero()) throw DecompositionFailure("polynomial division leaves a nonzero remainder");
    return quo;
}

TruncSeries TruncSeries::derivative() const {
    TruncSeries r(field_, order_ ? std::optional<long>(*order_ - 1) : std::nullopt);
    for (const auto& [k, c] : coeffs_)
        if (k != 0) r.coeffs_.emplace(k - 1, c.mul_int(k));
    return r;
}

TruncSeries TruncSeries::frobenius_pow(long k) const {
    TruncSeries r(*this);
    for (auto& [i, c] : r.coeffs_) c = c.frobenius_pow(k);
    return r;
}

TruncSeries TruncSeries::compose(const TruncSeries& g, std::optional<long> cap) const {
    if (!g.field_->same_as(*field_)) throw SpecMismatch("composition of series over different fields");
    if (!g.coeffs_.empty() && g.coeffs_.begin()->first <= 0)
        throw InvalidArgument("composition needs an inner series with g(0) exactly 0");
    std::optional<long> R = cap;
    if (order_) {
        const long og = g.ord();
        R = min_order(R, (*order_ + 1) * og - 1);
    }
    const TruncSeries gg = g.truncated(R);
    TruncSeries result(field_);
    if (is_exact_zero()) return result.truncated(R);

    // Nonnegative powers by Horner.
    const long top = coeffs_.empty() ? 0 : std::max(0L, coeffs_.rbegin()->first);
    TruncSeries acc(field_, R);
    for (long k = top; k >= 0; --k) {
        acc = (acc * gg).truncated(R);
        auto it = coeffs_.find(k);
        if (it != coeffs_.end() && (!R || *R >= 0)) acc = acc + constant(it->second, R);
    }
    result = acc;

    const long kneg = kmin();
    if (kneg < 0) {
        if (!R) throw InvalidArgument("composition of a Laurent series needs a truncation cap");
        const FElement g1 = gg.coeff(1);
        if (g1.is_zero() || g1.val_pi() != Valuation(0))
            throw InvalidArgument("negative powers need an inner series with unit linear coefficient");
        const TruncSeries ginv = g.inverse(*R - kneg + 1);
        // Horner in g^(-1) for the principal part.
        TruncSeries nacc(field_);
        for (long k = kneg; k < 0; ++k) {
            auto it = coeffs_.find(k);
            if (it != coeffs_.end()) nacc = nacc + constant(it->second);
            nacc = (nacc * ginv).truncated(R);
        }
        result = result + nacc;
    }
    return result.truncated(R);
}

bool TruncSeries::equals(const TruncSeries& o) const { return (*this - o).is_zero(); }

bool TruncSeries::identical(const TruncSeries& o) const {
    if (order_ != o.order_ || coeffs_.size() != o.coeffs_.size()) return false;
    auto it = o.coeffs_.begin();
    for (const auto& [k, c] : coeffs_) {
        if (k != it->first || !c.identical(it->second)) return false;
        ++it;
    }
    return true;
}

std::string TruncSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << (c.is_zero() ? "O(pi^" + std::to_string(c.abs_prec()) + ")" : c.to_string()) << ")";
        if (k != 0) os << "*T^" << k;
    }
    if (first) os << "0";
    if (order_) os << " + O(T^" << *order_ + 1 << ")";
    return os.str();
}

} // namespace ltp
