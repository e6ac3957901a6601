#include "ltp/multi_series.hpp"

#include <numeric>
#include <sstream>

namespace ltp {

long total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); }

MultiSeries::MultiSeries(FieldPtr field, int nvars, std::optional<long> order)
    : field_(std::move(field)), nvars_(nvars), order_(order) {
    if (nvars < 1) throw InvalidArgument("a multivariable series needs at least one variable");
}

MultiSeries MultiSeries::constant(const FElement& c, int nvars, std::optional<long> order) {
    return monomial(c, Exponent(nvars, 0), order);
}

MultiSeries MultiSeries::monomial(const FElement& c, const Exponent& e, std::optional<long> order) {
    MultiSeries s(c.field(), static_cast<int>(e.size()), order);
    if (!order || total_degree(e) <= *order) s.set(e, c);
    return s;
}

MultiSeries MultiSeries::variable(const FieldPtr& field, int nvars, int j, std::optional<long> order) {
    Exponent e(nvars, 0);
    e.at(j) = 1;
    return monomial(FElement::from_int(field, 1), e, order);
}

MultiSeries MultiSeries::embed(const TruncSeries& s, int nvars, int j) {
    if (j != 0 && s.kmin() < 0) throw InvalidArgument("only Y_0 may carry negative exponents");
    MultiSeries r(s.field(), nvars, s.order());
    for (const auto& [k, c] : s.coeffs()) {
        Exponent e(nvars, 0);
        e.at(j) = k;
        r.terms_.emplace(e, c);
    }
    return r;
}

FElement MultiSeries::coeff(const Exponent& e) const {
    if (order_ && total_degree(e) > *order_)
        throw TruncationOverflow("monomial of total degree " + std::to_string(total_degree(e)) + " beyond order " +
                                 std::to_string(*order_));
    auto it = terms_.find(e);
    return it == terms_.end() ? FElement::zero(field_) : it->second;
}

void MultiSeries::set(const Exponent& e, const FElement& c) {
    if (static_cast<int>(e.size()) != nvars_) throw InvalidArgument("exponent length does not match the variables");
    for (int j = 1; j < nvars_; ++j)
        if (e[j] < 0) throw InvalidArgument("only Y_0 may carry negative exponents");
    if (order_ && total_degree(e) > *order_)
        throw TruncationOverflow("cannot set a monomial beyond order " + std::to_string(*order_));
    if (c.is_exact_zero())
        terms_.erase(e);
    else
        terms_[e] = c;
}

long MultiSeries::ord() const {
    if (terms_.empty()) return order_ ? *order_ + 1 : kExactPrec;
    long m = kExactPrec;
    for (const auto& [e, c] : terms_) m = std::min(m, total_degree(e));
    return m;
}

bool MultiSeries::is_zero() const {
    for (const auto& [e, c] : terms_)
        if (!c.is_zero()) return false;
    return true;
}

long MultiSeries::max_exp(int j) const {
    long m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e[j]);
    return m;
}

long MultiSeries::min_exp0() const {
    long m = 0;
    for (const auto& [e, c] : terms_) m = std::min(m, e[0]);
    return m;
}

bool MultiSeries::depends_only_on_y0() const {
    for (const auto& [e, c] : terms_)
        for (int j = 1; j < nvars_; ++j)
            if (e[j] != 0) return false;
    return true;
}

MultiSeries MultiSeries::truncated(long order) const {
    MultiSeries r(field_, nvars_, order_ ? std::min(*order_, order) : order);
    for (const auto& [e, c] : terms_)
        if (total_degree(e) <= *r.order_) r.terms_.emplace(e, c);
    return r;
}

MultiSeries MultiSeries::prec_capped(long abs_prec) const {
    MultiSeries r(*this);
    for (auto& [e, c] : r.terms_) c = c.truncated(abs_prec);
    return r;
}

long MultiSeries::min_abs_prec() const {
    long m = kExactPrec;
    for (const auto& [e, c] : terms_) m = std::min(m, c.abs_prec());
    return m;
}

MultiSeries MultiSeries::operator-() const {
    MultiSeries r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiSeries operator+(const MultiSeries& a, const MultiSeries& b) {
    if (!a.field_) return b;
    if (!b.field_) return a;
    if (a.nvars_ != b.nvars_) throw SpecMismatch("series in different numbers of variables");
    const auto order = min_order(a.order_, b.order_);
    MultiSeries r(a.field_, a.nvars_, order);
    for (const auto& [e, c] : a.terms_)
        if (!order || total_degree(e) <= *order) r.terms_.emplace(e, c);
    for (const auto& [e, c] : b.terms_) {
        if (order && total_degree(e) > *order) continue;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_exact_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

MultiSeries operator-(const MultiSeries& a, const MultiSeries& b) { return a + (-b); }

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
    if (a.is_exact_zero()) return a;
    if (b.is_exact_zero()) return b;
    if (a.nvars_ != b.nvars_) throw SpecMismatch("series in different numbers of variables");
    std::optional<long> order;
    if (a.order_) order = *a.order_ + b.ord();
    if (b.order_) order = min_order(order, *b.order_ + a.ord());
    MultiSeries r(a.field_, a.nvars_, order);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        const long da = total_degree(ea);
        for (const auto& [eb, cb] : b.terms_) {
            if (order && da + total_degree(eb) > *order) continue;
            for (int j = 0; j < a.nvars_; ++j) e[j] = ea[j] + eb[j];
            FElement t = ca * cb;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end())
                r.terms_.emplace(e, std::move(t));
            else
                it->second += t;
        }
    }
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = it->second.is_exact_zero() ? r.terms_.erase(it) : std::next(it);
    return r;
}

MultiSeries operator*(const FElement& c, const MultiSeries& a) {
    if (c.is_exact_zero()) return MultiSeries(a.field_, a.nvars_);
    MultiSeries r(a.field_, a.nvars_, a.order_);
    for (const auto& [e, x] : a.terms_) r.terms_.emplace(e, c * x);
    return r;
}

MultiSeries MultiSeries::pow(long n, std::optional<long> cap) const {
    if (n < 0) throw InvalidArgument("negative power of a multivariable series");
    MultiSeries acc = constant(FElement::from_int(field_, 1), nvars_, cap);
    MultiSeries base = truncated(cap);
    while (n > 0) {
        if (n & 1) acc = (acc * base).truncated(cap);
        n >>= 1;
        if (n > 0) base = (base * base).truncated(cap);
    }
    return acc;
}

MultiSeries MultiSeries::partial(int j) const {
    if (j < 0 || j >= nvars_) throw InvalidArgument("no variable Y_" + std::to_string(j));
    MultiSeries r(field_, nvars_, order_ ? std::optional<long>(*order_ - 1) : std::nullopt);
    for (const auto& [e, c] : terms_) {
        if (e[j] == 0) continue;
        Exponent f = e;
        f[j] -= 1;
        r.terms_.emplace(f, c.mul_int(e[j]));
    }
    return r;
}

MultiSeries MultiSeries::integral(int j) const {
    if (j < 0 || j >= nvars_) throw InvalidArgument("no variable Y_" + std::to_string(j));
    MultiSeries r(field_, nvars_, order_ ? std::optional<long>(*order_ + 1) : std::nullopt);
    for (const auto& [e, c] : terms_) {
        if (e[j] == -1) throw InvalidArgument("Y_0^(-1) has no antiderivative");
        Exponent f = e;
        f[j] += 1;
        r.terms_.emplace(f, c.div_int(f[j]));
    }
    return r;
}

MultiSeries MultiSeries::frobenius_pow(long k) const {
    MultiSeries r(*this);
    for (auto& [e, c] : r.terms_) c = c.frobenius_pow(k);
    return r;
}

MultiSeries MultiSeries::inverse(long cap) const {
    const Exponent zero(nvars_, 0);
    auto it = terms_.find(zero);
    if (it == terms_.end() || it->second.is_zero())
        throw PrecisionExhausted("constant term is not invertible");
    if (min_exp0() < 0) throw InvalidArgument("inverse of a Laurent series in several variables");
    const FElement c0inv = it->second.inverse();
    MultiSeries z = c0inv * *this - constant(FElement::from_int(field_, 1), nvars_);
    z = z.truncated(cap);
    // 1/(1+z) = sum (-z)^k; z has no constant term so k <= cap suffices.
    MultiSeries acc = constant(FElement::from_int(field_, 1), nvars_, cap);
    MultiSeries term = acc;
    for (long k = 1; k <= cap; ++k) {
        term = (-(term * z)).truncated(cap);
        acc += term;
    }
    return c0inv * acc;
}

MultiSeries MultiSeries::substitute(const std::vector<TruncSeries>& subs, std::optional<long> cap) const {
    if (static_cast<int>(subs.size()) != nvars_) throw InvalidArgument("one substitution per variable required");
    for (const auto& s : subs) {
        if (!s.field()->same_as(*field_)) throw SpecMismatch("substitution over a different field");
        if (!s.coeffs().empty() && s.coeffs().begin()->first <= 0)
            throw InvalidArgument("substituted series must vanish exactly at 0");
        if (s.coeff(1).is_zero()) throw InvalidArgument("substituted series needs a nonzero linear term");
    }
    std::optional<long> R = min_order(cap, order_);
    if (is_exact_zero()) return MultiSeries(field_, nvars_, R);

    std::vector<std::vector<MultiSeries>> pw(nvars_);
    for (int j = 0; j < nvars_; ++j) {
        const MultiSeries sj = embed(subs[j].truncated(R), nvars_, j);
        pw[j].push_back(constant(FElement::from_int(field_, 1), nvars_));
        for (long i = 1; i <= max_exp(j); ++i) pw[j].push_back((pw[j].back() * sj).truncated(R));
    }
    std::vector<MultiSeries> neg;
    const long m0 = min_exp0();
    if (m0 < 0) {
        if (!R) throw InvalidArgument("substitution into negative powers needs a truncation cap");
        const FElement lin = subs[0].coeff(1);
        if (lin.val_pi() != Valuation(0))
            throw InvalidArgument("negative powers need a substitution with unit linear coefficient");
        const MultiSeries inv = embed(subs[0].inverse(*R - m0 + 1), nvars_, 0);
        neg.push_back(constant(FElement::from_int(field_, 1), nvars_));
        for (long i = 1; i <= -m0; ++i) neg.push_back((neg.back() * inv).truncated(*R - m0 - i));
    }

    MultiSeries result(field_, nvars_, R);
    for (const auto& [e, c] : terms_) {
        MultiSeries t = constant(c, nvars_);
        t = e[0] >= 0 ? t * pw[0][e[0]] : t * neg[-e[0]];
        for (int j = 1; j < nvars_; ++j)
            if (e[j] > 0) t = (t * pw[j][e[j]]).truncated(R);
        result += t.truncated(R);
    }
    return result.truncated(R);
}

TruncSeries MultiSeries::y0_slice(const Exponent& rest) const {
    if (static_cast<int>(rest.size()) != nvars_ - 1) throw InvalidArgument("slice index has the wrong length");
    const long d = total_degree(rest);
    TruncSeries r(field_, order_ ? std::optional<long>(*order_ - d) : std::nullopt);
    for (const auto& [e, c] : terms_)
        if (std::equal(rest.begin(), rest.end(), e.begin() + 1)) r.set(e[0], c);
    return r;
}

bool MultiSeries::equals(const MultiSeries& o) const { return (*this - o).is_zero(); }

bool MultiSeries::identical(const MultiSeries& o) const {
    if (nvars_ != o.nvars_ || order_ != o.order_ || terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [e, c] : terms_) {
        if (e != it->first || !c.identical(it->second)) return false;
        ++it;
    }
    return true;
}

std::string MultiSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << (c.is_zero() ? "O(pi^" + std::to_string(c.abs_prec()) + ")" : c.to_string()) << ")";
        for (int j = 0; j < nvars_; ++j)
            if (e[j] != 0) os << "*Y" << j << (e[j] != 1 ? "^" + std::to_string(e[j]) : "");
    }
    if (first) os << "0";
    if (order_) os << " + O(deg " << *order_ + 1 << ")";
    return os.str();
}

} // namespace ltp
