#include "ltp/multivar.hpp"

#include <functional>

namespace ltp {

namespace {

mpz_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

mpz_class multi_factorial(const Exponent& k) {
    mpz_class r = 1;
    for (long v : k) r *= factorial(v);
    return r;
}

// All k with 0 <= k_j <= bound_j.
void for_each_in_box(const Exponent& bound, const std::function<void(const Exponent&)>& fn) {
    Exponent k(bound.size(), 0);
    if (k.empty()) {
        fn(k);
        return;
    }
    for (;;) {
        fn(k);
        size_t j = 0;
        while (j < k.size() && k[j] == bound[j]) k[j++] = 0;
        if (j == k.size()) return;
        ++k[j];
    }
}

}  // namespace

Exponent with_y0(const Exponent& rest, long e0) {
    Exponent e{e0};
    e.insert(e.end(), rest.begin(), rest.end());
    return e;
}

MultiRing::MultiRing(FieldPtr field) : lt_(std::move(field)) {
    if (this->field()->flavor() == Flavor::Eisenstein)
        throw SpecMismatch("the multivariable ring is modeled for F unramified only");
}

void MultiRing::check_var(int j, bool allow_zero) const {
    if (j < (allow_zero ? 0 : 1) || j >= nvars())
        throw InvalidArgument("no variable Y_" + std::to_string(j) + (allow_zero ? "" : " among Y_1 .. Y_(h-1)"));
}

void MultiRing::check_input(const MultiSeries& x) const {
    if (!x.field()->same_as(*field())) throw SpecMismatch("element over a different field");
    if (x.nvars() != nvars()) throw SpecMismatch("element has " + std::to_string(x.nvars()) + " variables, need h");
}

MultiSeries MultiRing::variable(int j, std::optional<long> order) const {
    check_var(j, true);
    return MultiSeries::variable(field(), nvars(), j, order);
}

MultiSeries MultiRing::gamma(const FElement& c, const MultiSeries& x, long D) const {
    check_input(x);
    if (c.is_zero() || c.val_pi() != Valuation(0)) throw InvalidArgument("gamma_c needs a unit c");
    const TruncSeries ca = lt_.mult_by_a(c, D - std::min(0L, x.min_exp0()) + 2);
    std::vector<TruncSeries> subs;
    for (int j = 0; j < nvars(); ++j) subs.push_back(ca.frobenius_pow(j));
    return x.truncated(D).substitute(subs, D);
}

MultiSeries MultiRing::phi(const MultiSeries& x) const {
    check_input(x);
    if (x.min_exp0() < 0) throw Unsupported("phi_q of negative powers of Y_0 is not modeled");
    std::vector<TruncSeries> subs;
    for (int j = 0; j < nvars(); ++j) {
        TruncSeries s(field());
        s.set(1, lt_.pi().frobenius_pow(j));
        s.set(lt_.q(), FElement::from_int(field(), 1));
        subs.push_back(s);
    }
    return x.substitute(subs);
}

MultiSeries MultiRing::partial(int j, const MultiSeries& x) const {
    check_input(x);
    check_var(j, true);
    return x.partial(j);
}

MultiSeries MultiRing::t_tau(int j, long D) const {
    check_var(j, true);
    return MultiSeries::embed(lt_.log(D).frobenius_pow(j), nvars(), j);
}

MultiSeries MultiRing::v_tau(int j, long D) const {
    check_var(j, true);
    return MultiSeries::embed(lt_.v_series(D).frobenius_pow(j), nvars(), j);
}

MultiSeries MultiRing::nabla(int j, const MultiSeries& x, long D) const {
    const MultiSeries dx = partial(j, x);
    const long extra = j == 0 ? std::max(0L, -dx.min_exp0()) : 0;
    const MultiSeries tv = (t_tau(j, D + extra) * v_tau(j, D + extra)).truncated(D + extra);
    return (tv * dx).truncated(D);
}

Valuation MultiRing::gauss_val(const MultiSeries& x, const mpq_class& r) const {
    check_input(x);
    if (r <= 0) throw InvalidArgument("radius must be positive");
    if (r <= 1 && x.min_exp0() < 0) throw InvalidArgument("V(x, r) for Laurent series needs r > 1");
    const Field& F = *field();
    const mpq_class rp = r * F.e() * mpq_class(F.p(), F.p() - 1) * mpq_class(F.q() - 1, F.q());
    // weight of Y_j: val_E of the reduction of y_(sigma^j) is p^j val_E(u)
    std::vector<mpq_class> wt;
    mpz_class pj = 1;
    for (int j = 0; j < nvars(); ++j, pj *= F.p()) wt.push_back(mpq_class(pj) / rp);
    Valuation best = Valuation::infinity(), bound = Valuation::infinity();
    for (const auto& [e, c] : x.terms()) {
        mpq_class mono = 0;
        for (int j = 0; j < nvars(); ++j) mono += e[j] * wt[j];
        if (c.is_zero())
            bound = min(bound, Valuation(mpq_class(mpq_class(c.abs_prec(), F.e()) + mono)));
        else
            best = min(best, Valuation(mpq_class(c.val_p().value() + mono)));
    }
    if (bound < best)
        throw IndeterminateValuation("the minimizing coefficient is zero at its precision (V >= " + bound.to_string() +
                                     ")");
    return best;
}

TaylorDecomposition MultiRing::taylor_decompose(const MultiSeries& x) const {
    check_input(x);
    const int h = nvars();
    Exponent box(h - 1);
    for (int j = 1; j < h; ++j) box[j - 1] = x.max_exp(j);

    // d^k x for every k in the box, built one variable step at a time.
    std::map<Exponent, MultiSeries> der;
    for_each_in_box(box, [&](const Exponent& k) {
        int j = 0;
        while (j < h - 1 && k[j] == 0) ++j;
        if (j == h - 1) {
            der.emplace(k, x);
            return;
        }
        Exponent prev = k;
        --prev[j];
        der.emplace(k, der.at(prev).partial(j + 1));
    });

    TaylorDecomposition out;
    for_each_in_box(box, [&](const Exponent& i) {
        Exponent kbox(h - 1);
        for (int j = 0; j < h - 1; ++j) kbox[j] = box[j] - i[j];
        MultiSeries acc(field(), h, x.order() ? std::optional<long>(*x.order() - total_degree(i)) : std::nullopt);
        for_each_in_box(kbox, [&](const Exponent& k) {
            Exponent ki(h - 1);
            for (int j = 0; j < h - 1; ++j) ki[j] = k[j] + i[j];
            const MultiSeries& d = der.at(ki);
            if (d.is_exact_zero()) return;
            const long sign = total_degree(k) % 2 ? -1 : 1;
            const FElement coef = FElement::from_int(field(), sign).div_int(multi_factorial(k));
            const MultiSeries yk = MultiSeries::monomial(FElement::from_int(field(), 1), with_y0(k));
            acc += (coef * yk * d).truncated(acc.order());
        });
        const MultiSeries xi = FElement::from_int(field(), 1).div_int(multi_factorial(i)) * acc;
        for (int j = 1; j < h; ++j)
            if (!xi.partial(j).is_zero())
                throw DecompositionFailure("Taylor coefficient is not killed by d/dY_" + std::to_string(j));
        const TruncSeries slice = x.y0_slice(i);
        if (!MultiSeries::embed(slice, h, 0).equals(xi))
            throw DecompositionFailure("Taylor formula disagrees with coefficient extraction");
        if (!slice.coeffs().empty()) {
            out.terms.emplace(i, slice);
            out.formula.emplace(i, xi);
        }
    });

    MultiSeries back(field(), h, x.order());
    for (const auto& [i, s] : out.terms)
        back += MultiSeries::embed(s, h, 0) * MultiSeries::monomial(FElement::from_int(field(), 1), with_y0(i));
    if (!back.truncated(x.order()).equals(x)) throw DecompositionFailure("Taylor coefficients do not reassemble");
    return out;
}

MultiSeries MultiRing::antiderivative(int j, const MultiSeries& x) const {
    check_input(x);
    if (nvars() == 1) throw Unsupported("antiderivative in the directions Y_j, j != 0, requires F != Q_p");
    check_var(j, false);
    return x.integral(j);
}

}  // namespace ltp
