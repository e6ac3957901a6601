#include "ltp/period_ring.hpp"

namespace ltp {

mpq_class r_prime(const Field& F, const mpq_class& r) {
    mpq_class rp = r * F.e() * mpq_class(F.p(), F.p() - 1) * mpq_class(F.q() - 1, F.q());
    rp.canonicalize();
    return rp;
}

mpq_class r_level(const Field& F, long k) {
    if (k < 1) throw InvalidArgument("level must be at least 1");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(F.p()), static_cast<unsigned long>(k * F.h() - 1));
    return mpq_class(pk * (F.p() - 1));
}

Valuation gauss_val(const TruncSeries& x, const mpq_class& r) {
    if (r <= 0) throw InvalidArgument("radius must be positive");
    if (r <= 1 && x.kmin() < 0) throw InvalidArgument("V(x, r) for Laurent series needs r > 1");
    const Field& F = *x.field();
    const mpq_class rp = r_prime(F, r);
    Valuation best = Valuation::infinity(), bound = Valuation::infinity();
    for (const auto& [k, c] : x.coeffs()) {
        const mpq_class mono = mpq_class(k) / rp;
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

Valuation interval_val(const TruncSeries& x, const mpq_class& r, const mpq_class& s) {
    if (s < r) throw InvalidArgument("interval endpoints must satisfy r <= s");
    return min(gauss_val(x, r), gauss_val(x, s));
}

FElement exp_field(const FElement& l) {
    const Field& F = *l.field();
    if (l.is_exact_zero()) return FElement::from_int(l.field(), 1);
    const long v = l.val_lower_bound();
    // val_p(l) > 1/(p-1)  <=>  v (p-1) > e
    if (v * (F.p() - 1) <= F.e()) throw InvalidArgument("exp needs val_p(l) > 1/(p-1)");
    const long A = l.abs_prec();
    // val_pi(l^k/k!) >= k v - e (k-1)/(p-1); stop once this reaches A.
    FElement acc = FElement::from_int(l.field(), 1, A);
    FElement term = acc;
    for (long k = 1;; ++k) {
        const mpq_class lower = mpq_class(k * v) - mpq_class(F.e() * (k - 1), F.p() - 1);
        if (lower >= A) break;
        term = (term * l).div_int(k);
        acc += term;
    }
    return acc.truncated(A);
}

bool OrbitReport::pass() const {
    if (samples.empty()) return false;
    for (const auto& s : samples)
        if (!s.pass) return false;
    return true;
}

PeriodRing::PeriodRing(FieldPtr field) : lt_(std::move(field)) {}

TruncSeries PeriodRing::phi(const TruncSeries& x) const {
    if (x.kmin() < 0)
        throw Unsupported("phi_q of negative powers of u has an infinite principal expansion; not modeled");
    return x.compose(lt_.mult_by_pi(lt_.q()));
}

std::vector<TruncSeries> PeriodRing::decompose(const TruncSeries& x) const {
    if (!x.is_exact() || x.kmin() < 0)
        throw DecompositionFailure("psi_q is defined here on exact polynomials in u");
    const long q = lt_.q();
    std::vector<TruncSeries> f(q, TruncSeries(field()));
    std::vector<TruncSeries> phipow{TruncSeries::constant(FElement::from_int(field(), 1))};
    const TruncSeries P = lt_.mult_by_pi(q);
    TruncSeries rem = x;
    while (!rem.coeffs().empty()) {
        const auto [n, c] = *rem.coeffs().rbegin();
        const long i = n % q, m = n / q;
        while (static_cast<long>(phipow.size()) <= m) phipow.push_back(phipow.back() * P);
        f[i].set(m, f[i].coeff(m) + c);
        rem = rem - (c * phipow[m]).shift(i);
        rem.set(n, FElement::zero(field()));
    }
    return f;
}

TruncSeries PeriodRing::psi(const TruncSeries& x) const { return decompose(x)[0]; }

TruncSeries PeriodRing::gamma(const FElement& c, const TruncSeries& x, long D) const {
    if (c.is_zero() || c.val_pi() != Valuation(0)) throw InvalidArgument("gamma_c needs a unit c");
    const TruncSeries ca = lt_.mult_by_a(c, D - std::min(0L, x.kmin()) + 2);
    return x.truncated(D).compose(ca, D);
}

TruncSeries PeriodRing::t_F(long D) const { return lt_.log(D); }

TruncSeries PeriodRing::nabla(const TruncSeries& x, long D) const {
    const TruncSeries dx = x.derivative();
    long extra = 0;
    if (!dx.coeffs().empty()) extra = std::max(0L, -dx.ord());
    const long Dt = D + extra;
    const TruncSeries tv = (lt_.log(Dt) * lt_.v_series(Dt)).truncated(Dt);
    return (tv * dx).truncated(D);
}

namespace {

// Lower bound for the valuation of every known coefficient (val_p units).
Valuation min_coeff_val(const TruncSeries& s) {
    Valuation m = Valuation::infinity();
    const long e = s.field()->e();
    for (const auto& [k, c] : s.coeffs()) m = min(m, Valuation(mpq_class(c.val_lower_bound(), e)));
    return m;
}

}  // namespace

OrbitReport PeriodRing::orbit_taylor(const TruncSeries& x, long n, long K, long D, int samples,
                                     std::mt19937_64& rng, long lookahead) const {
    if (K < 0 || lookahead < 1) throw InvalidArgument("orbit expansion needs K >= 0 and a positive lookahead");
    const Field& F = *field();
    OrbitReport rep;
    rep.K = K;
    rep.lookahead = lookahead;
    rep.w.push_back(x.truncated(D));
    for (long k = 1; k <= K + lookahead; ++k) {
        const TruncSeries w = nabla(rep.w.back(), D);
        TruncSeries scaled(field(), w.order());
        for (const auto& [i, c] : w.coeffs()) scaled.set(i, c.div_int(k));
        rep.w.push_back(scaled);
    }

    const long min_shift = std::max(n, F.e() / (F.p() - 1) + 1);
    const FElement pi = FElement::uniformizer(field());
    for (int s = 0; s < samples; ++s) {
        std::vector<mpq_class> b(F.degree());
        for (auto& coef : b) {
            long v = static_cast<long>(rng() % 1000);
            if (&coef == &b[0] && v % F.p() == 0) ++v;
            coef = v;
        }
        if (F.flavor() == Flavor::Eisenstein)
            for (size_t i = 1; i < b.size(); ++i) b[i] = 0;
        const long extra = static_cast<long>(rng() % 2);
        OrbitSample smp;
        smp.ell = pi.pow(min_shift + extra) * FElement::from_basis(field(), b);
        smp.val_ell = smp.ell.val_p();
        smp.c = exp_field(smp.ell);
        const TruncSeries gx = gamma(smp.c, x, D);
        TruncSeries sum(field());
        FElement lk = FElement::from_int(field(), 1);
        for (long k = 0; k <= K; ++k) {
            sum += lk * rep.w[k];
            lk *= smp.ell;
        }
        smp.error = min_coeff_val(gx - sum);
        const mpq_class vl = smp.val_ell.value();
        Valuation tail_min = Valuation::infinity();
        std::vector<Valuation> tau;
        for (long k = K + 1; k <= K + lookahead; ++k) {
            const Valuation mu = min_coeff_val(rep.w[k]);
            tau.push_back(mu.is_infinite() ? mu : Valuation(mpq_class(k * vl + mu.value())));
            tail_min = min(tail_min, tau.back());
        }
        smp.bound = tail_min;
        smp.loss = tail_min.is_infinite() ? mpq_class(0) : mpq_class((K + 1) * vl - tail_min.value());
        smp.tail_decays = tau.back().is_infinite() || tau.front() < tau.back();
        smp.pass = smp.tail_decays && smp.error >= smp.bound;
        rep.samples.push_back(smp);
    }
    return rep;
}

mpz_class mahler_weight(const mpz_class& n, long level, long q) {
    if (n < 0 || level < 1 || q < 2) throw InvalidArgument("mahler_weight needs n >= 0, level >= 1, q >= 2");
    mpz_class rest = n, w = 0;
    for (long i = 0; rest > 0; ++i) {
        const mpz_class digit = rest % q;
        rest /= q;
        if (i >= level && digit != 0) {
            mpz_class qi;
            mpz_ui_pow_ui(qi.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(i - level));
            w += digit * ((qi - 1) / (q - 1));
        }
    }
    return w;
}

WeightBoundReport weight_bound_check(long level, const mpz_class& n_max, long q) {
    WeightBoundReport rep;
    mpz_class ql;
    mpz_ui_pow_ui(ql.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(level));
    const mpz_class denom = ql * (q - 1);
    for (mpz_class n = 0; n <= n_max; ++n) {
        ++rep.checked;
        const mpz_class w = mahler_weight(n, level, q);
        const mpq_class bound(n, denom);
        if (mpq_class(w) > bound) ++rep.violations;
        if (n > 0) {
            mpq_class ratio = mpq_class(w) / bound;
            ratio.canonicalize();
            if (ratio > rep.max_ratio) rep.max_ratio = ratio;
        }
    }
    return rep;
}

DeepNorm deep_norm(const Field& F, long n, long level) {
    if (n < 0) throw InvalidArgument("exponent must be nonnegative");
    FieldPtr fp = F.with_prec(F.prec());
    const TruncSeries x = TruncSeries::monomial(FElement::from_int(fp, 1), n);
    DeepNorm out;
    out.computed = gauss_val(x, r_level(F, level));
    mpz_class ql;
    mpz_ui_pow_ui(ql.get_mpz_t(), static_cast<unsigned long>(F.q()), static_cast<unsigned long>(level - 1));
    out.closed_form = mpq_class(n, ql * F.e() * (F.q() - 1));
    out.closed_form.canonicalize();
    out.pass = out.computed == Valuation(out.closed_form);
    return out;
}

}  // namespace ltp
