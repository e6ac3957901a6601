#include "ltp/formal_group.hpp"

#include <vector>

namespace ltp {

namespace {

mpz_class binomial(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// Coefficients of T^n in P^m for P = pi*T + T^q, indexed [m][n] with m, n <= D:
// binom(m, j) pi^(m-j) when n = m + j(q-1) with 0 <= j <= m.
class PiPowerTable {
public:
    PiPowerTable(const FElement& pi, long q, long D) : q_(q) {
        pipow_.push_back(FElement::from_int(pi.field(), 1));
        for (long k = 1; k <= D; ++k) pipow_.push_back(pipow_.back() * pi);
        zero_ = FElement::zero(pi.field());
    }
    // [T^n] P^m, or the exact zero.
    FElement at(long m, long n) const {
        if (n < m) return zero_;
        if ((n - m) % (q_ - 1) != 0) return zero_;
        const long j = (n - m) / (q_ - 1);
        if (j > m) return zero_;
        return pipow_[m - j].mul_int(binomial(m, j));
    }
    const FElement& pipow(long k) const { return pipow_[k]; }

private:
    long q_;
    std::vector<FElement> pipow_;
    FElement zero_;
};

} // namespace

LubinTate::LubinTate(FieldPtr field) : field_(std::move(field)), pi_(FElement::uniformizer(field_)) {}

TruncSeries LubinTate::mult_by_pi(long D) const {
    if (D < q()) throw InvalidArgument("order must be at least q = " + std::to_string(q()));
    TruncSeries s(field_);
    s.set(1, pi_);
    s.set(q(), FElement::from_int(field_, 1));
    return s;
}

TruncSeries LubinTate::mult_by_a(const FElement& a, long D) const {
    if (D < 1) throw InvalidArgument("order must be at least 1");
    if (!a.is_zero() && a.val_pi() < Valuation(0)) throw InvalidArgument("[a](T) needs a in O_F");
    TruncSeries out(field_, D);
    if (a.is_exact_zero()) return out;
    const long Q = q();
    const PiPowerTable P(pi_, Q, D);
    const FElement zero = FElement::zero(field_);
    std::vector<FElement> c(D + 1, zero);
    // fpow[k][n] = [T^n] [a](T)^k for 1 <= k <= q
    std::vector<std::vector<FElement>> fpow(Q + 1, std::vector<FElement>(D + 1, zero));
    c[1] = a;
    fpow[1][1] = a;
    for (long k = 2; k <= Q && k <= D; ++k) fpow[k][k] = fpow[k - 1][k - 1] * a;
    for (long n = 2; n <= D; ++n) {
        for (long k = 2; k <= Q; ++k) {
            if (n <= k) continue;
            FElement s = zero;
            for (long i = 1; i <= n - k + 1; ++i)
                if (!c[i].is_exact_zero() && !fpow[k - 1][n - i].is_exact_zero()) s += c[i] * fpow[k - 1][n - i];
            fpow[k][n] = s;
        }
        FElement rhs = fpow[Q][n];
        for (long m = 1; m < n; ++m) {
            if (c[m].is_exact_zero()) continue;
            const FElement t = P.at(m, n);
            if (!t.is_exact_zero()) rhs -= c[m] * t;
        }
        c[n] = rhs / (P.pipow(n) - pi_);
        fpow[1][n] = c[n];
    }
    for (long n = 1; n <= D; ++n) out.set(n, c[n]);
    return out;
}

TruncSeries LubinTate::log(long D) const {
    if (D < 1) throw InvalidArgument("order must be at least 1");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = log_cache_.find(D);
        if (it != log_cache_.end()) return it->second;
    }
    const PiPowerTable P(pi_, q(), D);
    const FElement zero = FElement::zero(field_);
    std::vector<FElement> l(D + 1, zero);
    l[1] = FElement::from_int(field_, 1);
    for (long n = 2; n <= D; ++n) {
        FElement s = zero;
        for (long m = 1; m < n; ++m) {
            if (l[m].is_exact_zero()) continue;
            const FElement t = P.at(m, n);
            if (!t.is_exact_zero()) s += l[m] * t;
        }
        l[n] = -s / (P.pipow(n) - pi_);
    }
    TruncSeries out(field_, D);
    for (long n = 1; n <= D; ++n) out.set(n, l[n]);
    std::lock_guard<std::mutex> lk(mu_);
    log_cache_.emplace(D, out);
    return out;
}

TruncSeries LubinTate::exp(long D) const {
    if (D < 1) throw InvalidArgument("order must be at least 1");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = exp_cache_.find(D);
        if (it != exp_cache_.end()) return it->second;
    }
    const TruncSeries lam = log(D);
    // E(log T) = T: e_n = -sum_{m<n} e_m [T^n] log^m, since log^n = T^n + ...
    std::vector<TruncSeries> lp{TruncSeries::constant(FElement::from_int(field_, 1), D), lam};
    for (long m = 2; m < D; ++m) lp.push_back((lp.back() * lam).truncated(D));
    const FElement zero = FElement::zero(field_);
    std::vector<FElement> e(D + 1, zero);
    e[1] = FElement::from_int(field_, 1);
    for (long n = 2; n <= D; ++n) {
        FElement s = zero;
        for (long m = 1; m < n; ++m) {
            if (e[m].is_exact_zero()) continue;
            const FElement t = lp[m].coeff(n);
            if (!t.is_exact_zero()) s += e[m] * t;
        }
        e[n] = -s;
    }
    TruncSeries out(field_, D);
    for (long n = 1; n <= D; ++n) out.set(n, e[n]);
    std::lock_guard<std::mutex> lk(mu_);
    exp_cache_.emplace(D, out);
    return out;
}

MultiSeries LubinTate::add(long D) const {
    if (D < 1) throw InvalidArgument("order must be at least 1");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = add_cache_.find(D);
        if (it != add_cache_.end()) return it->second;
    }
    const long Q = q();
    const PiPowerTable P(pi_, Q, D);
    const FElement zero = FElement::zero(field_);
    using Grid = std::vector<std::vector<FElement>>;
    auto grid = [&] { return Grid(D + 1, std::vector<FElement>(D + 1, zero)); };
    // fk[k][a][b] = [X^a Y^b] F^k; fk[1] holds F itself.
    std::vector<Grid> fk(Q + 1);
    for (long k = 1; k <= Q; ++k) fk[k] = grid();
    Grid& c = fk[1];
    c[1][0] = FElement::from_int(field_, 1);
    c[0][1] = FElement::from_int(field_, 1);
    for (long n = 2; n <= D; ++n) {
        for (long a = 0; a <= n; ++a) {
            const long b = n - a;
            for (long k = 2; k <= Q; ++k) {
                if (n < k) continue;
                FElement s = zero;
                for (long i = 0; i <= a; ++i)
                    for (long j = 0; j <= b; ++j) {
                        const long deg = i + j;
                        if (deg < 1 || deg > n - k + 1) continue;
                        if (c[i][j].is_exact_zero() || fk[k - 1][a - i][b - j].is_exact_zero()) continue;
                        s += c[i][j] * fk[k - 1][a - i][b - j];
                    }
                fk[k][a][b] = s;
            }
            FElement rhs = fk[Q][a][b];
            for (long i = 0; i <= a; ++i)
                for (long j = 0; j <= b; ++j) {
                    if (i + j >= n || c[i][j].is_exact_zero()) continue;
                    const FElement x = i == 0 ? (a == 0 ? FElement::from_int(field_, 1) : zero) : P.at(i, a);
                    if (x.is_exact_zero()) continue;
                    const FElement y = j == 0 ? (b == 0 ? FElement::from_int(field_, 1) : zero) : P.at(j, b);
                    if (y.is_exact_zero()) continue;
                    rhs -= c[i][j] * x * y;
                }
            c[a][b] = rhs / (P.pipow(n) - pi_);
        }
    }
    MultiSeries out(field_, 2, D);
    for (long a = 0; a <= D; ++a)
        for (long b = 0; a + b <= D; ++b) out.set({a, b}, c[a][b]);
    std::lock_guard<std::mutex> lk(mu_);
    add_cache_.emplace(D, out);
    return out;
}

TruncSeries LubinTate::v_series(long D) const {
    if (D < 0) throw InvalidArgument("order must be nonnegative");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = v_cache_.find(D);
        if (it != v_cache_.end()) return it->second;
    }
    const MultiSeries F = add(D + 1);
    TruncSeries out(field_, D);
    for (long a = 0; a <= D; ++a) out.set(a, F.coeff({a, 1}));
    std::lock_guard<std::mutex> lk(mu_);
    v_cache_.emplace(D, out);
    return out;
}

TruncSeries LubinTate::q_poly(long k) const {
    if (k < 0) throw InvalidArgument("level must be nonnegative");
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = q_cache_.find(k);
        if (it != q_cache_.end()) return it->second;
    }
    TruncSeries out(field_);
    if (k == 0) {
        out = TruncSeries::variable(field_);
    } else if (k == 1) {
        out.set(0, pi_);
        out.set(q() - 1, FElement::from_int(field_, 1));
    } else {
        out = q_poly(k - 1).compose(mult_by_pi(q()));
    }
    std::lock_guard<std::mutex> lk(mu_);
    q_cache_.emplace(k, out);
    return out;
}

TruncSeries LubinTate::add_series(const TruncSeries& f, const TruncSeries& g, long D) const {
    const MultiSeries F = add(D);
    const FElement zero = FElement::zero(field_);
    std::vector<TruncSeries> gp{TruncSeries::constant(FElement::from_int(field_, 1), D)};
    for (long b = 1; b <= D; ++b) gp.push_back((gp.back() * g).truncated(D));
    TruncSeries acc(field_, D);
    for (long a = D; a >= 0; --a) {
        TruncSeries inner(field_, D);
        for (long b = 0; a + b <= D; ++b) {
            const FElement c = F.coeff({a, b});
            if (!c.is_exact_zero()) inner += c * gp[b];
        }
        acc = (acc * f).truncated(D) + inner;
    }
    return acc.truncated(D);
}

} // namespace ltp
