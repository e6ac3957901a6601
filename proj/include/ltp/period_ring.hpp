#pragma once

// One-variable model of the period rings: Laurent series in u over F with
// the Gauss values V(., r), Frobenius, its left inverse psi, the action of
// Gamma through [c](u), and the derivations d/du and nabla.

#include <random>
#include <vector>

#include "ltp/formal_group.hpp"

namespace ltp {

/// r' = r * e * p/(p-1) * (q-1)/q.
mpq_class r_prime(const Field& F, const mpq_class& r);
/// r_k = p^(k*h - 1) * (p - 1).
mpq_class r_level(const Field& F, long k);

/// V(x, r) = min_k val_p(a_k) + k/r' over the known coefficients. Requires
/// r > 1 unless x is a power series.
Valuation gauss_val(const TruncSeries& x, const mpq_class& r);
/// V(x, [r; s]) = min(V(x, r), V(x, s)).
Valuation interval_val(const TruncSeries& x, const mpq_class& r, const mpq_class& s);

/// exp(l) for val_p(l) > 1/(p-1); precision capped by the neglected tail.
FElement exp_field(const FElement& l);

struct OrbitSample {
    FElement ell;
    FElement c;
    Valuation val_ell;
    /// Minimum coefficient valuation of gamma_c(x) - sum_{k<=K} ell^k w_k.
    Valuation error;
    /// (K+1) val(ell) - loss.
    Valuation bound;
    /// Audited loss: (K+1) val(ell) - min_{K<k<=K+L} (k val(ell) + mu(w_k)).
    mpq_class loss;
    bool tail_decays = false;
    bool pass = false;
};

struct OrbitReport {
    std::vector<TruncSeries> w;  // w_0 .. w_(K+L)
    long K = 0;
    long lookahead = 0;
    std::vector<OrbitSample> samples;
    bool pass() const;
};

class PeriodRing {
public:
    explicit PeriodRing(FieldPtr field);

    const FieldPtr& field() const { return lt_.field(); }
    const LubinTate& lubin_tate() const { return lt_; }

    /// x(u) -> x([pi](u)). Negative powers are rejected: their image has an
    /// infinite principal expansion with unbounded denominators.
    TruncSeries phi(const TruncSeries& x) const;
    /// f_0 in x = sum_{i<q} phi(f_i) u^i, for exact polynomials.
    TruncSeries psi(const TruncSeries& x) const;
    /// All components f_0 .. f_(q-1) of the decomposition above.
    std::vector<TruncSeries> decompose(const TruncSeries& x) const;
    /// x(u) -> x([c](u)) modulo u^(D+1), c a unit.
    TruncSeries gamma(const FElement& c, const TruncSeries& x, long D) const;
    /// t_F = log(u) modulo u^(D+1).
    TruncSeries t_F(long D) const;
    /// d/du.
    TruncSeries partial(const TruncSeries& x) const { return x.derivative(); }
    /// t_F * v(u) * d/du, modulo u^(D+1).
    TruncSeries nabla(const TruncSeries& x, long D) const;

    /// w_k = nabla^k(x)/k! for k <= K + lookahead, and certificates comparing
    /// gamma_c(x) with sum_{k<=K} ell^k w_k for random ell with
    /// val_pi(ell) >= n (and val_p(ell) > 1/(p-1)).
    OrbitReport orbit_taylor(const TruncSeries& x, long n, long K, long D, int samples, std::mt19937_64& rng,
                             long lookahead = 4) const;

private:
    LubinTate lt_;
};

/// w_{n,l} = sum_{i=l}^{m-1} n_i (q^(i-l) - 1)/(q - 1), n_i the base-q digits of n.
mpz_class mahler_weight(const mpz_class& n, long level, long q);

struct WeightBoundReport {
    long checked = 0;
    long violations = 0;
    mpq_class max_ratio = 0;  // max of w / (n/(q^l (q-1))) over n >= 1
};
/// Checks w_{n,l} <= n/(q^l (q-1)) for all 0 <= n <= n_max.
WeightBoundReport weight_bound_check(long level, const mpz_class& n_max, long q);

struct DeepNorm {
    Valuation computed;   // gauss_val(u^n, r_level)
    mpq_class closed_form;  // n/(e q^(level-1) (q-1))
    bool pass;
};
/// V(u^n, r_level) against its closed form; level = k + m >= 1.
DeepNorm deep_norm(const Field& F, long n, long level);

}  // namespace ltp
