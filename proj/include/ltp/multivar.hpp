#pragma once

// Series in Y_0, ..., Y_(h-1) for F unramified of degree h, where Y_j stands
// for the conjugate variable y_(sigma^j) and Y_0 = u.

#include <map>

#include "ltp/formal_group.hpp"
#include "ltp/multi_series.hpp"

namespace ltp {

/// Coefficients x_i of x = sum_i x_i Y^i, indexed by exponents over the
/// variables Y_1 .. Y_(h-1); every x_i is a series in Y_0 alone.
struct TaylorDecomposition {
    std::map<Exponent, TruncSeries> terms;
    /// Each x_i from the alternating derivative formula, as computed.
    std::map<Exponent, MultiSeries> formula;
};

class MultiRing {
public:
    /// Requires F = Q_p or F unramified.
    explicit MultiRing(FieldPtr field);

    const FieldPtr& field() const { return lt_.field(); }
    const LubinTate& lubin_tate() const { return lt_; }
    int nvars() const { return field()->h(); }

    MultiSeries variable(int j, std::optional<long> order = std::nullopt) const;

    /// Y_j -> [c]^(sigma^j)(Y_j), modulo total degree D + 1.
    MultiSeries gamma(const FElement& c, const MultiSeries& x, long D) const;
    /// Y_j -> sigma^j(pi) Y_j + Y_j^q. Negative powers of Y_0 are rejected.
    MultiSeries phi(const MultiSeries& x) const;
    MultiSeries partial(int j, const MultiSeries& x) const;
    /// log^(sigma^j)(Y_j) and v^(sigma^j)(Y_j), modulo degree D + 1.
    MultiSeries t_tau(int j, long D) const;
    MultiSeries v_tau(int j, long D) const;
    /// t_j v_j d/dY_j, modulo degree D + 1.
    MultiSeries nabla(int j, const MultiSeries& x, long D) const;

    /// min over monomials of val_p(a) + sum_j i_j p^j / r'.
    Valuation gauss_val(const MultiSeries& x, const mpq_class& r) const;

    /// x_i by extraction and by
    ///   x_i = 1/i! sum_k (-1)^|k| Y^k/k! d^(k+i) x
    /// (the approximants y_n taken to be 0). Throws DecompositionFailure if
    /// the two disagree, if some x_i is not killed by every d_j (j != 0) or
    /// if the x_i do not reassemble to x.
    TaylorDecomposition taylor_decompose(const MultiSeries& x) const;

    /// Termwise integration in Y_j, j != 0. Impossible over Q_p.
    MultiSeries antiderivative(int j, const MultiSeries& x) const;

private:
    void check_var(int j, bool allow_zero) const;
    void check_input(const MultiSeries& x) const;
    LubinTate lt_;
};

/// Y^e over the variables Y_1 .. Y_(h-1), with Y_0 exponent 0.
Exponent with_y0(const Exponent& rest, long e0 = 0);

}  // namespace ltp
