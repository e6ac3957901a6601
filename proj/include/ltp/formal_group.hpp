#pragma once

// The Lubin-Tate formal group of F in the coordinate [pi](T) = T^q + pi*T.

#include <map>
#include <memory>
#include <mutex>

#include "ltp/multi_series.hpp"
#include "ltp/series.hpp"

namespace ltp {

class LubinTate {
public:
    /// The field's precision cap is the working relative precision.
    explicit LubinTate(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    long q() const { return field_->q(); }
    const FElement& pi() const { return pi_; }

    /// T^q + pi*T, as an exact polynomial. Requires D >= q.
    TruncSeries mult_by_pi(long D) const;
    /// [a](T) modulo T^(D+1) for a in O_F, solved degree by degree from
    /// [a]([pi](T)) = [pi]([a](T)).
    TruncSeries mult_by_a(const FElement& a, long D) const;
    /// log(T) modulo T^(D+1), from log([pi](T)) = pi*log(T).
    TruncSeries log(long D) const;
    /// Compositional inverse of log.
    TruncSeries exp(long D) const;
    /// The group law X (+) Y in variables (Y_0, Y_1) = (X, Y), truncated at
    /// total degree D, solved from F([pi]X, [pi]Y) = [pi](F(X, Y)).
    MultiSeries add(long D) const;
    /// v(T) = d(T (+) U)/dU at U = 0, modulo T^(D+1).
    TruncSeries v_series(long D) const;
    /// Q_0 = T, Q_1 = [pi](T)/T, Q_(k+1) = Q_k([pi](T)); exact polynomials.
    TruncSeries q_poly(long k) const;

    /// F(f, g) for one-variable series with f(0) = g(0) = 0, modulo T^(D+1).
    TruncSeries add_series(const TruncSeries& f, const TruncSeries& g, long D) const;

private:
    FieldPtr field_;
    FElement pi_;
    mutable std::mutex mu_;
    mutable std::map<long, TruncSeries> log_cache_, exp_cache_, v_cache_;
    mutable std::map<long, MultiSeries> add_cache_;
    mutable std::map<long, TruncSeries> q_cache_;
};

} // namespace ltp
