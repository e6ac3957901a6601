#pragma once

// Exact arithmetic in O_F and F for a finite extension F/Q_p presented as
// Z_p[x]/(f), with absolute precision tracked in units of the uniformizer.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "ltp/errors.hpp"

namespace ltp {

using IntPoly = std::vector<mpz_class>;

/// Precision value standing for "known exactly".
inline constexpr long kExactPrec = std::numeric_limits<long>::max() / 4;

/// A rational number or +infinity. Used for every valuation the library
/// reports.
class Valuation {
public:
    Valuation() : infinite_(true) {}
    explicit Valuation(mpq_class v) : infinite_(false), value_(std::move(v)) { value_.canonicalize(); }
    static Valuation infinity() { return Valuation(); }

    bool is_infinite() const { return infinite_; }
    const mpq_class& value() const;

    friend bool operator==(const Valuation& a, const Valuation& b);
    friend bool operator<(const Valuation& a, const Valuation& b);
    friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend Valuation operator+(const Valuation& a, const Valuation& b);
    friend Valuation operator-(const Valuation& a, const mpq_class& b);

    /// "+inf", "n" or "n/d".
    std::string to_string() const;

private:
    bool infinite_;
    mpq_class value_;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return b < a ? b : a; }

/// Rational formatted as "n" or "n/d".
std::string rational_string(const mpq_class& q);
/// Inverse of rational_string; also accepts plain integers.
mpq_class parse_rational(const std::string& s);

enum class Flavor { Qp, Unramified, Eisenstein };

std::string flavor_name(Flavor f);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The base field: the prime, the presentation O_F = Z_p[x]/(f) and the default
/// relative precision cap used for constants. Mixed extensions (e > 1 and
/// h > 1) are rejected.
class Field {
public:
    static FieldPtr qp(long p, int prec);
    /// Unramified of degree h; f is the lexicographically first monic lift of
    /// an irreducible polynomial of degree h over F_p.
    static FieldPtr unramified(long p, int h, int prec);
    /// Totally ramified; `poly` lists the coefficients of the monic Eisenstein
    /// polynomial from the constant term up.
    static FieldPtr eisenstein(long p, const IntPoly& poly, int prec);

    Flavor flavor() const { return flavor_; }
    long p() const { return p_; }
    int h() const { return h_; }
    int e() const { return e_; }
    int degree() const { return n_; }
    long q() const { return q_; }
    int prec() const { return prec_; }
    const IntPoly& poly() const { return f_; }

    /// Same field with a different precision cap.
    FieldPtr with_prec(int prec) const;

    /// Same prime and presentation (the precision cap is ignored).
    bool same_as(const Field& other) const;

    mpz_class ppow(long k) const;

    // Integer-polynomial plumbing shared by the element types. All inputs and
    // outputs have length degree() unless stated otherwise.

    /// Reduce an arbitrary-length integer polynomial modulo f (exactly).
    IntPoly reduce_mod_f(IntPoly c) const;
    /// Product modulo f, exact integers.
    IntPoly mul(const IntPoly& a, const IntPoly& b) const;
    /// Product modulo f and modulo p^m.
    IntPoly mul_mod(const IntPoly& a, const IntPoly& b, long m) const;
    /// pi-adic valuation of an integer representative; kExactPrec when zero.
    long val_int(const IntPoly& c) const;
    /// Canonical residue modulo pi^rel: coefficient i reduced modulo p^ceil((rel-i)/e)
    /// when ramified, modulo p^rel otherwise.
    void reduce_canonical(IntPoly& c, long rel) const;
    /// Multiply by pi^k, exactly.
    IntPoly mul_pi_pow(IntPoly c, long k) const;
    /// Divide by pi^k, assuming val_int(c) >= k; the result is correct modulo
    /// pi^rel.
    IntPoly div_pi_pow(IntPoly c, long k, long rel) const;
    /// Inverse of a unit modulo pi^rel.
    IntPoly unit_inverse(const IntPoly& u, long rel) const;
    /// Image of x under the Frobenius sigma, modulo p^m.
    IntPoly sigma_x(long m) const;

    std::string describe() const;

private:
    Field() = default;
    void init_sigma();

    Flavor flavor_ = Flavor::Qp;
    long p_ = 2;
    int h_ = 1;
    int e_ = 1;
    int n_ = 1;
    long q_ = 2;
    int prec_ = 20;
    IntPoly f_;
    IntPoly sigma_x_;
    long sigma_prec_ = 0;
    std::vector<mpz_class> ppow_;
};

FieldPtr field_with_prec(const FieldPtr& f, int prec);

/// An element of F = O_F[1/pi] written pi^shift * unit, the unit known
/// modulo pi^rel (capped relative precision). Three states: exact zero,
/// inexact zero O(pi^A), and a normalized nonzero value.
class FElement {
public:
    FElement() = default;
    explicit FElement(FieldPtr field) : field_(std::move(field)) {}

    static FElement zero(const FieldPtr& field) { return FElement(field); }
    static FElement inexact_zero(const FieldPtr& field, long abs_prec);
    static FElement from_int(const FieldPtr& field, const mpz_class& v, long rel = -1);
    static FElement from_int(const FieldPtr& field, long v, long rel = -1) { return from_int(field, mpz_class(v), rel); }
    static FElement from_rational(const FieldPtr& field, const mpq_class& v, long rel = -1);
    /// sum_i basis[i] x^i; rational coefficients allowed.
    static FElement from_basis(const FieldPtr& field, const std::vector<mpq_class>& basis, long rel = -1);
    static FElement uniformizer(const FieldPtr& field, long rel = -1);
    /// pi^shift * c, with c any integer representative known modulo pi^(abs_prec - shift).
    static FElement from_raw(const FieldPtr& field, IntPoly c, long shift, long abs_prec);
    /// Digit record: unit coefficients given by base-p digits (least significant first).
    static FElement from_digits(const FieldPtr& field, const std::vector<std::vector<long>>& digits, long rel, long shift);

    const FieldPtr& field() const { return field_; }
    bool has_field() const { return static_cast<bool>(field_); }

    bool is_exact_zero() const { return exact_zero_; }
    /// Exact zero or indistinguishable from zero at its precision.
    bool is_zero() const { return exact_zero_ || rel_ == 0; }
    long abs_prec() const { return exact_zero_ ? kExactPrec : shift_ + rel_; }
    long rel_prec() const { return exact_zero_ ? kExactPrec : rel_; }
    long shift() const { return shift_; }
    const IntPoly& unit() const { return unit_; }

    /// pi-adic valuation; +inf for the exact zero.
    /// Throws IndeterminateValuation when the value is zero at its precision.
    Valuation val_pi() const;
    /// val_p = val_pi / e.
    Valuation val_p() const;
    /// Lower bound of the valuation (abs_prec for inexact zeros).
    long val_lower_bound() const;

    FElement operator-() const;
    FElement& operator+=(const FElement& o) { return *this = *this + o; }
    FElement& operator-=(const FElement& o) { return *this = *this - o; }
    FElement& operator*=(const FElement& o) { return *this = *this * o; }
    friend FElement operator+(const FElement& a, const FElement& b);
    friend FElement operator-(const FElement& a, const FElement& b);
    friend FElement operator*(const FElement& a, const FElement& b);
    friend FElement operator/(const FElement& a, const FElement& b);

    FElement inverse() const;
    FElement pow(long n) const;
    FElement mul_int(const mpz_class& k) const;
    FElement div_int(const mpz_class& k) const;

    /// Drop precision to at most `abs_prec`.
    FElement truncated(long abs_prec) const;
    /// Absolute Frobenius (unramified and Qp flavors only).
    FElement frobenius() const;
    FElement frobenius_pow(long k) const;

    /// The difference is zero at the available precision.
    bool equals(const FElement& o) const;
    /// Same canonical representation (field, state, shift, precision, unit).
    bool identical(const FElement& o) const;

    /// Integer residue class modulo pi of a value of valuation >= 0.
    IntPoly residue() const;

    /// Compact exact rendering: "n", "n/d", or for degree > 1 the
    /// coefficients on the basis x^i separated by ';'.
    std::string to_string() const;
    /// Value as rational coefficients on the basis 1, x, ..., x^(n-1).
    std::vector<mpq_class> to_basis() const;
    /// Base-p digits of each unit coefficient, least significant first.
    std::vector<std::vector<long>> digits() const;

private:
    void check_same(const FElement& o) const;

    FieldPtr field_;
    IntPoly unit_;
    long shift_ = 0;
    long rel_ = 0;
    bool exact_zero_ = true;
};

/// Reduction of a valuation-0 element to the residue field, as coefficients in
/// F_p on the basis x^i.
std::vector<long> residue_of(const FElement& x);

/// Teichmuller representative of a residue (coefficients on the basis x^i over
/// F_p) at relative precision `prec`; exact zero for a zero residue.
FElement teichmuller(const FieldPtr& field, const std::vector<long>& residue, long prec);

/// Absolute Frobenius sigma on O_F.
inline FElement frobenius_sigma(const FElement& x) { return x.frobenius(); }

/// x / y with precision bookkeeping; throws PrecisionExhausted when y is
/// indistinguishable from zero.
inline FElement divide_tracked(const FElement& x, const FElement& y) { return x / y; }

} // namespace ltp
