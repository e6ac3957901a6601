#include "ltp/padic.hpp"

#include <algorithm>
#include <sstream>

namespace ltp {

// ---------------------------------------------------------------- Valuation

const mpq_class& Valuation::value() const {
    if (infinite_) throw InvalidArgument("value() of an infinite valuation");
    return value_;
}

bool operator==(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
}

bool operator<(const Valuation& a, const Valuation& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return Valuation::infinity();
    return Valuation(mpq_class(a.value_ + b.value_));
}

Valuation operator-(const Valuation& a, const mpq_class& b) {
    if (a.infinite_) return a;
    return Valuation(mpq_class(a.value_ - b));
}

std::string Valuation::to_string() const {
    return infinite_ ? std::string("+inf") : rational_string(value_);
}

std::string rational_string(const mpq_class& q) {
    mpq_class c(q);
    c.canonicalize();
    return c.get_str(10);
}

mpq_class parse_rational(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (ch != ' ' && ch != '+') t.push_back(ch);
    if (t.empty()) throw InvalidArgument("empty rational");
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw InvalidArgument("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string flavor_name(Flavor f) {
    switch (f) {
    case Flavor::Qp: return "qp";
    case Flavor::Unramified: return "unramified";
    case Flavor::Eisenstein: return "eisenstein";
    }
    return "?";
}

// -------------------------------------------------------------------- Field

namespace {

long ceil_div(long a, long b) { return a <= 0 ? 0 : (a + b - 1) / b; }

bool is_prime(long p) {
    mpz_class z(p);
    return p >= 2 && mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

// Polynomials over F_p as coefficient vectors, low degree first.
using SmallPoly = std::vector<long>;

void trim(SmallPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

SmallPoly poly_mod(SmallPoly a, const SmallPoly& b, long p) {
    trim(a);
    long lead_inv = 1;
    {
        mpz_class l(b.back()), pp(p), inv;
        mpz_invert(inv.get_mpz_t(), l.get_mpz_t(), pp.get_mpz_t());
        lead_inv = inv.get_si();
    }
    while (a.size() >= b.size()) {
        long t = (a.back() * lead_inv) % p;
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = ((a[off + i] - t * b[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

bool irreducible_mod_p(const SmallPoly& f, long p) {
    const int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= n / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long t = 0; t < count; ++t) {
            SmallPoly g(d + 1);
            long s = t;
            for (int i = 0; i < d; ++i) {
                g[i] = s % p;
                s /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

mpz_class Field::ppow(long k) const {
    if (k < 0) throw InvalidArgument("negative power of p");
    if (static_cast<size_t>(k) < ppow_.size()) return ppow_[k];
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k));
    return r;
}

FieldPtr Field::qp(long p, int prec) {
    if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
    if (prec < 1) throw InvalidArgument("precision must be >= 1");
    std::shared_ptr<Field> f(new Field());
    f->flavor_ = Flavor::Qp;
    f->p_ = p;
    f->h_ = f->e_ = f->n_ = 1;
    f->q_ = p;
    f->prec_ = prec;
    f->f_ = {0, 1};
    for (long k = 0; k < 4L * prec + 64; ++k) f->ppow_.push_back(k == 0 ? mpz_class(1) : mpz_class(f->ppow_.back() * p));
    return f;
}

FieldPtr Field::unramified(long p, int h, int prec) {
    if (h < 1) throw InvalidArgument("residue degree h must be >= 1");
    if (h == 1) {
        auto base = qp(p, prec);
        std::shared_ptr<Field> f(new Field(*base));
        f->flavor_ = Flavor::Unramified;
        return f;
    }
    if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
    if (prec < 1) throw InvalidArgument("precision must be >= 1");
    std::shared_ptr<Field> f(new Field());
    f->flavor_ = Flavor::Unramified;
    f->p_ = p;
    f->h_ = h;
    f->e_ = 1;
    f->n_ = h;
    long q = 1;
    for (int i = 0; i < h; ++i) q *= p;
    f->q_ = q;
    f->prec_ = prec;
    for (long k = 0; k < 4L * prec + 64; ++k) f->ppow_.push_back(k == 0 ? mpz_class(1) : mpz_class(f->ppow_.back() * p));
    for (long t = 0; t < q; ++t) {
        SmallPoly cand(h + 1);
        long s = t;
        for (int i = 0; i < h; ++i) {
            cand[i] = s % p;
            s /= p;
        }
        cand[h] = 1;
        if (cand[0] != 0 && irreducible_mod_p(cand, p)) {
            for (long c : cand) f->f_.emplace_back(c);
            break;
        }
    }
    f->init_sigma();
    return f;
}

FieldPtr Field::eisenstein(long p, const IntPoly& poly, int prec) {
    if (!is_prime(p)) throw InvalidArgument("p must be prime, got " + std::to_string(p));
    if (prec < 1) throw InvalidArgument("precision must be >= 1");
    if (poly.size() < 3) throw InvalidArgument("Eisenstein polynomial must have degree >= 2");
    if (poly.back() != 1) throw InvalidArgument("Eisenstein polynomial must be monic");
    const mpz_class pp(p);
    for (size_t i = 0; i + 1 < poly.size(); ++i)
        if (mpz_divisible_p(poly[i].get_mpz_t(), pp.get_mpz_t()) == 0)
            throw InvalidArgument("Eisenstein polynomial: lower coefficients must be divisible by p");
    if (mpz_divisible_p(poly[0].get_mpz_t(), mpz_class(pp * pp).get_mpz_t()) != 0)
        throw InvalidArgument("Eisenstein polynomial: constant term must be p times a unit");
    std::shared_ptr<Field> f(new Field());
    f->flavor_ = Flavor::Eisenstein;
    f->p_ = p;
    f->h_ = 1;
    f->e_ = static_cast<int>(poly.size()) - 1;
    f->n_ = f->e_;
    f->q_ = p;
    f->prec_ = prec;
    f->f_ = poly;
    for (long k = 0; k < 4L * prec + 64; ++k) f->ppow_.push_back(k == 0 ? mpz_class(1) : mpz_class(f->ppow_.back() * p));
    return f;
}

FieldPtr Field::with_prec(int prec) const {
    if (prec < 1) throw InvalidArgument("precision must be >= 1");
    std::shared_ptr<Field> f(new Field(*this));
    f->prec_ = prec;
    f->ppow_.clear();
    for (long k = 0; k < 4L * prec + 64; ++k) f->ppow_.push_back(k == 0 ? mpz_class(1) : mpz_class(f->ppow_.back() * p_));
    if (flavor_ == Flavor::Unramified && h_ > 1) f->init_sigma();
    return f;
}

FieldPtr field_with_prec(const FieldPtr& f, int prec) { return f->with_prec(prec); }

bool Field::same_as(const Field& o) const {
    if (this == &o) return true;
    return p_ == o.p_ && e_ == o.e_ && h_ == o.h_ && f_ == o.f_ &&
           (flavor_ == Flavor::Eisenstein) == (o.flavor_ == Flavor::Eisenstein);
}

IntPoly Field::reduce_mod_f(IntPoly c) const {
    for (long k = static_cast<long>(c.size()) - 1; k >= n_; --k) {
        if (c[k] == 0) continue;
        const mpz_class t = c[k];
        for (int i = 0; i < n_; ++i)
            if (f_[i] != 0) c[k - n_ + i] -= t * f_[i];
        c[k] = 0;
    }
    c.resize(n_);
    return c;
}

IntPoly Field::mul(const IntPoly& a, const IntPoly& b) const {
    if (n_ == 1) return {a[0] * b[0]};
    IntPoly c(2 * n_ - 1);
    for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n_; ++j) c[i + j] += a[i] * b[j];
    }
    return reduce_mod_f(std::move(c));
}

IntPoly Field::mul_mod(const IntPoly& a, const IntPoly& b, long m) const {
    IntPoly c = mul(a, b);
    const mpz_class mod = ppow(m);
    for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    return c;
}

long Field::val_int(const IntPoly& c) const {
    long best = kExactPrec;
    mpz_class tmp, pp(p_);
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (c[i] == 0) continue;
        long k = static_cast<long>(mpz_remove(tmp.get_mpz_t(), c[i].get_mpz_t(), pp.get_mpz_t()));
        best = std::min(best, flavor_ == Flavor::Eisenstein ? static_cast<long>(e_) * k + i : k);
    }
    return best;
}

void Field::reduce_canonical(IntPoly& c, long rel) const {
    c.resize(n_);
    for (int i = 0; i < n_; ++i) {
        const long m = flavor_ == Flavor::Eisenstein ? ceil_div(rel - i, e_) : rel;
        if (m <= 0) {
            c[i] = 0;
        } else {
            const mpz_class mod = ppow(m);
            mpz_fdiv_r(c[i].get_mpz_t(), c[i].get_mpz_t(), mod.get_mpz_t());
        }
    }
}

IntPoly Field::mul_pi_pow(IntPoly c, long k) const {
    c.resize(n_);
    if (k <= 0) return c;
    if (flavor_ != Flavor::Eisenstein) {
        const mpz_class s = ppow(k);
        for (auto& x : c) x *= s;
        return c;
    }
    for (long step = 0; step < k; ++step) {
        const mpz_class top = c[n_ - 1];
        for (int i = n_ - 1; i >= 1; --i) c[i] = c[i - 1] - top * f_[i];
        c[0] = -top * f_[0];
    }
    return c;
}

IntPoly Field::div_pi_pow(IntPoly c, long k, long rel) const {
    c.resize(n_);
    if (k <= 0) return c;
    if (flavor_ != Flavor::Eisenstein) {
        const mpz_class s = ppow(k);
        for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
        return c;
    }
    // x * g = -f_0 with g = x^(e-1) + f_(e-1) x^(e-2) + ... + f_1, and
    // f_0 = p * u0, so c / x = (c * g / p) * (-u0)^(-1).
    const long m = ceil_div(rel + k, e_) + 1;
    const mpz_class mod = ppow(m);
    IntPoly g(n_);
    for (int i = 0; i < n_; ++i) g[i] = f_[i + 1];
    mpz_class u0 = f_[0] / p_;
    u0 = -u0;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), u0.get_mpz_t(), mod.get_mpz_t());
    const mpz_class pp(p_);
    for (long step = 0; step < k; ++step) {
        IntPoly t = mul(c, g);
        for (auto& x : t) {
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
            x *= inv;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
        }
        c = std::move(t);
    }
    return c;
}

IntPoly Field::unit_inverse(const IntPoly& u, long rel) const {
    IntPoly y(n_);
    const mpz_class pp(p_);
    if (flavor_ == Flavor::Unramified && n_ > 1) {
        // u^(q-2) in the residue field.
        IntPoly base = u, acc(n_);
        for (auto& x : base) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
        acc[0] = 1;
        long ex = q_ - 2;
        while (ex > 0) {
            if (ex & 1) acc = mul_mod(acc, base, 1);
            base = mul_mod(base, base, 1);
            ex >>= 1;
        }
        y = acc;
    } else {
        mpz_class r = u[0] % pp;
        if (r < 0) r += pp;
        if (r == 0) throw PrecisionExhausted("inverse of a non-unit");
        mpz_invert(y[0].get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
    }
    const long m = ceil_div(rel, e_) + 1;
    long known = 1;
    IntPoly two(n_);
    two[0] = 2;
    while (known < rel) {
        IntPoly uy = mul_mod(u, y, m);
        for (int i = 0; i < n_; ++i) uy[i] = two[i] - uy[i];
        y = mul_mod(y, uy, m);
        known *= 2;
    }
    reduce_canonical(y, rel);
    return y;
}

namespace {

IntPoly newton_sigma(const Field& F, long m) {
    // Root of f congruent to x^p modulo p.
    const int n = F.degree();
    IntPoly x(n);
    x[1] = 1;
    IntPoly w(n);
    w[0] = 1;
    for (long i = 0; i < F.p(); ++i) w = F.mul_mod(w, x, 1);
    const auto& f = F.poly();
    long known = 1;
    while (known < m) {
        known = std::min(2 * known, m);
        // f(w) and f'(w) by Horner.
        IntPoly fv(n), dv(n);
        fv[0] = f[n];
        dv[0] = f[n] * n;
        for (int i = n - 1; i >= 0; --i) {
            fv = F.mul_mod(fv, w, known + 1);
            fv[0] += f[i];
            if (i >= 1) {
                dv = F.mul_mod(dv, w, known + 1);
                dv[0] += f[i] * i;
            }
        }
        IntPoly dinv = F.unit_inverse(dv, known + 1);
        IntPoly corr = F.mul_mod(fv, dinv, known + 1);
        for (int i = 0; i < n; ++i) w[i] -= corr[i];
        F.reduce_canonical(w, known);
    }
    return w;
}

} // namespace

void Field::init_sigma() {
    sigma_prec_ = prec_ + 8;
    sigma_x_ = newton_sigma(*this, sigma_prec_);
}

IntPoly Field::sigma_x(long m) const {
    if (flavor_ != Flavor::Unramified || n_ == 1) {
        IntPoly r(n_);
        if (n_ > 1) r[1] = 1;
        return r;
    }
    IntPoly r = m <= sigma_prec_ ? sigma_x_ : newton_sigma(*this, m);
    reduce_canonical(r, m);
    return r;
}

std::string Field::describe() const {
    std::ostringstream os;
    auto poly_str = [&] {
        std::ostringstream ps;
        bool first = true;
        for (int i = n_; i >= 0; --i) {
            if (f_[i] == 0) continue;
            mpz_class c = f_[i];
            if (!first) ps << (c < 0 ? " - " : " + ");
            else if (c < 0) ps << "-";
            mpz_class a = abs(c);
            if (i == 0 || a != 1) ps << a.get_str();
            if (i > 0) ps << (i == 0 || a != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
            first = false;
        }
        return ps.str();
    };
    switch (flavor_) {
    case Flavor::Qp: os << "Q_" << p_; break;
    case Flavor::Unramified: os << "unramified(p=" << p_ << ", h=" << h_ << ", f=" << poly_str() << ")"; break;
    case Flavor::Eisenstein: os << "eisenstein(p=" << p_ << ", e=" << e_ << ", f=" << poly_str() << ")"; break;
    }
    return os.str();
}

// ----------------------------------------------------------------- FElement

FElement FElement::inexact_zero(const FieldPtr& field, long abs_prec) {
    FElement r(field);
    r.exact_zero_ = false;
    r.unit_.assign(field->degree(), mpz_class(0));
    r.shift_ = abs_prec;
    r.rel_ = 0;
    return r;
}

FElement FElement::from_raw(const FieldPtr& field, IntPoly c, long shift, long abs_prec) {
    if (abs_prec >= kExactPrec) throw InvalidArgument("from_raw needs a finite precision");
    const Field& F = *field;
    if (static_cast<int>(c.size()) > F.degree()) c = F.reduce_mod_f(std::move(c));
    c.resize(F.degree());
    const long room = abs_prec - shift;
    if (room <= 0) return inexact_zero(field, abs_prec);
    F.reduce_canonical(c, room);
    const long w = F.val_int(c);
    if (w >= room) return inexact_zero(field, abs_prec);
    const long rel = room - w;
    c = F.div_pi_pow(std::move(c), w, rel);
    F.reduce_canonical(c, rel);
    FElement r(field);
    r.exact_zero_ = false;
    r.unit_ = std::move(c);
    r.shift_ = shift + w;
    r.rel_ = rel;
    return r;
}

FElement FElement::from_int(const FieldPtr& field, const mpz_class& v, long rel) {
    if (rel < 0) rel = field->prec();
    if (v == 0) return zero(field);
    mpz_class tmp;
    const mpz_class pp(field->p());
    long k = static_cast<long>(mpz_remove(tmp.get_mpz_t(), v.get_mpz_t(), pp.get_mpz_t()));
    IntPoly c(field->degree());
    c[0] = v;
    return from_raw(field, std::move(c), 0, static_cast<long>(field->e()) * k + rel);
}

FElement FElement::from_rational(const FieldPtr& field, const mpq_class& v, long rel) {
    if (rel < 0) rel = field->prec();
    if (v == 0) return zero(field);
    mpq_class c(v);
    c.canonicalize();
    if (c.get_den() == 1) return from_int(field, c.get_num(), rel);
    return from_int(field, c.get_num(), rel) / from_int(field, c.get_den(), rel);
}

FElement FElement::from_basis(const FieldPtr& field, const std::vector<mpq_class>& basis, long rel) {
    if (rel < 0) rel = field->prec();
    if (static_cast<int>(basis.size()) > field->degree())
        throw InvalidArgument("too many basis coefficients for " + field->describe());
    FElement acc = zero(field);
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i] == 0) continue;
        IntPoly mono(field->degree());
        mono[i] = 1;
        const long v = field->flavor() == Flavor::Eisenstein ? static_cast<long>(i) : 0;
        acc += from_rational(field, basis[i], rel) * from_raw(field, mono, 0, v + rel);
    }
    return acc;
}

FElement FElement::uniformizer(const FieldPtr& field, long rel) {
    if (rel < 0) rel = field->prec();
    if (field->flavor() != Flavor::Eisenstein) return from_int(field, field->p(), rel);
    IntPoly c(field->degree());
    c[1] = 1;
    return from_raw(field, std::move(c), 0, 1 + rel);
}

FElement FElement::from_digits(const FieldPtr& field, const std::vector<std::vector<long>>& digits, long rel,
                               long shift) {
    if (static_cast<int>(digits.size()) != field->degree())
        throw InvalidArgument("digit record must list one digit string per basis coefficient");
    IntPoly c(field->degree());
    for (size_t i = 0; i < digits.size(); ++i) {
        mpz_class acc = 0;
        for (size_t j = digits[i].size(); j-- > 0;) {
            if (digits[i][j] < 0 || digits[i][j] >= field->p()) throw InvalidArgument("digit out of range");
            acc = acc * field->p() + digits[i][j];
        }
        c[i] = acc;
    }
    if (rel <= 0) return inexact_zero(field, shift);
    FElement r = from_raw(field, c, shift, shift + rel);
    if (r.is_zero() || r.shift_ != shift) throw InvalidArgument("digit record is not a normalized unit");
    return r;
}

Valuation FElement::val_pi() const {
    if (exact_zero_) return Valuation::infinity();
    if (rel_ == 0)
        throw IndeterminateValuation("value is zero modulo pi^" + std::to_string(shift_) + " but not exactly zero");
    return Valuation(mpq_class(shift_));
}

Valuation FElement::val_p() const {
    Valuation v = val_pi();
    if (v.is_infinite()) return v;
    return Valuation(mpq_class(v.value() / field_->e()));
}

long FElement::val_lower_bound() const { return exact_zero_ ? kExactPrec : shift_; }

void FElement::check_same(const FElement& o) const {
    if (!field_->same_as(*o.field_))
        throw SpecMismatch("elements of " + field_->describe() + " and " + o.field_->describe());
}

FElement FElement::operator-() const {
    if (exact_zero_ || rel_ == 0) return *this;
    FElement r(*this);
    for (auto& x : r.unit_) x = -x;
    field_->reduce_canonical(r.unit_, rel_);
    return r;
}

FElement operator+(const FElement& a, const FElement& b) {
    if (a.exact_zero_) return b;
    if (b.exact_zero_) return a;
    a.check_same(b);
    const long A = std::min(a.abs_prec(), b.abs_prec());
    if (a.rel_ == 0) return b.truncated(A);
    if (b.rel_ == 0) return a.truncated(A);
    const long s = std::min(a.shift_, b.shift_);
    const Field& F = *a.field_;
    IntPoly c(F.degree());
    if (a.shift_ < A) c = F.mul_pi_pow(a.unit_, a.shift_ - s);
    if (b.shift_ < A) {
        IntPoly t = F.mul_pi_pow(b.unit_, b.shift_ - s);
        for (int i = 0; i < F.degree(); ++i) c[i] += t[i];
    }
    return FElement::from_raw(a.field_, std::move(c), s, A);
}

FElement operator-(const FElement& a, const FElement& b) { return a + (-b); }

FElement operator*(const FElement& a, const FElement& b) {
    if (a.exact_zero_) return a;
    if (b.exact_zero_) return b;
    a.check_same(b);
    if (a.rel_ == 0 || b.rel_ == 0) return FElement::inexact_zero(a.field_, a.shift_ + b.shift_);
    const long rel = std::min(a.rel_, b.rel_);
    const Field& F = *a.field_;
    FElement r(a.field_);
    r.exact_zero_ = false;
    r.unit_ = F.mul(a.unit_, b.unit_);
    F.reduce_canonical(r.unit_, rel);
    r.shift_ = a.shift_ + b.shift_;
    r.rel_ = rel;
    return r;
}

FElement FElement::inverse() const {
    if (is_zero()) throw PrecisionExhausted("division by an element indistinguishable from zero");
    FElement r(field_);
    r.exact_zero_ = false;
    r.unit_ = field_->unit_inverse(unit_, rel_);
    r.shift_ = -shift_;
    r.rel_ = rel_;
    return r;
}

FElement operator/(const FElement& a, const FElement& b) {
    a.check_same(b);
    FElement inv = b.inverse();
    return a * inv;
}

FElement FElement::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    FElement acc = from_int(field_, 1, exact_zero_ ? field_->prec() : std::max<long>(rel_, field_->prec()));
    FElement base = *this;
    while (n > 0) {
        if (n & 1) acc *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return acc;
}

FElement FElement::mul_int(const mpz_class& k) const {
    if (exact_zero_) return *this;
    return *this * from_int(field_, k, std::max<long>(rel_, 1));
}

FElement FElement::div_int(const mpz_class& k) const {
    if (k == 0) throw PrecisionExhausted("division by zero");
    if (exact_zero_) return *this;
    return *this / from_int(field_, k, std::max<long>(rel_, 1));
}

FElement FElement::truncated(long A) const {
    if (exact_zero_ || A >= abs_prec()) return *this;
    if (shift_ >= A) return inexact_zero(field_, A);
    FElement r(*this);
    r.rel_ = A - shift_;
    field_->reduce_canonical(r.unit_, r.rel_);
    return r;
}

FElement FElement::frobenius() const {
    if (exact_zero_ || rel_ == 0) return *this;
    const Field& F = *field_;
    if (F.flavor() != Flavor::Unramified || F.degree() == 1) return *this;
    const long m = rel_;
    const IntPoly w = F.sigma_x(m);
    const int n = F.degree();
    IntPoly acc(n);
    acc[0] = unit_[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        acc = F.mul_mod(acc, w, m);
        acc[0] += unit_[i];
    }
    F.reduce_canonical(acc, m);
    FElement r(*this);
    r.unit_ = std::move(acc);
    return r;
}

FElement FElement::frobenius_pow(long k) const {
    const long h = field_->h();
    k %= h;
    if (k < 0) k += h;
    FElement r = *this;
    for (long i = 0; i < k; ++i) r = r.frobenius();
    return r;
}

bool FElement::equals(const FElement& o) const {
    if (exact_zero_ && o.exact_zero_) return true;
    return (*this - o).is_zero();
}

bool FElement::identical(const FElement& o) const {
    if (exact_zero_ || o.exact_zero_) return exact_zero_ == o.exact_zero_;
    return field_->same_as(*o.field_) && shift_ == o.shift_ && rel_ == o.rel_ && unit_ == o.unit_;
}

IntPoly FElement::residue() const {
    const int n = field_->degree();
    IntPoly r(n);
    if (exact_zero_ || rel_ == 0) {
        if (!exact_zero_ && shift_ < 1) throw IndeterminateValuation("residue of an element known only modulo pi^0");
        return r;
    }
    if (shift_ < 0) throw InvalidArgument("residue of an element of negative valuation");
    if (shift_ > 0) return r;
    const mpz_class pp(field_->p());
    if (field_->flavor() == Flavor::Eisenstein) {
        mpz_fdiv_r(r[0].get_mpz_t(), unit_[0].get_mpz_t(), pp.get_mpz_t());
        return r;
    }
    for (int i = 0; i < n; ++i) mpz_fdiv_r(r[i].get_mpz_t(), unit_[i].get_mpz_t(), pp.get_mpz_t());
    return r;
}

std::vector<long> residue_of(const FElement& x) {
    IntPoly r = x.residue();
    const int len = x.field()->flavor() == Flavor::Eisenstein ? 1 : x.field()->degree();
    std::vector<long> out(len);
    for (int i = 0; i < len; ++i) out[i] = r[i].get_si();
    return out;
}

std::vector<mpq_class> FElement::to_basis() const {
    const Field& F = *field_;
    const int n = F.degree();
    std::vector<mpq_class> out(n, mpq_class(0));
    if (is_zero()) return out;
    if (F.flavor() != Flavor::Eisenstein) {
        for (int i = 0; i < n; ++i) {
            if (shift_ >= 0) {
                out[i] = mpq_class(unit_[i] * F.ppow(shift_));
            } else {
                out[i] = mpq_class(unit_[i], F.ppow(-shift_));
                out[i].canonicalize();
            }
        }
        return out;
    }
    if (shift_ >= 0) {
        IntPoly c = F.mul_pi_pow(unit_, shift_);
        for (int i = 0; i < n; ++i) out[i] = mpq_class(c[i]);
        return out;
    }
    // x^(-1) = -(x^(e-1) + f_(e-1) x^(e-2) + ... + f_1) / f_0
    const auto& f = F.poly();
    std::vector<mpq_class> xinv(n);
    for (int i = 0; i < n; ++i) {
        xinv[i] = mpq_class(-f[i + 1], f[0]);
        xinv[i].canonicalize();
    }
    for (int i = 0; i < n; ++i) out[i] = mpq_class(unit_[i]);
    for (long s = 0; s < -shift_; ++s) {
        std::vector<mpq_class> prod(2 * n - 1, mpq_class(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) prod[i + j] += out[i] * xinv[j];
        for (int k = 2 * n - 2; k >= n; --k) {
            if (prod[k] == 0) continue;
            for (int i = 0; i < n; ++i) prod[k - n + i] -= prod[k] * mpq_class(f[i]);
            prod[k] = 0;
        }
        for (int i = 0; i < n; ++i) {
            out[i] = prod[i];
            out[i].canonicalize();
        }
    }
    return out;
}

std::string FElement::to_string() const {
    const auto b = to_basis();
    std::string s;
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) s += ";";
        s += rational_string(b[i]);
    }
    return s;
}

std::vector<std::vector<long>> FElement::digits() const {
    const Field& F = *field_;
    std::vector<std::vector<long>> out(F.degree());
    if (is_zero()) return out;
    for (int i = 0; i < F.degree(); ++i) {
        long m = rel_;
        if (F.flavor() == Flavor::Eisenstein) m = rel_ - i <= 0 ? 0 : (rel_ - i + F.e() - 1) / F.e();
        mpz_class v = unit_[i];
        for (long j = 0; j < m; ++j) {
            mpz_class d;
            mpz_fdiv_qr_ui(v.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(F.p()));
            out[i].push_back(d.get_si());
        }
    }
    return out;
}

FElement teichmuller(const FieldPtr& field, const std::vector<long>& residue, long prec) {
    if (field->flavor() == Flavor::Eisenstein)
        throw Unsupported("Teichmuller lifts are implemented for Qp and unramified flavors");
    const int n = field->degree();
    if (static_cast<int>(residue.size()) > n) throw InvalidArgument("residue has too many coefficients");
    IntPoly w(n);
    bool nonzero = false;
    for (size_t i = 0; i < residue.size(); ++i) {
        long r = ((residue[i] % field->p()) + field->p()) % field->p();
        w[i] = r;
        nonzero = nonzero || r != 0;
    }
    if (!nonzero) return FElement::zero(field);
    const Field& F = *field;
    for (long it = 0; it < prec + 2; ++it) {
        IntPoly acc(n), base = w;
        acc[0] = 1;
        long ex = F.q();
        while (ex > 0) {
            if (ex & 1) acc = F.mul_mod(acc, base, prec);
            base = F.mul_mod(base, base, prec);
            ex >>= 1;
        }
        if (acc == w) break;
        w = std::move(acc);
    }
    return FElement::from_raw(field, w, 0, prec);
}

} // namespace ltp
