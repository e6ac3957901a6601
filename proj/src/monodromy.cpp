#include "ltp/monodromy.hpp"

#include <functional>

namespace ltp {

namespace {

Valuation series_min_val(const MultiSeries& s) {
    Valuation m = Valuation::infinity();
    const long e = s.field()->e();
    for (const auto& [x, c] : s.terms()) m = min(m, Valuation(mpq_class(c.val_lower_bound(), e)));
    return m;
}

void check_dims(const Matrix& x, const Matrix& y) {
    if (x.dim() != y.dim() || x.nvars() != y.nvars()) throw InvalidArgument("matrix shapes differ");
}

Matrix scale(const Matrix& m, const MultiSeries& s) {
    Matrix r = m;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) r(i, j) = s * m(i, j);
    return r;
}

mpz_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

long val_p_factorial(long n, long p) {
    long v = 0;
    for (long pk = p; pk <= n; pk *= p) v += n / pk;
    return v;
}

// Multi-indices over Y_1 .. Y_(h-1) with |k| <= n, in graded order.
std::vector<Exponent> simplex(int m, long n) {
    std::vector<Exponent> out;
    if (m == 0) return {Exponent{}};
    std::function<void(Exponent&, int, long)> rec = [&](Exponent& k, int j, long left) {
        if (j == m) {
            out.push_back(k);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            k[j] = v;
            rec(k, j + 1, left - v);
        }
        k[j] = 0;
    };
    Exponent k(m, 0);
    rec(k, 0, n);
    std::stable_sort(out.begin(), out.end(),
                     [](const Exponent& a, const Exponent& b) { return total_degree(a) < total_degree(b); });
    return out;
}

class DkTable {
public:
    explicit DkTable(const Connection& c) : conn_(c) {
        const int h = c.h();
        table_.emplace(Exponent(h - 1, 0), Matrix::identity(c.field, h, c.d));
    }
    const Matrix& at(const Exponent& k) {
        auto it = table_.find(k);
        if (it != table_.end()) return it->second;
        size_t j = 0;
        while (k[j] == 0) ++j;
        Exponent prev = k;
        --prev[j];
        const Matrix& P = at(prev);
        const int var = static_cast<int>(j) + 1;
        Matrix next = (P.partial(var) + conn_.D(var) * P).truncated(conn_.order);
        return table_.emplace(k, std::move(next)).first->second;
    }

private:
    const Connection& conn_;
    std::map<Exponent, Matrix> table_;
};

}  // namespace

Matrix::Matrix(const FieldPtr& field, int nvars, int d, std::optional<long> order)
    : field_(field), nvars_(nvars), d_(d), a_(static_cast<size_t>(d) * d, MultiSeries(field, nvars, order)) {
    if (d < 1) throw InvalidArgument("matrix dimension must be positive");
}

Matrix Matrix::identity(const FieldPtr& field, int nvars, int d, std::optional<long> order) {
    Matrix m(field, nvars, d, order);
    for (int i = 0; i < d; ++i) m(i, i) = MultiSeries::constant(FElement::from_int(field, 1), nvars, order);
    return m;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    check_dims(x, y);
    Matrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
}

Matrix operator-(const Matrix& x, const Matrix& y) { return x + (-y); }

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& e : r.a_) e = -e;
    return r;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
    check_dims(x, y);
    const int d = x.d_;
    Matrix r(x.field_, x.nvars_, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            MultiSeries acc(x.field_, x.nvars_);
            for (int k = 0; k < d; ++k) acc += x(i, k) * y(k, j);
            r(i, j) = acc;
        }
    return r;
}

Matrix operator*(const FElement& c, const Matrix& x) {
    Matrix r = x;
    for (auto& e : r.a_) e = c * e;
    return r;
}

Matrix Matrix::partial(int j) const {
    Matrix r = *this;
    for (auto& e : r.a_) e = e.partial(j);
    return r;
}

Matrix Matrix::truncated(std::optional<long> order) const {
    Matrix r = *this;
    for (auto& e : r.a_) e = e.truncated(order);
    return r;
}

std::vector<std::vector<FElement>> Matrix::constant_term() const {
    std::vector<std::vector<FElement>> c(d_, std::vector<FElement>(d_));
    const Exponent zero(nvars_, 0);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) c[i][j] = (*this)(i, j).coeff(zero);
    return c;
}

Matrix Matrix::inverse(long order) const {
    for (const auto& e : a_)
        if (e.min_exp0() < 0) throw InvalidArgument("matrix inverse needs entries without negative powers of Y_0");
    // Gauss-Jordan on the constant term, pivoting on the smallest valuation.
    auto c = constant_term();
    std::vector<std::vector<FElement>> inv(d_, std::vector<FElement>(d_, FElement::zero(field_)));
    for (int i = 0; i < d_; ++i) inv[i][i] = FElement::from_int(field_, 1);
    for (int col = 0; col < d_; ++col) {
        int piv = -1;
        for (int r = col; r < d_; ++r) {
            if (c[r][col].is_zero()) continue;
            if (piv < 0 || c[r][col].val_pi() < c[piv][col].val_pi()) piv = r;
        }
        if (piv < 0) throw InvalidArgument("constant term of the matrix is not invertible");
        std::swap(c[piv], c[col]);
        std::swap(inv[piv], inv[col]);
        const FElement pinv = c[col][col].inverse();
        for (int k = 0; k < d_; ++k) {
            c[col][k] = c[col][k] * pinv;
            inv[col][k] = inv[col][k] * pinv;
        }
        for (int r = 0; r < d_; ++r) {
            if (r == col || c[r][col].is_exact_zero()) continue;
            const FElement f = c[r][col];
            for (int k = 0; k < d_; ++k) {
                c[r][k] = c[r][k] - f * c[col][k];
                inv[r][k] = inv[r][k] - f * inv[col][k];
            }
        }
    }
    Matrix C0(field_, nvars_, d_), Cinv(field_, nvars_, d_);
    const auto c0 = constant_term();
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            C0(i, j) = MultiSeries::constant(c0[i][j], nvars_);
            Cinv(i, j) = MultiSeries::constant(inv[i][j], nvars_);
        }
    // G = C0 (1 + N) with N free of constant terms, so (1 + N)^(-1) is a
    // finite Neumann sum modulo degree order + 1.
    const Matrix N = (Cinv * (*this - C0)).truncated(order);
    Matrix acc = identity(field_, nvars_, d_, order), term = acc;
    for (long k = 1; k <= order; ++k) {
        term = (-(term * N)).truncated(order);
        acc = acc + term;
    }
    return (acc * Cinv).truncated(order);
}

bool Matrix::is_zero() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

bool Matrix::equals(const Matrix& o) const { return (*this - o).is_zero(); }

Valuation Matrix::min_val() const {
    Valuation m = Valuation::infinity();
    for (const auto& e : a_) m = min(m, series_min_val(e));
    return m;
}

long Matrix::min_abs_prec() const {
    long m = kExactPrec;
    for (const auto& e : a_) m = std::min(m, e.min_abs_prec());
    return m;
}

Connection make_connection(const FieldPtr& field, int d, long order, std::vector<Matrix> mats) {
    if (field->flavor() == Flavor::Eisenstein) throw SpecMismatch("connections are modeled for F unramified");
    if (static_cast<int>(mats.size()) + 1 != field->h())
        throw InvalidArgument("need one matrix for each of Y_1 .. Y_(h-1)");
    if (order < 0) throw InvalidArgument("truncation order must be nonnegative");
    Connection c;
    c.field = field;
    c.d = d;
    c.order = order;
    for (auto& m : mats) {
        if (m.dim() != d || m.nvars() != field->h()) throw InvalidArgument("connection matrix has the wrong shape");
        if (!m.field()->same_as(*field)) throw SpecMismatch("connection matrix over a different field");
        c.mats.push_back(m.truncated(order));
    }
    return c;
}

Connection trivial_connection(const FieldPtr& field, int h, int d, long order) {
    if (h != field->h()) throw InvalidArgument("h must equal the residue degree of F");
    std::vector<Matrix> mats(h - 1, Matrix(field, h, d, order));
    return make_connection(field, d, order, std::move(mats));
}

FlatnessReport check_integrable(const Connection& conn) {
    FlatnessReport rep;
    rep.defect = Valuation::infinity();
    rep.flat = true;
    for (int i = 1; i < conn.h(); ++i)
        for (int j = i + 1; j < conn.h(); ++j) {
            const Matrix s = conn.D(j).partial(i) + conn.D(i) * conn.D(j) - conn.D(i).partial(j) - conn.D(j) * conn.D(i);
            const Matrix st = s.truncated(conn.order);
            rep.defect = min(rep.defect, st.min_val());
            if (!st.is_zero()) rep.flat = false;
        }
    return rep;
}

Matrix d_multi(const Connection& conn, const Exponent& k) {
    if (static_cast<int>(k.size()) != conn.h() - 1) throw InvalidArgument("multi-index has the wrong length");
    for (long v : k)
        if (v < 0) throw InvalidArgument("multi-index entries must be nonnegative");
    if (!check_integrable(conn).flat) throw NotFlat("connection is not integrable");
    DkTable t(conn);
    return t.at(k);
}

Valuation solution_defect(const Connection& conn, const Matrix& H, bool* all_zero) {
    Valuation v = Valuation::infinity();
    bool zero = true;
    for (int j = 1; j < conn.h(); ++j) {
        const Matrix e = H.partial(j) + conn.D(j) * H;
        v = min(v, e.min_val());
        if (!e.is_zero()) zero = false;
    }
    if (all_zero) *all_zero = zero;
    return v;
}

SolutionBasis solve_H(const Connection& conn) {
    if (!check_integrable(conn).flat) throw NotFlat("connection is not integrable");
    const int h = conn.h();
    const FieldPtr& F = conn.field;
    DkTable t(conn);
    Matrix H(F, h, conn.d, conn.order);
    for (const Exponent& k : simplex(h - 1, conn.order)) {
        const Matrix& Dk = t.at(k);
        if (Dk.is_zero() && total_degree(k) > 0) continue;
        mpz_class kf = 1;
        for (long v : k) kf *= factorial(v);
        const long sign = total_degree(k) % 2 ? -1 : 1;
        const FElement coef = FElement::from_int(F, sign).div_int(kf);
        H = H + scale(Dk, MultiSeries::monomial(coef, with_y0(k))).truncated(conn.order);
    }
    SolutionBasis out;
    out.H = H.truncated(conn.order);
    out.defect = solution_defect(conn, out.H, &out.defect_zero);
    long in = F->prec();
    for (const auto& m : conn.mats) in = std::min(in, m.min_abs_prec());
    out.input_prec = in;
    out.output_prec = std::min<long>(out.H.min_abs_prec(), F->prec());
    out.audit_floor = in - 2 * F->e() * val_p_factorial(conn.order, F->p());
    if (out.output_prec < out.audit_floor)
        throw PrecisionExhausted("solution precision " + std::to_string(out.output_prec) + " fell below the audited floor " +
                                 std::to_string(out.audit_floor));
    return out;
}

Connection gauge(const Connection& conn, const Matrix& G) {
    if (G.dim() != conn.d || G.nvars() != conn.h()) throw InvalidArgument("gauge matrix has the wrong shape");
    const Matrix Gi = G.inverse(conn.order);
    std::vector<Matrix> mats;
    for (int j = 1; j < conn.h(); ++j) mats.push_back((Gi * conn.D(j) * G + Gi * G.partial(j)).truncated(conn.order));
    return make_connection(conn.field, conn.d, conn.order, std::move(mats));
}

SolutionSpace sol_rank(const Connection& conn) {
    const SolutionBasis sb = solve_H(conn);
    // H = 1 + (terms of positive degree), so it is invertible; confirm it.
    const Matrix Hi = sb.H.inverse(conn.order);
    if (!(sb.H * Hi).truncated(conn.order).equals(Matrix::identity(conn.field, conn.h(), conn.d, conn.order)))
        throw PrecisionExhausted("solution matrix is not invertible at this precision");
    SolutionSpace out;
    out.rank = conn.d;
    for (int j = 0; j < conn.d; ++j) {
        std::vector<MultiSeries> col;
        for (int i = 0; i < conn.d; ++i) col.push_back(sb.H(i, j));
        out.basis.push_back(col);
    }
    return out;
}

}  // namespace ltp
