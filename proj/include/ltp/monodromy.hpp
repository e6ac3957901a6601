#pragma once

// Flat connections in the directions Y_1 .. Y_(h-1) and their fundamental
// solutions. Row convention: d_j(e) = e . D_j for the basis row e, so a
// solution matrix H satisfies d_j(H) + D_j H = 0.

#include <map>
#include <vector>

#include "ltp/multivar.hpp"

namespace ltp {

class Matrix {
public:
    Matrix() = default;
    Matrix(const FieldPtr& field, int nvars, int d, std::optional<long> order = std::nullopt);
    static Matrix identity(const FieldPtr& field, int nvars, int d, std::optional<long> order = std::nullopt);

    int dim() const { return d_; }
    int nvars() const { return nvars_; }
    const FieldPtr& field() const { return field_; }
    MultiSeries& operator()(int i, int j) { return a_[i * d_ + j]; }
    const MultiSeries& operator()(int i, int j) const { return a_[i * d_ + j]; }

    friend Matrix operator+(const Matrix& x, const Matrix& y);
    friend Matrix operator-(const Matrix& x, const Matrix& y);
    friend Matrix operator*(const Matrix& x, const Matrix& y);
    friend Matrix operator*(const FElement& c, const Matrix& x);
    Matrix operator-() const;

    Matrix partial(int j) const;
    Matrix truncated(std::optional<long> order) const;
    /// Inverse modulo total degree `order`; the constant term must be
    /// invertible over O_F and no entry may involve Y_0^(-1).
    Matrix inverse(long order) const;
    /// Matrix of constant terms.
    std::vector<std::vector<FElement>> constant_term() const;

    bool is_zero() const;
    bool equals(const Matrix& o) const;
    /// Lower bound for the valuation of every entry coefficient (infinite
    /// when all entries are exact zeros).
    Valuation min_val() const;
    long min_abs_prec() const;

private:
    FieldPtr field_;
    int nvars_ = 0;
    int d_ = 0;
    std::vector<MultiSeries> a_;
};

/// Matrices D_1 .. D_(h-1), stored at mats[j - 1], truncated at total degree `order`.
struct Connection {
    FieldPtr field;
    int d = 0;
    long order = 0;
    std::vector<Matrix> mats;

    int h() const { return static_cast<int>(mats.size()) + 1; }
    const Matrix& D(int j) const { return mats.at(j - 1); }
};

Connection make_connection(const FieldPtr& field, int d, long order, std::vector<Matrix> mats);
Connection trivial_connection(const FieldPtr& field, int h, int d, long order);

struct FlatnessReport {
    /// Lower bound on the valuation of d_i(D_j) + D_i D_j - (i <-> j).
    Valuation defect;
    bool flat = false;
};
FlatnessReport check_integrable(const Connection& conn);

/// D_0 = 1, D_(k + 1_j) = d_j(D_k) + D_j D_k for k over Y_1 .. Y_(h-1).
Matrix d_multi(const Connection& conn, const Exponent& k);

struct SolutionBasis {
    Matrix H;
    /// Lower bound on the valuation of d_j(H) + D_j H over all j.
    Valuation defect;
    bool defect_zero = false;
    long input_prec = 0;
    long output_prec = 0;
    /// Allowed floor: input precision minus twice the pi-adic valuation of order!.
    long audit_floor = 0;
};
/// H = sum_k (-1)^|k| D_k Y^k / k! with the approximants y_n taken to be 0.
SolutionBasis solve_H(const Connection& conn);

/// D'_j = G^(-1) D_j G + G^(-1) d_j(G).
Connection gauge(const Connection& conn, const Matrix& G);

struct SolutionSpace {
    int rank = 0;
    /// Columns of H.
    std::vector<std::vector<MultiSeries>> basis;
};
SolutionSpace sol_rank(const Connection& conn);

/// Lower bound on the valuation of d_j(H) + D_j H over all j; infinite when exact.
Valuation solution_defect(const Connection& conn, const Matrix& H, bool* all_zero = nullptr);

}  // namespace ltp
