#include "doctest.h"

#include <random>

#include "ltp/monodromy.hpp"
#include "oracles.hpp"

using namespace ltp;

namespace {

FElement I(const FieldPtr& F, long v) { return FElement::from_int(F, v); }

MultiSeries mono(const FieldPtr& F, Exponent e, long c = 1) { return MultiSeries::monomial(I(F, c), e); }

// exp(z) = sum z^n/n! for z without constant term, modulo degree D + 1.
MultiSeries exp_oracle(const MultiSeries& z, long D) {
    const FieldPtr& F = z.field();
    MultiSeries acc = MultiSeries::constant(I(F, 1), z.nvars(), D), zn = acc;
    for (long n = 1; n <= D; ++n) {
        zn = (zn * z).truncated(D);
        acc += FElement::from_rational(F, mpq_class(1, oracle::factorial(n)), F->prec() + 2 * D) * zn;
    }
    return acc;
}

Matrix scalar(const MultiSeries& s, int h, long D) {
    Matrix m(s.field(), h, 1, D);
    m(0, 0) = s.truncated(D);
    return m;
}

Matrix random_gauge(const FieldPtr& F, int h, int d, std::mt19937_64& rng) {
    Matrix G = Matrix::identity(F, h, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int t = 0; t < 3; ++t) {
                Exponent e(h, 0);
                e[static_cast<size_t>(rng() % h)] = 1 + static_cast<long>(rng() % 3);
                G(i, j) += mono(F, e, static_cast<long>(rng() % 11) - 5);
            }
    // an invertible constant part too
    if (d >= 2) G(0, 1) += MultiSeries::constant(I(F, 3), h);
    return G;
}

}  // namespace

TEST_CASE("matrix inverse") {
    auto F = Field::unramified(2, 2, 40);
    std::mt19937_64 rng(1);
    for (int d = 1; d <= 3; ++d) {
        Matrix G = random_gauge(F, 2, d, rng);
        Matrix Gi = G.inverse(8);
        CHECK((G * Gi).truncated(8).equals(Matrix::identity(F, 2, d, 8)));
        CHECK((Gi * G).truncated(8).equals(Matrix::identity(F, 2, d, 8)));
    }
    Matrix Z(F, 2, 2);
    CHECK_THROWS_AS(Z.inverse(4), InvalidArgument);
}

TEST_CASE("flatness") {
    const long D = 6;
    auto F2 = Field::unramified(3, 2, 30);
    CHECK(check_integrable(trivial_connection(F2, 2, 2, D)).flat);
    CHECK(check_integrable(trivial_connection(F2, 2, 2, D)).defect.is_infinite());
    auto F3 = Field::unramified(2, 3, 30);
    // d = 1: flat iff d_1 D_2 = d_2 D_1
    auto flat = make_connection(F3, 1, D, {scalar(mono(F3, {0, 0, 1}), 3, D), scalar(mono(F3, {0, 1, 0}), 3, D)});
    CHECK(check_integrable(flat).flat);
    auto bent = make_connection(F3, 1, D, {scalar(mono(F3, {0, 0, 1}), 3, D), Matrix(F3, 3, 1, D)});
    auto rep = check_integrable(bent);
    CHECK_FALSE(rep.flat);
    CHECK(rep.defect == Valuation(mpq_class(0)));
    CHECK_THROWS_AS(solve_H(bent), NotFlat);
    CHECK_THROWS_AS(d_multi(bent, {1, 0}), NotFlat);
    auto cst = make_connection(F3, 1, D, {scalar(MultiSeries::constant(I(F3, 5), 3), 3, D),
                                          scalar(MultiSeries::constant(I(F3, 7), 3), 3, D)});
    CHECK(check_integrable(cst).flat);
    // nilpotent constants that do not commute
    Matrix A(F3, 3, 2, D), B(F3, 3, 2, D);
    A(0, 1) = MultiSeries::constant(I(F3, 1), 3);
    B(1, 0) = MultiSeries::constant(I(F3, 1), 3);
    CHECK_FALSE(check_integrable(make_connection(F3, 2, D, {A, B})).flat);
    std::mt19937_64 rng(2);
    auto g = gauge(trivial_connection(F3, 3, 2, D), random_gauge(F3, 3, 2, rng));
    CHECK(check_integrable(g).flat);
}

TEST_CASE("the D_k recursion") {
    const long D = 8;
    auto F = Field::unramified(3, 2, 40);
    auto a = make_connection(F, 1, D, {scalar(MultiSeries::constant(I(F, 5), 2), 2, D)});
    CHECK(d_multi(a, {0}).equals(Matrix::identity(F, 2, 1)));
    for (long k = 1; k <= 5; ++k) {
        mpz_class ak;
        mpz_ui_pow_ui(ak.get_mpz_t(), 5, static_cast<unsigned long>(k));
        CHECK(d_multi(a, {k})(0, 0).equals(MultiSeries::constant(FElement::from_int(F, ak), 2)));
    }
    auto y = make_connection(F, 1, D, {scalar(mono(F, {0, 1}), 2, D)});
    CHECK(d_multi(y, {2})(0, 0).equals(MultiSeries::constant(I(F, 1), 2) + mono(F, {0, 2})));
    CHECK(d_multi(y, {3})(0, 0).equals(mono(F, {0, 1}, 3) + mono(F, {0, 3})));
    // the other order of increments at h = 3
    auto F3 = Field::unramified(2, 3, 40);
    std::mt19937_64 rng(3);
    auto g = gauge(trivial_connection(F3, 3, 2, D), random_gauge(F3, 3, 2, rng));
    const Matrix d10 = d_multi(g, {1, 0});
    const Matrix other = (d10.partial(2) + g.D(2) * d10).truncated(D);
    CHECK(d_multi(g, {1, 1}).equals(other));
}

TEST_CASE("scalar solutions match exp of the antiderivative") {
    const long D = 8;
    auto F = Field::unramified(2, 2, 60);
    const MultiSeries a = MultiSeries::constant(I(F, 3), 2);
    for (const MultiSeries& d1 : {a, mono(F, {0, 1}), a + mono(F, {0, 2})}) {
        auto conn = make_connection(F, 1, D, {scalar(d1, 2, D)});
        auto sb = solve_H(conn);
        CHECK(sb.defect_zero);
        CHECK(sb.output_prec >= sb.audit_floor);
        CHECK(sb.H(0, 0).equals(exp_oracle(-d1.integral(1), D)));
    }
    auto zero = solve_H(trivial_connection(F, 2, 3, D));
    CHECK(zero.H.equals(Matrix::identity(F, 2, 3, D)));
    CHECK(zero.defect.is_infinite());
}

TEST_CASE("block diagonal example") {
    const long D = 8;
    auto F = Field::unramified(3, 2, 40);
    Matrix m(F, 2, 2, D);
    m(0, 0) = MultiSeries::constant(I(F, 2), 2, D);
    m(1, 1) = mono(F, {0, 1}).truncated(D);
    auto conn = make_connection(F, 2, D, {m});
    auto sp = sol_rank(conn);
    CHECK(sp.rank == 2);
    auto sb = solve_H(conn);
    CHECK(sb.H(0, 0).equals(exp_oracle(-m(0, 0).integral(1), D)));
    CHECK(sb.H(1, 1).equals(exp_oracle(-m(1, 1).integral(1), D)));
    CHECK(sb.H(0, 1).is_zero());
    CHECK(sb.H(1, 0).is_zero());
}

TEST_CASE("gauge round trip") {
    const long D = 8;
    std::mt19937_64 rng(4);
    for (auto F : {Field::unramified(2, 2, 60), Field::unramified(3, 2, 60)})
        for (int d = 1; d <= 3; ++d) {
            const Matrix G = random_gauge(F, 2, d, rng);
            auto triv = trivial_connection(F, 2, d, D);
            auto g = gauge(triv, G);
            CHECK(check_integrable(g).flat);
            auto sb = solve_H(g);
            CHECK(sb.defect_zero);
            const Matrix GH = (G * sb.H).truncated(D);
            CHECK(GH.partial(1).is_zero());
            CHECK(sol_rank(g).rank == d);
            // gauge by G then by G^(-1)
            auto back = gauge(g, G.inverse(D));
            for (int j = 1; j < 2; ++j) CHECK(back.D(j).is_zero());

            // a nontrivial flat connection and its gauge
            Matrix m(F, 2, d, D);
            for (int i = 0; i < d; ++i) m(i, i) = mono(F, {1, 1}, i + 1).truncated(D);
            auto c = make_connection(F, d, D, {m});
            auto Hc = solve_H(c).H;
            auto cg = gauge(c, G);
            auto Hg = solve_H(cg);
            CHECK(Hg.defect_zero);
            // G H' = H C with C free of Y_1, so H^(-1) G H' is killed by d_1
            const Matrix ratio = (Hc.inverse(D) * G * Hg.H).truncated(D);
            CHECK(ratio.partial(1).is_zero());
            auto back2 = gauge(cg, G.inverse(D));
            CHECK(back2.D(1).equals(c.D(1)));
        }
}
