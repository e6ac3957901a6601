#include "doctest.h"

#include <random>

#include "ltp/formal_group.hpp"
#include "oracles.hpp"

using namespace ltp;

namespace {

FElement I(const FieldPtr& F, long v) { return FElement::from_int(F, v); }

std::vector<FieldPtr> sample_fields(int prec) {
    return {Field::qp(2, prec), Field::qp(3, prec), Field::unramified(2, 2, prec), Field::eisenstein(3, {-3, 0, 1}, prec)};
}

}  // namespace

TEST_CASE("multiplication by pi is the fixed coordinate") {
    auto F = Field::qp(3, 10);
    LubinTate lt(F);
    auto s = lt.mult_by_pi(5);
    CHECK(s.is_exact());
    CHECK(s.coeffs().size() == 2);
    CHECK(s.coeff(1).equals(I(F, 3)));
    CHECK(s.coeff(3).equals(I(F, 1)));
    LubinTate lt4(Field::unramified(2, 2, 10));
    auto s4 = lt4.mult_by_pi(8);
    CHECK(s4.coeff(4).equals(I(lt4.field(), 1)));
    CHECK(s4.coeff(1).equals(I(lt4.field(), 2)));
    CHECK_THROWS_AS(lt.mult_by_pi(2), InvalidArgument);
}

TEST_CASE("recursion for [a] reproduces [pi] and the identity") {
    for (auto F : sample_fields(30)) {
        LubinTate lt(F);
        auto one = lt.mult_by_a(I(F, 1), 12);
        CHECK(one.equals(TruncSeries::variable(F, 12)));
        auto pi = lt.mult_by_a(lt.pi(), 12);
        CHECK(pi.equals(lt.mult_by_pi(12).truncated(12)));
    }
}

TEST_CASE("p = 2 multiplicative group oracle") {
    const long D = 20;
    auto F = Field::qp(2, 60);
    LubinTate lt(F);
    for (long a : {3L, 5L, -1L, 6L}) {
        auto s = lt.mult_by_a(I(F, a), D);
        CHECK(s.equals(oracle::binomial_minus_one(F, a, D)));
    }
    CHECK(lt.log(D).equals(oracle::log_one_plus(F, D)));
    CHECK(lt.exp(D).equals(oracle::exp_minus_one(F, D)));
    auto add = lt.add(D);
    MultiSeries xy(F, 2, D);
    xy.set({1, 0}, I(F, 1));
    xy.set({0, 1}, I(F, 1));
    xy.set({1, 1}, I(F, 1));
    CHECK(add.equals(xy));
    auto v = lt.v_series(D);
    CHECK(v.equals((TruncSeries::constant(I(F, 1)) + TruncSeries::variable(F)).truncated(D)));
}

TEST_CASE("endomorphism identities on several fields") {
    const long D = 14;
    std::mt19937_64 rng(17);
    for (auto F : sample_fields(40)) {
        LubinTate lt(F);
        for (int t = 0; t < 2; ++t) {
            auto a = I(F, static_cast<long>(rng() % 50) + 1), b = I(F, static_cast<long>(rng() % 50) + 1);
            auto fa = lt.mult_by_a(a, D), fb = lt.mult_by_a(b, D);
            CHECK(fa.compose(fb).equals(lt.mult_by_a(a * b, D)));
            CHECK(fa.compose(fb).equals(oracle::naive_compose(fa, fb, D)));
            CHECK(lt.add_series(fa, fb, D).equals(lt.mult_by_a(a + b, D)));
            CHECK(lt.log(D).compose(fa).equals(a * lt.log(D)));
        }
        auto lam = lt.log(D), ex = lt.exp(D);
        CHECK(ex.compose(lam).equals(TruncSeries::variable(F, D)));
        CHECK(lam.compose(ex).equals(TruncSeries::variable(F, D)));
        auto add = lt.add(D);
        // unit, commutativity and the endomorphism property of [pi]
        for (long a = 2; a <= D; ++a) CHECK(add.coeff({a, 0}).is_zero());
        for (long a = 0; a <= D; ++a)
            for (long b = 0; a + b <= D; ++b) CHECK(add.coeff({a, b}).equals(add.coeff({b, a})));
        auto X = TruncSeries::variable(F, D);
        auto pi = lt.mult_by_pi(D);
        auto f = X + X.shift(2) * TruncSeries::constant(I(F, 5));
        CHECK(lt.add_series(pi.compose(X), pi.compose(f), D).equals(pi.compose(lt.add_series(X, f, D)).truncated(D)));
        // v(T) * log'(T) = 1
        auto v = lt.v_series(D - 1);
        CHECK((v * lam.derivative()).equals(TruncSeries::constant(I(F, 1), D - 1)));
        CHECK(v.coeff(0).equals(I(F, 1)));
    }
}

TEST_CASE("group law matches exp(log X + log Y)") {
    const long D = 10;
    for (auto F : sample_fields(50)) {
        LubinTate lt(F);
        auto lam = lt.log(D), E = lt.exp(D);
        auto add = lt.add(D);
        // expand E(lam(X) + lam(Y)) with two-variable arithmetic
        auto L = MultiSeries::embed(lam, 2, 0) + MultiSeries::embed(lam, 2, 1);
        MultiSeries acc(F, 2, D), Lk = MultiSeries::constant(I(F, 1), 2, D);
        for (long m = 1; m <= D; ++m) {
            Lk = (Lk * L).truncated(D);
            acc += E.coeff(m) * Lk;
        }
        CHECK(acc.equals(add));
    }
}

TEST_CASE("log agrees with the product of the Q_k") {
    const long D = 12;
    for (auto F : sample_fields(40)) {
        LubinTate lt(F);
        auto prod = oracle::log_by_product(lt.pi(), lt.q(), D, 20);
        CHECK(lt.log(D).equals(prod));
        CHECK(prod.min_abs_prec() >= 10);
    }
}

TEST_CASE("Q_k tower") {
    for (auto F : sample_fields(20)) {
        LubinTate lt(F);
        const long q = lt.q();
        CHECK(lt.q_poly(0).equals(TruncSeries::variable(F)));
        auto pi = lt.mult_by_pi(q);
        // [pi]^k / [pi]^(k-1) by exact division
        TruncSeries prev = TruncSeries::variable(F), cur = pi;
        long deg = q - 1;
        for (long k = 1; k <= 3; ++k) {
            auto Qk = lt.q_poly(k);
            CHECK(Qk.max_index() == deg);
            CHECK(Qk.coeff(0).equals(lt.pi()));
            CHECK(Qk.coeff(deg).equals(I(F, 1)));
            CHECK(Qk.equals(cur.exact_div(prev)));
            CHECK(lt.q_poly(k + 1).equals(Qk.compose(pi)));
            prev = cur;
            cur = cur.compose(pi);
            deg *= q;
        }
    }
    auto F2 = Field::qp(2, 10);
    auto Q2 = LubinTate(F2).q_poly(2);
    TruncSeries expect(F2);
    expect.set(0, I(F2, 2));
    expect.set(1, I(F2, 2));
    expect.set(2, I(F2, 1));
    CHECK(Q2.equals(expect));
    auto Q1 = LubinTate(Field::qp(3, 10)).q_poly(1);
    CHECK(Q1.coeff(0).equals(I(Q1.field(), 3)));
    CHECK(Q1.coeff(2).equals(I(Q1.field(), 1)));
    CHECK(Q1.coeffs().size() == 2);
}
