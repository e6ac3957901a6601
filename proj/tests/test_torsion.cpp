#include "doctest.h"

#include <random>

#include "ltp/torsion.hpp"
#include "oracles.hpp"

using namespace ltp;

namespace {

TruncSeries random_poly(const FieldPtr& F, long deg, std::mt19937_64& rng) {
    TruncSeries s(F);
    for (long k = 0; k <= deg; ++k) s.set(k, FElement::from_int(F, static_cast<long>(rng() % 41) - 20));
    return s;
}

// Valuation of the roots of an Eisenstein-like polynomial from its Newton
// polygon: a single segment from (0, v(c_0)) to (d, 0).
mpq_class newton_root_valuation(const TruncSeries& Q) {
    const long d = Q.max_index();
    const mpq_class v0 = Q.coeff(0).val_p().value();
    for (long i = 1; i < d; ++i) {
        const FElement c = Q.coeff(i);
        if (c.is_zero()) continue;
        const mpq_class line = v0 * mpq_class(d - i, d);
        REQUIRE(c.val_p().value() >= line);
    }
    return v0 / d;
}

}  // namespace

TEST_CASE("torsion generator valuations") {
    for (auto F : {Field::qp(3, 20), Field::eisenstein(2, {2, 2, 1}, 20), Field::unramified(2, 2, 20)}) {
        LubinTate lt(F);
        for (long k = 1; k <= 3; ++k) {
            TorsionField tf(lt, k);
            const long q = lt.q();
            long qk = 1;
            for (long i = 1; i < k; ++i) qk *= q;
            const mpq_class expect(1, qk * (q - 1) * F->e());
            CHECK(tf.generator().val_p() == Valuation(expect));
            CHECK(newton_root_valuation(tf.modulus()) == expect);
            CHECK(tf.degree() == qk * (q - 1));
            // u_1 = [pi]^(k-1)(u_k) has valuation 1/((q-1)e)
            TruncSeries pik = TruncSeries::variable(F);
            for (long i = 1; i < k; ++i) pik = pik.compose(lt.mult_by_pi(q));
            CHECK(tf.eval(pik).val_p() == Valuation(mpq_class(1, (q - 1) * F->e())));
            CHECK(tf.eval(pik.compose(lt.mult_by_pi(q))).is_zero());
        }
    }
}

TEST_CASE("evaluation is a ring homomorphism with Q_k in its kernel") {
    std::mt19937_64 rng(23);
    for (auto F : {Field::qp(2, 20), Field::qp(3, 20)}) {
        LubinTate lt(F);
        for (long k = 1; k <= 2; ++k) {
            TorsionField tf(lt, k);
            CHECK(tf.eval(tf.modulus()).is_zero());
            CHECK(tf.eval(TruncSeries::variable(F)).equals(tf.generator()));
            for (int t = 0; t < 8; ++t) {
                auto f = random_poly(F, 7, rng), g = random_poly(F, 5, rng);
                CHECK(tf.eval(f * g).equals(tf.eval(f) * tf.eval(g)));
                CHECK(tf.eval(f + g).equals(tf.eval(f) + tf.eval(g)));
                CHECK(tf.eval(tf.modulus() * g).is_zero());
            }
            auto inv = TruncSeries::variable(F).shift(-2);
            CHECK((tf.eval(inv) * tf.generator()).equals(tf.one()));
        }
    }
}
