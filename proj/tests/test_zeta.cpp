#include <doctest.h>

#include "pzeta/zeta.hpp"

using namespace pzeta;

namespace {

VolumeSequence reference_sequence(FormCase c, long q, int n_max) {
    VolumeSequence vs;
    vs.q = q;
    for (int n = 0; n <= n_max; ++n)
        vs.values.push_back(reference_volume(c, n, q));
    return vs;
}

} // namespace

TEST_CASE("polynomial and rational function basics") {
    const Poly p{Rat(1), Rat(0), Rat(3)};  // 1 + 3 X^2
    CHECK(p.eval(Rat(2)) == 13);
    CHECK(to_string(p) == "1 + 3*X^2");

    const RationalFunction r = RationalFunction::from(Poly{Rat(2), Rat(2)}, Poly{Rat(1), Rat(1)});
    CHECK(r.num == Poly{Rat(2)});  // (2 + 2X)/(1 + X) reduces
    CHECK(r.den == Poly{Rat(1)});
    CHECK(to_string(r) == "(2)");

    const RationalFunction n3 = normalizer_rf(3);
    CHECK(to_string(n3) == "(1 - 1/81*X)/(1 - 1/3*X)");
    const RationalFunction back = parse_rational_function("(1 - 1/81*X)/(1 - 1/3*X)");
    CHECK(back == n3);
    CHECK(parse_rational_function("(2)") == r);

    CHECK_THROWS_AS(RationalFunction::from(Poly{Rat(1)}, Poly()), degenerate_error);
    // pole detection
    const RationalFunction pole = RationalFunction::from(Poly{Rat(1)}, Poly{Rat(1), -Rat(1, 9)});
    CHECK_THROWS_AS(evaluate_at_s0(pole, 3), pole_error);
}

TEST_CASE("tail detection") {
    // geometric from index 2 in the ramified r = 1 sequence
    VolumeSequence vs = detect_tail(reference_sequence(FormCase::I1, 3, 6));
    CHECK(vs.tail.kind == Tail::Kind::geometric);
    CHECK(vs.tail.from == 2);
    CHECK(vs.tail.coeff == 2 * (1 - Rat(1, 3)) * (1 + Rat(1, 3)));

    // anisotropic sequences are finitely supported
    vs = detect_tail(reference_sequence(FormCase::I_aniso, 3, 6));
    CHECK(vs.tail.kind == Tail::Kind::finite);
    CHECK(vs.tail.from == 2);

    // artificial finite input
    VolumeSequence art;
    art.q = 3;
    art.values = {Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)};
    CHECK(detect_tail(art).tail.kind == Tail::Kind::finite);

    // too short
    art.values = {Rat(1), Rat(0), Rat(0)};
    CHECK_THROWS_AS(detect_tail(art), tail_error);

    // no geometric or finite structure
    art.values = {Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)};
    CHECK_THROWS_AS(detect_tail(art), tail_error);

    // assembly refuses undetected tails
    art.tail = Tail{Tail::Kind::undetected, 0, Rat(0)};
    CHECK_THROWS_AS(assemble_zeta(art), tail_error);
}

TEST_CASE("assembled series and values at s = 0") {
    for (long q : {3L, 5L, 7L}) {
        // unramified split case: value -2/q (1 + 1/q)
        VolumeSequence vs = detect_tail(reference_sequence(FormCase::I3, q, 8));
        RationalFunction rf = assemble_zeta(vs);
        CHECK(evaluate_at_s0(rf, q) == -2 * q_pow(q, -1) * (1 + q_pow(q, -1)));

        // anisotropic: a polynomial, value 2 (1 + 1/q)
        vs = detect_tail(reference_sequence(FormCase::I_aniso, q, 8));
        rf = assemble_zeta(vs);
        CHECK(rf.den == Poly{Rat(1)});
        CHECK(rf.num == Poly{1 + q_pow(q, -1), q_pow(q, -2) + q_pow(q, -3)});
        CHECK(evaluate_at_s0(rf, q) == 2 * (1 + q_pow(q, -1)));

        // all type II references vanish at s = 0
        for (const FormCase c : {FormCase::II1, FormCase::II2, FormCase::II3a, FormCase::II3b,
                                 FormCase::II4, FormCase::II5, FormCase::IV_pi, FormCase::IV_u})
            CHECK(evaluate_at_s0(assemble_zeta(detect_tail(reference_sequence(c, q, 8))), q) == 0);

        // ramified r = 1 and r = -pi cases: value -2 (1 + 1/q) and -2 q (1 + 1/q)
        CHECK(evaluate_at_s0(assemble_zeta(detect_tail(reference_sequence(FormCase::I1, q, 8))),
                             q) == -2 * (1 + q_pow(q, -1)));
    }

    // zero sequence assembles to 0
    VolumeSequence zero;
    zero.q = 3;
    zero.values.assign(6, Rat(0));
    const RationalFunction rf0 = assemble_zeta(detect_tail(zero));
    CHECK(rf0.num.is_zero());
    CHECK(evaluate_at_s0(rf0, 3) == 0);
}

TEST_CASE("partial sums agree with the closed tail inside the convergence region") {
    for (const FormCase c : {FormCase::I1, FormCase::I3, FormCase::II2}) {
        const long q = 5;
        const VolumeSequence vs = detect_tail(reference_sequence(c, q, 10));
        const RationalFunction rf = assemble_zeta(vs);
        for (const Rat X0 : {Rat(1), Rat(1,
                                         5)}) {
            // finite part plus closed geometric remainder
            Rat direct = 0;
            Rat Xp = 1;
            for (int n = 0; n < vs.tail.from; ++n) {
                direct += vs.values[n] * Xp;
                Xp *= X0;
            }
            if (vs.tail.kind == Tail::Kind::geometric) {
                Rat ratio = X0 / q;
                Rat lead = vs.tail.coeff * Xp * q_pow(q, -vs.tail.from);
                direct += lead / (1 - ratio);
            }
            CHECK(rf.eval(X0) == direct);
        }
    }
}

TEST_CASE("assembled functions have their pole at X = q only") {
    for (const FormCase c : all_form_cases()) {
        const long q = 3;
        const RationalFunction rf = assemble_zeta(detect_tail(reference_sequence(c, q, 8)));
        if (rf.den.degree() == 0)
            continue;
        CHECK(rf.den.degree() == 1);
        // root of 1 - X/q
        CHECK(rf.den.eval(Rat(q)) == 0);
    }
}

TEST_CASE("tail split point does not change the reduced function") {
    const VolumeSequence vs = detect_tail(reference_sequence(FormCase::I3, 7, 9));
    REQUIRE(vs.tail.kind == Tail::Kind::geometric);
    VolumeSequence shifted = vs;
    shifted.tail.from += 1;
    shifted.tail.coeff = vs.values[shifted.tail.from] * q_pow(7, shifted.tail.from);
    CHECK(assemble_zeta(vs) == assemble_zeta(shifted));
}

TEST_CASE("normalizer") {
    CHECK(normalizer(0, 3) == Rat(-4, 9));
    CHECK(normalizer(0, 5) == Rat(-6, 25));
    CHECK(normalizer(1, 3) == Rat(40, 27));
    for (long q : {3L, 5L, 7L})
        CHECK(normalizer(0, q) == -q_pow(q, -1) * (1 + q_pow(q, -1)));
    // a constant function evaluates to itself
    CHECK(evaluate_at_s0(RationalFunction::from(Poly{Rat(1)}, Poly{Rat(1)}), 3) == 1);
    // rational-function form evaluated at X = q^{-m}, m = 0 (s = 1)
    CHECK(normalizer_rf(3).eval(Rat(1)) == normalizer(1, 3));
    CHECK(evaluate_at_s0(normalizer_rf(3), 3) == normalizer(0, 3));
}

TEST_CASE("normalizer closed loop through the measure engine") {
    for (long q : {3L, 5L, 7L}) {
        const LocalField F = LocalField::make(q);
        VolumeSequence vs = volume_sequence(linear_x(), 6, F);
        vs = detect_tail(std::move(vs));
        const RationalFunction rf = assemble_zeta(vs);
        CHECK(rf == normalizer_rf(q));
        CHECK(evaluate_at_s0(rf, q) == normalizer(0, q));
    }
}
