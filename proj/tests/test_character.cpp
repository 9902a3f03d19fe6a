#include <doctest.h>

#include "pzeta/character.hpp"

using namespace pzeta;

TEST_CASE("normalized type I values") {
    const LocalField F3 = LocalField::make(3);
    CHECK(character_value_typeI(SquareClass::pi, SquareClass::u, F3, 6) == -2);
    const LocalField F5 = LocalField::make(5);
    CHECK(character_value_typeI(SquareClass::u, SquareClass::one, F5, 6) == 2);

    // all four normalized cases
    CHECK(character_value_case(FormCase::I1, F3, 6) == 2);
    CHECK(character_value_case(FormCase::I2, F3, 6) == 2);
    CHECK(character_value_case(FormCase::I3, F3, 6) == 2);
    CHECK(character_value_case(FormCase::I_aniso, F3, 6) == -2);
}

TEST_CASE("kappa equivariance in the twist") {
    const LocalField F = LocalField::make(3);
    const SquareClass all[] = {SquareClass::one, SquareClass::u, SquareClass::pi,
                               SquareClass::u_pi};
    for (const SquareClass D : {SquareClass::u, SquareClass::pi, SquareClass::u_pi}) {
        const Rat base = character_value_typeI(D, SquareClass::one, F, 6);
        for (const SquareClass r : all)
            CHECK(character_value_typeI(D, r, F, 6) == kappa(r, D, F) * base);
    }
}

TEST_CASE("twists only matter through their norm class") {
    // multiplying r by a norm representative never changes the verdict: the
    // isotropy branch and the normalized character value are unchanged (the
    // norm-class members 1 and -D deliberately keep distinct normal forms)
    const LocalField F = LocalField::make(7);
    const SquareClass all[] = {SquareClass::one, SquareClass::u, SquareClass::pi,
                               SquareClass::u_pi};
    for (const SquareClass D : {SquareClass::u, SquareClass::pi})
        for (const SquareClass r : all) {
            const Rat base = character_value_typeI(D, r, F, 6);
            const bool aniso = normalize_typeI(D, r, F).label == FormCase::I_aniso;
            for (const SquareClass n : all) {
                if (!is_norm(n, D, F))
                    continue;
                const SquareClass rn = sq_mul(r, n);
                CHECK((normalize_typeI(D, rn, F).label == FormCase::I_aniso) == aniso);
                CHECK(character_value_typeI(D, rn, F, 6) == base);
            }
        }
}

TEST_CASE("type III values") {
    const LocalField F3 = LocalField::make(3);
    CHECK(character_value_typeIII(BrCase::one, Int(F3.u), Int(3), F3, 6) == 2);
    CHECK(character_value_typeIII(BrCase::sqrtA, Int(3), Int(F3.u), F3, 6) == -2);
    CHECK(character_value_typeIII(BrCase::d_plus_i, Int(-1), Int(3), F3, 6) == -2);

    const LocalField F5 = LocalField::make(5);
    CHECK(character_value_typeIII(BrCase::one, Int(F5.u), Int(5), F5, 6) == 2);
    CHECK(character_value_typeIII(BrCase::sqrtA, Int(5), Int(F5.u), F5, 6) == -2);
    // -1 is a square at p = 5: the non-norm unit twist sqrt(u) replaces d+i,
    // and A = -1 no longer generates an extension
    CHECK(character_value_typeIII(BrCase::sqrtA, Int(F5.u), Int(5), F5, 6) == -2);
    CHECK_THROWS_AS(character_value_typeIII(BrCase::d_plus_i, Int(-1), Int(5), F5, 6),
                    not_extension_error);
}

TEST_CASE("types II and IV vanish") {
    const LocalField F = LocalField::make(3);
    for (const FormCase c : {FormCase::II1, FormCase::II2, FormCase::II3a, FormCase::II3b,
                             FormCase::II4, FormCase::II5, FormCase::IV_pi, FormCase::IV_u})
        CHECK(character_value_case(c, F, 6) == 0);
}

TEST_CASE("verify_all") {
    for (long p : {3L, 5L}) {
        const LocalField F = LocalField::make(p);
        const auto verdicts = verify_all(F, 6);
        CHECK(verdicts.size() == 16);
        for (const auto& v : verdicts) {
            CAPTURE(v.case_label);
            CHECK(v.match);
            CHECK(v.computed == v.expected);
        }
    }
    CHECK_THROWS_AS(verify_all(LocalField::make(3), 4), invalid_params_error);
}

TEST_CASE("instability pairs") {
    for (long p : {3L, 5L}) {
        const LocalField F = LocalField::make(p);
        for (const auto& row : instability_report(F, 6)) {
            CAPTURE(row.stable_class);
            CHECK(row.ok);
        }
    }
}

TEST_CASE("naive engine reproduces the same volumes at small depth") {
    const LocalField F = LocalField::make(3);
    for (const FormCase c : {FormCase::I_aniso, FormCase::II3a, FormCase::IV_u}) {
        const QuadraticForm Q = case_form(c, F);
        for (int n = 0; n <= 2; ++n)
            CHECK(vol_Vn(Q, n, F, Engine::naive) == vol_Vn(Q, n, F, Engine::hensel));
    }
}
