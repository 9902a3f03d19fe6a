#include <doctest.h>

#include <random>

#include "pzeta/forms.hpp"

using namespace pzeta;

namespace {

// brute-force search for a primitive zero mod p^3
bool has_primitive_zero_mod_p3(const QuadraticForm& Q, const LocalField& F) {
    const long p = F.p;
    const long M = p * p * p;
    struct Term {
        int i, j;
        long c;
    };
    std::vector<Term> terms;
    for (const auto& [m, c] : Q.coeffs())
        terms.push_back({m.i, m.j, static_cast<long>(((c % M) + M) % M)});
    long v[4];
    for (v[0] = 0; v[0] < M; ++v[0])
        for (v[1] = 0; v[1] < M; ++v[1])
            for (v[2] = 0; v[2] < M; ++v[2])
                for (v[3] = 0; v[3] < M; ++v[3]) {
                    if (v[0] % p == 0 && v[1] % p == 0 && v[2] % p == 0 && v[3] % p == 0)
                        continue;
                    long s = 0;
                    for (const Term& t : terms)
                        s = (s + t.c * v[t.i] % M * v[t.j]) % M;
                    if (s == 0)
                        return true;
                }
    return false;
}

Mat4 random_unimodular(std::mt19937_64& rng, const LocalField& F) {
    std::uniform_int_distribution<long> dist(0, F.p - 1);
    for (;;) {
        Mat4 M;
        for (auto& row : M)
            for (auto& e : row)
                e = dist(rng);
        try {
            change_of_variables(linear_x(), M, F);
            return M;
        } catch (const invalid_params_error&) {
            // singular mod p; draw again
        }
    }
}

} // namespace

TEST_CASE("catalog forms against their displayed shapes") {
    const LocalField F = LocalField::make(3);
    CHECK(case_form(FormCase::I1, F) == parse_form("x^2 - y^2 - pi*z^2 + pi*t^2", F));
    CHECK(case_form(FormCase::II5, F) == parse_form("x^2 - u*y^2 - u*z^2 + u*pi*t^2", F));
    CHECK(case_form(FormCase::IV_u, F) == parse_form("x^2 - u*y^2 - 2*z*t", F));
    CHECK(case_form(FormCase::III_norm, F) == parse_form("z*t - pi*x*y", F));
    CHECK(case_form(FormCase::I2, F) == parse_form("x^2 + pi*y^2 - pi*z^2 - pi^2*t^2", F));

    // d+i shape at p = 3: d = 1
    CHECK(case_form(FormCase::III_d_plus_i, F) ==
          parse_form("t^2 - z^2 - pi*y^2 + pi*x^2 + 2*z*t - 2*pi*x*y", F));
    const LocalField F5 = LocalField::make(5);
    CHECK_THROWS_AS(case_form(FormCase::III_d_plus_i, F5), unavailable_case_error);

    for (long p : {3L, 7L}) {
        const LocalField Fp = LocalField::make(p);
        for (const FormCase c : all_form_cases()) {
            const QuadraticForm Q = case_form(c, Fp);
            CHECK(Q.degree() == 2);
            // rendering round-trips exactly
            CHECK(parse_form(to_string(Q, Fp), Fp) == Q);
            // catalog coefficients carry at most a factor pi^2
            for (const auto& [m, coeff] : Q.coeffs())
                CHECK(valuation(coeff, p) <= 2);
        }
    }
    CHECK(linear_x().degree() == 1);
}

TEST_CASE("form parsing errors") {
    const LocalField F = LocalField::make(3);
    CHECK_THROWS_AS(parse_form("x^2 + y", F), invalid_params_error);       // mixed degree
    CHECK_THROWS_AS(parse_form("x^3", F), invalid_params_error);           // degree 3
    CHECK_THROWS_AS(parse_form("x^2 + w^2", F), invalid_params_error);     // unknown variable
    CHECK_THROWS_AS(parse_form("x^2 - x^2", F), invalid_params_error);     // identically zero
    CHECK(parse_form("2*x*y", F).coeff(mono(0, 1)) == 2);
    CHECK(parse_form("x*x", F) == parse_form("x^2", F));
}

TEST_CASE("isotropy of the catalog") {
    for (long p : {3L, 5L, 7L}) {
        const LocalField F = LocalField::make(p);
        for (const FormCase c : all_form_cases()) {
            if (c == FormCase::III_d_plus_i && p % 4 != 3)
                continue;
            const bool aniso = c == FormCase::I_aniso || c == FormCase::III_sqrtA ||
                               c == FormCase::III_d_plus_i;
            CHECK(is_isotropic(case_form(c, F), F) == !aniso);
        }
    }
}

TEST_CASE("isotropy agrees with primitive-zero search mod p^3") {
    const LocalField F = LocalField::make(3);
    for (const FormCase c : all_form_cases()) {
        const QuadraticForm Q = case_form(c, F);
        CHECK(is_isotropic(Q, F) == has_primitive_zero_mod_p3(Q, F));
    }
}

TEST_CASE("isotropy of random diagonal forms agrees with the zero search") {
    // for diagonal forms with coefficient valuations <= 1, an anisotropic form
    // keeps |Q| >= 1/q on primitive vectors, so the mod p^3 search is decisive
    std::mt19937_64 rng(42);
    const LocalField F = LocalField::make(3);
    std::uniform_int_distribution<int> unit(1, 2), pival(0, 1), sign(0, 1);
    for (int iter = 0; iter < 40; ++iter) {
        QuadraticForm Q(2);
        for (int i = 0; i < 4; ++i) {
            Int c = unit(rng);
            if (pival(rng))
                c *= 3;
            if (sign(rng))
                c = -c;
            Q.add(mono(i, i), c);
        }
        CHECK(is_isotropic(Q, F) == has_primitive_zero_mod_p3(Q, F));
    }
}

TEST_CASE("isotropy is invariant under unimodular changes of variables") {
    std::mt19937_64 rng(20240811);
    for (long p : {3L, 5L, 7L}) {
        const LocalField F = LocalField::make(p);
        for (const FormCase c : all_form_cases()) {
            if (c == FormCase::III_d_plus_i && p % 4 != 3)
                continue;
            const QuadraticForm Q = case_form(c, F);
            const bool iso = is_isotropic(Q, F);
            for (int i = 0; i < 50; ++i) {
                const Mat4 M = random_unimodular(rng, F);
                CHECK(is_isotropic(change_of_variables(Q, M, F), F) == iso);
            }
        }
    }
}

TEST_CASE("isotropy rejects degenerate forms") {
    const LocalField F = LocalField::make(3);
    CHECK_THROWS_AS(is_isotropic(parse_form("x^2 + 2*x*y + y^2", F), F), degenerate_error);
    CHECK_THROWS_AS(is_isotropic(linear_x(), F), invalid_params_error);
}

TEST_CASE("change of variables") {
    const LocalField F = LocalField::make(5);
    const QuadraticForm Q = case_form(FormCase::I1, F);
    Mat4 id{};
    for (int i = 0; i < 4; ++i)
        id[i][i] = 1;
    CHECK(change_of_variables(Q, id, F) == Q);

    Mat4 singular = id;
    singular[0][0] = 5;
    CHECK_THROWS_AS(change_of_variables(Q, singular, F), invalid_params_error);

    // hyperbolic split: z t - D x y under x -> x+y, y -> x-y, z -> z+t, t -> z-t
    Mat4 split{};
    split[0][0] = 1; split[0][1] = 1;
    split[1][0] = 1; split[1][1] = -1;
    split[2][2] = 1; split[2][3] = 1;
    split[3][2] = 1; split[3][3] = -1;
    const QuadraticForm ZT = parse_form("z*t - pi*x*y", F);
    CHECK(change_of_variables(ZT, split, F) ==
          parse_form("z^2 - t^2 - pi*x^2 + pi*y^2", F));

    // completing the square in the type IV shape: x -> x + d y turns
    // x^2 - y^2 - 2 d x y + 2 z t into x^2 - u y^2 + 2 z t with u = d^2 + 1
    const LocalField F3 = LocalField::make(3);
    const Int d = *F3.d;
    Mat4 shear = id;
    shear[0][1] = d;
    const QuadraticForm Q4 = parse_form("x^2 - y^2 - 2*x*y + 2*z*t", F3);
    CHECK(change_of_variables(Q4, shear, F3) == parse_form("x^2 - u*y^2 + 2*z*t", F3));
}

TEST_CASE("normalize_typeI") {
    for (long p : {3L, 5L, 7L}) {
        const LocalField F = LocalField::make(p);
        CHECK(normalize_typeI(SquareClass::u, SquareClass::one, F).label == FormCase::I3);
        CHECK(normalize_typeI(SquareClass::pi, square_class_of(Int(-p), F), F).label ==
              FormCase::I2);
        CHECK(normalize_typeI(SquareClass::pi, SquareClass::u, F).label == FormCase::I_aniso);
        CHECK_THROWS_AS(normalize_typeI(SquareClass::one, SquareClass::u, F),
                        not_extension_error);

        // label depends on r only through norm membership
        const SquareClass all[] = {SquareClass::one, SquareClass::u, SquareClass::pi,
                                   SquareClass::u_pi};
        for (const SquareClass D : {SquareClass::u, SquareClass::pi, SquareClass::u_pi})
            for (const SquareClass r : all) {
                const FormCase label = normalize_typeI(D, r, F).label;
                CHECK((label == FormCase::I_aniso) == !is_norm(r, D, F));
                CHECK(is_isotropic(case_form(label, F), F) == is_norm(r, D, F));
            }
    }
}

TEST_CASE("normalize_typeII") {
    for (long p : {3L, 5L, 7L}) {
        const LocalField F = LocalField::make(p);
        CHECK(normalize_typeII(SquareClass::u, SquareClass::pi, SquareClass::one, F).label ==
              FormCase::II3b);
        CHECK(normalize_typeII(SquareClass::pi, SquareClass::u, SquareClass::one, F).label ==
              FormCase::II1);
        CHECK(normalize_typeII(SquareClass::pi, SquareClass::u_pi, SquareClass::u, F).label ==
              FormCase::II5);
        CHECK(normalize_typeII(SquareClass::pi, SquareClass::u, SquareClass::u, F).label ==
              FormCase::II2);
        CHECK(normalize_typeII(SquareClass::pi, SquareClass::u_pi, SquareClass::one, F).label ==
              FormCase::II3a);
        CHECK(normalize_typeII(SquareClass::u, SquareClass::pi, SquareClass::pi, F).label ==
              FormCase::II4);
        CHECK_THROWS_AS(normalize_typeII(SquareClass::u, SquareClass::u, SquareClass::one, F),
                        invalid_params_error);
        CHECK_THROWS_AS(normalize_typeII(SquareClass::one, SquareClass::u, SquareClass::one, F),
                        invalid_params_error);
        // all six type II normal forms are isotropic
        for (const FormCase c : {FormCase::II1, FormCase::II2, FormCase::II3a, FormCase::II3b,
                                 FormCase::II4, FormCase::II5})
            CHECK(is_isotropic(case_form(c, F), F));
    }
}
