#include <doctest.h>

#include <random>

#include "pzeta/measure.hpp"

using namespace pzeta;

TEST_CASE("naive counts on small cases") {
    const LocalField F3 = LocalField::make(3);
    // x^2 = 0 mod 3 forces x = 0; 27 primitive choices of (y,z,t) minus the zero vector
    CHECK(count_naive(parse_form("x^2", F3), 1, F3).count == 26);

    // anisotropy forces no primitive zeros mod p^2
    CHECK(count_naive(case_form(FormCase::I_aniso, F3), 2, F3).count == 0);
    CHECK(count_hensel(case_form(FormCase::I_aniso, F3), 2, F3).count == 0);

    const LocalField F5 = LocalField::make(5);
    // x = +-y mod 5: 9 pairs, 25 free (z,t), minus the zero vector
    const QuadraticForm Q = parse_form("x^2 - y^2", F5);
    CHECK(count_naive(Q, 1, F5).count == 224);
    CHECK(count_hensel(Q, 1, F5).count == 224);
}

TEST_CASE("engines agree on the catalog") {
    for (long p : {3L, 5L}) {
        const LocalField F = LocalField::make(p);
        const int kmax = p == 3 ? 3 : 2;
        for (const FormCase c : all_form_cases()) {
            if (c == FormCase::III_d_plus_i && p % 4 != 3)
                continue;
            const QuadraticForm Q = case_form(c, F);
            for (int k = 1; k <= kmax; ++k) {
                const Int naive = count_naive(Q, k, F).count;
                const Int hensel = count_hensel(Q, k, F).count;
                CHECK(naive == hensel);
            }
        }
    }
}

TEST_CASE("engines agree on degree-1 forms") {
    const LocalField F = LocalField::make(3);
    const QuadraticForm x = linear_x();
    for (int k = 1; k <= 4; ++k)
        CHECK(count_naive(x, k, F).count == count_hensel(x, k, F).count);
    // scaled by the uniformizer: the singular stratum recursion is exercised
    const QuadraticForm px = x.scaled(3);
    for (int k = 1; k <= 4; ++k)
        CHECK(count_naive(px, k, F).count == count_hensel(px, k, F).count);
}

TEST_CASE("count invariants") {
    const LocalField F = LocalField::make(3);
    for (const FormCase c : {FormCase::I1, FormCase::II2, FormCase::IV_pi}) {
        const QuadraticForm Q = case_form(c, F);
        Int prev = count_hensel(Q, 1, F).count;
        for (int k = 2; k <= 5; ++k) {
            const Int cur = count_hensel(Q, k, F).count;
            CHECK(cur >= 0);
            CHECK(cur <= Int(3 * 3 * 3 * 3) * prev);
            prev = cur;
        }
    }
}

TEST_CASE("engines agree on random integrands") {
    std::mt19937_64 rng(20250810);
    const LocalField F = LocalField::make(3);
    std::uniform_int_distribution<long> coeff(-8, 8);
    std::uniform_int_distribution<int> pick(0, 9);
    const Mono monos[10] = {mono(0, 0), mono(1, 1), mono(2, 2), mono(3, 3), mono(0, 1),
                            mono(0, 2), mono(0, 3), mono(1, 2), mono(1, 3), mono(2, 3)};
    int built = 0;
    while (built < 30) {
        QuadraticForm Q(2);
        for (int terms = 0; terms < 5; ++terms)
            Q.add(monos[pick(rng)], coeff(rng));
        if (Q.empty())
            continue;
        ++built;
        for (int k = 1; k <= 3; ++k)
            CHECK(count_naive(Q, k, F).count == count_hensel(Q, k, F).count);
    }
}

TEST_CASE("naive engine partitions deterministically across workers") {
    const LocalField F = LocalField::make(5);
    const QuadraticForm Q = case_form(FormCase::II1, F);
    const Int ref = count_naive(Q, 2, F, -1, 1).count;
    for (int threads : {2, 3, 8})
        CHECK(count_naive(Q, 2, F, -1, threads).count == ref);
}

TEST_CASE("budget and precision guards") {
    const LocalField F = LocalField::make(5, 4);
    CHECK_THROWS_AS(count_naive(case_form(FormCase::I1, F), 3, F, /*budget=*/1000),
                    budget_error);
    CHECK_THROWS_AS(count_hensel(case_form(FormCase::I1, F), 5, F), precision_error);
    CHECK_THROWS_AS(vol_leq(case_form(FormCase::I1, F), 4, F), precision_error);
}

TEST_CASE("volumes") {
    for (long p : {3L, 5L, 7L}) {
        const LocalField F = LocalField::make(p);
        const Rat v0 = 1 + q_pow(p, -1) + q_pow(p, -2) + q_pow(p, -3);
        CHECK(vol_leq(case_form(FormCase::II3a, F), 0, F) == v0);

        // anisotropic: |Q| never drops below q^-1
        CHECK(vol_leq(case_form(FormCase::I_aniso, F), 2, F) == 0);

        // complement of the n = 0 shell
        CHECK(vol_leq(case_form(FormCase::I1, F), 1, F) == v0 - (1 - q_pow(p, -1)));

        CHECK(vol_Vn(case_form(FormCase::I1, F), 0, F) == 1 - q_pow(p, -1));
        CHECK(vol_Vn(case_form(FormCase::I2, F), 2, F) ==
              q_pow(p, -2) * (2 - q_pow(p, -1) - 2 * q_pow(p, -2)));
        CHECK(vol_Vn(case_form(FormCase::IV_u, F), 3, F) ==
              q_pow(p, -3) * (1 - q_pow(p, -1)) * (1 + q_pow(p, -2)));
    }
}

TEST_CASE("volumes match the closed forms (hensel, small levels)") {
    const LocalField F = LocalField::make(3);
    for (const FormCase c : all_form_cases())
        for (int n = 0; n <= 4; ++n)
            CHECK(vol_Vn(case_form(c, F), n, F) == reference_volume(c, n, 3));
}

TEST_CASE("volume sequence bounds and telescoping") {
    for (long p : {3L, 5L}) {
        const LocalField F = LocalField::make(p);
        const Rat v0 = 1 + q_pow(p, -1) + q_pow(p, -2) + q_pow(p, -3);
        for (const FormCase c : {FormCase::I3, FormCase::II1, FormCase::IV_pi}) {
            const QuadraticForm Q = case_form(c, F);
            const VolumeSequence vs = volume_sequence(Q, 5, F);
            Rat sum = 0;
            for (int n = 0; n <= 5; ++n) {
                CHECK(vs.values[n] >= 0);
                CHECK(vs.values[n] <= v0);
                sum += vs.values[n];
                CHECK(sum <= v0);
            }
            // vol(V^0) - sum_{n<N} vol(V_n^0) = vol_leq(N)
            for (int N = 1; N <= 5; ++N) {
                Rat partial = 0;
                for (int n = 0; n < N; ++n)
                    partial += vs.values[n];
                CHECK(v0 - partial == vol_leq(Q, N, F));
            }
        }
    }
}

TEST_CASE("unit scaling and uniformizer shift") {
    const LocalField F = LocalField::make(3);
    for (const FormCase c : {FormCase::I1, FormCase::II5, FormCase::IV_u}) {
        const QuadraticForm Q = case_form(c, F);
        const QuadraticForm uQ = Q.scaled(F.u);
        const QuadraticForm mQ = Q.scaled(-7);  // -7 = 2 mod 9, a unit
        const QuadraticForm pQ = Q.scaled(3);
        CHECK(vol_Vn(pQ, 0, F) == 0);
        for (int n = 0; n <= 3; ++n) {
            CHECK(vol_Vn(uQ, n, F) == vol_Vn(Q, n, F));
            CHECK(vol_Vn(mQ, n, F) == vol_Vn(Q, n, F));
            CHECK(vol_Vn(pQ, n + 1, F) == vol_Vn(Q, n, F));
        }
    }
}

TEST_CASE("unimodular invariance of volumes") {
    const LocalField F = LocalField::make(3);
    // product of two unitriangular matrices: unimodular with mixed entries
    Mat4 L{}, U{};
    for (int i = 0; i < 4; ++i) {
        L[i][i] = 1;
        U[i][i] = 1;
    }
    L[1][0] = 1;
    L[2][1] = 2;
    L[3][0] = 1;
    L[3][2] = 1;
    U[0][1] = 2;
    U[0][3] = 1;
    U[1][2] = 1;
    U[2][3] = 2;
    for (const FormCase c : {FormCase::I1, FormCase::I_aniso, FormCase::II3b}) {
        const QuadraticForm Q = case_form(c, F);
        const QuadraticForm QM = change_of_variables(change_of_variables(Q, L, F), U, F);
        for (int n = 0; n <= 3; ++n)
            CHECK(vol_Vn(QM, n, F) == vol_Vn(Q, n, F));
    }
}

TEST_CASE("residue-field solution counts") {
    for (long q : {3L, 5L, 7L}) {
        CHECK(count_Fq({Int(1), Int(1), Int(1)}, Int(0), q) == Int(q) * q);
        // formula equals enumeration on a mixed nondegenerate form
        const std::vector<Int> f = {Int(1), Int(2), Int(q - 1)};
        CHECK(count_Fq(f, Int(1), q) == count_Fq_brute(f, Int(1), q));
    }
    // x^2 + 2y^2 + 3z^2 = 1 over F_7
    CHECK(count_Fq({Int(1), Int(2), Int(3)}, Int(1), 7) ==
          count_Fq_brute({Int(1), Int(2), Int(3)}, Int(1), 7));
    CHECK(count_Fq({Int(1)}, Int(0), 5) == 1);
    CHECK_THROWS_AS(count_Fq({Int(7), Int(1), Int(1)}, Int(0), 7), degenerate_error);
    CHECK_THROWS_AS(count_Fq({}, Int(0), 5), invalid_params_error);
    // even number of variables goes through the enumeration path
    CHECK(count_Fq({Int(1), Int(-1)}, Int(0), 5) == 9);
}

TEST_CASE("shell volumes around a unit square") {
    for (long p : {3L, 5L, 7L}) {
        const LocalField F = LocalField::make(p);
        for (const Int& c : {Int(1), Int(4)})
            for (int n = 1; n <= 3; ++n)
                CHECK(square_shell_volume(c, n, F) ==
                      2 * q_pow(p, -n) * (1 - q_pow(p, -1)));
    }
    const LocalField F3 = LocalField::make(3);
    CHECK(square_shell_volume(Int(1), 1, F3) == Rat(4, 9));
    const LocalField F5 = LocalField::make(5);
    CHECK(square_shell_volume(Int(4), 2, F5) == Rat(8, 125));
    const LocalField F7 = LocalField::make(7);
    CHECK(square_shell_volume(Int(1), 3, F7) == Rat(12, 2401));
    CHECK_THROWS_AS(square_shell_volume(Int(F3.u), 1, F3), invalid_params_error);
    CHECK_THROWS_AS(square_shell_volume(Int(3), 1, F3), invalid_params_error);
}

TEST_CASE("three-variable residue counts embed consistently") {
    // x^2 + y^2 + z^2 = 0 mod p with the dummy variable t free: the level-1
    // count of the engines matches q^2 * q minus the nonprimitive zero
    const LocalField F5 = LocalField::make(5);
    const QuadraticForm Q = parse_form("x^2 + y^2 + z^2", F5);
    const Int expect = Int(25) * 5 - 1;  // q^2 solutions, t free, drop v = 0
    CHECK(count_hensel(Q, 1, F5).count == expect);
    CHECK(count_naive(Q, 1, F5).count == expect);
}
