#include "pzeta/classreps.hpp"

#include <nlohmann/json.hpp>

namespace pzeta {

std::string to_string(ClassType t) {
    switch (t) {
    case ClassType::I: return "I";
    case ClassType::II: return "II";
    case ClassType::III: return "III";
    case ClassType::IV: return "IV";
    }
    return "?";
}

namespace {

void check_torus_coords(const Int& a2, const Int& b2, const Int& Na, const Int& Nb) {
    if (a2 == 0 || b2 == 0)
        throw regularity_error("a2 and b2 must be nonzero (a/sigma(a), b/sigma(b) != 1)");
    if (Na == 0 || Nb == 0)
        throw degenerate_error("torus coordinates with vanishing norm");
}

// 2x2 block of an E3-element w = w1 + w2 sqrt(A).
std::array<std::array<Int, 2>, 2> e3_block(const Int& w1, const Int& w2, const Int& A) {
    return {{{w1, w2 * A}, {w2, w1}}};
}

std::pair<Int, Int> e3_mul(const std::pair<Int, Int>& a, const std::pair<Int, Int>& b,
                           const Int& A) {
    return {a.first * b.first + a.second * b.second * A, a.first * b.second + a.second * b.first};
}

void place_block(Rep& rep, int r0, int c0, const std::array<std::array<Int, 2>, 2>& blk,
                 const Int& scale = 1) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            rep.m[r0 + i][c0 + j] = scale * blk[i][j];
}

} // namespace

Rep build_rep(const TypeIParams& P, const LocalField& F) {
    const Int D = sq_rep(P.D, F);
    check_torus_coords(P.a2, P.b2, P.a1 * P.a1 - P.a2 * P.a2 * D, P.b1 * P.b1 - P.b2 * P.b2 * D);
    const Int r = sq_rep(P.r, F), s = sq_rep(P.s, F);
    Rep rep{ClassType::I, {}};
    rep.m = {{{P.a1 * r, 0, 0, P.a2 * D * r},
              {0, P.b1 * s, P.b2 * D * s, 0},
              {0, P.b2 * s, P.b1 * s, 0},
              {P.a2 * r, 0, 0, P.a1 * r}}};
    return rep;
}

Rep build_rep(const TypeIIParams& P, const LocalField& F) {
    const Int D = sq_rep(P.D, F);
    const Int AD = sq_rep(P.A, F) * D;  // b lies in E2 = F(sqrt(AD))
    if (P.A == SquareClass::one || P.D == SquareClass::one || P.A == P.D)
        throw invalid_params_error("type II needs distinct nontrivial classes D, A");
    check_torus_coords(P.a2, P.b2, P.a1 * P.a1 - P.a2 * P.a2 * D, P.b1 * P.b1 - P.b2 * P.b2 * AD);
    const Int r = sq_rep(P.r, F), s = sq_rep(P.s, F);
    Rep rep{ClassType::II, {}};
    rep.m = {{{P.a1 * r, 0, 0, P.a2 * D * r},
              {0, P.b1 * s, P.b2 * AD * s, 0},
              {0, P.b2 * s, P.b1 * s, 0},
              {P.a2 * r, 0, 0, P.a1 * r}}};
    return rep;
}

Rep build_rep(const TypeIIIParams& P, const LocalField& F) {
    if (square_class_of(P.A, F) == SquareClass::one)
        throw invalid_params_error("A must be a nonsquare");
    QuadExtension::over_E3(P.A, P.D, F);
    if ((P.b1 == 0 && P.b2 == 0) || (P.r1 == 0 && P.r2 == 0))
        throw regularity_error("b and r must be nonzero in E3");
    const auto ar = e3_mul({P.a1, P.a2}, {P.r1, P.r2}, P.A);
    const auto br = e3_mul({P.b1, P.b2}, {P.r1, P.r2}, P.A);
    Rep rep{ClassType::III, {}};
    place_block(rep, 0, 0, e3_block(ar.first, ar.second, P.A));
    place_block(rep, 0, 2, e3_block(br.first, br.second, P.A), P.D);
    place_block(rep, 2, 0, e3_block(br.first, br.second, P.A));
    place_block(rep, 2, 2, e3_block(ar.first, ar.second, P.A));
    return rep;
}

Rep build_rep(const TypeIVParams& P, const LocalField& F) {
    if (square_class_of(P.A, F) == SquareClass::one)
        throw invalid_params_error("A must be a nonsquare");
    if (P.d1 == 0 && P.d2 == 0)
        throw degenerate_error("D = 0 in E3");
    if ((P.b1 == 0 && P.b2 == 0) || (P.r1 == 0 && P.r2 == 0))
        throw regularity_error("b and r must be nonzero in E3");
    const auto ar = e3_mul({P.a1, P.a2}, {P.r1, P.r2}, P.A);
    const auto br = e3_mul({P.b1, P.b2}, {P.r1, P.r2}, P.A);
    // b' = b D with D = d1 + d2 sqrt(A)
    const auto bp = e3_mul({P.b1, P.b2}, {P.d1, P.d2}, P.A);
    const auto bpr = e3_mul(bp, {P.r1, P.r2}, P.A);
    Rep rep{ClassType::IV, {}};
    place_block(rep, 0, 0, e3_block(ar.first, ar.second, P.A));
    place_block(rep, 0, 2, e3_block(bpr.first, bpr.second, P.A));
    place_block(rep, 2, 0, e3_block(br.first, br.second, P.A));
    place_block(rep, 2, 2, e3_block(ar.first, ar.second, P.A));
    return rep;
}

bool theta_regular(const TypeIParams& P) {
    // a/sigma(a), b/sigma(b) != +-1 and distinct from each other and inverses
    if (P.a1 == 0 || P.a2 == 0 || P.b1 == 0 || P.b2 == 0)
        return false;
    if (P.a2 * P.b1 == P.a1 * P.b2)
        return false;
    if (P.a1 * P.b2 + P.a2 * P.b1 == 0)
        return false;
    return true;
}

QuadraticForm twisted_form(const Rep& rep) {
    // J[0][3] = J[1][2] = 1, J[2][1] = J[3][0] = -1, so (gJ)[i][j] has the
    // sign of column j: (-1, -1, +1, +1).
    static const int col_sign[4] = {-1, -1, 1, 1};
    std::array<std::array<Int, 4>, 4> gJ{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            gJ[i][j] = col_sign[j] * rep.m[i][3 - j];
    // variable layout of tv: position -> canonical variable index
    const bool tz_layout = rep.type == ClassType::I || rep.type == ClassType::II;
    const int var_of_pos[4][2] = {{3, 0}, {2, 1}, {0, 2}, {1, 3}};
    auto var = [&](int pos) { return tz_layout ? var_of_pos[pos][0] : var_of_pos[pos][1]; };
    QuadraticForm Q(2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (gJ[i][j] != 0)
                Q.add(mono(var(i), var(j)), gJ[i][j]);
    return Q;
}

NormImage norm_map(const TypeIParams& P, const LocalField& F) {
    const Int D = sq_rep(P.D, F);
    const Int Na = P.a1 * P.a1 - P.a2 * P.a2 * D;
    const Int Nb = P.b1 * P.b1 - P.b2 * P.b2 * D;
    check_torus_coords(P.a2, P.b2, Na, Nb);
    NormImage out;
    out.first = ConjClass2x2{2 * (P.a1 * P.b1 + P.a2 * P.b2 * D), Na * Nb};
    out.second = ConjClass2x2{2 * (P.a1 * P.b1 - P.a2 * P.b2 * D), Na * Nb};
    return out;
}

NormImage norm_map(const TypeIIIParams& P, const LocalField& F) {
    if (square_class_of(P.A, F) == SquareClass::one)
        throw invalid_params_error("A must be a nonsquare");
    const Int Na = P.a1 * P.a1 - P.a2 * P.a2 * P.A;
    const Int Nb = P.b1 * P.b1 - P.b2 * P.b2 * P.A;
    // alpha tau(alpha) = (Na + Nb D) + (a tau(b) + b tau(a)) sqrt(D) in E1,
    // alpha sigma(tau(alpha)) = (Na - Nb D) - 2(a2 b1 - a1 b2) sqrt(AD) in E2.
    const Int cross1 = 2 * (P.a1 * P.b1 - P.a2 * P.b2 * P.A);
    const Int cross2 = 2 * (P.a2 * P.b1 - P.a1 * P.b2);
    NormImage out;
    out.first = ConjClass2x2{2 * (Na + Nb * P.D),
                             (Na + Nb * P.D) * (Na + Nb * P.D) - cross1 * cross1 * P.D};
    out.second = ConjClass2x2{2 * (Na - Nb * P.D),
                              (Na - Nb * P.D) * (Na - Nb * P.D) - cross2 * cross2 * P.A * P.D};
    return out;
}

NormImage norm_map(ClassType t) {
    throw no_norm_error("no conjugacy class in C corresponds to type " + to_string(t));
}

namespace {

int half_even_valuation(const Int& num, const Int& den, long p, const char* what) {
    // valuation of num/den must be even; returns v/2
    const long v = valuation(num, p) - valuation(den, p);
    if (v % 2 != 0)
        throw regularity_error(std::string(what) + ": odd valuation under the square root");
    return static_cast<int>(v / 2);
}

} // namespace

int jacobian_ratio_exp(const TypeIParams& P, const LocalField& F) {
    const Int D = sq_rep(P.D, F);
    const Int Na = P.a1 * P.a1 - P.a2 * P.a2 * D;
    const Int Nb = P.b1 * P.b1 - P.b2 * P.b2 * D;
    check_torus_coords(P.a2, P.b2, Na, Nb);
    // |(2 a2 sqrt D)^2 / Na * (2 b2 sqrt D)^2 / Nb|^(1/2)
    const Int num = 4 * P.a2 * P.a2 * D * 4 * P.b2 * P.b2 * D;
    return -half_even_valuation(num, Na * Nb, F.p, "type I Jacobian ratio");
}

int jacobian_ratio_exp(const TypeIIIParams& P, const LocalField& F) {
    if (square_class_of(P.A, F) == SquareClass::one)
        throw invalid_params_error("A must be a nonsquare");
    const Int Nb = P.b1 * P.b1 - P.b2 * P.b2 * P.A;
    if (Nb == 0)
        throw degenerate_error("b has vanishing norm");
    // a^2 - b^2 D in E3, then its norm down to F
    const auto a2_ = e3_mul({P.a1, P.a2}, {P.a1, P.a2}, P.A);
    const auto b2_ = e3_mul({P.b1, P.b2}, {P.b1, P.b2}, P.A);
    const std::pair<Int, Int> asbd{a2_.first - b2_.first * P.D, a2_.second - b2_.second * P.D};
    const Int den = asbd.first * asbd.first - asbd.second * asbd.second * P.A;
    if (den == 0)
        throw degenerate_error("alpha has vanishing norm");
    const Int num = (4 * Nb * P.D) * (4 * Nb * P.D);
    return -half_even_valuation(num, den, F.p, "type III Jacobian ratio");
}

Rat jacobian_ratio(const TypeIParams& P, const LocalField& F) {
    return q_pow(F.p, jacobian_ratio_exp(P, F));
}

Rat jacobian_ratio(const TypeIIIParams& P, const LocalField& F) {
    return q_pow(F.p, jacobian_ratio_exp(P, F));
}

Rat prefactor(FormCase c, const LocalField& F) {
    switch (c) {
    // |4 D r| at the case's canonical (D, r); 4 is a unit
    case FormCase::I1: return q_pow(F.p, -1);        // r = 1,  D = pi
    case FormCase::I2: return q_pow(F.p, -2);        // r = -pi, D = pi
    case FormCase::I3: return 1;                     // r = 1,  D = u
    case FormCase::I_aniso: return q_pow(F.p, -1);   // r = u,  D = pi
    case FormCase::III_norm: return prefactor_typeIII(BrCase::one, F.u, F.p, F);
    case FormCase::III_sqrtA: return prefactor_typeIII(BrCase::sqrtA, F.p, F.u, F);
    case FormCase::III_d_plus_i:
        if (!F.d)
            throw unavailable_case_error("III-d+i needs p = 3 mod 4");
        return prefactor_typeIII(BrCase::d_plus_i, -1, F.p, F);
    default:
        return 1;  // types II and IV: the bare integral is asserted to vanish
    }
}

Rat prefactor_typeIII(BrCase br, const Int& A, const Int& D, const LocalField& F) {
    // |br tau(br) D| with b = 1: br tau(br) = N_{E3/F}(r)
    Int Nr;
    switch (br) {
    case BrCase::one:
        Nr = 1;
        break;
    case BrCase::sqrtA:
        Nr = -A;
        break;
    case BrCase::d_plus_i:
        if (A != -1 || !F.d)
            throw unavailable_case_error("the d+i twist needs A = -1 with p = 3 mod 4");
        Nr = Int(*F.d) * *F.d + 1;
        break;
    }
    return q_pow(F.p, -valuation(Int(Nr * D), F.p));
}

std::string rep_to_json(const Rep& rep) {
    nlohmann::ordered_json j;
    j["type"] = to_string(rep.type);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : rep.m) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& e : row)
            r.push_back(e.str());
        rows.push_back(r);
    }
    j["matrix"] = rows;
    return j.dump();
}

} // namespace pzeta
