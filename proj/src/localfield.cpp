#include "pzeta/localfield.hpp"

#include <array>

namespace pzeta {

namespace {

bool is_prime(long n) {
    if (n < 2)
        return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

long mod_pos(const Int& x, long m) {
    Int r = x % m;
    if (r < 0)
        r += m;
    return static_cast<long>(r);
}

long pow_mod(long base, long exp, long m) {
    unsigned long long r = 1, b = static_cast<unsigned long long>(((base % m) + m) % m);
    while (exp > 0) {
        if (exp & 1)
            r = static_cast<unsigned long long>((static_cast<__int128>(r) * b) % m);
        b = static_cast<unsigned long long>((static_cast<__int128>(b) * b) % m);
        exp >>= 1;
    }
    return static_cast<long>(r);
}

long inv_mod(long a, long p) {
    return pow_mod(a, p - 2, p);
}

// Legendre symbol on F_p.
int legendre(const Int& a, long p) {
    const long r = mod_pos(a, p);
    if (r == 0)
        return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

} // namespace

LocalField LocalField::make(long p, int precision_cap) {
    if (p == 2)
        throw invalid_field_error("p = 2 is rejected: odd residue characteristic required");
    if (!is_prime(p))
        throw invalid_field_error("residue size must be an odd prime, got " + std::to_string(p));
    if (precision_cap < 1)
        throw invalid_field_error("precision cap must be positive");

    LocalField F;
    F.p = p;
    F.precision_cap = precision_cap;
    for (long c = 2; c < p; ++c)
        if (legendre(c, p) == -1) {
            F.u = c;
            break;
        }
    if (p % 4 == 3) {
        for (long c = 1; c < p; ++c)
            if (legendre(Int(c) * c + 1, p) == -1) {
                F.d = c;
                break;
            }
    }
    return F;
}

void LocalField::require_level(int k) const {
    if (k > precision_cap)
        throw precision_error("requested " + std::to_string(k) + " digits, precision cap is " +
                              std::to_string(precision_cap));
}

SquareClass sq_mul(SquareClass a, SquareClass b) {
    const int x = static_cast<int>(a) ^ static_cast<int>(b);
    return static_cast<SquareClass>(x);
}

bool sq_is_unit(SquareClass c) {
    return c == SquareClass::one || c == SquareClass::u;
}

std::string to_string(SquareClass c) {
    switch (c) {
    case SquareClass::one: return "1";
    case SquareClass::u: return "u";
    case SquareClass::pi: return "pi";
    case SquareClass::u_pi: return "u*pi";
    }
    return "?";
}

std::optional<SquareClass> parse_square_class(std::string_view s) {
    if (s == "1") return SquareClass::one;
    if (s == "u") return SquareClass::u;
    if (s == "pi") return SquareClass::pi;
    if (s == "u*pi" || s == "upi" || s == "u pi") return SquareClass::u_pi;
    return std::nullopt;
}

Int sq_rep(SquareClass c, const LocalField& F) {
    switch (c) {
    case SquareClass::one: return 1;
    case SquareClass::u: return F.u;
    case SquareClass::pi: return F.p;
    case SquareClass::u_pi: return Int(F.u) * F.p;
    }
    return 1;
}

SquareClass minus_one_class(const LocalField& F) {
    return F.p % 4 == 1 ? SquareClass::one : SquareClass::u;
}

int eta(const Int& a, long q) {
    if (q % 2 == 0)
        throw invalid_field_error("even residue size");
    if (is_prime(q))
        return legendre(a, q);
    // q = p^2: integer inputs lie in the prime subfield, whose units are all
    // squares of F_{p^2}.
    for (long p = 3; p * p <= q; p += 2)
        if (p * p == q && is_prime(p))
            return mod_pos(a, p) == 0 ? 0 : 1;
    throw invalid_field_error("residue size must be p or p^2 for an odd prime p");
}

int eta_ext(const Int& a1, const Int& a2, const Int& Abar, const LocalField& F) {
    const long p = F.p;
    long x = mod_pos(a1, p), y = mod_pos(a2, p);
    if (x == 0 && y == 0)
        return 0;
    const long A = mod_pos(Abar, p);
    // (x + y s)^((p^2-1)/2) in F_p[s]/(s^2 - A); the result lies in {1, -1}.
    long rx = 1, ry = 0;
    long e = (p * p - 1) / 2;
    auto mul = [&](long& cx, long& cy, long dx, long dy) {
        const long nx = static_cast<long>((static_cast<__int128>(cx) * dx + static_cast<__int128>(cy) * dy % p * A) % p);
        const long ny = static_cast<long>((static_cast<__int128>(cx) * dy + static_cast<__int128>(cy) * dx) % p);
        cx = nx;
        cy = ny;
    };
    while (e > 0) {
        if (e & 1)
            mul(rx, ry, x, y);
        {
            const long sx = x, sy = y;
            mul(x, y, sx, sy);
        }
        e >>= 1;
    }
    if (ry != 0 || (rx != 1 && rx != p - 1))
        throw error("quadratic character of F_{p^2} did not land in {1,-1}");
    return rx == 1 ? 1 : -1;
}

SquareClass square_class_of(const Int& x, const LocalField& F) {
    if (x == 0)
        throw degenerate_error("square class of zero");
    const long v = valuation(x, F.p);
    Int unit = x;
    for (long i = 0; i < v; ++i)
        unit /= F.p;
    const bool odd_v = (v % 2) != 0;
    const bool nonsquare_unit = legendre(unit, F.p) == -1;
    if (!odd_v)
        return nonsquare_unit ? SquareClass::u : SquareClass::one;
    return nonsquare_unit ? SquareClass::u_pi : SquareClass::pi;
}

SquareClass square_class_of(const Rat& x, const LocalField& F) {
    if (x == 0)
        throw degenerate_error("square class of zero");
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    return sq_mul(square_class_of(num, F), square_class_of(den, F));
}

bool is_norm(SquareClass r, SquareClass D, const LocalField& F) {
    if (D == SquareClass::one)
        throw not_extension_error("D = 1 does not define a quadratic extension");
    if (D == SquareClass::u)
        return sq_is_unit(r);  // pi^{2Z} R^x: even valuation
    // ramified: (-D)^Z R^x2, so the norm classes are {1, class(-D)}
    const SquareClass minus_D = sq_mul(minus_one_class(F), D);
    return r == SquareClass::one || r == minus_D;
}

int kappa(SquareClass r, SquareClass D, const LocalField& F) {
    return is_norm(r, D, F) ? 1 : -1;
}

QuadExtension QuadExtension::over_F(const Int& disc, const LocalField& F) {
    if (square_class_of(disc, F) == SquareClass::one)
        throw not_extension_error("discriminant is a square in F");
    QuadExtension e;
    e.disc = disc;
    e.ramified = (valuation(disc, F.p) % 2) != 0;
    e.residue_size = F.p;
    return e;
}

QuadExtension QuadExtension::over_E3(const Int& A, const Int& disc, const LocalField& F) {
    const SquareClass cA = square_class_of(A, F);
    if (cA == SquareClass::one)
        throw not_extension_error("A is a square: E3 is not a quadratic extension of F");
    const SquareClass cD = square_class_of(disc, F);
    if (cD == SquareClass::one || cD == cA)
        throw not_extension_error("discriminant is a square in E3");
    QuadExtension e;
    e.base_A = A;
    e.disc = disc;
    if (sq_is_unit(cA)) {
        // E3/F unramified: v3 extends v_p, residue field F_{p^2}
        e.residue_size = F.p * F.p;
        e.ramified = (valuation(disc, F.p) % 2) != 0;
    } else {
        // E3/F ramified: v3(x) = 2 v_p(x) on F, so E/E3 is unramified
        e.residue_size = F.p;
        e.ramified = false;
    }
    return e;
}

int kappa_rel(const Int& r1, const Int& r2, const QuadExtension& ext, const LocalField& F) {
    if (!ext.base_A)
        throw invalid_params_error("kappa_rel needs an extension over E3");
    if (r1 == 0 && r2 == 0)
        throw degenerate_error("kappa_rel at zero");
    const long p = F.p;
    const Int& A = *ext.base_A;
    const Int& D = ext.disc;

    long v_r;       // normalized E3-valuation of r
    int eta_r;      // eta_{k3} of the unit part of r
    long v_D;       // E3-valuation of D
    int eta_D;      // eta_{k3} of the unit part of D
    int eta_m1;     // eta_{k3}(-1)

    if (sq_is_unit(square_class_of(A, F))) {
        // unramified E3: uniformizer p, residue field F_{p^2} = F_p(sqrt A)
        const long w1 = (r1 == 0) ? -1 : valuation(r1, p);
        const long w2 = (r2 == 0) ? -1 : valuation(r2, p);
        v_r = (w1 < 0) ? w2 : (w2 < 0 ? w1 : std::min(w1, w2));
        Int s1 = r1, s2 = r2;
        for (long i = 0; i < v_r; ++i) {
            s1 /= p;
            s2 /= p;
        }
        eta_r = eta_ext(s1, s2, A, F);
        v_D = valuation(D, p);
        Int uD = D;
        for (long i = 0; i < v_D; ++i)
            uD /= p;
        eta_D = eta_ext(uD, 0, A, F);
        eta_m1 = eta_ext(-1, 0, A, F);
    } else {
        // ramified E3: uniformizer sqrt(A), residue field F_p; A = p * a_u
        const Int a_unit = A / p;
        const long w1 = (r1 == 0) ? -1 : valuation(r1, p);
        const long w2 = (r2 == 0) ? -1 : valuation(r2, p);
        const long cand1 = (w1 < 0) ? -1 : 2 * w1;
        const long cand2 = (w2 < 0) ? -1 : 2 * w2 + 1;
        long k;  // power of p divided out of the relevant coordinate
        if (cand2 < 0 || (cand1 >= 0 && cand1 < cand2)) {
            v_r = cand1;
            k = w1;
        } else {
            v_r = cand2;
            k = w2;
        }
        Int coord = (v_r % 2 == 0) ? r1 : r2;
        for (long i = 0; i < k; ++i)
            coord /= p;
        // unit part picks up a_u^{-k}; only its eta matters
        const long au = static_cast<long>(((a_unit % p) + p) % p);
        const long resid = static_cast<long>(
            (static_cast<__int128>(((coord % p) + p) % p) * pow_mod(inv_mod(au, p), k, p)) % p);
        eta_r = eta(resid, p);
        const long vD_F = valuation(D, p);
        v_D = 2 * vD_F;
        Int uD = D;
        for (long i = 0; i < vD_F; ++i)
            uD /= p;
        const long residD = static_cast<long>(
            (static_cast<__int128>(((uD % p) + p) % p) * pow_mod(inv_mod(au, p), vD_F, p)) % p);
        eta_D = eta(residD, p);
        eta_m1 = eta(Int(-1), p);
    }

    int sign = 1;
    if ((v_r * v_D) % 2 != 0)
        sign *= eta_m1;
    if (v_D % 2 != 0)
        sign *= eta_r;
    if (v_r % 2 != 0)
        sign *= eta_D;
    return sign;
}

} // namespace pzeta
