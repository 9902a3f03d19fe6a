#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pzeta/rational.hpp"

namespace pzeta {

// Base field F = Q_p with p odd, so the residue size q equals p and the
// uniformizer pi is the integer p itself.  All element arithmetic in this
// library is exact integer/rational arithmetic; precision_cap bounds the
// number of p-adic digits the counting engines may request.
struct LocalField {
    long p = 0;             // odd prime; doubles as residue size q
    long u = 0;             // least positive nonsquare unit mod p
    std::optional<long> d;  // least positive unit with d^2+1 a nonsquare; set iff p = 3 mod 4
    int precision_cap = 0;  // K

    static LocalField make(long p, int precision_cap = 8);

    long q() const { return p; }
    void require_level(int k) const;  // k digits needed; throws precision_error past the cap
};

// F^x / F^x2 for odd p: representatives {1, u, pi, u*pi}.
enum class SquareClass { one, u, pi, u_pi };

SquareClass sq_mul(SquareClass a, SquareClass b);
bool sq_is_unit(SquareClass c);   // even valuation
std::string to_string(SquareClass c);
std::optional<SquareClass> parse_square_class(std::string_view s);
Int sq_rep(SquareClass c, const LocalField& F);  // canonical integer representative
SquareClass minus_one_class(const LocalField& F);

// Quadratic character of the residue field F_q, q = p or p^2 (integer inputs
// land in the prime subfield; every unit of F_p is a square in F_{p^2}).
// Returns +1 on nonzero squares, -1 on nonsquares, 0 at 0.
int eta(const Int& a, long q);

// Quadratic character of F_{p^2} = F_p(s), s^2 = Abar, on a1 + a2*s.
int eta_ext(const Int& a1, const Int& a2, const Int& Abar, const LocalField& F);

// Canonicalize a nonzero rational into the four-class quotient.
SquareClass square_class_of(const Int& x, const LocalField& F);
SquareClass square_class_of(const Rat& x, const LocalField& F);

// Membership in the norm group N_{E/F}E^x for E = F(sqrt D), D != 1:
// unramified D: pi^{2Z} R^x; ramified D: (-D)^Z R^x2.
bool is_norm(SquareClass r, SquareClass D, const LocalField& F);

// The nontrivial character of F^x / N_{E/F}E^x.
int kappa(SquareClass r, SquareClass D, const LocalField& F);

// Quadratic extension E = base(sqrt disc).  base_A empty means base = F;
// otherwise base = E3 = F(sqrt base_A) with the literal nonsquare integer
// base_A (the u-class representative may be -1 when p = 3 mod 4).
struct QuadExtension {
    std::optional<Int> base_A;
    Int disc;           // literal representative; nonsquare in the base field
    bool ramified;      // valuation of disc odd in the base field
    long residue_size;  // of the base field: q, or q^2 for unramified E3

    static QuadExtension over_F(const Int& disc, const LocalField& F);
    static QuadExtension over_E3(const Int& A, const Int& disc, const LocalField& F);
};

// Nontrivial character of E3^x / N_{E/E3}E^x evaluated at r = r1 + r2*sqrt(A),
// computed by the tame Hilbert symbol over E3 (odd residue characteristic):
//   kappa(r) = eta_{k3}((-1)^{v(r)v(D)} r^{v(D)} D^{-v(r)} mod m3).
int kappa_rel(const Int& r1, const Int& r2, const QuadExtension& ext, const LocalField& F);

} // namespace pzeta
