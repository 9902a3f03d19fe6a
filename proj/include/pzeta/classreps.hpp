#pragma once

#include "pzeta/forms.hpp"

namespace pzeta {

enum class ClassType { I, II, III, IV };
std::string to_string(ClassType t);

// Twisted class of type I split by E = F(sqrt D): torus coordinates
// a = a1 + a2 sqrt(D), b = b1 + b2 sqrt(D) and twists (r, s).
struct TypeIParams {
    Int a1, a2, b1, b2;
    SquareClass D = SquareClass::pi;
    SquareClass r = SquareClass::one, s = SquareClass::one;
};

// Type II: a in E1 = F(sqrt D), b in E2 = F(sqrt AD).
struct TypeIIParams {
    Int a1, a2, b1, b2;
    SquareClass D = SquareClass::pi;
    SquareClass A = SquareClass::u;
    SquareClass r = SquareClass::one, s = SquareClass::one;
};

// Type III: a, b, r in E3 = F(sqrt A) with literal integer representatives
// for A and D (the u-class may be represented by -1 when p = 3 mod 4).
struct TypeIIIParams {
    Int a1, a2, b1, b2, r1, r2;
    Int A, D;
};

// Type IV: as type III but D = d1 + d2 sqrt(A) lies in E3 itself.
struct TypeIVParams {
    Int a1, a2, b1, b2, r1, r2;
    Int A;
    Int d1, d2;
};

struct Rep {
    ClassType type;
    std::array<std::array<Int, 4>, 4> m;
};

Rep build_rep(const TypeIParams& P, const LocalField& F);
Rep build_rep(const TypeIIParams& P, const LocalField& F);
Rep build_rep(const TypeIIIParams& P, const LocalField& F);
Rep build_rep(const TypeIVParams& P, const LocalField& F);

// Full theta-regularity (the torus-ratio conditions); build_rep itself rejects
// only the hard degeneracies (a2 = 0, b2 = 0, vanishing norms).
bool theta_regular(const TypeIParams& P);

// Expands tv g J v symbolically and returns the exact form in the canonical
// variable order (x, y, z, t); types I/II use the (t, z, x, y) vector layout.
QuadraticForm twisted_form(const Rep& rep);

// Semisimple conjugacy data of a 2x2 component, as (trace, det) over F.
struct ConjClass2x2 {
    Int trace, det;
};
struct NormImage {
    ConjClass2x2 first, second;  // equal determinants by construction
};

NormImage norm_map(const TypeIParams& P, const LocalField& F);
NormImage norm_map(const TypeIIIParams& P, const LocalField& F);
// Types II and IV have no corresponding class; throws no_norm_error.
NormImage norm_map(ClassType t);

// Weyl-discriminant ratio |(a - sigma a)^2 / N(a) * (b - sigma b)^2 / N(b)|^(1/2)
// as the exponent e with ratio = q^e, computed from valuations.
int jacobian_ratio_exp(const TypeIParams& P, const LocalField& F);
int jacobian_ratio_exp(const TypeIIIParams& P, const LocalField& F);
Rat jacobian_ratio(const TypeIParams& P, const LocalField& F);
Rat jacobian_ratio(const TypeIIIParams& P, const LocalField& F);

// s = 0 prefactor multiplying the integral: |4 D r| for the normalized type I
// cases, |br tau(br) D| for type III shapes, 1 for types II and IV.
Rat prefactor(FormCase c, const LocalField& F);
Rat prefactor_typeIII(BrCase br, const Int& A, const Int& D, const LocalField& F);

std::string rep_to_json(const Rep& rep);

} // namespace pzeta
