#pragma once

#include "pzeta/measure.hpp"

namespace pzeta {

// Dense univariate polynomial over the exact rationals, in X = q^{-m}.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
    static Poly constant(const Rat& r) { return r == 0 ? Poly() : Poly{r}; }
    static Poly monomial(const Rat& r, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat eval(const Rat& x) const;
    void add_term(int deg, const Rat& r);

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // division with remainder; divisor must be nonzero
    static void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);

private:
    void trim();
    std::vector<Rat> c_;
};

Poly gcd(Poly a, Poly b);  // monic gcd; gcd(0,0) = 0

// Reduced rational function in X.  Canonical form: gcd(num, den) = 1 and the
// denominator is scaled so den(0) = 1 when the constant term is nonzero
// (always the case for assembled series), else den is monic.
struct RationalFunction {
    Poly num, den = Poly{Rat(1)};

    static RationalFunction from(Poly num, Poly den);
    Rat eval(const Rat& x) const;  // throws pole_error at zeros of den

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num == b.num && a.den == b.den;
    }
};

// Detects the tail of a computed volume sequence: finite (trailing zeros) or
// geometric with ratio exactly 1/q; needs three exact consecutive witnesses.
VolumeSequence detect_tail(VolumeSequence vs);

// sum_n values[n] X^n as an exact rational function, the tail summed in
// closed form: head + c (X/q)^n0 / (1 - X/q).
RationalFunction assemble_zeta(const VolumeSequence& vs);

// s = 0 means m = -2, i.e. X = q^2.
Rat evaluate_at_s0(const RationalFunction& rf, long q);

// Normalizing scalar (1 - q^{-2(s+1)}) / (1 - q^{1-2s}) of the intertwining
// operator on the spherical vector; equals -q^{-1}(1+q^{-1}) at s = 0.
Rat normalizer(long s, long q);

// The same normalizer as a rational function of X: (1 - X q^-4)/(1 - X q^-1).
RationalFunction normalizer_rf(long q);

std::string to_string(const Poly& p);
std::string to_string(const RationalFunction& rf);
RationalFunction parse_rational_function(std::string_view s);

} // namespace pzeta
