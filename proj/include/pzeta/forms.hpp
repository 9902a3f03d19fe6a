#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pzeta/localfield.hpp"

namespace pzeta {

// Monomial in the variables (x, y, z, t) = indices 0..3.
// Degree 2: i <= j encodes v_i * v_j.  Degree 1: j == -1 encodes v_i.
struct Mono {
    int i = 0;
    int j = -1;
    friend auto operator<=>(const Mono&, const Mono&) = default;
};

inline Mono mono(int i) { return Mono{i, -1}; }
inline Mono mono(int i, int j) { return i <= j ? Mono{i, j} : Mono{j, i}; }

// Homogeneous integer-coefficient polynomial of degree 1 or 2 in (x, y, z, t),
// stored sparsely (zero coefficients are dropped).
class QuadraticForm {
public:
    QuadraticForm() = default;
    explicit QuadraticForm(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    const std::map<Mono, Int>& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }

    void add(const Mono& m, const Int& c);
    Int coeff(const Mono& m) const;

    Int eval(const std::array<Int, 4>& v) const;
    QuadraticForm scaled(const Int& c) const;

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
        return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

private:
    int degree_ = 2;
    std::map<Mono, Int> coeffs_;
};

// The case catalog: normal forms of the integrand for the four class types.
enum class FormCase {
    I_aniso, I1, I2, I3,
    II1, II2, II3a, II3b, II4, II5,
    III_norm, III_sqrtA, III_d_plus_i,
    IV_pi, IV_u,
};

const std::vector<FormCase>& all_form_cases();
std::string to_string(FormCase c);
std::optional<FormCase> parse_form_case(std::string_view s);

// Exact integrand of a catalog case with u, pi instantiated from the field.
QuadraticForm case_form(FormCase c, const LocalField& F);

// Degree-1 form "x": drives the normalizing-operator closed loop.
QuadraticForm linear_x();

// Parametrized integrand builders (the catalog cases are instances of these).
QuadraticForm typeI_integrand(const Int& r, const Int& D);  // x^2 - r y^2 - D z^2 + r D t^2
enum class BrCase { one, sqrtA, d_plus_i };
std::string to_string(BrCase c);
std::optional<BrCase> parse_br_case(std::string_view s);
QuadraticForm typeIII_integrand(BrCase br, const Int& A, const Int& D, const LocalField& F);

// Whether Q represents zero nontrivially over F, decided by the discriminant /
// Hasse-invariant criterion for quaternary forms (tame Hilbert symbols, p odd).
bool is_isotropic(const QuadraticForm& Q, const LocalField& F);

// Normalization of type I/II parameters onto the case catalog, recording the
// substitution used so the kappa argument is preserved.
struct NormalizedCase {
    FormCase label;
    std::string substitution;  // human-readable note; empty when identity
};
NormalizedCase normalize_typeI(SquareClass D, SquareClass r, const LocalField& F);
NormalizedCase normalize_typeII(SquareClass D, SquareClass A, SquareClass r, const LocalField& F);

// Q composed with v -> M v for M invertible mod p; exact integer coefficients.
using Mat4 = std::array<std::array<Int, 4>, 4>;
QuadraticForm change_of_variables(const QuadraticForm& Q, const Mat4& M, const LocalField& F);

// Canonical rendering, e.g. "x^2 - u*y^2 - pi*z^2 + u*pi*t^2"; parse accepts
// the same grammar (variables x,y,z,t, symbols u and pi, integers, * and ^).
std::string to_string(const QuadraticForm& Q, const LocalField& F);
QuadraticForm parse_form(std::string_view expr, const LocalField& F);

} // namespace pzeta
