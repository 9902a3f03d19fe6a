#include "pzeta/forms.hpp"

#include <algorithm>
#include <cctype>

namespace pzeta {

namespace {

int mono_degree(const Mono& m) {
    return m.j < 0 ? 1 : 2;
}

// Rendering/iteration order: diagonal monomials first, then cross terms.
const std::vector<Mono>& render_order() {
    static const std::vector<Mono> order = {
        mono(0, 0), mono(1, 1), mono(2, 2), mono(3, 3),
        mono(0, 1), mono(0, 2), mono(0, 3), mono(1, 2), mono(1, 3), mono(2, 3),
        mono(0), mono(1), mono(2), mono(3),
    };
    return order;
}

const char* var_name(int i) {
    static const char* names[4] = {"x", "y", "z", "t"};
    return names[i];
}

} // namespace

void QuadraticForm::add(const Mono& m, const Int& c) {
    if (mono_degree(m) != degree_)
        throw invalid_params_error("monomial degree does not match the form");
    if (m.i < 0 || m.i > 3 || m.j > 3)
        throw invalid_params_error("monomial variable out of range");
    Int& slot = coeffs_[m];
    slot += c;
    if (slot == 0)
        coeffs_.erase(m);
}

Int QuadraticForm::coeff(const Mono& m) const {
    const auto it = coeffs_.find(m);
    return it == coeffs_.end() ? Int(0) : it->second;
}

Int QuadraticForm::eval(const std::array<Int, 4>& v) const {
    Int s = 0;
    for (const auto& [m, c] : coeffs_) {
        if (m.j < 0)
            s += c * v[m.i];
        else
            s += c * v[m.i] * v[m.j];
    }
    return s;
}

QuadraticForm QuadraticForm::scaled(const Int& c) const {
    QuadraticForm out(degree_);
    if (c == 0)
        return out;
    for (const auto& [m, k] : coeffs_)
        out.add(m, c * k);
    return out;
}

const std::vector<FormCase>& all_form_cases() {
    static const std::vector<FormCase> cases = {
        FormCase::I_aniso, FormCase::I1, FormCase::I2, FormCase::I3,
        FormCase::II1, FormCase::II2, FormCase::II3a, FormCase::II3b,
        FormCase::II4, FormCase::II5,
        FormCase::III_norm, FormCase::III_sqrtA, FormCase::III_d_plus_i,
        FormCase::IV_pi, FormCase::IV_u,
    };
    return cases;
}

std::string to_string(FormCase c) {
    switch (c) {
    case FormCase::I_aniso: return "I-aniso";
    case FormCase::I1: return "I.1";
    case FormCase::I2: return "I.2";
    case FormCase::I3: return "I.3";
    case FormCase::II1: return "II.1";
    case FormCase::II2: return "II.2";
    case FormCase::II3a: return "II.3a";
    case FormCase::II3b: return "II.3b";
    case FormCase::II4: return "II.4";
    case FormCase::II5: return "II.5";
    case FormCase::III_norm: return "III-norm";
    case FormCase::III_sqrtA: return "III-sqrtA";
    case FormCase::III_d_plus_i: return "III-d+i";
    case FormCase::IV_pi: return "IV-pi";
    case FormCase::IV_u: return "IV-u";
    }
    return "?";
}

std::optional<FormCase> parse_form_case(std::string_view s) {
    for (const FormCase c : all_form_cases())
        if (to_string(c) == s)
            return c;
    return std::nullopt;
}

QuadraticForm typeI_integrand(const Int& r, const Int& D) {
    QuadraticForm Q(2);
    Q.add(mono(0, 0), 1);
    Q.add(mono(1, 1), -r);
    Q.add(mono(2, 2), -D);
    Q.add(mono(3, 3), r * D);
    return Q;
}

QuadraticForm typeIII_integrand(BrCase br, const Int& A, const Int& D, const LocalField& F) {
    QuadExtension::over_E3(A, D, F);  // validates the extension data
    QuadraticForm Q(2);
    switch (br) {
    case BrCase::one:
        Q.add(mono(2, 3), 1);
        Q.add(mono(0, 1), -D);
        return Q;
    case BrCase::sqrtA:
        Q.add(mono(3, 3), 1);
        Q.add(mono(2, 2), A);
        Q.add(mono(1, 1), -D);
        Q.add(mono(0, 0), -A * D);
        return Q;
    case BrCase::d_plus_i: {
        if (A != -1 || !F.d)
            throw unavailable_case_error("the d+i shape needs A = -1 with p = 3 mod 4");
        const Int d = *F.d;
        Q.add(mono(3, 3), 1);
        Q.add(mono(2, 2), -1);
        Q.add(mono(1, 1), -D);
        Q.add(mono(0, 0), D);
        Q.add(mono(2, 3), 2 * d);
        Q.add(mono(0, 1), -2 * d * D);
        return Q;
    }
    }
    throw invalid_params_error("unknown br case");
}

std::string to_string(BrCase c) {
    switch (c) {
    case BrCase::one: return "1";
    case BrCase::sqrtA: return "sqrtA";
    case BrCase::d_plus_i: return "d+i";
    }
    return "?";
}

std::optional<BrCase> parse_br_case(std::string_view s) {
    if (s == "1") return BrCase::one;
    if (s == "sqrtA") return BrCase::sqrtA;
    if (s == "d+i") return BrCase::d_plus_i;
    return std::nullopt;
}

QuadraticForm case_form(FormCase c, const LocalField& F) {
    const Int p = F.p, u = F.u;
    auto diag = [](Int cx, Int cy, Int cz, Int ct) {
        QuadraticForm Q(2);
        Q.add(mono(0, 0), cx);
        Q.add(mono(1, 1), cy);
        Q.add(mono(2, 2), cz);
        Q.add(mono(3, 3), ct);
        return Q;
    };
    switch (c) {
    case FormCase::I1: return diag(1, -1, -p, p);
    case FormCase::I2: return diag(1, p, -p, -p * p);
    case FormCase::I3: return diag(1, -1, -u, u);
    case FormCase::I_aniso: return diag(1, -u, -p, u * p);
    case FormCase::II1: return diag(1, -1, -u * p, p);
    case FormCase::II2: return diag(1, -u, -u * p, u * p);
    case FormCase::II3a: return diag(1, -1, -u, p);
    case FormCase::II3b: return diag(1, -1, -u * p, u);
    case FormCase::II4: return diag(1, -p, -u * p, u * p);
    case FormCase::II5: return diag(1, -u, -u, u * p);
    case FormCase::III_norm: return typeIII_integrand(BrCase::one, u, p, F);
    case FormCase::III_sqrtA: return typeIII_integrand(BrCase::sqrtA, p, u, F);
    case FormCase::III_d_plus_i:
        if (F.p % 4 != 3)
            throw unavailable_case_error("III-d+i needs p = 3 mod 4");
        return typeIII_integrand(BrCase::d_plus_i, -1, p, F);
    case FormCase::IV_pi: {
        QuadraticForm Q(2);
        Q.add(mono(0, 0), 1);
        Q.add(mono(1, 1), p);
        Q.add(mono(2, 3), -2);
        return Q;
    }
    case FormCase::IV_u: {
        QuadraticForm Q(2);
        Q.add(mono(0, 0), 1);
        Q.add(mono(1, 1), -u);
        Q.add(mono(2, 3), -2);
        return Q;
    }
    }
    throw invalid_params_error("unknown form case");
}

QuadraticForm linear_x() {
    QuadraticForm Q(1);
    Q.add(mono(0), 1);
    return Q;
}

namespace {

int eta_of_unit_part(const Rat& a, const LocalField& F) {
    const Int num = boost::multiprecision::numerator(a);
    const Int den = boost::multiprecision::denominator(a);
    auto unit_eta = [&](Int x) {
        const long v = valuation(x, F.p);
        for (long i = 0; i < v; ++i)
            x /= F.p;
        return eta(x, F.p);
    };
    return unit_eta(num) * unit_eta(den);
}

// Tame Hilbert symbol (a,b)_p for p odd.
int hilbert(const Rat& a, const Rat& b, const LocalField& F) {
    if (a == 0 || b == 0)
        throw degenerate_error("Hilbert symbol at zero");
    const long va = valuation(a, F.p), vb = valuation(b, F.p);
    int s = 1;
    if ((va * vb) % 2 != 0)
        s *= eta(Int(-1), F.p);
    if (vb % 2 != 0)
        s *= eta_of_unit_part(a, F);
    if (va % 2 != 0)
        s *= eta_of_unit_part(b, F);
    return s;
}

// Diagonalizes the symmetric Gram matrix by congruence; throws on rank < 4.
std::array<Rat, 4> diagonalize(const QuadraticForm& Q) {
    std::array<std::array<Rat, 4>, 4> S{};
    for (const auto& [m, c] : Q.coeffs()) {
        if (m.i == m.j)
            S[m.i][m.i] = Rat(c);
        else {
            S[m.i][m.j] = Rat(c) / 2;
            S[m.j][m.i] = Rat(c) / 2;
        }
    }
    std::array<Rat, 4> d{};
    for (int k = 0; k < 4; ++k) {
        if (S[k][k] == 0) {
            int swap = -1, mix = -1;
            for (int l = k + 1; l < 4; ++l) {
                if (swap < 0 && S[l][l] != 0)
                    swap = l;
                if (mix < 0 && S[k][l] != 0)
                    mix = l;
            }
            if (swap >= 0) {
                for (int m = 0; m < 4; ++m)
                    std::swap(S[k][m], S[swap][m]);
                for (int m = 0; m < 4; ++m)
                    std::swap(S[m][k], S[m][swap]);
            } else if (mix >= 0) {
                // v_k <- v_k + v_mix makes the pivot 2 S[k][mix]
                for (int m = 0; m < 4; ++m)
                    S[k][m] += S[mix][m];
                for (int m = 0; m < 4; ++m)
                    S[m][k] += S[m][mix];
            } else {
                throw degenerate_error("degenerate quadratic form");
            }
        }
        for (int l = k + 1; l < 4; ++l) {
            if (S[l][k] == 0)
                continue;
            const Rat f = S[l][k] / S[k][k];
            for (int m = 0; m < 4; ++m)
                S[l][m] -= f * S[k][m];
            for (int m = 0; m < 4; ++m)
                S[m][l] -= f * S[m][k];
        }
        d[k] = S[k][k];
    }
    return d;
}

} // namespace

bool is_isotropic(const QuadraticForm& Q, const LocalField& F) {
    if (Q.degree() != 2)
        throw invalid_params_error("isotropy is defined for quadratic forms");
    const auto d = diagonalize(Q);
    Rat disc = 1;
    for (const auto& di : d)
        disc *= di;
    int hasse = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            hasse *= hilbert(d[i], d[j], F);
    // A quaternary form over F is anisotropic iff its discriminant is a square
    // and its Hasse invariant is -(−1,−1) = -1 (p odd).
    const bool aniso = square_class_of(disc, F) == SquareClass::one && hasse == -1;
    return !aniso;
}

NormalizedCase normalize_typeI(SquareClass D, SquareClass r, const LocalField& F) {
    if (D == SquareClass::one)
        throw not_extension_error("D = 1 does not define a quadratic extension");
    NormalizedCase out;
    if (D == SquareClass::u) {
        if (sq_is_unit(r)) {
            out.label = FormCase::I3;
            if (r != SquareClass::one)
                out.substitution = "r ~ 1 (unit r is a norm from the unramified extension)";
        } else {
            out.label = FormCase::I_aniso;
            out.substitution = "mirror case (D unit, r a uniformizer) swapped onto D = pi, r = u";
        }
        return out;
    }
    const SquareClass minus_D = sq_mul(minus_one_class(F), D);
    if (r == SquareClass::one) {
        out.label = FormCase::I1;
    } else if (r == minus_D) {
        out.label = FormCase::I2;
        out.substitution = "r represented by -D";
    } else {
        out.label = FormCase::I_aniso;
        if (r != SquareClass::u)
            out.substitution = "r ~ u mod norms";
    }
    if (D == SquareClass::u_pi && out.substitution.empty())
        out.substitution = "D rescaled from u*pi to pi";
    return out;
}

NormalizedCase normalize_typeII(SquareClass D, SquareClass A, SquareClass r, const LocalField& F) {
    if (D == SquareClass::one || A == SquareClass::one || D == A)
        throw invalid_params_error("D, A and their product must be the three nontrivial classes");
    NormalizedCase out;
    const bool r_norm = is_norm(r, D, F);
    if (D == SquareClass::u) {
        out.label = r_norm ? FormCase::II3b : FormCase::II4;
        if (A == SquareClass::u_pi)
            out.substitution = "A rescaled from u*pi to pi";
    } else if (A == SquareClass::u) {
        out.label = r_norm ? FormCase::II1 : FormCase::II2;
        if (D == SquareClass::u_pi)
            out.substitution = "D rescaled from u*pi to pi";
    } else {
        out.label = r_norm ? FormCase::II3a : FormCase::II5;
        if (D == SquareClass::u_pi)
            out.substitution = "D rescaled from u*pi to pi";
    }
    return out;
}

QuadraticForm change_of_variables(const QuadraticForm& Q, const Mat4& M, const LocalField& F) {
    // det(M) via cofactor expansion; must be a unit mod p
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return M[r0][c0] * (M[r1][c1] * M[r2][c2] - M[r1][c2] * M[r2][c1]) -
               M[r0][c1] * (M[r1][c0] * M[r2][c2] - M[r1][c2] * M[r2][c0]) +
               M[r0][c2] * (M[r1][c0] * M[r2][c1] - M[r1][c1] * M[r2][c0]);
    };
    const Int det = M[0][0] * det3(1, 2, 3, 1, 2, 3) - M[0][1] * det3(1, 2, 3, 0, 2, 3) +
                    M[0][2] * det3(1, 2, 3, 0, 1, 3) - M[0][3] * det3(1, 2, 3, 0, 1, 2);
    if (det % F.p == 0)
        throw invalid_params_error("substitution matrix is not invertible mod p");

    QuadraticForm out(Q.degree());
    if (Q.degree() == 1) {
        for (int j = 0; j < 4; ++j) {
            Int c = 0;
            for (const auto& [m, k] : Q.coeffs())
                c += k * M[m.i][j];
            if (c != 0)
                out.add(mono(j), c);
        }
        return out;
    }
    // (Q o M)(v) = Q(Mv): expand sum_{m} c_m (Mv)_i (Mv)_j
    std::array<std::array<Int, 4>, 4> acc{};  // acc[i][j], i <= j
    for (const auto& [m, c] : Q.coeffs()) {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const Int term = c * M[m.i][a] * M[m.j][b];
                if (term == 0)
                    continue;
                if (a <= b)
                    acc[a][b] += term;
                else
                    acc[b][a] += term;
            }
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b)
            if (acc[a][b] != 0)
                out.add(mono(a, b), acc[a][b]);
    return out;
}

namespace {

// Symbolic rendering of a coefficient magnitude when it equals u^a * pi^b.
std::string coeff_str(const Int& mag, const LocalField& F) {
    const Int p = F.p, u = F.u;
    const struct {
        Int value;
        const char* text;
    } table[] = {
        {1, "1"}, {u, "u"}, {p, "pi"}, {u * p, "u*pi"}, {p * p, "pi^2"}, {u * p * p, "u*pi^2"},
    };
    for (const auto& e : table)
        if (mag == e.value)
            return e.text;
    return mag.str();
}

std::string mono_str(const Mono& m) {
    if (m.j < 0)
        return var_name(m.i);
    if (m.i == m.j)
        return std::string(var_name(m.i)) + "^2";
    return std::string(var_name(m.i)) + "*" + var_name(m.j);
}

} // namespace

std::string to_string(const QuadraticForm& Q, const LocalField& F) {
    if (Q.empty())
        return "0";
    std::string out;
    for (const Mono& m : render_order()) {
        const Int c = Q.coeff(m);
        if (c == 0)
            continue;
        const bool neg = c < 0;
        const std::string cs = coeff_str(neg ? Int(-c) : c, F);
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (cs != "1")
            out += cs + "*";
        out += mono_str(m);
    }
    return out;
}

namespace {

struct Parser {
    std::string_view s;
    size_t pos = 0;
    const LocalField& F;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw invalid_params_error("form parse error at offset " + std::to_string(pos) + ": " + what);
    }

    // factor: integer | u | pi | variable, optionally ^exponent
    void factor(Int& coeff, std::array<int, 4>& exps) {
        skip_ws();
        if (pos >= s.size())
            fail("expected factor");
        Int base_coeff = 1;
        int var = -1;
        const char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            base_coeff = Int(std::string(s.substr(start, pos - start)));
        } else if (s.substr(pos, 2) == "pi") {
            base_coeff = F.p;
            pos += 2;
        } else if (c == 'u') {
            base_coeff = F.u;
            ++pos;
        } else if (c == 'x' || c == 'y' || c == 'z' || c == 't') {
            var = (c == 'x') ? 0 : (c == 'y') ? 1 : (c == 'z') ? 2 : 3;
            ++pos;
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        long e = 1;
        if (eat('^')) {
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            if (start == pos)
                fail("expected exponent");
            e = std::stol(std::string(s.substr(start, pos - start)));
            if (e < 0 || e > 4)
                fail("exponent out of range");
        }
        if (var >= 0)
            exps[var] += static_cast<int>(e);
        else
            for (long i = 0; i < e; ++i)
                coeff *= base_coeff;
        if (var >= 0 && e > 2)
            fail("variable exponent exceeds 2");
    }

    void term(std::optional<QuadraticForm>& Q, int sign) {
        Int coeff = sign;
        std::array<int, 4> exps{};
        factor(coeff, exps);
        while (eat('*'))
            factor(coeff, exps);
        int deg = 0;
        for (int e : exps)
            deg += e;
        if (deg != 1 && deg != 2)
            fail("each term must have total degree 1 or 2 in x,y,z,t");
        if (!Q)
            Q.emplace(deg);
        Mono m;
        if (deg == 1) {
            for (int i = 0; i < 4; ++i)
                if (exps[i] == 1)
                    m = mono(i);
        } else {
            int a = -1, b = -1;
            for (int i = 0; i < 4; ++i) {
                if (exps[i] == 2)
                    a = b = i;
                else if (exps[i] == 1)
                    (a < 0 ? a : b) = i;
            }
            m = mono(a, b);
        }
        Q->add(m, coeff);
    }
};

} // namespace

QuadraticForm parse_form(std::string_view expr, const LocalField& F) {
    Parser P{expr, 0, F};
    std::optional<QuadraticForm> Q;
    int sign = P.eat('-') ? -1 : 1;
    P.term(Q, sign);
    for (;;) {
        P.skip_ws();
        if (P.pos >= P.s.size())
            break;
        if (P.eat('+'))
            sign = 1;
        else if (P.eat('-'))
            sign = -1;
        else
            P.fail("expected + or -");
        P.term(Q, sign);
    }
    if (Q->empty())
        throw invalid_params_error("form is identically zero");
    return *Q;
}

} // namespace pzeta
