#include "pzeta/zeta.hpp"

#include <cctype>

namespace pzeta {

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Poly Poly::monomial(const Rat& r, int deg) {
    Poly p;
    if (r != 0) {
        p.c_.assign(deg + 1, Rat(0));
        p.c_[deg] = r;
    }
    return p;
}

Rat Poly::eval(const Rat& x) const {
    Rat v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        v = v * x + *it;
    return v;
}

void Poly::add_term(int deg, const Rat& r) {
    if (deg >= static_cast<int>(c_.size()))
        c_.resize(deg + 1, Rat(0));
    c_[deg] += r;
    trim();
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (int i = 0; i <= b.degree(); ++i)
        r.add_term(i, b.coeff(i));
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (int i = 0; i <= b.degree(); ++i)
        r.add_term(i, -b.coeff(i));
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero())
        return Poly();
    Poly r;
    r.c_.assign(a.degree() + b.degree() + 1, Rat(0));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j)
            r.c_[i + j] += a.coeff(i) * b.coeff(j);
    r.trim();
    return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
    if (b.is_zero())
        throw degenerate_error("polynomial division by zero");
    quot = Poly();
    rem = a;
    const Rat lead = b.coeff(b.degree());
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const int d = rem.degree() - b.degree();
        const Rat f = rem.coeff(rem.degree()) / lead;
        quot.add_term(d, f);
        for (int i = 0; i <= b.degree(); ++i)
            rem.add_term(i + d, -f * b.coeff(i));
    }
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly q, r;
        Poly::divmod(a, b, q, r);
        a = b;
        b = r;
    }
    if (!a.is_zero()) {
        const Rat lead = a.coeff(a.degree());
        Poly monic;
        for (int i = 0; i <= a.degree(); ++i)
            monic.add_term(i, a.coeff(i) / lead);
        return monic;
    }
    return a;
}

RationalFunction RationalFunction::from(Poly num, Poly den) {
    if (den.is_zero())
        throw degenerate_error("zero denominator");
    if (num.is_zero())
        return RationalFunction{Poly(), Poly{Rat(1)}};
    const Poly g = gcd(num, den);
    if (g.degree() > 0) {
        Poly q, r;
        Poly::divmod(num, g, q, r);
        num = q;
        Poly::divmod(den, g, q, r);
        den = q;
    }
    const Rat scale = den.coeff(0) != 0 ? den.coeff(0) : den.coeff(den.degree());
    Poly n2, d2;
    for (int i = 0; i <= num.degree(); ++i)
        n2.add_term(i, num.coeff(i) / scale);
    for (int i = 0; i <= den.degree(); ++i)
        d2.add_term(i, den.coeff(i) / scale);
    return RationalFunction{n2, d2};
}

Rat RationalFunction::eval(const Rat& x) const {
    const Rat d = den.eval(x);
    if (d == 0)
        throw pole_error("rational function has a pole at the evaluation point");
    return num.eval(x) / d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction::from(a.num * b.den + b.num * a.den, a.den * b.den);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction::from(a.num * b.num, a.den * b.den);
}

VolumeSequence detect_tail(VolumeSequence vs) {
    const int N = static_cast<int>(vs.values.size()) - 1;
    if (N + 1 < 5)
        throw tail_error("tail detection needs at least 5 computed values");
    const auto& v = vs.values;

    bool all_zero_tail = true;
    for (int n = N - 2; n <= N; ++n)
        if (v[n] != 0)
            all_zero_tail = false;
    if (all_zero_tail) {
        int from = N + 1;
        while (from > 0 && v[from - 1] == 0)
            --from;
        vs.tail = Tail{Tail::Kind::finite, from, Rat(0)};
        return vs;
    }

    const Rat rho = q_pow(vs.q, -1);
    // ratio must hold for the last three consecutive pairs, and then as far
    // back as it extends
    bool geometric = true;
    for (int n = N - 3; n <= N - 1; ++n)
        if (v[n] == 0 || v[n + 1] != v[n] * rho)
            geometric = false;
    if (geometric) {
        int from = N - 3;
        while (from > 0 && v[from - 1] != 0 && v[from] == v[from - 1] * rho)
            --from;
        // the detected run already verifies at least one term beyond `from`
        vs.tail = Tail{Tail::Kind::geometric, from, v[from] * q_pow(vs.q, from)};
        return vs;
    }

    std::string shown;
    for (const auto& val : v)
        shown += (shown.empty() ? "" : ", ") + rat_str(val);
    throw tail_error("no finite or geometric tail detected in [" + shown + "]");
}

RationalFunction assemble_zeta(const VolumeSequence& vs) {
    if (vs.tail.kind == Tail::Kind::undetected)
        throw tail_error("assemble_zeta refuses a sequence without a detected tail");
    const int n0 = vs.tail.from;
    Poly head;
    for (int n = 0; n < n0 && n < static_cast<int>(vs.values.size()); ++n)
        head.add_term(n, vs.values[n]);
    if (vs.tail.kind == Tail::Kind::finite)
        return RationalFunction::from(head, Poly{Rat(1)});
    // c * (X/q)^{n0} / (1 - X/q)
    const Rat iq = q_pow(vs.q, -1);
    const Poly den{Rat(1), -iq};
    const Poly tail_num = Poly::monomial(vs.tail.coeff * q_pow(vs.q, -n0), n0);
    return RationalFunction::from(head * den + tail_num, den);
}

Rat evaluate_at_s0(const RationalFunction& rf, long q) {
    const Rat X = Rat(Int(q) * q);
    const Rat d = rf.den.eval(X);
    if (d == 0)
        throw pole_error("pole at X = q^2; the series was assembled wrongly");
    return rf.num.eval(X) / d;
}

Rat normalizer(long s, long q) {
    const Rat num = 1 - q_pow(q, -2 * (s + 1));
    const Rat den = 1 - q_pow(q, 1 - 2 * s);
    if (den == 0)
        throw pole_error("normalizer denominator vanishes");
    return num / den;
}

RationalFunction normalizer_rf(long q) {
    return RationalFunction::from(Poly{Rat(1), -q_pow(q, -4)}, Poly{Rat(1), -q_pow(q, -1)});
}

std::string to_string(const Poly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
        const Rat c = p.coeff(i);
        if (c == 0)
            continue;
        const bool neg = c < 0;
        const Rat mag = neg ? Rat(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const bool unit_coeff = (mag == 1 && i > 0);
        if (!unit_coeff)
            out += rat_str(mag);
        if (i > 0) {
            if (!unit_coeff)
                out += "*";
            out += "X";
            if (i > 1)
                out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::string to_string(const RationalFunction& rf) {
    if (rf.den == Poly{Rat(1)})
        return "(" + to_string(rf.num) + ")";
    return "(" + to_string(rf.num) + ")/(" + to_string(rf.den) + ")";
}

namespace {

Poly parse_poly(std::string_view s) {
    Poly p;
    size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    };
    auto fail = [&](const std::string& m) -> void {
        throw invalid_params_error("polynomial parse error at offset " + std::to_string(pos) +
                                   ": " + m);
    };
    int sign = 1;
    skip();
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
    }
    for (;;) {
        skip();
        Rat coeff = 1;
        bool have_coeff = false;
        if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
                ++pos;
            coeff = parse_rat(std::string(s.substr(start, pos - start)));
            have_coeff = true;
        }
        int deg = 0;
        skip();
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
            skip();
        }
        if (pos < s.size() && s[pos] == 'X') {
            ++pos;
            deg = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                    ++pos;
                if (start == pos)
                    fail("expected exponent");
                deg = std::stoi(std::string(s.substr(start, pos - start)));
            }
        } else if (!have_coeff) {
            fail("expected coefficient or X");
        }
        p.add_term(deg, sign * coeff);
        skip();
        if (pos >= s.size())
            break;
        if (s[pos] == '+')
            sign = 1;
        else if (s[pos] == '-')
            sign = -1;
        else
            fail("expected + or -");
        ++pos;
    }
    return p;
}

} // namespace

RationalFunction parse_rational_function(std::string_view s) {
    // forms: "(num)" or "(num)/(den)"
    auto strip = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front())))
            v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back())))
            v.remove_suffix(1);
        return v;
    };
    std::string_view v = strip(s);
    if (v.empty() || v.front() != '(')
        throw invalid_params_error("rational function must start with '('");
    const size_t close = v.find(')');
    if (close == std::string_view::npos)
        throw invalid_params_error("unbalanced parentheses");
    const std::string_view num_sv = v.substr(1, close - 1);
    std::string_view rest = strip(v.substr(close + 1));
    Poly num = parse_poly(num_sv);
    if (rest.empty())
        return RationalFunction::from(num, Poly{Rat(1)});
    if (rest.front() != '/')
        throw invalid_params_error("expected '/' between numerator and denominator");
    rest = strip(rest.substr(1));
    if (rest.empty() || rest.front() != '(' || rest.back() != ')')
        throw invalid_params_error("denominator must be parenthesized");
    Poly den = parse_poly(rest.substr(1, rest.size() - 2));
    return RationalFunction::from(num, den);
}

} // namespace pzeta
