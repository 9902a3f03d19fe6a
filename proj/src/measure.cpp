#include "pzeta/measure.hpp"

#include <cstdlib>
#include <map>
#include <thread>

namespace pzeta {

std::string to_string(Engine e) {
    return e == Engine::naive ? "naive" : "hensel";
}

long long naive_budget() {
    if (const char* s = std::getenv("PADIC_BUDGET")) {
        const long long v = std::atoll(s);
        if (v > 0)
            return v;
    }
    return 1000000000LL;
}

namespace {

long long pow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

// Coefficients reduced mod M for the tight enumeration loop.
struct EvalPlan {
    int degree;
    long long M;
    long long c[4][4];  // quadratic part, i <= j
    long long l[4];     // linear part

    EvalPlan(const QuadraticForm& Q, long long M) : degree(Q.degree()), M(M) {
        for (auto& row : c)
            for (auto& v : row)
                v = 0;
        for (auto& v : l)
            v = 0;
        for (const auto& [m, k] : Q.coeffs()) {
            Int r = k % M;
            if (r < 0)
                r += M;
            if (m.j < 0)
                l[m.i] = static_cast<long long>(r);
            else
                c[m.i][m.j] = static_cast<long long>(r);
        }
    }
};

long long count_slice(const EvalPlan& P, long long x_begin, long long x_end,
                      const std::vector<unsigned char>& unit) {
    const long long M = P.M;
    long long count = 0;
    if (P.degree == 1) {
        for (long long x = x_begin; x < x_end; ++x) {
            const bool px = unit[x];
            const long long ax = P.l[0] * x % M;
            for (long long y = 0; y < M; ++y) {
                const bool pxy = px || unit[y];
                const long long axy = (ax + P.l[1] * y) % M;
                for (long long z = 0; z < M; ++z) {
                    const bool pxyz = pxy || unit[z];
                    const long long axyz = (axy + P.l[2] * z) % M;
                    for (long long t = 0; t < M; ++t) {
                        if ((axyz + P.l[3] * t) % M == 0 && (pxyz || unit[t]))
                            ++count;
                    }
                }
            }
        }
        return count;
    }
    for (long long x = x_begin; x < x_end; ++x) {
        const bool px = unit[x];
        const long long ax = P.c[0][0] * x % M * x % M;
        for (long long y = 0; y < M; ++y) {
            const bool pxy = px || unit[y];
            const long long axy = (ax + P.c[0][1] * x % M * y + P.c[1][1] * y % M * y) % M;
            const long long lz = (P.c[0][2] * x + P.c[1][2] * y) % M;
            const long long lt = (P.c[0][3] * x + P.c[1][3] * y) % M;
            for (long long z = 0; z < M; ++z) {
                const bool pxyz = pxy || unit[z];
                const long long axyz = (axy + (lz + P.c[2][2] * z % M) * z) % M;
                const long long lt2 = (lt + P.c[2][3] * z) % M;
                if (pxyz) {
                    for (long long t = 0; t < M; ++t)
                        if ((axyz + (lt2 + P.c[3][3] * t % M) * t) % M == 0)
                            ++count;
                } else {
                    for (long long t = 0; t < M; ++t)
                        if (unit[t] && (axyz + (lt2 + P.c[3][3] * t % M) * t) % M == 0)
                            ++count;
                }
            }
        }
    }
    return count;
}

} // namespace

CountResult count_naive(const QuadraticForm& Q, int k, const LocalField& F, long long budget,
                        int threads) {
    if (k < 1)
        throw invalid_params_error("count level must be >= 1");
    F.require_level(k);
    if (budget < 0)
        budget = naive_budget();
    // budget is counted in evaluated points p^{4k}
    Int points = 1;
    for (int i = 0; i < 4 * k; ++i)
        points *= F.p;
    if (points > budget)
        throw budget_error("p^(4k) = " + points.str() + " exceeds the enumeration budget " +
                           std::to_string(budget) + "; use the hensel engine");

    const long long M = pow_ll(F.p, k);
    const EvalPlan plan(Q, M);
    std::vector<unsigned char> unit(M);
    for (long long v = 0; v < M; ++v)
        unit[v] = (v % F.p) != 0;

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1)
        n_threads = 1;
    if (n_threads > M)
        n_threads = static_cast<int>(M);

    std::vector<long long> partial(n_threads, 0);
    std::vector<std::thread> pool;
    const long long chunk = (M + n_threads - 1) / n_threads;
    for (int i = 0; i < n_threads; ++i) {
        const long long b = i * chunk, e = std::min<long long>(M, b + chunk);
        pool.emplace_back([&, i, b, e] { partial[i] = count_slice(plan, b, e, unit); });
    }
    for (auto& th : pool)
        th.join();
    Int total = 0;
    for (const long long c : partial)
        total += c;
    return CountResult{k, total, Engine::naive};
}

namespace {

// Counts solutions of Q2(w) + g.w + e = 0 over (Z/p^j)^4 by digit lifting,
// where Q2 is the fixed homogeneous quadratic part.  A degree-1 input form
// contributes to the base linear term instead (its quadratic part is zero),
// which keeps the v = v0 + p w substitution exact: the p^2 coefficient of the
// expansion is always Q2(w).
class HenselCounter {
public:
    HenselCounter(const QuadraticForm& Q, const LocalField& F) : F_(F) {
        for (const auto& [m, c] : Q.coeffs()) {
            if (m.j < 0)
                base_g_[m.i] += c;
            else
                q2_.push_back({m.i, m.j, c});
        }
    }

    const std::array<Int, 4>& base_linear() const { return base_g_; }

    Int count(int j, std::array<Int, 4> g, Int e) {
        const long p = F_.p;
        if (j <= 0)
            return 1;
        Int Mj = 1;
        for (int i = 0; i < j; ++i)
            Mj *= p;
        for (auto& gi : g) {
            gi %= Mj;
            if (gi < 0)
                gi += Mj;
        }
        e %= Mj;
        if (e < 0)
            e += Mj;

        std::string key = std::to_string(j);
        for (const auto& gi : g)
            key += "," + gi.str();
        key += ";" + e.str();
        if (const auto it = memo_.find(key); it != memo_.end())
            return it->second;

        Int total = 0;
        Int smooth_lift = 1;  // p^{3(j-1)}
        for (int i = 0; i < 3 * (j - 1); ++i)
            smooth_lift *= p;

        // int64 fast path: with Mj below 2^40 and p below 2^12 every partial
        // product stays well inside 64 bits; reductions mod Mj keep the
        // recursion data exact at the modulus it is consumed at
        if (Mj < (1LL << 40) && p < 4096) {
            const long long M = static_cast<long long>(Mj);
            struct T64 {
                int i, j;
                long long c;
            };
            std::vector<T64> q64;
            for (const auto& term : q2_) {
                Int r = term.c % M;
                if (r < 0)
                    r += M;
                q64.push_back({term.i, term.j, static_cast<long long>(r)});
            }
            long long g64[4], e64 = static_cast<long long>(e);
            for (int i = 0; i < 4; ++i)
                g64[i] = static_cast<long long>(g[i]);
            long long w[4];
            for (w[0] = 0; w[0] < p; ++w[0])
                for (w[1] = 0; w[1] < p; ++w[1])
                    for (w[2] = 0; w[2] < p; ++w[2])
                        for (w[3] = 0; w[3] < p; ++w[3]) {
                            long long f = e64;
                            for (const auto& t : q64)
                                f += t.c * w[t.i] % M * w[t.j];
                            for (int i = 0; i < 4; ++i)
                                f += g64[i] * w[i];
                            f %= M;
                            if (f % p != 0)
                                continue;
                            if (j == 1) {
                                total += 1;
                                continue;
                            }
                            long long grad[4];
                            for (int i = 0; i < 4; ++i)
                                grad[i] = g64[i];
                            for (const auto& t : q64) {
                                if (t.i == t.j)
                                    grad[t.i] += 2 * t.c % M * w[t.i];
                                else {
                                    grad[t.i] += t.c * w[t.j];
                                    grad[t.j] += t.c * w[t.i];
                                }
                            }
                            bool smooth = false;
                            for (int i = 0; i < 4; ++i)
                                if (grad[i] % p != 0)
                                    smooth = true;
                            if (smooth) {
                                total += smooth_lift;
                                continue;
                            }
                            if (f % (static_cast<long long>(p) * p) != 0)
                                continue;
                            std::array<Int, 4> g2;
                            for (int i = 0; i < 4; ++i)
                                g2[i] = Int((grad[i] % M) / p);
                            Int lifted = count(j - 2, g2, Int(f / p / p));
                            lifted *= Int(p) * p * p * p;
                            total += lifted;
                        }
            memo_.emplace(std::move(key), total);
            return total;
        }

        std::array<Int, 4> w{};
        for (w[0] = 0; w[0] < p; ++w[0])
            for (w[1] = 0; w[1] < p; ++w[1])
                for (w[2] = 0; w[2] < p; ++w[2])
                    for (w[3] = 0; w[3] < p; ++w[3]) {
                        Int f = e;
                        for (const auto& term : q2_)
                            f += term.c * w[term.i] * w[term.j];
                        for (int i = 0; i < 4; ++i)
                            f += g[i] * w[i];
                        if (f % p != 0)
                            continue;
                        if (j == 1) {
                            total += 1;
                            continue;
                        }
                        const std::array<Int, 4> grad = gradient(w, g);
                        bool smooth = false;
                        for (const auto& gi : grad)
                            if (gi % p != 0)
                                smooth = true;
                        if (smooth) {
                            total += smooth_lift;
                            continue;
                        }
                        // singular residue: substitute v = w + p w' and drop two digits
                        if (f % (Int(p) * p) != 0)
                            continue;
                        std::array<Int, 4> g2;
                        for (int i = 0; i < 4; ++i)
                            g2[i] = grad[i] / p;
                        const Int e2 = f / p / p;
                        Int lifted = count(j - 2, g2, e2);
                        // w' ranges over (Z/p^{j-1})^4 under a mod p^{j-2} condition
                        lifted *= Int(p) * p * p * p;
                        total += lifted;
                    }
        memo_.emplace(std::move(key), total);
        return total;
    }

private:
    struct Term {
        int i, j;
        Int c;
    };

    std::array<Int, 4> gradient(const std::array<Int, 4>& w, const std::array<Int, 4>& g) const {
        std::array<Int, 4> grad = g;
        for (const auto& term : q2_) {
            if (term.i == term.j)
                grad[term.i] += 2 * term.c * w[term.i];
            else {
                grad[term.i] += term.c * w[term.j];
                grad[term.j] += term.c * w[term.i];
            }
        }
        return grad;
    }

    std::vector<Term> q2_;
    std::array<Int, 4> base_g_{};
    const LocalField& F_;
    std::map<std::string, Int> memo_;
};

} // namespace

namespace {

// p-adic valuation of the coefficient tuple; -1 for the zero form
long form_content(const QuadraticForm& Q, long p) {
    long content = -1;
    for (const auto& [m, c] : Q.coeffs()) {
        const long v = valuation(c, p);
        content = content < 0 ? v : std::min(content, v);
    }
    return content;
}

Int hensel_primitive_count(HenselCounter& counter, int degree, int k, long p) {
    const auto& g0 = counter.base_linear();
    const Int all = counter.count(k, g0, 0);
    // Q(p w) = p^deg Q(w), so the non-primitive solutions are counted one
    // scaling level down.
    Int nonprim;
    if (degree == 2) {
        if (k == 1)
            nonprim = 1;
        else
            nonprim = Int(p) * p * p * p * counter.count(k - 2, g0, 0);
    } else {
        nonprim = counter.count(k - 1, g0, 0);
    }
    return all - nonprim;
}

} // namespace

std::vector<Int> count_hensel_all(const QuadraticForm& Q, int k_max, const LocalField& F) {
    if (k_max < 1)
        throw invalid_params_error("count level must be >= 1");
    F.require_level(k_max);
    const long p = F.p;

    // strip the p-content first: for Q = p^c Q', a primitive solution mod p^k
    // is a primitive solution of Q' mod p^{k-c}, lifted freely in the last c
    // digits.  This keeps the residue classification away from forms that
    // vanish identically mod p.
    const long content = form_content(Q, p);
    if (content > 0) {
        auto pow4 = [&](long e) {
            Int r = 1;
            for (long i = 0; i < 4 * e; ++i)
                r *= p;
            return r;
        };
        Int scale = 1;
        for (long i = 0; i < content; ++i)
            scale *= p;
        QuadraticForm reduced(Q.degree());
        for (const auto& [m, c] : Q.coeffs())
            reduced.add(m, c / scale);
        std::vector<Int> inner;
        if (k_max > content)
            inner = count_hensel_all(reduced, k_max - static_cast<int>(content), F);
        std::vector<Int> out;
        for (int k = 1; k <= k_max; ++k) {
            if (k <= content)
                out.push_back(pow4(k) - pow4(k - 1));  // the congruence is vacuous
            else
                out.push_back(pow4(content) * inner[k - content - 1]);
        }
        return out;
    }

    HenselCounter counter(Q, F);
    std::vector<Int> out;
    for (int k = 1; k <= k_max; ++k)
        out.push_back(hensel_primitive_count(counter, Q.degree(), k, p));
    return out;
}

CountResult count_hensel(const QuadraticForm& Q, int k, const LocalField& F) {
    std::vector<Int> all = count_hensel_all(Q, k, F);
    return CountResult{k, all.back(), Engine::hensel};
}

Int count_Fq_brute(const std::vector<Int>& diag, const Int& b, long q) {
    const size_t n = diag.size();
    if (n == 0 || n > 4)
        throw invalid_params_error("diagonal form must have 1..4 variables");
    for (const auto& c : diag)
        if (c % q == 0)
            throw degenerate_error("degenerate diagonal form over F_q");
    const long bq = static_cast<long>(((b % q) + q) % q);
    std::vector<long> cs(n);
    for (size_t i = 0; i < n; ++i)
        cs[i] = static_cast<long>(((diag[i] % q) + q) % q);
    Int count = 0;
    std::vector<long> x(n, 0);
    for (;;) {
        long s = 0;
        for (size_t i = 0; i < n; ++i)
            s = (s + cs[i] * x[i] % q * x[i]) % q;
        if (s == bq)
            ++count;
        size_t i = 0;
        while (i < n && ++x[i] == q) {
            x[i] = 0;
            ++i;
        }
        if (i == n)
            break;
    }
    return count;
}

Int count_Fq(const std::vector<Int>& diag, const Int& b, long q) {
    const size_t n = diag.size();
    if (n == 0 || n > 4)
        throw invalid_params_error("diagonal form must have 1..4 variables");
    for (const auto& c : diag)
        if (c % q == 0)
            throw degenerate_error("degenerate diagonal form over F_q");
    if (n % 2 == 0)
        return count_Fq_brute(diag, b, q);
    Int det = 1;
    for (const auto& c : diag)
        det *= c;
    Int arg = b * det;
    if ((n - 1) / 2 % 2 != 0)
        arg = -arg;
    Int qn1 = 1;
    for (size_t i = 0; i + 1 < n; ++i)
        qn1 *= q;
    Int qhalf = 1;
    for (size_t i = 0; i < (n - 1) / 2; ++i)
        qhalf *= q;
    return qn1 + qhalf * eta(arg, q);
}

static Rat vol_V0_total(long q) {
    return 1 + q_pow(q, -1) + q_pow(q, -2) + q_pow(q, -3);
}

Rat vol_leq(const QuadraticForm& Q, int n, const LocalField& F, Engine e) {
    if (n < 0)
        throw invalid_params_error("negative level");
    F.require_level(n + 1);
    if (n == 0)
        return vol_V0_total(F.p);
    const CountResult c =
        e == Engine::naive ? count_naive(Q, n, F) : count_hensel(Q, n, F);
    Int scale = 1;
    for (int i = 0; i < 4 * n; ++i)
        scale *= F.p;
    return Rat(c.count, scale) / (1 - q_pow(F.p, -1));
}

Rat vol_Vn(const QuadraticForm& Q, int n, const LocalField& F, Engine e) {
    return vol_leq(Q, n, F, e) - vol_leq(Q, n + 1, F, e);
}

Rat square_shell_volume(const Int& c, int n, const LocalField& F) {
    if (n < 1)
        throw invalid_params_error("shell level must be >= 1");
    F.require_level(n + 1);
    if (c % F.p == 0 || eta(c, F.p) != 1)
        throw invalid_params_error("c must be a unit square");
    const long long Mn = pow_ll(F.p, n);
    const long long M = Mn * F.p;
    const long long cm = static_cast<long long>(((c % M) + M) % M);
    long long count = 0;
    for (long long x = 0; x < M; ++x) {
        const long long w = ((cm - x * x) % M + M) % M;
        if (w % Mn == 0 && w != 0)
            ++count;
    }
    return Rat(count, M);
}

VolumeSequence volume_sequence(const QuadraticForm& Q, int n_max, const LocalField& F, Engine e) {
    VolumeSequence vs;
    vs.q = F.p;
    vs.values.reserve(n_max + 1);
    if (e == Engine::hensel) {
        // one shared lifting memo across all levels
        const std::vector<Int> counts = count_hensel_all(Q, n_max + 1, F);
        Rat prev = vol_V0_total(F.p);
        Int scale = 1;
        for (int n = 1; n <= n_max + 1; ++n) {
            for (int i = 0; i < 4; ++i)
                scale *= F.p;
            const Rat next = Rat(counts[n - 1], scale) / (1 - q_pow(F.p, -1));
            vs.values.push_back(prev - next);
            prev = next;
        }
        return vs;
    }
    Rat prev = vol_leq(Q, 0, F, e);
    for (int n = 0; n <= n_max; ++n) {
        const Rat next = vol_leq(Q, n + 1, F, e);
        vs.values.push_back(prev - next);
        prev = next;
    }
    return vs;
}

Rat reference_volume(FormCase c, int n, long q) {
    const Rat one = 1;
    const Rat iq = q_pow(q, -1);
    switch (c) {
    case FormCase::I1:
    case FormCase::III_norm:
        if (n == 0) return one - iq;
        if (n == 1) return iq * (one - iq) * (2 + iq);
        return 2 * q_pow(q, -n) * (one - iq) * (one + iq);
    case FormCase::I2:
        if (n == 0) return one;
        if (n == 1) return iq * (one - iq);
        if (n == 2) return q_pow(q, -2) * (2 - iq - 2 * q_pow(q, -2));
        return 2 * q_pow(q, -n) * (one - iq) * (one + iq);
    case FormCase::I3:
        if (n == 0) return one - q_pow(q, -2);
        return q_pow(q, -n) * (one - iq) * (one + 2 * iq + q_pow(q, -2));
    case FormCase::I_aniso:
    case FormCase::III_sqrtA:
    case FormCase::III_d_plus_i:
        if (n == 0) return one + iq;
        if (n == 1) return q_pow(q, -2) + q_pow(q, -3);
        return 0;
    case FormCase::II1:
        if (n == 0) return one - iq;
        if (n == 1) return 2 * iq - q_pow(q, -2) + q_pow(q, -3);
        return 2 * q_pow(q, -n) * (one - iq);
    case FormCase::II2:
        if (n == 0) return one + iq;
        if (n == 1) return q_pow(q, -2) * (one - iq);
        return 2 * q_pow(q, -n - 1) * (one - iq);
    case FormCase::II3a:
    case FormCase::II3b:
    case FormCase::II4:
    case FormCase::II5:
    case FormCase::IV_pi:
        if (n == 0) return one;
        if (n == 1) return iq;
        return q_pow(q, -n) * (one - q_pow(q, -2));
    case FormCase::IV_u:
        if (n == 0) return one + q_pow(q, -2);
        return q_pow(q, -n) * (one - iq) * (one + q_pow(q, -2));
    }
    throw invalid_params_error("unknown form case");
}

} // namespace pzeta
