#pragma once

#include <vector>

#include "pzeta/forms.hpp"

namespace pzeta {

enum class Engine { naive, hensel };
std::string to_string(Engine e);

// Count of primitive vectors v mod p^k with Q(v) = 0 mod p^k.
struct CountResult {
    int k = 0;
    Int count;
    Engine engine = Engine::naive;
};

// Point budget for the exhaustive engine; PADIC_BUDGET overrides the default 10^9.
long long naive_budget();

// Exhaustive enumeration over (Z/p^k)^4, restricted to vectors with at least
// one unit coordinate.  Deterministically partitions the outer coordinate
// range across `threads` workers (0 = hardware default) with exact reduction.
CountResult count_naive(const QuadraticForm& Q, int k, const LocalField& F,
                        long long budget = -1, int threads = 0);

// Digit-lifting engine: smooth residues contribute p^{3(k-1)} lifts each;
// singular residues recurse on v = v0 + p w at lower precision.  Exact, and
// equal to count_naive on every input.
CountResult count_hensel(const QuadraticForm& Q, int k, const LocalField& F);

// S_1..S_{k_max} in one pass, sharing one digit-lifting memo across levels.
std::vector<Int> count_hensel_all(const QuadraticForm& Q, int k_max, const LocalField& F);

// Number of solutions of sum a_i x_i^2 = b over F_q.  For an odd number of
// variables uses the closed formula q^{n-1} + q^{(n-1)/2} eta((-1)^{(n-1)/2} b det f);
// otherwise enumerates.  count_Fq_brute is the enumeration path on its own.
Int count_Fq(const std::vector<Int>& diag, const Int& b, long q);
Int count_Fq_brute(const std::vector<Int>& diag, const Int& b, long q);

// vol{v : max|v_i| = 1, |Q(v)| <= q^-n} / vol(R^x), exact.
Rat vol_leq(const QuadraticForm& Q, int n, const LocalField& F, Engine e = Engine::hensel);

// vol(V_n^0) = vol_leq(n) - vol_leq(n+1).
Rat vol_Vn(const QuadraticForm& Q, int n, const LocalField& F, Engine e = Engine::hensel);

// vol{x in R : |c - x^2| = q^-n} for a unit square c and n >= 1; counts
// residues mod p^{n+1} and equals 2 q^-n (1 - 1/q).
Rat square_shell_volume(const Int& c, int n, const LocalField& F);

struct Tail {
    enum class Kind { undetected, finite, geometric } kind = Kind::undetected;
    int from = 0;  // first index governed by the tail rule
    Rat coeff;     // geometric: values[n] = coeff * q^-n for n >= from
};

struct VolumeSequence {
    long q = 0;
    std::vector<Rat> values;  // vol(V_n^0) for n = 0..N
    Tail tail;
};

// Computes vol(V_n^0) for n = 0..n_max; tail left undetected.
VolumeSequence volume_sequence(const QuadraticForm& Q, int n_max, const LocalField& F,
                               Engine e = Engine::hensel);

// Closed-form reference volume vol(V_n^0) for a catalog case.
Rat reference_volume(FormCase c, int n, long q);

} // namespace pzeta
