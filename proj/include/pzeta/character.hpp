#pragma once

#include "pzeta/classreps.hpp"
#include "pzeta/zeta.hpp"

namespace pzeta {

struct CharacterVerdict {
    std::string class_type;      // "I".."IV"
    std::string case_label;      // catalog label or parametrized description
    Rat computed;
    Rat expected;
    std::string expected_source; // "Theorem I".."Theorem IV"
    bool match = false;
    std::string note;            // diagnostics / substitution record
};

// Exact I_{s=0} of the integrand: assembled series evaluated at X = q^2.
Rat integral_at_s0(const QuadraticForm& Q, const LocalField& F, int n_max,
                   Engine e = Engine::hensel);

// Normalized value for a catalog case: prefactor * I_{s=0} / normalizer(0)
// for types I and III; the bare I_{s=0} for types II and IV.
Rat character_value_case(FormCase c, const LocalField& F, int n_max, Engine e = Engine::hensel);

// Type I classes by square-class data (D, r); routes through normalize_typeI.
Rat character_value_typeI(SquareClass D, SquareClass r, const LocalField& F, int n_max,
                          Engine e = Engine::hensel);

// Type III shapes at literal (A, D).
Rat character_value_typeIII(BrCase br, const Int& A, const Int& D, const LocalField& F, int n_max,
                            Engine e = Engine::hensel);

// Every catalog case with its expected value (2 kappa for I/III, 0 for II/IV).
std::vector<CharacterVerdict> verify_all(const LocalField& F, int n_max = 6,
                                         Engine e = Engine::hensel);

// Pairs of twisted classes within each stable class: the two values must be
// exact negatives for types I/III and identically zero for types II/IV.
struct InstabilityRow {
    std::string stable_class;
    std::string twist_a, twist_b;
    Rat value_a, value_b;
    bool ok = false;
};
std::vector<InstabilityRow> instability_report(const LocalField& F, int n_max = 6,
                                               Engine e = Engine::hensel);

} // namespace pzeta
