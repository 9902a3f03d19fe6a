#pragma once

#include <stdexcept>
#include <string>

namespace pzeta {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Construction-time rejection of bad field data (even q, composite q, ...).
struct invalid_field_error : error {
    using error::error;
};

// Zero or otherwise degenerate input where a nonzero/nondegenerate value is required.
struct degenerate_error : error {
    using error::error;
};

// A square "discriminant": the requested quadratic extension does not exist.
struct not_extension_error : error {
    using error::error;
};

// A case label incompatible with the field (e.g. a d+i shape when p = 1 mod 4).
struct unavailable_case_error : error {
    using error::error;
};

// Parameter sets violating a structural precondition (class clashes,
// non-unimodular substitution matrices, unknown labels).
struct invalid_params_error : error {
    using error::error;
};

struct regularity_error : error {
    using error::error;
};

// Norm map requested for a class type (II, IV) that has no image.
struct no_norm_error : error {
    using error::error;
};

struct precision_error : error {
    using error::error;
};

struct budget_error : error {
    using error::error;
};

struct pole_error : error {
    using error::error;
};

struct tail_error : error {
    using error::error;
};

} // namespace pzeta
