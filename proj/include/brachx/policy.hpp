#pragma once

#include <string>

namespace brachx {

// All tolerances used by the library, gathered in one record so they can be
// snapshotted into run manifests and overridden from a JSON file
// (env var BRACHX_NUM_POLICY).
struct NumericPolicy {
    double algebraic_tol = 1e-12;     // hermiticity, tracelessness, orthonormality
    double unitarity_tol = 1e-10;     // U U^dag = I checks
    double closure_tol = 1e-10;       // subalgebra / pseudo-Cartan projection residuals
    double rank_tol = 1e-10;          // SVD null-space and pseudo-inverse threshold
    double cluster_tol = 1e-9;        // eigenvalue clustering for Spec(a)
    double branch_tol = 1e-9;         // distance from the log branch cut at pi
    double ode_tol = 1e-10;           // default integration tolerance
    double unitary_refine_tol = 1e-9; // midpoint-exponential self-consistency
};

// Process-wide policy. Loaded once from $BRACHX_NUM_POLICY if set.
const NumericPolicy& policy();

// Replaces the process-wide policy (tests, CLI --tol overrides).
void set_policy(const NumericPolicy& p);

// Parses a policy JSON file; unknown keys are rejected.
NumericPolicy load_policy_file(const std::string& path);

std::string policy_to_json(const NumericPolicy& p);

}  // namespace brachx
