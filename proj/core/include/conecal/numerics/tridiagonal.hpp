#pragma once

#include <cstddef>
#include <vector>

namespace conecal::numerics {

/// Symmetric tridiagonal matrix, stored as its diagonal and off-diagonal.
struct TridiagonalSystem {
    std::vector<double> diagonal;       // length n
    std::vector<double> off_diagonal;   // length n-1

    std::size_t size() const noexcept { return diagonal.size(); }

    /// Throws InvalidInputError on inconsistent lengths or non-finite entries.
    void validate() const;

    /// Infinity norm, also the Gershgorin radius bound used for residual scaling.
    double norm() const;
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;   // unit Euclidean norm
    double residual = 0.0;        // ||A v - value v|| / ||A||
};

struct EigenOptions {
    double bisection_tol = 0.0;    // 0 = machine-level (relative to the spectrum span)
    double residual_tol = 1e-10;   // relative residual accepted from inverse iteration
    int max_inverse_iterations = 8;
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count_below(const TridiagonalSystem& system, double x);

/// k-th smallest eigenvalue (k is 0-based), by bisection on Sturm counts.
double kth_eigenvalue(const TridiagonalSystem& system, std::size_t k,
                      double bisection_tol = 0.0);

/// The m smallest eigenvalues in ascending order.
std::vector<double> smallest_eigenvalues(const TridiagonalSystem& system, std::size_t m,
                                         double bisection_tol = 0.0);

/// Principal eigenpair: bisection on Sturm counts for the eigenvalue, inverse
/// iteration for the vector.  The residual ||A v - lambda v||/||A|| is reported
/// and checked against options.residual_tol.
EigenPair smallest_eigenpair(const TridiagonalSystem& system,
                             const EigenOptions& options = {});

}  // namespace conecal::numerics
