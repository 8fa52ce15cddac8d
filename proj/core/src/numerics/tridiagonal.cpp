#include "conecal/numerics/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conecal/errors.hpp"

namespace conecal::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Deterministic xorshift64* stream for the inverse-iteration start vector.
struct Xorshift64Star {
    std::uint64_t state;
    double next_unit() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        const std::uint64_t bits = state * 0x2545F4914F6CDD1DULL;
        return static_cast<double>(bits >> 11) * 0x1.0p-53 - 0.5;
    }
};

// Gershgorin enclosure of the whole spectrum.
void spectrum_bounds(const TridiagonalSystem& a, double& lo, double& hi) {
    const std::size_t n = a.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(a.off_diagonal[i - 1]);
        if (i + 1 < n) r += std::abs(a.off_diagonal[i]);
        lo = std::min(lo, a.diagonal[i] - r);
        hi = std::max(hi, a.diagonal[i] + r);
    }
}

// LU factorization of (A - shift I) with partial pivoting (three-band
// storage plus the fill-in second superdiagonal), then one solve.
// Near-singular pivots are nudged; that is exactly the situation inverse
// iteration wants to be in.
void solve_shifted(const TridiagonalSystem& a, double shift, std::vector<double>& x) {
    const std::size_t n = a.size();
    std::vector<double> dl(n > 1 ? n - 1 : 0), d(n), du(n > 1 ? n - 1 : 0),
        du2(n > 2 ? n - 2 : 0, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = a.diagonal[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) dl[i] = du[i] = a.off_diagonal[i];

    std::vector<char> swapped(n > 1 ? n - 1 : 0, 0);
    const double tiny = std::numeric_limits<double>::min() / kEps;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (std::abs(d[i]) < tiny) d[i] = std::copysign(tiny, d[i] == 0.0 ? 1.0 : d[i]);
            const double mult = dl[i] / d[i];
            dl[i] = mult;
            d[i + 1] -= mult * du[i];
        } else {
            const double mult = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = mult;
            const double tmp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = tmp - mult * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -mult * du[i + 1];
            }
            swapped[i] = 1;
        }
    }
    if (std::abs(d[n - 1]) < tiny) d[n - 1] = std::copysign(tiny, d[n - 1] == 0.0 ? 1.0 : d[n - 1]);

    // Forward substitution with the recorded row swaps.
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (swapped[i]) std::swap(x[i], x[i + 1]);
        x[i + 1] -= dl[i] * x[i];
    }
    // Back substitution.
    x[n - 1] /= d[n - 1];
    if (n >= 2) {
        const std::size_t i = n - 2;
        x[i] = (x[i] - du[i] * x[i + 1]) / d[i];
    }
    for (std::size_t k = n; k-- > 2;) {
        const std::size_t i = k - 2;
        double v = x[i] - du[i] * x[i + 1];
        if (i < du2.size()) v -= du2[i] * x[i + 2];
        x[i] = v / d[i];
    }
}

double normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    s = std::sqrt(s);
    if (s > 0.0)
        for (double& t : v) t /= s;
    return s;
}

}  // namespace

void TridiagonalSystem::validate() const {
    if (diagonal.empty())
        throw InvalidInputError("tridiagonal system must have at least one row");
    if (off_diagonal.size() + 1 != diagonal.size())
        throw InvalidInputError("tridiagonal off-diagonal length must be n-1");
    for (double x : diagonal)
        if (!std::isfinite(x)) throw InvalidInputError("non-finite diagonal entry");
    for (double x : off_diagonal)
        if (!std::isfinite(x)) throw InvalidInputError("non-finite off-diagonal entry");
}

double TridiagonalSystem::norm() const {
    double m = 0.0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::abs(diagonal[i]);
        if (i > 0) r += std::abs(off_diagonal[i - 1]);
        if (i + 1 < n) r += std::abs(off_diagonal[i]);
        m = std::max(m, r);
    }
    return m;
}

int sturm_count_below(const TridiagonalSystem& a, double x) {
    a.validate();
    const std::size_t n = a.size();

    int count = 0;
    double q = a.diagonal[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        const double e = a.off_diagonal[i - 1];
        // A vanishing pivot means x is an eigenvalue of the leading block;
        // propagate it as if x were nudged up, so the next pivot goes
        // negative (the classic bisect convention).
        const double ratio = (q == 0.0) ? std::abs(e) / kEps : e * e / q;
        q = a.diagonal[i] - x - ratio;
        if (q < 0.0) ++count;
    }
    return count;
}

double kth_eigenvalue(const TridiagonalSystem& a, std::size_t k, double bisection_tol) {
    a.validate();
    if (k >= a.size())
        throw InvalidInputError("eigenvalue index out of range");

    double lo, hi;
    spectrum_bounds(a, lo, hi);
    if (lo == hi) return lo;

    const double span = hi - lo;
    const double tol = bisection_tol > 0.0
                           ? bisection_tol
                           : 2.0 * kEps * std::max({std::abs(lo), std::abs(hi), 1.0});

    // Invariant: count(<lo) <= k < count(<hi).
    for (int it = 0; it < 200 && (hi - lo) > tol + 2.0 * kEps * span * 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval at rounding resolution
        if (sturm_count_below(a, mid) > static_cast<int>(k))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> smallest_eigenvalues(const TridiagonalSystem& a, std::size_t m,
                                         double bisection_tol) {
    m = std::min(m, a.size());
    std::vector<double> out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = kth_eigenvalue(a, k, bisection_tol);
    return out;
}

EigenPair smallest_eigenpair(const TridiagonalSystem& a, const EigenOptions& options) {
    a.validate();
    const std::size_t n = a.size();

    EigenPair result;
    if (n == 1) {
        result.value = a.diagonal[0];
        result.vector = {1.0};
        result.residual = 0.0;
        return result;
    }

    result.value = kth_eigenvalue(a, 0, options.bisection_tol);
    const double scale = std::max(a.norm(), std::numeric_limits<double>::min());

    std::vector<double> v(n);
    Xorshift64Star rng{0x9E3779B97F4A7C15ULL};
    for (double& t : v) t = rng.next_unit();
    normalize(v);

    double best_residual = std::numeric_limits<double>::infinity();
    std::vector<double> best = v;
    double lambda = result.value;

    for (int it = 0; it < options.max_inverse_iterations; ++it) {
        solve_shifted(a, lambda, v);
        if (normalize(v) == 0.0) {
            for (double& t : v) t = rng.next_unit();
            normalize(v);
            continue;
        }
        // Rayleigh quotient and residual of the current iterate.
        double rq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double av = a.diagonal[i] * v[i];
            if (i > 0) av += a.off_diagonal[i - 1] * v[i - 1];
            if (i + 1 < n) av += a.off_diagonal[i] * v[i + 1];
            rq += v[i] * av;
        }
        double rnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double av = a.diagonal[i] * v[i];
            if (i > 0) av += a.off_diagonal[i - 1] * v[i - 1];
            if (i + 1 < n) av += a.off_diagonal[i] * v[i + 1];
            const double r = av - rq * v[i];
            rnorm += r * r;
        }
        rnorm = std::sqrt(rnorm) / scale;
        if (rnorm < best_residual) {
            best_residual = rnorm;
            best = v;
            result.value = rq;
        }
        if (rnorm <= options.residual_tol) break;
    }

    if (best_residual > options.residual_tol)
        throw ConvergenceError("inverse iteration failed to reach the requested residual",
                               best_residual);

    // Deterministic sign: largest-magnitude component positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(best[i]) > std::abs(best[imax])) imax = i;
    if (best[imax] < 0.0)
        for (double& t : best) t = -t;

    result.vector = std::move(best);
    result.residual = best_residual;
    return result;
}

}  // namespace conecal::numerics
