#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bnsl/penalty.hpp"

namespace bnsl {

// sqrt(2 ln 2): the constant relating entropy distance (bits) to L1
// distance, D >= L1^2 / z^2.
inline constexpr double kPinskerZ = 1.1774100225154747;  // sqrt(2 ln 2)

/**
 * Inputs of the sample-complexity calculus for one learning problem:
 * domain shape, target skewness, and the parameter-count gap between the
 * minimal true structure and the empty structure.
 */
struct BoundProblem {
    int n_vars;            // number of variables
    std::uint64_t card_u;  // joint domain size
    double m;              // min probability of any complete assignment
    std::uint64_t g;       // |G*| - |G_empty|
    Penalty penalty;
};

/**
 * Large-deviation bound on the probability that the empirical distribution
 * of N samples is farther than eps from its source in entropy distance:
 *   (N+1)^card_u * 2^(-N*eps).
 * Computed in log space; the linear value may saturate to +inf (callers
 * clamp to 1 for reporting).
 */
double sanov_bound(std::int64_t n_samples, std::uint64_t card_u, double eps);
double sanov_bound_log2(std::int64_t n_samples, std::uint64_t card_u, double eps);

/**
 * Bound on the probability that some fitted structure's pointwise
 * log-ratio to the target exceeds 2n*log2(1/m):
 *   (N+1)^card_u * 2^(-N*((1-m)m/4)^2).
 */
double skew_set_bound(std::int64_t n_samples, std::uint64_t card_u, double m);
double skew_set_bound_log2(std::int64_t n_samples, std::uint64_t card_u, double m);

/**
 * Minimal N with N/psi(N) > g/eps (strict). This is the sample size at
 * which, for an empirical distribution that matches the target exactly,
 * every structure whose best fit is more than eps away must score below
 * the true structure.
 */
std::int64_t ideal_sample_size(std::uint64_t g, double eps, const Penalty& p);

/**
 * Inverse of x / log2(x) on the increasing branch x >= 4 (so y >= 2);
 * bisection to relative tolerance 1e-9. Throws InputError for y < 2.
 */
double inverse_x_over_log2x(double y);

/**
 * Triangle-style propagation bound for entropy distance. Given
 *   D(P||Q) - D(P||R) <= a,  D(P||R) <= b,  max_x |log2(R(x)/Q(x))| <= c,
 * and min_x R(x) = m, the distance D(R||Q) is below
 *   e = (z/2)*sqrt(b)*(z/m)*s / (1 - (z/m)*s) + a,   s = sqrt(a + z*sqrt(b)*c),
 * provided z*s < m. Returns nullopt when that hypothesis fails.
 */
std::optional<double> entropy_triangle_bound(double a, double b, double c, double m);

/**
 * The (epsilon, delta) guarantee obtained from free parameters (a, b) at
 * sample size N:
 *   epsilon = entropy_triangle_bound(a, b, 2n*log2(1/m), m)
 *   delta   = sanov_bound(N, card_u, b) + skew_set_bound(N, card_u, m)
 * valid requires N/psi(N) >= g/a and the triangle bound's skewness
 * hypothesis.
 */
struct GuaranteeReport {
    double a = 0.0;
    double b = 0.0;
    std::int64_t n_samples = 0;
    double epsilon = 0.0;  // NaN when invalid
    double delta = 0.0;
    bool valid = false;
    std::vector<std::string> violated_conditions;

    static std::string csv_header();
    std::string csv_row() const;
};

GuaranteeReport evaluate_guarantee(double a, double b, std::int64_t n_samples,
                                   const BoundProblem& prob);

struct SampleComplexityResult {
    bool feasible = false;
    std::int64_t n_samples = 0;
    double a = 0.0;
    double b = 0.0;
};

struct SampleComplexityOptions {
    int grid_points_a = 64;
    int grid_points_b = 64;
    double b_min = 1e-12;
    double b_max = 1.0;
    // a ranges over [eps_target * a_rel_min, eps_target].
    double a_rel_min = 1e-4;
    std::int64_t n_cap = 1'000'000'000'000ll;  // 10^12
};

/**
 * Minimal N (outer binary search) for which some point of a log-spaced
 * (a, b) grid yields a valid guarantee with epsilon <= eps_target and
 * delta <= delta_target. Infeasible when no grid point succeeds at the
 * N cap.
 */
SampleComplexityResult sample_complexity(double eps_target, double delta_target,
                                         const BoundProblem& prob,
                                         const SampleComplexityOptions& options = {});

/**
 * Constant-free asymptotic reference magnitude for the sample complexity;
 * only ratios across parameter settings are meaningful. Defined for the
 * half-log and polynomial penalty families; constant penalties are
 * rejected.
 */
double asymptotic_reference(double eps, double delta, const BoundProblem& prob);

}  // namespace bnsl
