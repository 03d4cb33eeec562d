#include "bnsl/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {

constexpr std::int64_t kSearchCap = 1ll << 62;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void check_problem(const BoundProblem& prob) {
    if (prob.n_vars < 1) throw InputError("bound problem: n_vars must be >= 1");
    if (prob.card_u < 2) throw InputError("bound problem: card_u must be >= 2");
    if (!(prob.m > 0.0) || prob.m > 1.0 / static_cast<double>(prob.card_u)) {
        throw InputError("bound problem: m must lie in (0, 1/card_u]");
    }
}

}  // namespace

double sanov_bound_log2(std::int64_t n_samples, std::uint64_t card_u, double eps) {
    if (n_samples < 1) throw InputError("sanov_bound: n_samples must be >= 1");
    if (eps < 0.0) throw InputError("sanov_bound: eps must be >= 0");
    return static_cast<double>(card_u) * std::log2(static_cast<double>(n_samples) + 1.0) -
           static_cast<double>(n_samples) * eps;
}

double sanov_bound(std::int64_t n_samples, std::uint64_t card_u, double eps) {
    return std::exp2(sanov_bound_log2(n_samples, card_u, eps));
}

double skew_set_bound_log2(std::int64_t n_samples, std::uint64_t card_u, double m) {
    if (n_samples < 1) throw InputError("skew_set_bound: n_samples must be >= 1");
    if (!(m > 0.0 && m < 1.0)) throw InputError("skew_set_bound: m must lie in (0, 1)");
    const double coef = (1.0 - m) * m / 4.0;
    return static_cast<double>(card_u) * std::log2(static_cast<double>(n_samples) + 1.0) -
           static_cast<double>(n_samples) * coef * coef;
}

double skew_set_bound(std::int64_t n_samples, std::uint64_t card_u, double m) {
    return std::exp2(skew_set_bound_log2(n_samples, card_u, m));
}

std::int64_t ideal_sample_size(std::uint64_t g, double eps, const Penalty& p) {
    if (g < 1) throw InputError("ideal_sample_size: g must be >= 1");
    if (!(eps > 0.0)) throw InputError("ideal_sample_size: eps must be > 0");
    const double threshold = static_cast<double>(g) / eps;
    const auto satisfied = [&](std::int64_t n) {
        const double psi = p.weight(n);
        return psi > 0.0 && static_cast<double>(n) / psi > threshold;
    };

    // N/psi(N) is strictly increasing for every penalty family once N >= 3
    // (the half-log ratio dips below N = e); scan the head, then bisect.
    for (std::int64_t n = 1; n <= 3; ++n) {
        if (satisfied(n)) return n;
    }
    std::int64_t hi = 4;
    while (!satisfied(hi)) {
        if (hi >= kSearchCap / 2) {
            throw CapacityError("ideal_sample_size: no admissible N below 2^62");
        }
        hi *= 2;
    }
    std::int64_t lo = hi / 2 < 3 ? 3 : hi / 2;  // satisfied(lo) is false
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (satisfied(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double inverse_x_over_log2x(double y) {
    if (!(y >= 2.0)) {
        throw InputError("inverse_x_over_log2x: y must be >= 2 (branch x >= 4)");
    }
    const auto f = [](double x) { return x / std::log2(x); };
    double lo = 4.0;
    if (f(lo) >= y) return lo;  // y == 2
    double hi = 8.0;
    while (f(hi) < y) {
        lo = hi;
        hi *= 2.0;
    }
    // f is strictly increasing on x >= 4.
    while (hi - lo > 1e-9 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<double> entropy_triangle_bound(double a, double b, double c, double m) {
    if (a < 0.0 || b < 0.0 || c < 0.0) {
        throw InputError("entropy_triangle_bound: a, b, c must be >= 0");
    }
    if (!(m > 0.0 && m <= 1.0)) {
        throw InputError("entropy_triangle_bound: m must lie in (0, 1]");
    }
    const double z = kPinskerZ;
    const double s = std::sqrt(a + z * std::sqrt(b) * c);
    if (z * s >= m) return std::nullopt;
    const double zs_over_m = z / m * s;
    return 0.5 * z * std::sqrt(b) * zs_over_m / (1.0 - zs_over_m) + a;
}

std::string GuaranteeReport::csv_header() {
    return "a,b,n,epsilon,delta,valid,violated_conditions";
}

std::string GuaranteeReport::csv_row() const {
    std::string violated;
    for (const std::string& v : violated_conditions) {
        if (!violated.empty()) violated += ';';
        violated += v;
    }
    return format_double(a) + "," + format_double(b) + "," + std::to_string(n_samples) + "," +
           format_double(epsilon) + "," + format_double(delta) + "," + (valid ? "1" : "0") + "," +
           violated;
}

GuaranteeReport evaluate_guarantee(double a, double b, std::int64_t n_samples,
                                   const BoundProblem& prob) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw InputError("evaluate_guarantee: a and b must be > 0");
    }
    check_problem(prob);

    GuaranteeReport report;
    report.a = a;
    report.b = b;
    report.n_samples = n_samples;
    report.delta = sanov_bound(n_samples, prob.card_u, b) +
                   skew_set_bound(n_samples, prob.card_u, prob.m);

    const double c = 2.0 * static_cast<double>(prob.n_vars) * std::log2(1.0 / prob.m);
    const std::optional<double> eps = entropy_triangle_bound(a, b, c, prob.m);

    const double psi = prob.penalty.weight(n_samples);
    const bool ratio_ok =
        psi > 0.0 && static_cast<double>(n_samples) / psi >= static_cast<double>(prob.g) / a;

    if (!ratio_ok) report.violated_conditions.push_back("penalty_ratio");
    if (!eps.has_value()) report.violated_conditions.push_back("skewness");
    report.valid = ratio_ok && eps.has_value();
    report.epsilon = eps.value_or(std::numeric_limits<double>::quiet_NaN());
    return report;
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int points) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    if (points == 1) {
        out.push_back(hi);
        return out;
    }
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) {
        out.push_back(lo * std::exp(step * static_cast<double>(i)));
    }
    return out;
}

}  // namespace

SampleComplexityResult sample_complexity(double eps_target, double delta_target,
                                         const BoundProblem& prob,
                                         const SampleComplexityOptions& options) {
    if (!(eps_target > 0.0 && eps_target < 1.0) || !(delta_target > 0.0 && delta_target < 1.0)) {
        throw InputError("sample_complexity: targets must lie in (0, 1)");
    }
    check_problem(prob);

    const std::vector<double> grid_a =
        log_spaced(eps_target * options.a_rel_min, eps_target, options.grid_points_a);
    const std::vector<double> grid_b = log_spaced(options.b_min, options.b_max, options.grid_points_b);

    // First grid point (row-major in a, then b) meeting both targets.
    const auto feasible_point = [&](std::int64_t n) -> std::optional<std::pair<double, double>> {
        for (double a : grid_a) {
            for (double b : grid_b) {
                const GuaranteeReport r = evaluate_guarantee(a, b, n, prob);
                if (r.valid && r.epsilon <= eps_target && r.delta <= delta_target) {
                    return std::make_pair(a, b);
                }
            }
        }
        return std::nullopt;
    };

    SampleComplexityResult result;
    if (!feasible_point(options.n_cap).has_value()) {
        return result;  // infeasible
    }

    std::int64_t hi = 1;
    while (hi < options.n_cap && !feasible_point(hi).has_value()) {
        hi = std::min(options.n_cap, hi * 2);
    }
    std::int64_t lo = hi == 1 ? 0 : hi / 2;  // infeasible (or 0)
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (feasible_point(mid).has_value()) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    const auto point = feasible_point(hi);
    result.feasible = true;
    result.n_samples = hi;
    result.a = point->first;
    result.b = point->second;
    return result;
}

double asymptotic_reference(double eps, double delta, const BoundProblem& prob) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw InputError("asymptotic_reference: eps and delta must lie in (0, 1)");
    }
    check_problem(prob);
    const double f_term =
        inverse_x_over_log2x(static_cast<double>(prob.card_u) + std::log2(1.0 / delta));
    const double g = static_cast<double>(prob.g);
    const double inv_eps = 1.0 / eps;
    const double inv_m = 1.0 / prob.m;
    switch (prob.penalty.kind()) {
        case Penalty::Kind::HalfLog:
            return f_term * std::pow(inv_eps, 4.0 / 3.0) * std::cbrt(g) * inv_m * inv_m;
        case Penalty::Kind::Polynomial: {
            const double alpha = prob.penalty.parameter();
            const double q = 1.0 / (1.0 - alpha);
            return f_term * std::pow(inv_eps, 4.0 / 3.0 * q) * std::pow(g, q) *
                   std::pow(inv_m, 2.0 * q);
        }
        case Penalty::Kind::Constant:
        default:
            throw InputError(
                "asymptotic_reference: defined for half-log and polynomial penalties only");
    }
}

}  // namespace bnsl
