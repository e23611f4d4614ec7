#pragma once

// Tanh-sinh (double-exponential) quadrature on a finite interval.
// Abscissas near both endpoints are formed from their distance to the
// endpoint, so integrands with logarithmic or algebraic endpoint
// singularities are sampled without cancellation.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace chebylog {

template <class Real>
struct QuadratureResult {
    Real value{};
    Real error_estimate{};  // |I_k - I_{k-1}| at the last level
    Real l1_norm{};         // quadrature of |f|
    int levels = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

template <class Real = long double>
struct TanhSinhOptions {
    Real rel_tolerance = Real(1e-15);  // relative to the L1 norm of f
    int max_level = 12;
    int min_level = 4;
    Real t_max = Real(4.5);
};

template <class Real, class F>
[[nodiscard]] QuadratureResult<Real> tanh_sinh(F&& f, Real a, Real b,
                                               const TanhSinhOptions<Real>& opts = {}) {
    using std::cosh;
    using std::exp;
    using std::fabs;
    using std::sinh;

    const Real half = (b - a) / 2;
    const Real half_pi = std::numbers::pi_v<Real> / 2;

    QuadratureResult<Real> out;
    // weighted sums over the nodes added so far (step h = 1 at level 0)
    Real sum = 0;
    Real abs_sum = 0;

    auto add_node = [&](Real t) {
        const Real u = half_pi * sinh(t);
        const Real ch = cosh(u);
        const Real weight = half_pi * cosh(t) / (ch * ch);
        // 1 - tanh(u) = exp(-u) / cosh(u)
        const Real gap = half * exp(-u) / ch;
        const Real left = f(a + gap);
        const Real right = f(b - gap);
        out.evaluations += 2;
        sum += weight * (left + right);
        abs_sum += weight * (fabs(left) + fabs(right));
    };

    {
        const Real mid = f(a + half);
        ++out.evaluations;
        sum += half_pi * mid;
        abs_sum += half_pi * fabs(mid);
        for (int j = 1; Real(j) <= opts.t_max; ++j) add_node(Real(j));
    }
    Real prev = half * sum;
    Real h = 1;
    for (int level = 1; level <= opts.max_level; ++level) {
        h /= 2;
        const int count = static_cast<int>(opts.t_max / h);
        for (int j = 1; j <= count; j += 2) add_node(h * Real(j));

        const Real current = half * h * sum;
        out.value = current;
        out.l1_norm = half * h * abs_sum;
        out.error_estimate = fabs(current - prev);
        out.levels = level;
        if (level >= opts.min_level && out.error_estimate <= opts.rel_tolerance * out.l1_norm) {
            out.converged = true;
            break;
        }
        prev = current;
    }
    return out;
}

}  // namespace chebylog
