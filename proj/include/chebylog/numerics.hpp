#pragma once

// Floating-point resolution of exact coefficients, with three independent
// routes for cross-checking:
//   * log-sine closed forms in pi, log 2, zeta(3), zeta(5), zeta(7) (l <= 8)
//   * the positive hypergeometric series for A_{m,l,0} and B_{m,l}
//   * tanh-sinh quadrature of the projection integral

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "chebylog/coeffs.hpp"
#include "chebylog/exactnum.hpp"
#include "chebylog/quadrature.hpp"

namespace chebylog {

/// Working type for exact-to-numeric conversion. Rational coefficients of
/// A_{m,l,n} grow roughly like 6^n while the value decays, so the
/// substitution is done with ~100 digits and rounded to double at the end.
using HighReal = boost::multiprecision::cpp_bin_float_100;

struct NumValue {
    double value = 0.0;
    double error_bound = 0.0;  // absolute
    bool converged = true;
};

struct HighValue {
    HighReal value = 0;
    HighReal error_bound = 0;
};

/// pi, log 2 and odd zeta values, 70 significant digits each.
struct FundamentalConstants {
    HighReal pi{"3.141592653589793238462643383279502884197169399375105820974944592307816"};
    HighReal log2{"0.6931471805599453094172321214581765680755001343602552541206800094933936"};
    HighReal zeta3{"1.202056903159594285399738161511449990764986292340498881792271555341838"};
    HighReal zeta5{"1.036927755143369926331365486457034168057080919501912811974192677903804"};
    HighReal zeta7{"1.008349277381922826839797549849796759599863560565238706417283136571601"};

    /// Relative rounding of a 70-digit literal.
    static constexpr double literal_rel_error = 1e-69;
};

struct NumericEnv {
    double tolerance = 1e-12;                 // relative target for series
    std::int64_t term_cap = 10'000'000;       // max explicitly summed series terms
    std::int64_t tail_switch = 1 << 16;       // switch to tail enclosure here
    long double quad_tolerance = 1e-15L;      // relative to the integrand's L1 norm
    int quad_max_level = 12;
    FundamentalConstants constants{};

    void validate() const {
        if (!(tolerance > 0.0)) throw std::invalid_argument("NumericEnv: tolerance must be > 0");
        if (term_cap <= 0) throw std::invalid_argument("NumericEnv: term_cap must be > 0");
        if (tail_switch <= 0) throw std::invalid_argument("NumericEnv: tail_switch must be > 0");
        if (!(quad_tolerance > 0)) throw std::invalid_argument("NumericEnv: quad_tolerance must be > 0");
    }
};

namespace detail {

inline constexpr double kDoubleEps = std::numeric_limits<double>::epsilon();
inline constexpr long double kLongEps = std::numeric_limits<long double>::epsilon();

[[nodiscard]] inline HighReal to_high(const Rational& q) {
    return HighReal(boost::multiprecision::numerator(q)) /
           HighReal(boost::multiprecision::denominator(q));
}

[[nodiscard]] inline NumValue to_num(const HighValue& v, bool converged = true) {
    const double value = v.value.convert_to<double>();
    const double rounding = 0.5 * kDoubleEps * std::fabs(value);
    return {value, v.error_bound.convert_to<double>() + rounding, converged};
}

// c * pi^a * log2^b * zeta3^c3 * zeta5^c5 * zeta7^c7
struct LogSineMonomial {
    std::int64_t num;
    std::int64_t den;
    int pi, log2, z3, z5, z7;
};

// int_0^1 (log x)^l / sqrt(x - x^2) dx for l = 1..8
inline const std::array<std::vector<LogSineMonomial>, 9>& log_sine_closed_forms() {
    static const std::array<std::vector<LogSineMonomial>, 9> table = {{
        {},
        {{-2, 1, 1, 1, 0, 0, 0}},
        {{1, 3, 3, 0, 0, 0, 0}, {4, 1, 1, 2, 0, 0, 0}},
        {{-12, 1, 1, 0, 1, 0, 0}, {-2, 1, 3, 1, 0, 0, 0}, {-8, 1, 1, 3, 0, 0, 0}},
        {{8, 1, 3, 2, 0, 0, 0}, {96, 1, 1, 1, 1, 0, 0}, {16, 1, 1, 4, 0, 0, 0},
         {19, 15, 5, 0, 0, 0, 0}},
        {{-480, 1, 1, 2, 1, 0, 0}, {-32, 1, 1, 5, 0, 0, 0}, {-720, 1, 1, 0, 0, 1, 0},
         {-38, 3, 5, 1, 0, 0, 0}, {-80, 3, 3, 3, 0, 0, 0}, {-40, 1, 3, 0, 1, 0, 0}},
        {{76, 1, 5, 2, 0, 0, 0}, {1440, 1, 1, 0, 2, 0, 0}, {275, 21, 7, 0, 0, 0, 0},
         {64, 1, 1, 6, 0, 0, 0}, {480, 1, 3, 1, 1, 0, 0}, {1920, 1, 1, 3, 1, 0, 0},
         {8640, 1, 1, 1, 0, 1, 0}, {80, 1, 3, 4, 0, 0, 0}},
        {{-3360, 1, 3, 2, 1, 0, 0}, {-532, 1, 5, 0, 1, 0, 0}, {-5040, 1, 3, 0, 0, 1, 0},
         {-128, 1, 1, 7, 0, 0, 0}, {-1064, 3, 5, 3, 0, 0, 0}, {-20160, 1, 1, 1, 2, 0, 0},
         {-6720, 1, 1, 4, 1, 0, 0}, {-224, 1, 3, 5, 0, 0, 0}, {-550, 3, 7, 1, 0, 0, 0},
         {-60480, 1, 1, 2, 0, 1, 0}, {-90720, 1, 1, 0, 0, 0, 1}},
        {{17920, 1, 3, 3, 1, 0, 0}, {4400, 3, 7, 2, 0, 0, 0}, {1792, 3, 3, 6, 0, 0, 0},
         {4256, 3, 5, 4, 0, 0, 0}, {1451520, 1, 1, 1, 0, 0, 1}, {21504, 1, 1, 5, 1, 0, 0},
         {161280, 1, 1, 2, 2, 0, 0}, {322560, 1, 1, 3, 0, 1, 0}, {256, 1, 1, 8, 0, 0, 0},
         {80640, 1, 3, 1, 0, 1, 0}, {11813, 45, 9, 0, 0, 0, 0}, {8512, 1, 5, 1, 1, 0, 0},
         {13440, 1, 3, 0, 2, 0, 0}, {483840, 1, 1, 0, 1, 1, 0}},
    }};
    return table;
}

}  // namespace detail

inline constexpr int kMaxClosedFormLog = 8;

/// High-precision value of int_0^1 (log x)^l / sqrt(x - x^2) dx, 1 <= l <= 8.
[[nodiscard]] inline HighValue logint_closed_hp(int l, const FundamentalConstants& c) {
    if (l < 1 || l > kMaxClosedFormLog) {
        throw std::out_of_range("logint_closed: closed form only for 1 <= l <= 8, got " +
                                std::to_string(l));
    }
    HighValue out;
    for (const auto& t : detail::log_sine_closed_forms()[static_cast<std::size_t>(l)]) {
        HighReal term = HighReal(t.num) / t.den;
        term *= pow(c.pi, t.pi) * pow(c.log2, t.log2) * pow(c.zeta3, t.z3) *
                pow(c.zeta5, t.z5) * pow(c.zeta7, t.z7);
        out.value += term;
        const int factors = t.pi + t.log2 + t.z3 + t.z5 + t.z7;
        out.error_bound += abs(term) * (factors + 1) * FundamentalConstants::literal_rel_error;
    }
    return out;
}

[[nodiscard]] inline NumValue logint_closed(int l, const NumericEnv& env = {}) {
    return detail::to_num(logint_closed_hp(l, env.constants));
}

// ---------------------------------------------------------------------------
// Hypergeometric series
//
//   A_{m,l,0} = (2/pi) l! sum_k w_k / (m + 1/2 + k)^{l+1}
//   B_{m,l}   = (2/pi) l! sum_k (2k+1) w_k / (m + 3/2 + k)^{l+1}
//   w_k = binom(2k,k) / 4^k = (2k-1)!!/(2k)!!
//
// All terms are positive. Explicit summation stops once the dropped tail is
// provably below tolerance:
//   A: w_k <= 1/sqrt(pi k) gives  tail_{k>K} <= K^{-(l+1/2)} / (l+1/2)
//   B: (2k+1) w_k <= 2 sqrt(k) gives tail_{k>K} <= 2 K^{-(l-1/2)} / (l-1/2)
// When that would need more than `tail_switch` terms (always for l <= 1 in A
// and l = 1 in B) the remaining tail is enclosed by integrals instead.
// ---------------------------------------------------------------------------

enum class SeriesKind { a0, companion };

namespace detail {

// w(x) = Gamma(x+1/2) / (sqrt(pi) Gamma(x+1)) interpolates w_k, and
// sqrt(x) * Gamma(x+1/2)/Gamma(x+1) = sum_i kGammaRatio[i] x^{-i} + O(x^{-7})
inline constexpr std::array<long double, 7> kGammaRatio = {
    1.0L, -1.0L / 8, 1.0L / 128, 5.0L / 1024, -21.0L / 32768, -399.0L / 262144, 869.0L / 4194304};
// |remainder| <= kGammaRatioRemainder * x^{-7} for x >= 100
inline constexpr long double kGammaRatioRemainder = 2e-3L;

[[nodiscard]] inline long double inv_power(long double base, int p) {
    long double r = 1;
    for (int i = 0; i < p; ++i) r *= base;
    return 1 / r;
}

struct Interval {
    long double lo = 0;
    long double hi = 0;
};

/// int_X^inf w(x) (x+a)^{-q} dx using the asymptotic expansion of w and the
/// binomial expansion of (1 + a/x)^{-q}. Requires X >= 100 and a < X / 4.
/// Returns the value and an absolute bound on the truncation error.
inline std::pair<long double, long double> weight_tail_integral(long double X, long double a, int q) {
    long double total = 0;
    long double trunc = 0;
    for (std::size_t i = 0; i < kGammaRatio.size(); ++i) {
        // j-series: sum_j (-1)^j C(q+j-1, j) a^j X^{1/2-i-q-j} / (i+q+j-1/2)
        long double binom = 1;  // C(q+j-1, j) (a/X)^j
        long double inner = 0;
        long double last = 0;
        for (int j = 0; j < 200; ++j) {
            const long double expo = static_cast<long double>(i) + q + j - 0.5L;
            last = binom / expo;
            inner += (j % 2 == 0 ? last : -last);
            if (last < 1e-30L * std::fabs(inner)) break;
            binom *= (static_cast<long double>(q + j) / (j + 1)) * (a / X);
        }
        const long double scale = std::pow(X, 0.5L - static_cast<long double>(i) - q);
        total += kGammaRatio[i] * scale * inner;
        trunc += std::fabs(kGammaRatio[i]) * scale * last;
    }
    // w remainder: int_X^inf r x^{-15/2} x^{-q} dx
    trunc += kGammaRatioRemainder * std::pow(X, -6.5L - q) / (6.5L + q);
    const long double inv_sqrt_pi = 1 / std::sqrt(std::numbers::pi_v<long double>);
    return {total * inv_sqrt_pi, trunc * inv_sqrt_pi};
}

/// Enclosure of sum_{k >= K0} w_k (k+a)^{-q} given w_{K0}. The summand is a
/// product of two positive decreasing convex functions of k, hence convex:
///   int_{K0}^inf g + g(K0)/2  <=  sum  <=  int_{K0-1/2}^inf g.
[[nodiscard]] inline Interval weighted_tail_enclosure(std::int64_t K0, long double w_K0,
                                                      long double a, int q) {
    const long double k0 = static_cast<long double>(K0);
    const auto [lower_int, lower_err] = weight_tail_integral(k0, a, q);
    const auto [upper_int, upper_err] = weight_tail_integral(k0 - 0.5L, a, q);
    const long double g0 = w_K0 * inv_power(k0 + a, q);
    return {lower_int + g0 / 2 - lower_err, upper_int + upper_err};
}

struct SeriesSum {
    long double value = 0;  // sum without the (2/pi) l! prefactor
    long double error = 0;
    std::int64_t terms = 0;
    bool enclosed_tail = false;
    bool converged = false;
};

[[nodiscard]] inline SeriesSum sum_series(SeriesKind kind, int m, int l, const NumericEnv& env) {
    const int p = l + 1;
    const bool companion = kind == SeriesKind::companion;
    const long double shift = companion ? m + 1.5L : m + 0.5L;
    const long double rel_tol = env.tolerance;

    auto crude_tail = [&](std::int64_t K) -> long double {
        const long double k = static_cast<long double>(K);
        if (companion) return 2 * std::pow(k, 1.5L - p) / (p - 1.5L);
        return std::pow(k, 0.5L - p) / (p - 0.5L);
    };

    const std::int64_t limit = std::min(env.term_cap, env.tail_switch);
    SeriesSum out;
    long double sum = 0;
    long double w = 1;  // w_k
    std::int64_t k = 0;
    for (; k < limit; ++k) {
        const long double coef = companion ? (2 * k + 1) * w : w;
        sum += coef * inv_power(shift + k, p);
        w *= (2.0L * k + 1) / (2.0L * k + 2);
        if (k >= 1 && (k & 63) == 0 && crude_tail(k) <= rel_tol * sum) {
            ++k;
            out.converged = true;
            break;
        }
    }
    out.terms = k;
    // k terms summed (indices 0..k-1), w now holds w_k
    const long double rounding = (2.0L * static_cast<long double>(k) + p + 8) * detail::kLongEps * sum;

    if (out.converged || k < 1024) {
        // dropped tail lies in [0, crude_tail]
        const long double dropped = crude_tail(k - 1);
        out.value = sum + dropped / 2;
        out.error = dropped / 2 + rounding;
        return out;
    }

    Interval tail;
    if (!companion) {
        tail = weighted_tail_enclosure(k, w, shift, p);
    } else {
        // (2k+1) = 2(k+a) - (2a-1)
        const Interval t1 = weighted_tail_enclosure(k, w, shift, p - 1);
        const Interval t2 = weighted_tail_enclosure(k, w, shift, p);
        const long double c = 2 * shift - 1;
        tail = {2 * t1.lo - c * t2.hi, 2 * t1.hi - c * t2.lo};
    }
    out.enclosed_tail = true;
    out.value = sum + (tail.lo + tail.hi) / 2;
    out.error = (tail.hi - tail.lo) / 2 + rounding;
    out.converged = out.error <= rel_tol * out.value;
    return out;
}

[[nodiscard]] inline long double series_prefactor(int l) {
    long double f = 2 / std::numbers::pi_v<long double>;
    for (int i = 2; i <= l; ++i) f *= i;
    return f;
}

[[nodiscard]] inline NumValue finish_series(const SeriesSum& s, int l) {
    const long double pre = series_prefactor(l);
    const double value = static_cast<double>(pre * s.value);
    const double err = static_cast<double>(pre * s.error * (1 + 4 * kLongEps)) +
                       0.5 * kDoubleEps * std::fabs(value);
    return {value, err, s.converged};
}

}  // namespace detail

/// A_{m,l,0} from its hypergeometric series.
[[nodiscard]] inline NumValue a0_series(int m, int l, const NumericEnv& env = {}) {
    env.validate();
    detail::require_nonnegative(m, "a0_series: m");
    detail::require_nonnegative(l, "a0_series: l");
    return detail::finish_series(detail::sum_series(SeriesKind::a0, m, l, env), l);
}

/// B_{m,l} from its hypergeometric series; l = 0 diverges.
[[nodiscard]] inline NumValue b_series(int m, int l, const NumericEnv& env = {}) {
    env.validate();
    if (l <= 0) throw DivergenceError("b_series: series for B_{m,l} diverges for l <= 0");
    if (m < -1) throw std::domain_error("b_series: m must be >= -1, got " + std::to_string(m));
    return detail::finish_series(detail::sum_series(SeriesKind::companion, m, l, env), l);
}

/// First `count` partial sums of the series (without the prefactor).
[[nodiscard]] inline std::vector<long double> series_partial_sums(SeriesKind kind, int m, int l,
                                                                  std::size_t count) {
    std::vector<long double> sums;
    sums.reserve(count);
    const long double shift = kind == SeriesKind::companion ? m + 1.5L : m + 0.5L;
    long double sum = 0;
    long double w = 1;
    for (std::size_t k = 0; k < count; ++k) {
        const long double coef = kind == SeriesKind::companion ? (2.0L * k + 1) * w : w;
        sum += coef * detail::inv_power(shift + static_cast<long double>(k), l + 1);
        sums.push_back(sum);
        w *= (2.0L * k + 1) / (2.0L * k + 2);
    }
    return sums;
}

// ---------------------------------------------------------------------------
// Exact -> numeric
// ---------------------------------------------------------------------------

/// Numeric value of the atom A0[l] = A_{0,l,0} (l >= 2): closed form up to
/// l = 8, series beyond.
[[nodiscard]] inline HighValue a0_atom_hp(int l, const NumericEnv& env) {
    if (l <= kMaxClosedFormLog) {
        HighValue v = logint_closed_hp(l, env.constants);
        HighReal scale = 2 / env.constants.pi;
        if (l % 2 != 0) scale = -scale;
        return {v.value * scale, v.error_bound * abs(scale) * (1 + 1e-60)};
    }
    const NumValue s = a0_series(0, l, env);
    return {HighReal(s.value), HighReal(s.error_bound)};
}

[[nodiscard]] inline HighValue eval_sym_hp(const SymValue& v, const NumericEnv& env) {
    HighValue out;
    for (const auto& [atom, q] : v.terms()) {
        const HighReal coef = detail::to_high(q);
        HighValue atom_value;
        switch (atom.kind()) {
            case ConstAtom::Kind::one:
                atom_value = {HighReal(1), HighReal(0)};
                break;
            case ConstAtom::Kind::log2:
                atom_value = {env.constants.log2,
                              env.constants.log2 * FundamentalConstants::literal_rel_error};
                break;
            case ConstAtom::Kind::a0:
                atom_value = a0_atom_hp(atom.log_power(), env);
                break;
        }
        const HighReal term = coef * atom_value.value;
        out.value += term;
        out.error_bound += abs(coef) * atom_value.error_bound + abs(term) * HighReal(1e-95);
    }
    return out;
}

/// Substitute numeric values for the atoms of v.
[[nodiscard]] inline NumValue eval_sym(const SymValue& v, const NumericEnv& env = {}) {
    return detail::to_num(eval_sym_hp(v, env));
}

// ---------------------------------------------------------------------------
// Quadrature oracle
//
// With x = sin^2(t): dx / sqrt(x - x^2) = 2 dt and T*_n(sin^2 t) = (-1)^n cos(2nt),
//   A_{m,l,n} = (4/pi) (-1)^n int_0^{pi/2} sin^{2m}t (-2 log sin t)^l cos(2nt) dt.
// The integrand behaves like (log t)^l at t = 0, which tanh-sinh absorbs.
// ---------------------------------------------------------------------------

[[nodiscard]] inline NumValue quad_oracle(const CoeffKey& key, const NumericEnv& env = {}) {
    env.validate();
    detail::require_nonnegative(key.m, "quad_oracle: m");
    detail::require_nonnegative(key.l, "quad_oracle: l");
    detail::require_nonnegative(key.n, "quad_oracle: n");
    using R = long double;
    const int m = key.m;
    const int l = key.l;
    const R freq = 2 * static_cast<R>(key.n);

    auto integrand = [=](R t) -> R {
        const R s = std::sin(t);
        R value = std::cos(freq * t);
        for (int i = 0; i < m; ++i) value *= s * s;
        if (l > 0) {
            const R lg = -2 * std::log(s);
            for (int i = 0; i < l; ++i) value *= lg;
        }
        return value;
    };

    TanhSinhOptions<R> opts;
    opts.rel_tolerance = env.quad_tolerance;
    opts.max_level = env.quad_max_level;
    const auto res = tanh_sinh<R>(integrand, R(0), std::numbers::pi_v<R> / 2, opts);

    R scale = 4 / std::numbers::pi_v<R>;
    if (key.n % 2 != 0) scale = -scale;
    const R rounding = static_cast<R>(res.evaluations) * detail::kLongEps * res.l1_norm;
    const double value = static_cast<double>(scale * res.value);
    const double err = static_cast<double>(std::fabs(scale) * (res.error_estimate + rounding)) +
                       0.5 * detail::kDoubleEps * std::fabs(value);
    return {value, err, res.converged};
}

// ---------------------------------------------------------------------------
// Independent zeta values (Euler-Maclaurin)
// ---------------------------------------------------------------------------

namespace detail {

/// B_0 .. B_count-1 from sum_{k=0}^{n} C(n+1,k) B_k = 0.
[[nodiscard]] inline std::vector<Rational> bernoulli_numbers(std::size_t count) {
    std::vector<Rational> b(count);
    for (std::size_t n = 0; n < count; ++n) {
        if (n == 0) {
            b[0] = 1;
            continue;
        }
        Rational acc = 0;
        BigInt binom = 1;  // C(n+1, k)
        for (std::size_t k = 0; k < n; ++k) {
            acc += Rational(binom) * b[k];
            binom = binom * (n + 1 - k) / (k + 1);
        }
        b[n] = -acc / Rational(static_cast<long long>(n + 1));
    }
    return b;
}

}  // namespace detail

/// zeta(s), s >= 2, to roughly 90 digits: direct sum to N-1, integral tail,
/// and Euler-Maclaurin corrections. The error bound is the first omitted
/// correction term.
[[nodiscard]] inline HighValue zeta_oracle(int s) {
    if (s < 2) throw std::domain_error("zeta_oracle: s must be >= 2, got " + std::to_string(s));
    constexpr int N = 40;
    constexpr std::size_t J = 40;
    static const std::vector<Rational> bern = detail::bernoulli_numbers(2 * J + 3);

    HighReal sum = 0;
    for (int n = N - 1; n >= 1; --n) sum += pow(HighReal(n), -s);
    const HighReal big_n = N;
    sum += pow(big_n, 1 - s) / (s - 1);
    sum += pow(big_n, -s) / 2;

    // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    HighReal rising = s;          // s (s+1) ... (s+2j-2)
    HighReal factorial = 2;       // (2j)!
    HighReal last = 0;
    for (std::size_t j = 1; j <= J + 1; ++j) {
        const HighReal term = detail::to_high(bern[2 * j]) / factorial * rising *
                              pow(big_n, -s - 2 * static_cast<int>(j) + 1);
        if (j == J + 1) {
            last = abs(term);
            break;
        }
        sum += term;
        rising *= HighReal(s + 2 * static_cast<int>(j) - 1) * (s + 2 * static_cast<int>(j));
        factorial *= HighReal(2 * j + 1) * (2 * j + 2);
    }
    return {sum, last + abs(sum) * HighReal(1e-98)};
}

}  // namespace chebylog
