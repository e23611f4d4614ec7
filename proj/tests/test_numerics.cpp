#include <cmath>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <gtest/gtest.h>

#include "chebylog/chebeval.hpp"
#include "chebylog/coeffs.hpp"
#include "chebylog/numerics.hpp"
#include "golden.hpp"

using namespace chebylog;

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog2 = std::log(2.0);

bool within_bounds(const NumValue& a, const NumValue& b) {
    return std::fabs(a.value - b.value) <= a.error_bound + b.error_bound;
}

}  // namespace

TEST(Constants, MatchIndependentZetaOracle) {
    const FundamentalConstants c;
    const HighReal tight("1e-60");
    for (auto [s, embedded] : {std::pair{3, c.zeta3}, std::pair{5, c.zeta5}, std::pair{7, c.zeta7}}) {
        const HighValue z = zeta_oracle(s);
        EXPECT_LT(z.error_bound, tight);
        EXPECT_LT(abs(z.value - embedded) / embedded, HighReal("1e-20")) << "zeta(" << s << ")";
        EXPECT_LT(abs(z.value - embedded) / embedded, tight) << "zeta(" << s << ")";
    }
}

TEST(Constants, MatchLibraryPiAndLog) {
    const FundamentalConstants c;
    EXPECT_LT(abs(c.pi - boost::math::constants::pi<HighReal>()), HighReal("1e-68"));
    EXPECT_LT(abs(c.log2 - boost::math::constants::ln_two<HighReal>()), HighReal("1e-68"));
    EXPECT_EQ(c.pi.convert_to<double>(), kPi);
    EXPECT_EQ(c.log2.convert_to<double>(), kLog2);
}

TEST(ZetaOracle, KnownEvenValueAndDomain) {
    const HighValue z2 = zeta_oracle(2);
    const HighReal pi = boost::math::constants::pi<HighReal>();
    EXPECT_LT(abs(z2.value - pi * pi / 6), HighReal("1e-60"));
    EXPECT_THROW((void)zeta_oracle(1), std::domain_error);
}

TEST(LogSineClosedForm, PrintedValues) {
    EXPECT_NEAR(logint_closed(1).value, -2 * kPi * kLog2, 1e-14);
    EXPECT_NEAR(logint_closed(1).value, -4.355172, 5e-7);
    EXPECT_NEAR(logint_closed(2).value, kPi * kPi * kPi / 3 + 4 * kPi * kLog2 * kLog2, 1e-13);
    EXPECT_NEAR(logint_closed(4).value, 769.692354, 5e-7);
    EXPECT_NEAR(logint_closed(8).value / 1e8, 0.20644368, 1e-8);
    EXPECT_LT(logint_closed(8).error_bound, 1e-8);
}

TEST(LogSineClosedForm, OutsideTabulatedRange) {
    EXPECT_THROW((void)logint_closed(0), std::out_of_range);
    EXPECT_THROW((void)logint_closed(9), std::out_of_range);
}

TEST(LogSineClosedForm, AgreesWithSeries) {
    for (int l = 1; l <= 8; ++l) {
        const NumValue closed = logint_closed(l);
        NumValue series = a0_series(0, l);
        const double scale = (l % 2 == 0 ? 1.0 : -1.0) * kPi / 2;
        series.value *= scale;
        series.error_bound *= std::fabs(scale) * (1 + 1e-15);
        EXPECT_TRUE(series.converged);
        EXPECT_TRUE(within_bounds(closed, series)) << "l=" << l << " closed=" << closed.value
                                                   << " series=" << series.value;
    }
}

TEST(Series, ExampleValues) {
    const NumValue a010 = a0_series(0, 1);
    EXPECT_NEAR(a010.value, 4 * kLog2, 4e-12);
    EXPECT_NEAR(a010.value, 2.77258872, 1e-8);
    EXPECT_LE(std::fabs(a010.value - 4 * kLog2), a010.error_bound + 1e-15);

    const NumValue a020 = a0_series(0, 2);
    EXPECT_NEAR(a020.value, 2 * kPi * kPi / 3 + 8 * kLog2 * kLog2, 1e-11);

    EXPECT_NEAR(a0_series(1, 1).value, -1 + 2 * kLog2, 1e-12);
    EXPECT_NEAR(a0_series(1, 1).value, 0.386294, 1e-6);
}

TEST(Series, SlowCasesUseTailEnclosure) {
    // l = 0: A_{m,0,0} is rational and the series decays like k^{-3/2}
    const NumValue a000 = a0_series(0, 0);
    EXPECT_TRUE(a000.converged);
    EXPECT_NEAR(a000.value, 2.0, 1e-12);
    EXPECT_LE(std::fabs(a000.value - 2.0), a000.error_bound);
    EXPECT_NEAR(a0_series(3, 0).value, 0.625, 1e-12);

    const NumValue b = b_series(-1, 1);
    EXPECT_TRUE(b.converged);
    EXPECT_NEAR(b.value, 4.0, 1e-11);
    EXPECT_LE(std::fabs(b.value - 4.0), b.error_bound);
}

TEST(Series, CompanionExamples) {
    EXPECT_NEAR(b_series(-1, 2).value, 16 * kLog2, 1e-11);
    EXPECT_NEAR(b_series(-1, 2).value, 11.0903549, 1e-7);
    EXPECT_NEAR(b_series(0, 1).value, 4 - 4 * kLog2, 1e-11);
    EXPECT_NEAR(b_series(0, 1).value, 1.2274112, 1e-7);
}

TEST(Series, CompanionDivergesWithoutLogarithm) {
    EXPECT_THROW((void)b_series(0, 0), DivergenceError);
    EXPECT_THROW((void)b_series(-2, 1), std::domain_error);
}

TEST(Series, TermCapGivesHonestFlaggedResult) {
    NumericEnv env;
    env.term_cap = 200;
    const NumValue v = a0_series(0, 1, env);
    EXPECT_FALSE(v.converged);
    EXPECT_GT(v.error_bound, 1e-6);
    EXPECT_LE(std::fabs(v.value - 4 * kLog2), v.error_bound);
}

TEST(Series, TermsPositivePartialSumsIncrease) {
    for (auto kind : {SeriesKind::a0, SeriesKind::companion}) {
        for (int l = 1; l <= 4; ++l) {
            const auto sums = series_partial_sums(kind, 0, l, 500);
            for (std::size_t k = 1; k < sums.size(); ++k) ASSERT_GT(sums[k], sums[k - 1]);
        }
    }
}

TEST(Series, StatedTailBoundsDominateActualTail) {
    // A: sum_{k>K} w_k / (1/2+k)^{l+1}      <= K^{-(l+1/2)} / (l+1/2)
    // B: sum_{k>K} (2k+1) w_k / (3/2+k)^{l+1} <= 2 K^{-(l-1/2)} / (l-1/2)
    NumericEnv env;
    env.tolerance = 1e-18;
    for (auto kind : {SeriesKind::a0, SeriesKind::companion}) {
        for (int l = kind == SeriesKind::a0 ? 0 : 1; l <= 4; ++l) {
            const long double total = detail::sum_series(kind, 0, l, env).value;
            const auto sums = series_partial_sums(kind, 0, l, 1001);
            for (std::size_t K : {10u, 100u, 1000u}) {
                const long double tail = total - sums[K];
                const long double k = static_cast<long double>(K);
                const long double bound = kind == SeriesKind::a0
                                              ? std::pow(k, -(l + 0.5L)) / (l + 0.5L)
                                              : 2 * std::pow(k, -(l - 0.5L)) / (l - 0.5L);
                EXPECT_GT(tail, 0) << "l=" << l << " K=" << K;
                EXPECT_LE(tail, bound) << "l=" << l << " K=" << K;
            }
        }
    }
}

TEST(EvalSym, Examples) {
    const SymValue a111 = SymValue(Rational(-3, 4)) + SymValue(1, ConstAtom::log2());
    EXPECT_NEAR(eval_sym(a111).value, -0.056852819440, 1e-12);
    const SymValue a313 = SymValue(Rational(-49, 640)) + SymValue(Rational(1, 16), ConstAtom::log2());
    EXPECT_NEAR(eval_sym(a313).value, -0.0332408012150034, 1e-16);
    const NumValue zero = eval_sym(SymValue{});
    EXPECT_EQ(zero.value, 0.0);
    EXPECT_EQ(zero.error_bound, 0.0);
}

TEST(EvalSym, GoldenDecimals) {
    CoeffCache cache;
    for (const auto& g : oracle::golden_decimals()) {
        EXPECT_NEAR(eval_sym(coefficient(g.key, cache)).value, g.value, g.tolerance);
    }
}

TEST(EvalSym, AtomsBeyondClosedFormsUseSeries) {
    const NumValue v = eval_sym(SymValue(1, ConstAtom::a0(10)));
    const NumValue s = a0_series(0, 10);
    EXPECT_EQ(v.value, s.value);
    EXPECT_GE(v.error_bound, s.error_bound);
}

TEST(Quadrature, Examples) {
    EXPECT_NEAR(quad_oracle({0, 0, 0}).value, 2.0, 1e-14);
    EXPECT_NEAR(quad_oracle({0, 1, 0}).value, 4 * kLog2, 1e-13);
    EXPECT_NEAR(quad_oracle({0, 1, 0}).value, 2.77258872, 1e-8);
    EXPECT_NEAR(quad_oracle({4, 1, 3}).value, -0.028535173858578, 1e-15);
    EXPECT_TRUE(quad_oracle({4, 1, 3}).converged);
}

TEST(Quadrature, SubstitutionIdentity) {
    // T*_n(sin^2 t) = (-1)^n cos(2 n t)
    for (int n = 0; n <= 12; ++n) {
        for (int i = 0; i <= 40; ++i) {
            const double t = (kPi / 2) * i / 40.0;
            const double s = std::sin(t);
            EXPECT_NEAR(tstar(n, s * s), (n % 2 ? -1.0 : 1.0) * std::cos(2.0 * n * t), 1e-12);
        }
    }
}

TEST(Quadrature, ShiftedChebyshevOrthogonality) {
    for (int i = 0; i <= 8; ++i) {
        for (int j = 0; j <= 8; ++j) {
            auto f = [i, j](long double t) -> long double {
                const double s = std::sin(static_cast<double>(t));
                return tstar(i, s * s) * tstar(j, s * s);
            };
            const auto r = tanh_sinh<long double>(f, 0.0L, std::numbers::pi_v<long double> / 2);
            const double projected = static_cast<double>(4 / std::numbers::pi_v<long double> * r.value);
            const double expected = i != j ? 0.0 : i == 0 ? 2.0 : 1.0;
            EXPECT_NEAR(projected, expected, 1e-9) << i << "," << j;
        }
    }
}

TEST(Triangulation, ExactSeriesQuadratureAgree) {
    CoeffCache cache;
    for (int m = 0; m <= 5; ++m) {
        for (int l = 1; l <= 6; ++l) {
            const NumValue exact = eval_sym(a_m_l_0(m, l, cache));
            const NumValue series = a0_series(m, l);
            const NumValue quad = quad_oracle({m, l, 0});
            EXPECT_TRUE(within_bounds(exact, series)) << "m=" << m << " l=" << l;
            EXPECT_NEAR(exact.value, quad.value, 1e-9) << "m=" << m << " l=" << l;
            EXPECT_NEAR(series.value, quad.value, 1e-9) << "m=" << m << " l=" << l;
            EXPECT_GT(exact.value, 0.0);
        }
    }
}

TEST(Triangulation, CompanionSeriesMatchesExact) {
    CoeffCache cache;
    for (int m = -1; m <= 5; ++m) {
        for (int l = 1; l <= 6; ++l) {
            const NumValue exact = eval_sym(b_ml(m, l, cache));
            const NumValue series = b_series(m, l);
            EXPECT_TRUE(within_bounds(exact, series))
                << "m=" << m << " l=" << l << " diff=" << exact.value - series.value
                << " bounds=" << exact.error_bound << "+" << series.error_bound;
        }
    }
}

TEST(Signs, LogSineConstantsPositive) {
    const NumericEnv env;
    for (int l = 2; l <= 12; ++l) EXPECT_GT(a0_atom_hp(l, env).value, 0) << l;
}

TEST(NumericEnv, RejectsBadSettings) {
    NumericEnv env;
    env.tolerance = 0.0;
    EXPECT_THROW((void)a0_series(0, 1, env), std::invalid_argument);
    env = NumericEnv{};
    env.term_cap = 0;
    EXPECT_THROW((void)a0_series(0, 1, env), std::invalid_argument);
}
