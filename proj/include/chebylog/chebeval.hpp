#pragma once

// Shifted Chebyshev polynomials T*_n(x) = T_n(2x - 1) on [0, 1]: evaluation,
// primed-sum Clenshaw evaluation of truncated series, and exact conversion
// matrices between the T* and monomial bases.

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebylog/exactnum.hpp"

namespace chebylog {

namespace detail {

inline void require_unit_interval(double x, const char* who) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error(std::string(who) + ": x must lie in [0, 1], got " + std::to_string(x));
    }
}

}  // namespace detail

/// T*_n(x) by T*_{n+1} = [(4 - 2d) x - 2 + d] T*_n - T*_{n-1}, d = [n == 0],
/// starting from T*_0 = 1, T*_{-1} = 0.
[[nodiscard]] inline double tstar(int n, double x) {
    if (n < 0) throw std::domain_error("tstar: n must be >= 0, got " + std::to_string(n));
    detail::require_unit_interval(x, "tstar");
    double prev = 0.0;
    double cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double d = k == 0 ? 1.0 : 0.0;
        const double next = ((4.0 - 2.0 * d) * x - 2.0 + d) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Truncated series sum'_{n=0}^{N} a_n T*_n(x); the a_0 term counts half.
class ChebSeries {
public:
    explicit ChebSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("ChebSeries: need at least one coefficient");
        for (double c : coeffs_) {
            if (!std::isfinite(c)) throw std::invalid_argument("ChebSeries: non-finite coefficient");
        }
    }

    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] std::size_t degree() const noexcept { return coeffs_.size() - 1; }

private:
    std::vector<double> coeffs_;
};

/// Backward Clenshaw recursion in y = 2x - 1:
///   b_k = a_k + 2y b_{k+1} - b_{k+2},  sum' = (b_0 - b_2) / 2.
[[nodiscard]] inline double clenshaw_primed(const ChebSeries& s, double x) {
    detail::require_unit_interval(x, "clenshaw_primed");
    const double two_y = 4.0 * x - 2.0;
    double b1 = 0.0;  // b_{k+1}
    double b2 = 0.0;  // b_{k+2}
    const auto a = s.coeffs();
    for (std::size_t k = a.size(); k-- > 1;) {
        const double b0 = a[k] + two_y * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    const double b0 = a[0] + two_y * b1 - b2;
    return 0.5 * (b0 - b2);
}

/// Lower-triangular exact change-of-basis matrix.
///   cheb_to_mono: row n holds the monomial coefficients of T*_n.
///   mono_to_cheb: row m holds the T* coefficients of x^m (plain, unprimed sum).
struct BasisMatrix {
    enum class Direction { cheb_to_mono, mono_to_cheb };

    Direction direction;
    std::vector<std::vector<Rational>> entries;  // square, (N+1) x (N+1)

    [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
    [[nodiscard]] const Rational& operator()(std::size_t row, std::size_t col) const {
        return entries.at(row).at(col);
    }
    [[nodiscard]] std::span<const Rational> row(std::size_t r) const {
        return std::span<const Rational>(entries.at(r)).first(r + 1);
    }
};

/// Generated from the three-term recurrence (never tabulated).
[[nodiscard]] inline BasisMatrix cheb_to_mono(int N) {
    if (N < 0) throw std::domain_error("cheb_to_mono: N must be >= 0");
    const auto size = static_cast<std::size_t>(N) + 1;
    BasisMatrix out{BasisMatrix::Direction::cheb_to_mono,
                    std::vector<std::vector<Rational>>(size, std::vector<Rational>(size))};
    auto& t = out.entries;
    t[0][0] = 1;
    if (N >= 1) {
        t[1][0] = -1;
        t[1][1] = 2;
    }
    for (std::size_t n = 1; n + 1 < size; ++n) {
        // T*_{n+1} = (4x - 2) T*_n - T*_{n-1}
        for (std::size_t j = 0; j <= n + 1; ++j) {
            Rational v = -t[n - 1][j];
            v -= 2 * t[n][j];
            if (j >= 1) v += 4 * t[n][j - 1];
            t[n + 1][j] = v;
        }
    }
    return out;
}

/// Exact inverse of cheb_to_mono(N) by forward substitution.
[[nodiscard]] inline BasisMatrix mono_to_cheb(int N) {
    const BasisMatrix lower = cheb_to_mono(N);
    const std::size_t size = lower.size();
    BasisMatrix out{BasisMatrix::Direction::mono_to_cheb,
                    std::vector<std::vector<Rational>>(size, std::vector<Rational>(size))};
    // row i of the inverse: M[i][j] for j <= i, from sum_k L[i][k] M[k][j] = delta_ij
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Rational acc = i == j ? Rational(1) : Rational(0);
            for (std::size_t k = j; k < i; ++k) acc -= lower(i, k) * out.entries[k][j];
            out.entries[i][j] = acc / lower(i, i);
        }
    }
    return out;
}

[[nodiscard]] inline std::vector<std::vector<Rational>> multiply(const BasisMatrix& a, const BasisMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("multiply: size mismatch");
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> c(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Rational acc = 0;
            for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
            c[i][j] = acc;
        }
    }
    return c;
}

}  // namespace chebylog
