#pragma once

// Exact expansion coefficients A_{m,l,n} of x^m (-log x)^l in shifted
// Chebyshev polynomials, and the companion integrals B_{m,l}.
//
// Recursion order (well-founded, so memoized recursion terminates):
//   coefficient(m,l,n): n strictly decreases until n = 0.
//   A_{m,l,0}: l = 0, 1 and (m = 0, l >= 2) are closed forms; otherwise each
//     call depends only on (s < m, same l) or (l-1, l-2), so (l, m) decreases
//     lexicographically.
//   B_{m,l}: closed sum over A_{s,l,0}, no recursion on B itself.

#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "chebylog/exactnum.hpp"

namespace chebylog {

/// Raised for B_{m,0}, whose defining integral has a pole at x = 1.
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct CoeffKey {
    int m = 0;
    int l = 0;
    int n = 0;
    friend auto operator<=>(const CoeffKey&, const CoeffKey&) = default;
};

struct CompanionKey {
    int m = -1;
    int l = 1;
    friend auto operator<=>(const CompanionKey&, const CompanionKey&) = default;
};

/// Memo table for A and B values. Safe for concurrent use: lookups take a
/// shared lock, inserts keep the first value stored for a key (all
/// computations of one key produce the same value).
class CoeffCache {
public:
    explicit CoeffCache(bool memoize = true) : memoize_(memoize) {}

    CoeffCache(const CoeffCache&) = delete;
    CoeffCache& operator=(const CoeffCache&) = delete;

    [[nodiscard]] bool memoizing() const noexcept { return memoize_; }

    [[nodiscard]] std::optional<SymValue> find(const CoeffKey& key) const {
        return lookup(a_values_, key);
    }
    [[nodiscard]] std::optional<SymValue> find(const CompanionKey& key) const {
        return lookup(b_values_, key);
    }

    SymValue insert(const CoeffKey& key, SymValue value) { return store(a_values_, key, std::move(value)); }
    SymValue insert(const CompanionKey& key, SymValue value) { return store(b_values_, key, std::move(value)); }

    [[nodiscard]] std::size_t size() const {
        std::shared_lock lock(mutex_);
        return a_values_.size() + b_values_.size();
    }

private:
    template <class Map, class Key>
    std::optional<SymValue> lookup(const Map& map, const Key& key) const {
        if (!memoize_) return std::nullopt;
        std::shared_lock lock(mutex_);
        auto it = map.find(key);
        if (it == map.end()) return std::nullopt;
        return it->second;
    }

    template <class Map, class Key>
    SymValue store(Map& map, const Key& key, SymValue value) {
        if (!memoize_) return value;
        std::unique_lock lock(mutex_);
        return map.try_emplace(key, std::move(value)).first->second;
    }

    bool memoize_;
    mutable std::shared_mutex mutex_;
    std::map<CoeffKey, SymValue> a_values_;
    std::map<CompanionKey, SymValue> b_values_;
};

namespace detail {

inline void require_nonnegative(int v, const char* what) {
    if (v < 0) {
        throw std::domain_error(std::string(what) + " must be >= 0, got " + std::to_string(v));
    }
}

/// (2m-1)!! / (2^{m-1} m!)
[[nodiscard]] inline Rational l0_prefactor(int m) {
    BigInt den = BigInt(1) << m;
    for (int k = 2; k <= m; ++k) den *= k;
    return Rational(2 * double_factorial(2 * m - 1), den);
}

}  // namespace detail

/// A_{m,0,0} = (2m-1)!! / (2^{m-1} m!), a pure rational.
[[nodiscard]] inline SymValue a_l0(int m) {
    detail::require_nonnegative(m, "a_l0: m");
    return SymValue(detail::l0_prefactor(m));
}

/// A_{m,1,0} = -(2m-1)!!/(2^{m-1} m!) * [sum_{i<m} 1/((i+1)(2i+1)) - 2 log 2].
[[nodiscard]] inline SymValue a_l1(int m) {
    detail::require_nonnegative(m, "a_l1: m");
    Rational harmonic = 0;
    for (int i = 0; i < m; ++i) harmonic += Rational(1, (i + 1) * (2 * i + 1));
    Rational pre = detail::l0_prefactor(m);
    return SymValue(-pre * harmonic) + SymValue(2 * pre, ConstAtom::log2());
}

/// A_{m,l,0}: closed forms for l <= 1, the atom A0[l] for m = 0, and the
/// partial-integration recurrence in m otherwise.
[[nodiscard]] inline SymValue a_m_l_0(int m, int l, CoeffCache& cache) {
    detail::require_nonnegative(m, "a_m_l_0: m");
    detail::require_nonnegative(l, "a_m_l_0: l");
    if (l == 0) return a_l0(m);
    if (l == 1) return a_l1(m);
    if (m == 0) return SymValue(1, ConstAtom::a0(l));

    const CoeffKey key{m, l, 0};
    if (auto hit = cache.find(key)) return *hit;

    // 2m A_{m,l,0} = sum_{s<m} A_{s,l,0} + 2(l-2m) A_{m,l-1,0} - 2l A_{0,l-1,0}
    //              + 2 sum_{s<m} A_{s,l-1,0} + 4(l-1) [A_{m,l-2,0} - A_{0,l-2,0}]
    SymValue rhs;
    for (int s = 0; s < m; ++s) {
        rhs += a_m_l_0(s, l, cache);
        rhs += Rational(2) * a_m_l_0(s, l - 1, cache);
    }
    rhs += Rational(2 * (l - 2 * m)) * a_m_l_0(m, l - 1, cache);
    rhs -= Rational(2 * l) * a_m_l_0(0, l - 1, cache);
    rhs += Rational(4 * (l - 1)) * (a_m_l_0(m, l - 2, cache) - a_m_l_0(0, l - 2, cache));
    rhs *= Rational(1, 2 * m);
    return cache.insert(key, std::move(rhs));
}

/// Companion integral B_{m,l} = -sum_{s=0}^{m} A_{s,l,0} + 2l A_{0,l-1,0},
/// with B_{-1,l} = 2l A_{0,l-1,0}.
[[nodiscard]] inline SymValue b_ml(int m, int l, CoeffCache& cache) {
    if (l == 0) throw DivergenceError("b_ml: B_{m,0} diverges (pole at x = 1)");
    if (l < 0) throw std::domain_error("b_ml: l must be >= 1, got " + std::to_string(l));
    if (m < -1) throw std::domain_error("b_ml: m must be >= -1, got " + std::to_string(m));

    const CompanionKey key{m, l};
    if (auto hit = cache.find(key)) return *hit;

    SymValue value = Rational(2 * l) * a_m_l_0(0, l - 1, cache);
    for (int s = 0; s <= m; ++s) value -= a_m_l_0(s, l, cache);
    return cache.insert(key, std::move(value));
}

/// A_{m,l,n}, reducing n through the shifted-Chebyshev three-term recurrence:
///   A_{m,l,1} = 2 A_{m+1,l,0} - A_{m,l,0}
///   A_{m,l,n} = 4 A_{m+1,l,n-1} - 2 A_{m,l,n-1} - A_{m,l,n-2}   (n >= 2)
/// Touches keys with first index up to m + n.
[[nodiscard]] inline SymValue coefficient(const CoeffKey& key, CoeffCache& cache) {
    detail::require_nonnegative(key.m, "coefficient: m");
    detail::require_nonnegative(key.l, "coefficient: l");
    detail::require_nonnegative(key.n, "coefficient: n");
    const auto [m, l, n] = key;
    if (n == 0) return a_m_l_0(m, l, cache);

    if (auto hit = cache.find(key)) return *hit;

    SymValue value;
    if (n == 1) {
        value = Rational(2) * a_m_l_0(m + 1, l, cache) - a_m_l_0(m, l, cache);
    } else {
        value = Rational(4) * coefficient({m + 1, l, n - 1}, cache);
        value -= Rational(2) * coefficient({m, l, n - 1}, cache);
        value -= coefficient({m, l, n - 2}, cache);
    }
    return cache.insert(key, std::move(value));
}

[[nodiscard]] inline SymValue coefficient(const CoeffKey& key) {
    CoeffCache cache;
    return coefficient(key, cache);
}

}  // namespace chebylog
