#pragma once

// Exact arithmetic layer: big rationals, double factorials and rational
// linear combinations over the constant basis {1, log 2, A0[l] (l >= 2)}.

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace chebylog {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// u!! = u (u-2) (u-4) ... down to 2 or 1. (-1)!! = 0!! = 1.
[[nodiscard]] inline BigInt double_factorial(std::int64_t u) {
    if (u < -1) {
        throw std::domain_error("double_factorial: argument must be >= -1, got " +
                                std::to_string(u));
    }
    BigInt result = 1;
    for (std::int64_t k = u; k > 1; k -= 2) result *= k;
    return result;
}

/// One member of the constant basis. A0[l] stands for A_{0,l,0}; it is only
/// constructible for l >= 2 because A_{0,0,0} = 2 and A_{0,1,0} = 4 log 2.
class ConstAtom {
public:
    enum class Kind : std::uint8_t { one, log2, a0 };

    [[nodiscard]] static constexpr ConstAtom one() noexcept { return ConstAtom(Kind::one, 0); }
    [[nodiscard]] static constexpr ConstAtom log2() noexcept { return ConstAtom(Kind::log2, 0); }
    [[nodiscard]] static ConstAtom a0(int l) {
        if (l < 2) {
            throw std::domain_error("ConstAtom::a0: index must be >= 2, got " + std::to_string(l));
        }
        return ConstAtom(Kind::a0, l);
    }

    [[nodiscard]] constexpr Kind kind() const noexcept { return kind_; }
    /// Logarithm power of an A0 atom; 0 otherwise.
    [[nodiscard]] constexpr int log_power() const noexcept { return l_; }

    // ONE < LOG2 < A0[2] < A0[3] < ...
    [[nodiscard]] constexpr int rank() const noexcept {
        switch (kind_) {
            case Kind::one: return 0;
            case Kind::log2: return 1;
            case Kind::a0: return l_;
        }
        return -1;
    }

    [[nodiscard]] friend constexpr bool operator==(ConstAtom a, ConstAtom b) noexcept {
        return a.rank() == b.rank();
    }
    [[nodiscard]] friend constexpr std::strong_ordering operator<=>(ConstAtom a, ConstAtom b) noexcept {
        return a.rank() <=> b.rank();
    }

    [[nodiscard]] std::string to_string() const {
        switch (kind_) {
            case Kind::one: return "1";
            case Kind::log2: return "log2";
            case Kind::a0: return "A0[" + std::to_string(l_) + "]";
        }
        return {};
    }

private:
    constexpr ConstAtom(Kind kind, int l) noexcept : kind_(kind), l_(l) {}

    Kind kind_;
    int l_;
};

/// Finite rational linear combination of ConstAtoms, kept canonical:
/// no stored coefficient is zero, so structural equality is value equality.
class SymValue {
public:
    using TermMap = std::map<ConstAtom, Rational>;

    SymValue() = default;
    explicit SymValue(const Rational& q, ConstAtom atom = ConstAtom::one()) {
        if (q != 0) terms_.emplace(atom, q);
    }

    [[nodiscard]] const TermMap& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    [[nodiscard]] Rational coefficient(ConstAtom atom) const {
        auto it = terms_.find(atom);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// True if only atoms of rank < limit appear (e.g. limit 1: pure rational).
    [[nodiscard]] bool atoms_below(int limit) const noexcept {
        return terms_.empty() || terms_.rbegin()->first.rank() < limit;
    }

    SymValue& operator+=(const SymValue& other) {
        for (const auto& [atom, q] : other.terms_) {
            auto [it, inserted] = terms_.try_emplace(atom, q);
            if (!inserted) {
                it->second += q;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    SymValue& operator-=(const SymValue& other) { return *this += -other; }

    SymValue& operator*=(const Rational& q) {
        if (q == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [atom, c] : terms_) c *= q;
        return *this;
    }

    [[nodiscard]] SymValue operator-() const {
        SymValue r = *this;
        for (auto& [atom, c] : r.terms_) c = -c;
        return r;
    }

    [[nodiscard]] friend SymValue operator+(SymValue a, const SymValue& b) { return a += b; }
    [[nodiscard]] friend SymValue operator-(SymValue a, const SymValue& b) { return a -= b; }
    [[nodiscard]] friend SymValue operator*(const Rational& q, SymValue a) { return a *= q; }
    [[nodiscard]] friend SymValue operator*(SymValue a, const Rational& q) { return a *= q; }

    [[nodiscard]] friend bool operator==(const SymValue& a, const SymValue& b) {
        return a.terms_ == b.terms_;
    }

private:
    TermMap terms_;
};

[[nodiscard]] inline SymValue sym_add(const SymValue& a, const SymValue& b) { return a + b; }
[[nodiscard]] inline SymValue sym_scale(const Rational& q, const SymValue& a) { return q * a; }

[[nodiscard]] inline std::string to_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

/// Canonical text form: `<num>/<den>*<atom>` terms in atom order joined by
/// " + ", e.g. `-7/8*1 + 3/2*log2`. The empty combination renders as `0`.
[[nodiscard]] inline std::string to_string(const SymValue& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [atom, q] : v.terms()) {
        if (!out.empty()) out += " + ";
        out += to_string(q);
        out += '*';
        out += atom.to_string();
    }
    return out;
}

namespace detail {

[[nodiscard]] inline BigInt parse_bigint(std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && s[0] == '-') i = 1;
    if (i == s.size()) throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') {
            throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
        }
    }
    return BigInt(std::string(s));
}

[[nodiscard]] inline ConstAtom parse_atom(std::string_view s) {
    if (s == "1") return ConstAtom::one();
    if (s == "log2") return ConstAtom::log2();
    if (s.size() > 4 && s.substr(0, 3) == "A0[" && s.back() == ']') {
        auto digits = s.substr(3, s.size() - 4);
        BigInt l = parse_bigint(digits, false);
        if (l > 1'000'000) throw std::invalid_argument("atom index out of range");
        return ConstAtom::a0(l.convert_to<int>());
    }
    throw std::invalid_argument("unknown constant atom: '" + std::string(s) + "'");
}

}  // namespace detail

/// Inverse of to_string(SymValue). Only accepts canonical strings: reduced
/// fractions, strictly increasing atoms, no zero coefficients.
[[nodiscard]] inline SymValue parse_sym_value(std::string_view text) {
    if (text == "0") return {};
    SymValue result;
    int last_rank = -1;
    std::size_t pos = 0;
    while (true) {
        std::size_t sep = text.find(" + ", pos);
        std::string_view term = text.substr(pos, sep == std::string_view::npos ? sep : sep - pos);

        std::size_t slash = term.find('/');
        std::size_t star = term.find('*');
        if (slash == std::string_view::npos || star == std::string_view::npos || star < slash) {
            throw std::invalid_argument("malformed term: '" + std::string(term) + "'");
        }
        BigInt num = detail::parse_bigint(term.substr(0, slash), true);
        BigInt den = detail::parse_bigint(term.substr(slash + 1, star - slash - 1), false);
        ConstAtom atom = detail::parse_atom(term.substr(star + 1));

        if (num == 0 || den == 0 || gcd(num, den) != 1 || atom.rank() <= last_rank) {
            throw std::invalid_argument("non-canonical term: '" + std::string(term) + "'");
        }
        last_rank = atom.rank();
        result += SymValue(Rational(num, den), atom);

        if (sep == std::string_view::npos) break;
        pos = sep + 3;
    }
    return result;
}

}  // namespace chebylog
