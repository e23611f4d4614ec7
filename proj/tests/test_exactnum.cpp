#include <random>

#include <gtest/gtest.h>

#include "chebylog/exactnum.hpp"

using chebylog::BigInt;
using chebylog::ConstAtom;
using chebylog::Rational;
using chebylog::SymValue;

namespace {

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> num(-1'000'000'007LL, 1'000'000'007LL);
    std::uniform_int_distribution<long long> den(1, 1'000'003LL);
    return Rational(num(rng), den(rng));
}

SymValue random_sym(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(0, 5);
    std::uniform_int_distribution<int> atom(0, 7);
    SymValue v;
    for (int i = count(rng); i > 0; --i) {
        const int a = atom(rng);
        const ConstAtom c = a == 0 ? ConstAtom::one() : a == 1 ? ConstAtom::log2() : ConstAtom::a0(a);
        v += SymValue(random_rational(rng), c);
    }
    return v;
}

}  // namespace

TEST(DoubleFactorial, SmallValues) {
    EXPECT_EQ(chebylog::double_factorial(-1), 1);
    EXPECT_EQ(chebylog::double_factorial(0), 1);
    EXPECT_EQ(chebylog::double_factorial(1), 1);
    EXPECT_EQ(chebylog::double_factorial(5), 15);
    EXPECT_EQ(chebylog::double_factorial(6), 48);
}

TEST(DoubleFactorial, LargeValueNeedsBigIntegers) {
    // 41!! = 13113070457687988603440625
    EXPECT_EQ(chebylog::double_factorial(41), BigInt("13113070457687988603440625"));
}

TEST(DoubleFactorial, RejectsBelowMinusOne) {
    EXPECT_THROW((void)chebylog::double_factorial(-2), std::domain_error);
}

TEST(ConstAtom, OrderAndConstruction) {
    EXPECT_LT(ConstAtom::one(), ConstAtom::log2());
    EXPECT_LT(ConstAtom::log2(), ConstAtom::a0(2));
    EXPECT_LT(ConstAtom::a0(2), ConstAtom::a0(3));
    EXPECT_THROW((void)ConstAtom::a0(1), std::domain_error);
    EXPECT_THROW((void)ConstAtom::a0(0), std::domain_error);
}

TEST(SymValue, AddExamples) {
    const SymValue two(2);
    const SymValue b = SymValue(-1) + SymValue(1, ConstAtom::log2());
    EXPECT_EQ(chebylog::sym_add(two, b), SymValue(1) + SymValue(1, ConstAtom::log2()));
    EXPECT_EQ(chebylog::sym_add(b, SymValue{}), b);

    const SymValue c = SymValue(Rational(-7, 8)) + SymValue(Rational(3, 2), ConstAtom::log2());
    const SymValue sum = chebylog::sym_add(c, SymValue(Rational(7, 8)));
    EXPECT_EQ(sum, SymValue(Rational(3, 2), ConstAtom::log2()));
    EXPECT_EQ(sum.terms().size(), 1u);
}

TEST(SymValue, ScaleExamples) {
    EXPECT_EQ(chebylog::sym_scale(2, SymValue(2)), SymValue(4));
    EXPECT_TRUE(chebylog::sym_scale(0, SymValue(3) + SymValue(5, ConstAtom::a0(4))).is_zero());
    EXPECT_EQ(chebylog::sym_scale(Rational(1, 2), SymValue(4, ConstAtom::log2())),
              SymValue(2, ConstAtom::log2()));
}

TEST(SymValue, CanonicalString) {
    const SymValue v = SymValue(Rational(-7, 8)) + SymValue(Rational(3, 2), ConstAtom::log2());
    EXPECT_EQ(chebylog::to_string(v), "-7/8*1 + 3/2*log2");
    EXPECT_EQ(chebylog::to_string(SymValue(2)), "2/1*1");
    EXPECT_EQ(chebylog::to_string(SymValue{}), "0");
    const SymValue w = SymValue(Rational(5, 16), ConstAtom::a0(3)) + SymValue(Rational(-37, 32), ConstAtom::a0(2));
    EXPECT_EQ(chebylog::to_string(w), "-37/32*A0[2] + 5/16*A0[3]");
}

TEST(SymValue, ParserRejectsNonCanonicalInput) {
    EXPECT_THROW((void)chebylog::parse_sym_value("2/4*1"), std::invalid_argument);
    EXPECT_THROW((void)chebylog::parse_sym_value("1/2*log2 + 1/1*1"), std::invalid_argument);
    EXPECT_THROW((void)chebylog::parse_sym_value("0/1*1"), std::invalid_argument);
    EXPECT_THROW((void)chebylog::parse_sym_value("1/2*pi"), std::invalid_argument);
    EXPECT_THROW((void)chebylog::parse_sym_value("1/2*A0[1]"), std::domain_error);
    EXPECT_THROW((void)chebylog::parse_sym_value("1/-2*1"), std::invalid_argument);
    EXPECT_THROW((void)chebylog::parse_sym_value(""), std::invalid_argument);
}

TEST(SymValueProperty, StringRoundTrip) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const SymValue v = random_sym(rng);
        EXPECT_EQ(chebylog::parse_sym_value(chebylog::to_string(v)), v);
    }
}

TEST(RationalProperty, FieldAxioms) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + (-a), 0);
        if (a != 0) {
            EXPECT_EQ(a * (1 / a), 1);
        }
        // canonical form: reduced with positive denominator
        const Rational q = a * b;
        EXPECT_GT(boost::multiprecision::denominator(q), 0);
        EXPECT_EQ(gcd(boost::multiprecision::numerator(q), boost::multiprecision::denominator(q)), 1);
    }
}

TEST(SymValueProperty, ModuleOverRationals) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; ++trial) {
        const Rational q = random_rational(rng), r = random_rational(rng);
        const SymValue a = random_sym(rng), b = random_sym(rng);
        EXPECT_EQ(chebylog::sym_scale(q, chebylog::sym_add(a, b)),
                  chebylog::sym_add(chebylog::sym_scale(q, a), chebylog::sym_scale(q, b)));
        EXPECT_EQ(chebylog::sym_scale(q + r, a), chebylog::sym_scale(q, a) + chebylog::sym_scale(r, a));
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(SymValueProperty, NoZeroCoefficientsAreStored) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const SymValue a = random_sym(rng), b = random_sym(rng);
        for (const SymValue& v : {a + b, a - b, chebylog::sym_scale(random_rational(rng), a)}) {
            for (const auto& [atom, q] : v.terms()) EXPECT_NE(q, 0);
            // re-canonicalising changes nothing
            EXPECT_EQ(v + SymValue{}, v);
            EXPECT_EQ(chebylog::parse_sym_value(chebylog::to_string(v)), v);
        }
    }
}
