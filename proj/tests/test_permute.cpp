#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "frct/permute.hpp"

// Golden values below were produced by a separate Python implementation of
// SplitMix64 and the top-down Fisher-Yates shuffle.

TEST(SplitMix64, GoldenFirstOutputs) {
    EXPECT_EQ(frct::SplitMix64(0).next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(frct::SplitMix64(1).next(), 0x910A2DEC89025CC1ULL);
    EXPECT_EQ(frct::SplitMix64(2).next(), 0x975835DE1C9756CEULL);
}

TEST(SplitMix64, PureStepMatchesGenerator) {
    auto step = frct::keystream_next(0);
    EXPECT_EQ(step.value, 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(step.next_state, 0x9E3779B97F4A7C15ULL);
    frct::SplitMix64 rng(0);
    rng.next();
    EXPECT_EQ(frct::keystream_next(step.next_state).value, rng.next());
}

TEST(SplitMix64, SameSeedSameStream) {
    frct::SplitMix64 a(12345), b(12345);
    for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(GenPermutation, GoldenVectors) {
    auto mapping = [](const frct::Permutation& p) {
        return std::vector<std::size_t>(p.mapping().begin(), p.mapping().end());
    };
    EXPECT_EQ(mapping(frct::gen_permutation(0, 4)), (std::vector<std::size_t>{2, 1, 0, 3}));
    EXPECT_EQ(mapping(frct::gen_permutation(0, 8)), (std::vector<std::size_t>{2, 5, 0, 3, 4, 6, 1, 7}));
    EXPECT_EQ(mapping(frct::gen_permutation(12345, 10)),
              (std::vector<std::size_t>{8, 6, 7, 2, 1, 3, 9, 5, 0, 4}));
}

TEST(GenPermutation, SingleElement) {
    EXPECT_EQ(frct::gen_permutation(99, 1), frct::Permutation::identity(1));
}

TEST(GenPermutation, ZeroLengthRejected) {
    EXPECT_THROW(frct::gen_permutation(0, 0), frct::PreconditionError);
}

TEST(GenPermutation, AlwaysBijective) {
    std::mt19937_64 rng(5);
    for (std::size_t n = 1; n <= 4096; n += 1 + n / 8) {
        const auto p = frct::gen_permutation(rng(), n);
        std::vector<std::size_t> sorted(p.mapping().begin(), p.mapping().end());
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> iota(n);
        std::iota(iota.begin(), iota.end(), std::size_t{0});
        ASSERT_EQ(sorted, iota) << "n=" << n;
    }
}

TEST(GenPermutation, DistinctSeedsDistinctPermutations) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t s1 = rng(), s2 = rng();
        EXPECT_NE(frct::gen_permutation(s1, 16), frct::gen_permutation(s2, 16));
    }
}

TEST(Permutation, ConstructorRejectsNonBijection) {
    EXPECT_THROW(frct::Permutation({0, 0, 1}), frct::PreconditionError);
    EXPECT_THROW(frct::Permutation({0, 3}), frct::PreconditionError);
    EXPECT_NO_THROW(frct::Permutation({2, 0, 1}));
}

TEST(ApplyPermutation, DirectIndexing) {
    const frct::Permutation p({2, 0, 1});
    const std::vector<std::string> data{"a", "b", "c"};
    EXPECT_EQ(frct::apply_permutation(data, p), (std::vector<std::string>{"c", "a", "b"}));
    EXPECT_EQ(frct::invert_permutation(std::vector<std::string>{"c", "a", "b"}, p), data);
}

TEST(ApplyPermutation, IdentityLeavesDataUnchanged) {
    const std::vector<int> data{5, 4, 3, 2, 1};
    const auto id = frct::Permutation::identity(5);
    EXPECT_EQ(frct::apply_permutation(data, id), data);
    EXPECT_EQ(frct::invert_permutation(data, id), data);
}

TEST(ApplyPermutation, LengthMismatchRejected) {
    const std::vector<int> data{1, 2};
    EXPECT_THROW(frct::apply_permutation(data, frct::Permutation::identity(3)), frct::PreconditionError);
    EXPECT_THROW(frct::invert_permutation(data, frct::Permutation::identity(1)), frct::PreconditionError);
}

TEST(ApplyPermutation, RoundTripsBothWays) {
    std::mt19937_64 rng(8);
    for (std::size_t n : {1u, 2u, 17u, 1000u, 10000u}) {
        std::vector<std::uint64_t> data(n);
        for (auto& v : data) v = rng();
        const auto p = frct::gen_permutation(rng(), n);
        EXPECT_EQ(frct::invert_permutation(frct::apply_permutation(data, p), p), data);
        EXPECT_EQ(frct::apply_permutation(frct::invert_permutation(data, p), p), data);
        auto shuffled = frct::apply_permutation(data, p);
        std::multiset<std::uint64_t> before(data.begin(), data.end()), after(shuffled.begin(), shuffled.end());
        EXPECT_EQ(before, after);
    }
}
