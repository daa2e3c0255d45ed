// Copyright 2026 The spinchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "spinchar/combinatorics.hpp"

using namespace spinchar;

namespace {

// Euler's pentagonal recursion, kept separate from the library's DP.
std::vector<BigInt> pentagonal_counts(int limit) {
    std::vector<BigInt> p(static_cast<std::size_t>(limit) + 1, 0);
    p[0] = 1;
    for (int n = 1; n <= limit; ++n) {
        BigInt total = 0;
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2;
            const int g2 = k * (3 * k + 1) / 2;
            if (g1 > n) {
                break;
            }
            const int sign = k % 2 == 1 ? 1 : -1;
            total += sign * p[static_cast<std::size_t>(n - g1)];
            if (g2 <= n) {
                total += sign * p[static_cast<std::size_t>(n - g2)];
            }
        }
        p[static_cast<std::size_t>(n)] = total;
    }
    return p;
}

}  // namespace

TEST(Partition, ParseCanonicalizes) {
    EXPECT_EQ(Partition::parse("3,1,1").parts(), (std::vector<int>{3, 1, 1}));
    EXPECT_EQ(Partition::parse(" 1, 3 ,1 ").parts(), (std::vector<int>{3, 1, 1}));
    EXPECT_EQ(Partition::parse("5").to_string(), "5");
    for (const char* bad : {"", "3,,1", "a", "3,1,", "0,1", "-2", "1.5"}) {
        EXPECT_THROW(Partition::parse(bad), InvalidArgument) << bad;
    }
}

TEST(Partition, IndexingPastEndIsZero) {
    const Partition p{2, 1};
    EXPECT_EQ(p[0], 2);
    EXPECT_EQ(p[1], 1);
    EXPECT_EQ(p[5], 0);
    EXPECT_EQ(p.size(), 3);
    EXPECT_EQ(p.length(), 2U);
}

TEST(EnumeratePartitions, Examples) {
    EXPECT_EQ(enumerate_partitions(1), (std::vector<Partition>{Partition{1}}));
    const std::vector<Partition> four{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
    EXPECT_EQ(enumerate_partitions(4), four);
    EXPECT_EQ(enumerate_partitions(10).size(), 42U);
}

TEST(EnumeratePartitions, RejectsOutOfRange) {
    EXPECT_THROW(enumerate_partitions(0), InvalidArgument);
    EXPECT_THROW(enumerate_partitions(kPartitionEnumerationCap + 1), InvalidArgument);
}

TEST(EnumeratePartitions, CountMatchesPentagonalRecursion) {
    const auto p = pentagonal_counts(100);
    for (int n = 1; n <= 30; ++n) {
        const auto list = enumerate_partitions(n);
        EXPECT_EQ(BigInt(list.size()), p[static_cast<std::size_t>(n)]) << n;
        EXPECT_TRUE(std::is_sorted(list.begin(), list.end(), PartitionOrder{})) << n;
        for (const auto& lambda : list) {
            ASSERT_EQ(lambda.size(), n);
        }
    }
    for (int n = 0; n <= 100; ++n) {
        EXPECT_EQ(partition_count(n), p[static_cast<std::size_t>(n)]) << n;
    }
}

TEST(CycleMultiplicities, Examples) {
    EXPECT_EQ(cycle_multiplicities(Partition{2, 2}).counts, (std::map<int, int>{{2, 2}}));
    EXPECT_EQ(cycle_multiplicities(Partition{3, 1, 1}).counts, (std::map<int, int>{{1, 2}, {3, 1}}));
    EXPECT_EQ(cycle_multiplicities(Partition{5}).counts, (std::map<int, int>{{5, 1}}));
}

TEST(CycleMultiplicities, WeightedSumIsN) {
    for (int n = 1; n <= 20; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            int total = 0;
            for (auto [length, count] : cycle_multiplicities(nu).counts) {
                total += length * count;
            }
            EXPECT_EQ(total, n);
        }
    }
}

TEST(CentralizerSize, Examples) {
    for (int n = 1; n <= 12; ++n) {
        EXPECT_EQ(centralizer_size(one_column(n)), factorial(static_cast<unsigned>(n)));
        EXPECT_EQ(centralizer_size(one_row(n)), BigInt(n));
    }
    EXPECT_EQ(centralizer_size(Partition{2, 2}), BigInt(8));
}

TEST(CentralizerSize, ClassSizesPartitionTheGroup) {
    for (int n = 1; n <= 20; ++n) {
        BigInt total = 0;
        for (const auto& nu : enumerate_partitions(n)) {
            EXPECT_EQ(factorial(static_cast<unsigned>(n)) % centralizer_size(nu), 0);
            total += class_size(nu);
        }
        EXPECT_EQ(total, factorial(static_cast<unsigned>(n))) << n;
    }
}

TEST(HookLengthDimension, Examples) {
    for (int n = 1; n <= 10; ++n) {
        EXPECT_EQ(hook_length_dimension(one_row(n)), 1);
    }
    EXPECT_EQ(hook_length_dimension(Partition{2, 1}), 2);
    EXPECT_EQ(hook_length_dimension(Partition{2, 2}), 2);
}

TEST(HookLengthDimension, PlancherelSum) {
    for (int n = 1; n <= 20; ++n) {
        BigInt total = 0;
        for (const auto& lambda : enumerate_partitions(n)) {
            const BigInt d = hook_length_dimension(lambda);
            total += d * d;
        }
        EXPECT_EQ(total, factorial(static_cast<unsigned>(n))) << n;
    }
}

TEST(Conjugate, TransposesDiagram) {
    EXPECT_EQ(conjugate(Partition{3, 1}), (Partition{2, 1, 1}));
    EXPECT_EQ(conjugate(Partition{2, 2}), (Partition{2, 2}));
    for (const auto& lambda : enumerate_partitions(9)) {
        EXPECT_EQ(conjugate(conjugate(lambda)), lambda);
        EXPECT_EQ(hook_length_dimension(conjugate(lambda)), hook_length_dimension(lambda));
    }
}

TEST(Dominates, PartialOrder) {
    EXPECT_TRUE(dominates(Partition{3}, Partition{2, 1}));
    EXPECT_TRUE(dominates(Partition{2, 1}, Partition{2, 1}));
    EXPECT_FALSE(dominates(Partition{1, 1, 1}, Partition{2, 1}));
    EXPECT_FALSE(dominates(Partition{3, 1, 1, 1}, Partition{2, 2, 2}));
    EXPECT_FALSE(dominates(Partition{2, 2, 2}, Partition{3, 1, 1, 1}));
}

TEST(EncodeOccupation, Examples) {
    EXPECT_EQ(encode_occupation(Partition(), 3).to_string(), "111000");
    EXPECT_EQ(encode_occupation(Partition{2}, 2).to_string(), "1001");
    EXPECT_EQ(encode_occupation(Partition{1, 1}, 2).to_string(), "0110");
    EXPECT_THROW(encode_occupation(Partition{2}, 3), InvalidArgument);
}

TEST(DecodeOccupation, Examples) {
    EXPECT_TRUE(decode_occupation(OccupationString::parse("111000")).empty());
    EXPECT_EQ(decode_occupation(OccupationString::parse("1001")), (Partition{2}));
    EXPECT_EQ(decode_occupation(OccupationString::parse("0110")), (Partition{1, 1}));
    EXPECT_THROW(decode_occupation(OccupationString::parse("1101")), InvalidArgument);
}

TEST(EncodeOccupation, RoundTrip) {
    for (int n = 1; n <= 20; ++n) {
        for (const auto& lambda : enumerate_partitions(n)) {
            const OccupationString x = encode_occupation(lambda, n);
            ASSERT_EQ(x.size(), static_cast<std::size_t>(2 * n));
            ASSERT_EQ(x.weight(), n);
            ASSERT_EQ(decode_occupation(x), lambda);
        }
    }
}

TEST(OccupationString, IndexRoundTrip) {
    const auto x = OccupationString::parse("100110");
    EXPECT_EQ(x.to_index(), 0b100110U);
    EXPECT_EQ(OccupationString::from_index(0b100110U, 6), x);
    EXPECT_EQ(x[0], 1);
    EXPECT_EQ(x[1], 0);
    EXPECT_THROW(OccupationString::parse("10a"), InvalidArgument);
}

TEST(PermutationSign, Examples) {
    EXPECT_EQ(permutation_sign(Partition{1, 1, 1}), 1);
    EXPECT_EQ(permutation_sign(Partition{2, 1}), -1);
    EXPECT_EQ(permutation_sign(Partition{3}), 1);
}
