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

#include <algorithm>
#include <random>

#include "spinchar/character_engine.hpp"
#include "spinchar/oracle.hpp"

using namespace spinchar;

namespace {

const TruncationPolicy kDefault{kDefaultCharacterEpsilon, std::nullopt};
const TruncationPolicy kExact{0.0, std::nullopt};

}  // namespace

TEST(BuildPsi, SingleHop) {
    const ChainState chain = build_psi(Partition{1}, 1, kExact);
    EXPECT_EQ(amplitude(chain.state, OccupationString::parse("01")), 1.0);
    EXPECT_EQ(amplitude(chain.state, OccupationString::parse("10")), 0.0);
}

TEST(BuildPsi, SingleCycleBond) {
    for (int n = 1; n <= 12; ++n) {
        EXPECT_LE(build_psi(one_row(n), n, kExact).max_bond_seen, static_cast<std::size_t>(n)) << n;
    }
}

TEST(BuildPsi, ProductBoundAtZeroEpsilon) {
    for (int n = 1; n <= 10; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            const ChainState chain = build_psi(nu, n, kExact);
            EXPECT_LE(BigInt(chain.max_bond_seen), character_bond_bound(nu)) << nu.to_string();
            EXPECT_EQ(chain.step_bonds.size(), nu.length());
        }
    }
}

TEST(BuildPsi, RejectsWrongSize) {
    EXPECT_THROW(build_psi(Partition{2, 1}, 4, kDefault), InvalidArgument);
    EXPECT_THROW(build_psi(Partition{2, 1}, 3, {-1.0, std::nullopt}), InvalidArgument);
}

TEST(BuildPsi, BondCapIsEnforced) {
    EXPECT_THROW(build_psi(Partition{2, 2, 1, 1}, 6, kExact, 1), ResourceLimit);
}

TEST(BuildPsi, NormIdentity) {
    for (int n = 1; n <= 9; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            EXPECT_LE(psi_norm_residual(build_psi(nu, n, kDefault).state, nu), 1e-6) << nu.to_string();
        }
    }
}

TEST(BuildPsi, DenseStateEquivalenceSmallN) {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            const Vector dense = dense_vector(build_psi(nu, n, kExact).state);
            Vector expected = Vector::Zero(dense.size());
            for (const auto& [x, value] : oracle::dense_psi(nu, n)) {
                expected(static_cast<Eigen::Index>(x.to_index())) = to_double(value);
            }
            EXPECT_LE((dense - expected).cwiseAbs().maxCoeff(), 1e-8) << nu.to_string();
        }
    }
}

TEST(BuildPsi, OrderIndependence) {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 8; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            if (nu.length() < 2) {
                continue;
            }
            std::vector<int> order = nu.parts();
            std::shuffle(order.begin(), order.end(), rng);
            const ChainState a = build_psi(nu, n, kDefault);
            const ChainState b = build_psi_in_order(order, n, kDefault);
            for (const auto& lambda : enumerate_partitions(n)) {
                const auto x = encode_occupation(lambda, n);
                const double ax = amplitude(a.state, x);
                const double bx = amplitude(b.state, x);
                EXPECT_NEAR(ax, bx, 1e-6) << nu.to_string();
                EXPECT_EQ(std::nearbyint(ax), std::nearbyint(bx));
            }
        }
    }
}

TEST(Character, Examples) {
    for (int n = 1; n <= 7; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            EXPECT_EQ(character(one_row(n), nu, n).value, 1);
        }
        if (n >= 2) {
            std::vector<int> transposition(static_cast<std::size_t>(n - 1), 1);
            transposition[0] = 2;
            EXPECT_EQ(character(one_column(n), Partition(transposition), n).value, -1);
        }
    }
    EXPECT_EQ(character(Partition{2, 1}, Partition{2, 1}, 3).value, 0);
    EXPECT_EQ(character(Partition{2, 1}, Partition{3}, 3).value, -1);
    EXPECT_EQ(character(Partition{2, 1}, Partition{1, 1, 1}, 3).value, 2);
}

TEST(Character, MatchesOracleUpToEight) {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            for (const auto& lambda : enumerate_partitions(n)) {
                const CharacterResult result = character(lambda, nu, n);
                EXPECT_FALSE(result.precision_flag);
                EXPECT_EQ(result.value, oracle::mn_character(lambda, nu)) << lambda.to_string() << " " << nu.to_string();
            }
        }
    }
}

TEST(CharacterRow, Examples) {
    const CharacterRow identity = character_row(Partition{1, 1, 1}, 3);
    ASSERT_EQ(identity.entries.size(), 3U);
    EXPECT_EQ(identity.entries.at(Partition{3}).value, 1);
    EXPECT_EQ(identity.entries.at(Partition{2, 1}).value, 2);
    EXPECT_EQ(identity.entries.at(Partition{1, 1, 1}).value, 1);
    EXPECT_TRUE(identity.certified());

    const CharacterRow row = character_row(Partition{2, 2}, 4);
    std::int64_t squares = 0;
    for (const auto& [lambda, result] : row.entries) {
        squares += result.value * result.value;
    }
    EXPECT_EQ(squares, 8);
    EXPECT_EQ(row.norm_residual, 0.0);
}

TEST(CharacterRow, ResidualsUpToEight) {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            const CharacterRow row = character_row(nu, n);
            EXPECT_LE(row.norm_residual, 1e-6);
            EXPECT_LE(row.mps_norm_residual, 1e-6);
            EXPECT_TRUE(row.certified()) << nu.to_string();
        }
    }
}

TEST(CharacterRow, TinyBondIsNotCertified) {
    const CharacterRow row = character_row(Partition{1, 1, 1, 1, 1, 1, 1, 1}, 8, {kDefaultCharacterEpsilon, std::size_t{1}});
    EXPECT_FALSE(row.certified());
}

TEST(CharacterTable, Examples) {
    const CharacterTable one = character_table(1);
    ASSERT_EQ(one.size(), 1U);
    EXPECT_EQ(one.begin()->second.entries.begin()->second.value, 1);

    const CharacterTable three = character_table(3);
    ASSERT_EQ(three.size(), 3U);
    for (const auto& [nu, row] : three) {
        ASSERT_EQ(row.entries.size(), 3U);
        for (const auto& [lambda, result] : row.entries) {
            EXPECT_EQ(result.value, oracle::mn_character(lambda, nu));
        }
    }

    const CharacterTable four = character_table(4);
    ASSERT_EQ(four.size(), 5U);
    std::vector<std::int64_t> dims;
    for (const auto& [lambda, result] : four.at(one_column(4)).entries) {
        dims.push_back(result.value);
    }
    EXPECT_EQ(dims, (std::vector<std::int64_t>{1, 3, 2, 3, 1}));
}

TEST(CharacterTable, ThreadedMatchesSerial) {
    const CharacterTable serial = character_table(7, kDefault, kDefaultBondCap, 1);
    const CharacterTable threaded = character_table(7, kDefault, kDefaultBondCap, 3);
    ASSERT_EQ(serial.size(), threaded.size());
    for (const auto& [nu, row] : serial) {
        for (const auto& [lambda, result] : row.entries) {
            EXPECT_EQ(threaded.at(nu).entries.at(lambda).value, result.value);
        }
    }
}

TEST(CharacterTable, ThreadedPropagatesErrors) {
    EXPECT_THROW(character_table(6, kExact, 1, 2), ResourceLimit);
    EXPECT_THROW(character_table(kCharacterTableCap + 1), ResourceLimit);
}

TEST(RoundAmplitude, Flags) {
    EXPECT_EQ(round_amplitude(2.9999999, 1).value, 3);
    EXPECT_FALSE(round_amplitude(2.9999999, 1).precision_flag);
    EXPECT_TRUE(round_amplitude(0.5, 1).precision_flag);
    EXPECT_TRUE(round_amplitude(kExactDoubleLimit, 1).precision_flag);
    EXPECT_TRUE(round_amplitude(std::nan(""), 1).precision_flag);
    EXPECT_EQ(round_amplitude(-4.2, 1).value, -4);
}
