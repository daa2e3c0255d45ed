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

#include <cmath>
#include <numbers>

#include "spinchar/sampling.hpp"

using namespace spinchar;

namespace {

Rational weight_of(const FiniteDistribution<Partition>& dist, const Partition& label) { return dist.weight(label); }

}  // namespace

TEST(FiniteDistribution, Validation) {
    EXPECT_NO_THROW(FiniteDistribution<int>({{1, Rational(1, 2)}, {2, Rational(1, 2)}}));
    EXPECT_THROW(FiniteDistribution<int>({{1, Rational(1, 2)}}), InconsistentEngine);
    EXPECT_THROW(FiniteDistribution<int>({{1, Rational(3, 2)}, {2, Rational(-1, 2)}}), InvalidArgument);
}

TEST(RowDistribution, Examples) {
    const auto identity = row_distribution(Partition{1, 1, 1}, 3);
    EXPECT_EQ(weight_of(identity, Partition{3}), Rational(1, 6));
    EXPECT_EQ(weight_of(identity, Partition{2, 1}), Rational(4, 6));
    EXPECT_EQ(weight_of(identity, Partition{1, 1, 1}), Rational(1, 6));
    const auto cycle = row_distribution(Partition{3}, 3);
    for (const auto& lambda : enumerate_partitions(3)) {
        EXPECT_EQ(weight_of(cycle, lambda), Rational(1, 3));
    }
}

TEST(RowDistribution, EnginesAgree) {
    for (int n = 1; n <= 7; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            const auto mn = row_distribution(nu, n, Engine::mn);
            const auto mps = row_distribution(nu, n, Engine::mps);
            Rational total = 0;
            for (const auto& [lambda, weight] : mn.outcomes()) {
                EXPECT_EQ(mps.weight(lambda), weight);
                total += weight;
            }
            EXPECT_EQ(total, 1);
        }
    }
}

TEST(RowDistribution, TruncatedEngineIsRejected) {
    EXPECT_ANY_THROW(row_distribution(Partition{1, 1, 1, 1, 1, 1}, 6, Engine::mps, {1e-10, std::size_t{1}}));
    EXPECT_THROW(row_distribution(one_row(13), 13), ResourceLimit);
}

TEST(ColumnDistribution, Examples) {
    for (int n = 1; n <= 6; ++n) {
        const auto trivial = column_distribution(one_row(n), n);
        const auto sign = column_distribution(one_column(n), n);
        for (const auto& nu : enumerate_partitions(n)) {
            const Rational expected(class_size(nu), factorial(static_cast<unsigned>(n)));
            EXPECT_EQ(trivial.weight(nu), expected);
            EXPECT_EQ(sign.weight(nu), expected);
        }
    }
    const auto standard = column_distribution(Partition{2, 1}, 3);
    EXPECT_EQ(standard.weight(Partition{1, 1, 1}), Rational(4, 6));
    EXPECT_EQ(standard.weight(Partition{2, 1}), 0);
    EXPECT_EQ(standard.weight(Partition{3}), Rational(2, 6));
}

TEST(ColumnDistribution, EnginesAgree) {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& lambda : enumerate_partitions(n)) {
            const auto mn = column_distribution(lambda, n, Engine::mn);
            const auto mps = column_distribution(lambda, n, Engine::mps);
            for (const auto& [nu, weight] : mn.outcomes()) {
                EXPECT_EQ(mps.weight(nu), weight);
            }
        }
    }
}

TEST(ExpandToPermutations, PlancherelPerPermutation) {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& lambda : enumerate_partitions(n)) {
            const auto expanded = expand_to_permutations(column_distribution(lambda, n), n);
            EXPECT_EQ(BigInt(expanded.size()), factorial(static_cast<unsigned>(n)));
            for (const auto& [perm, weight] : expanded.outcomes()) {
                // weight * n! is chi^2, a perfect square.
                const Rational scaled = weight * Rational(factorial(static_cast<unsigned>(n)));
                ASSERT_EQ(denominator(scaled), 1);
                const BigInt root = sqrt(numerator(scaled));
                EXPECT_EQ(root * root, numerator(scaled));
            }
        }
    }
    EXPECT_THROW(expand_to_permutations(column_distribution(one_row(8), 8), 8), ResourceLimit);
}

TEST(Granularity, Examples) {
    const GranularityReport cycle = granularity(Partition{5}, 5);
    EXPECT_EQ(cycle.gamma, Rational(7, 5));
    EXPECT_TRUE(cycle.granular);
    EXPECT_EQ(cycle.to_string(), "gamma=7/5 granular=true");
    const GranularityReport identity = granularity(one_column(5), 5);
    EXPECT_EQ(identity.gamma, Rational(7, 120));
    EXPECT_FALSE(identity.granular);
    EXPECT_THROW(granularity(one_row(kGranularityCap + 1), kGranularityCap + 1), ResourceLimit);
}

TEST(Granularity, ColumnCaseIsUnit) {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& lambda : enumerate_partitions(n)) {
            const GranularityReport report = column_granularity(lambda, n);
            EXPECT_EQ(report.gamma, 1);
            EXPECT_TRUE(report.granular) << lambda.to_string();
        }
    }
}

TEST(Granularity, RowWeightsAreMultiplesOfTheUnit) {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            const GranularityReport report = certify_row_granularity(nu, n);
            EXPECT_EQ(report.gamma, granularity(nu, n).gamma);
            EXPECT_EQ(report.granular, report.gamma >= 1) << nu.to_string();
            EXPECT_FALSE(report.witness.has_value());
        }
    }
}

// |E_nu| = prod a! l^a <= n^c, so gamma >= p(n) / n^c holds at every n.
TEST(Granularity, CentralizerBoundedByPowerOfN) {
    for (int n = 2; n <= 40; ++n) {
        for (const auto& nu : enumerate_partitions(n)) {
            const BigInt bound = power(BigInt(n), static_cast<unsigned>(nu.length()));
            ASSERT_LE(centralizer_size(nu), bound) << nu.to_string();
            ASSERT_GE(granularity(nu, n).gamma, Rational(partition_count(n), bound));
        }
    }
}

TEST(CycleCountThreshold, Examples) {
    EXPECT_EQ(cycle_count_threshold(100, 1.0), 2);
    EXPECT_EQ(cycle_count_threshold(4, 1.0), 1);
    long previous = 0;
    for (double a = 0.1; a < 5.0; a += 0.1) {
        const long value = cycle_count_threshold(50, a);
        EXPECT_GE(value, previous);
        previous = value;
    }
    EXPECT_THROW(cycle_count_threshold(1, 1.0), InvalidArgument);
    EXPECT_THROW(cycle_count_threshold(10, 0.0), InvalidArgument);
}

TEST(Sample, PointMass) {
    const FiniteDistribution<int> point({{7, Rational(1)}, {8, Rational(0)}});
    for (int draw : sample(point, 1000, 3)) {
        EXPECT_EQ(draw, 7);
    }
    EXPECT_TRUE(sample(point, 0, 3).empty());
}

TEST(Sample, UniformFrequencies) {
    const FiniteDistribution<int> uniform({{0, Rational(1, 3)}, {1, Rational(1, 3)}, {2, Rational(1, 3)}});
    const auto draws = sample(uniform, 300000, 20260101);
    for (int label = 0; label < 3; ++label) {
        const double freq = static_cast<double>(std::count(draws.begin(), draws.end(), label)) / 300000.0;
        EXPECT_NEAR(freq, 1.0 / 3.0, 0.01);
    }
}

TEST(Sample, Deterministic) {
    const auto dist = row_distribution(Partition{2, 2, 1, 1}, 6);
    EXPECT_EQ(sample(dist, 5000, 42), sample(dist, 5000, 42));
    EXPECT_NE(sample(dist, 5000, 42), sample(dist, 5000, 43));
}

TEST(Sample, EmpiricalCloseToExact) {
    const auto dist = row_distribution(Partition{3, 2, 1}, 6);
    EXPECT_LE(total_variation(dist, sample(dist, 100000, 9)), 0.02);
}
