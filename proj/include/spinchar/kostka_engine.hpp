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

#pragma once

// Kostka numbers K_{lambda,mu} as amplitudes of h_mu |1^n 0^n>.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinchar/character_engine.hpp"
#include "spinchar/combinatorics.hpp"
#include "spinchar/errors.hpp"
#include "spinchar/exact.hpp"
#include "spinchar/mpo_builders.hpp"
#include "spinchar/tensor.hpp"

namespace spinchar {

inline constexpr double kDefaultKostkaEpsilon = 1e-11;
/// contingency_count is skipped above this n.
inline constexpr int kContingencyCap = 40;

/// |psi_mu> = prod_j h_{mu_j} |1^n 0^n>, applied in ascending part order.
inline ChainState build_psi_mu(const Partition& mu, int n, const TruncationPolicy& policy,
                               std::size_t bond_cap = kDefaultBondCap) {
    require_partition_of(mu, n, "mu");
    std::vector<int> ascending(mu.parts().rbegin(), mu.parts().rend());
    return detail::apply_sequence(n, ascending, complete_homogeneous_mpo, policy, bond_cap);
}

/// prod_j (2 mu_j + 1)
inline BigInt kostka_bond_bound(const Partition& mu) {
    BigInt bound = 1;
    for (int part : mu.parts()) {
        bound *= 2 * part + 1;
    }
    return bound;
}

/// Warning text for weights with more than n/3 parts, where the MPS route is
/// known to need smaller epsilon and much larger bonds.
inline std::optional<std::string> long_weight_warning(const Partition& mu) {
    const int n = mu.size();
    if (3 * static_cast<int>(mu.length()) > n) {
        return "weight " + mu.to_string() + " has " + std::to_string(mu.length()) +
               " parts (> n/3); expect large bonds and consider a smaller epsilon";
    }
    return std::nullopt;
}

/// Number of non-negative integer matrices whose row sums and column sums
/// both equal mu. By RSK this is sum_lambda K_{lambda,mu}^2 = <psi_mu|psi_mu>.
inline BigInt contingency_count(const Partition& mu) {
    if (mu.size() > kContingencyCap) {
        throw ResourceLimit("contingency_count: n exceeds " + std::to_string(kContingencyCap));
    }
    const std::vector<int>& rows = mu.parts();
    std::map<std::pair<std::size_t, std::vector<int>>, BigInt> memo;
    std::function<BigInt(std::size_t, std::vector<int>)> count = [&](std::size_t row,
                                                                     std::vector<int> capacity) -> BigInt {
        if (row == rows.size()) {
            return 1;
        }
        std::sort(capacity.begin(), capacity.end(), std::greater<>());
        while (!capacity.empty() && capacity.back() == 0) {
            capacity.pop_back();
        }
        auto key = std::make_pair(row, capacity);
        if (auto it = memo.find(key); it != memo.end()) {
            return it->second;
        }
        BigInt total = 0;
        // Distribute rows[row] units over the columns, column by column.
        std::function<void(std::size_t, int)> spread = [&](std::size_t column, int left) {
            if (left == 0) {
                total += count(row + 1, capacity);
                return;
            }
            if (column == capacity.size()) {
                return;
            }
            const int original = capacity[column];
            for (int take = std::min(left, original); take >= 0; --take) {
                capacity[column] = original - take;
                spread(column + 1, left - take);
            }
            capacity[column] = original;
        };
        spread(0, rows[row]);
        memo.emplace(std::move(key), total);
        return total;
    };
    return count(0, rows);
}

inline CharacterResult kostka(const Partition& lambda, const Partition& mu, int n,
                              const TruncationPolicy& policy = {kDefaultKostkaEpsilon, std::nullopt},
                              std::size_t bond_cap = kDefaultBondCap) {
    require_partition_of(lambda, n, "lambda");
    const ChainState chain = build_psi_mu(mu, n, policy, bond_cap);
    CharacterResult result = round_amplitude(amplitude(chain.state, encode_occupation(lambda, n)), chain.max_bond_seen);
    if (result.value < 0) {
        throw InternalError("negative Kostka number " + std::to_string(result.value) + " for lambda=" +
                            lambda.to_string() + ", mu=" + mu.to_string());
    }
    return result;
}

struct KostkaRow {
    int n = 0;
    Partition mu;
    std::map<Partition, CharacterResult, PartitionOrder> entries;
    /// |sum_lambda K^2 - contingency_count(mu)| / contingency_count(mu); NaN
    /// when the count was not computed.
    double norm_residual = std::numeric_limits<double>::quiet_NaN();
    std::size_t max_bond_seen = 1;
    std::vector<std::string> warnings;

    [[nodiscard]] bool certified() const {
        const bool norm_ok = std::isnan(norm_residual) || norm_residual <= kNormTolerance;
        return norm_ok &&
               std::none_of(entries.begin(), entries.end(), [](const auto& e) { return e.second.precision_flag; });
    }
};

/// Every K_{lambda,mu}, lambda |- n, from one MPS.
inline KostkaRow kostka_row(const Partition& mu, int n,
                            const TruncationPolicy& policy = {kDefaultKostkaEpsilon, std::nullopt},
                            std::size_t bond_cap = kDefaultBondCap) {
    KostkaRow row;
    row.n = n;
    row.mu = mu;
    if (auto warning = long_weight_warning(mu)) {
        row.warnings.push_back(*warning);
    }
    const ChainState chain = build_psi_mu(mu, n, policy, bond_cap);
    row.max_bond_seen = chain.max_bond_seen;
    const std::vector<Partition> shapes = enumerate_partitions(n);
    std::vector<OccupationString> strings;
    strings.reserve(shapes.size());
    for (const auto& lambda : shapes) {
        strings.push_back(encode_occupation(lambda, n));
    }
    BlockCache cache;
    const std::vector<double> amplitudes = amplitude_batch(chain.state, strings, cache);
    BigInt square_sum = 0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        CharacterResult result = round_amplitude(amplitudes[i], chain.max_bond_seen);
        if (result.value < 0) {
            throw InternalError("negative Kostka number for lambda=" + shapes[i].to_string() + ", mu=" +
                                mu.to_string());
        }
        square_sum += BigInt(result.value) * result.value;
        row.entries.emplace(shapes[i], result);
    }
    if (n <= kContingencyCap) {
        const BigInt expected = contingency_count(mu);
        const BigInt deviation = square_sum > expected ? BigInt(square_sum - expected) : BigInt(expected - square_sum);
        row.norm_residual = to_double(Rational(deviation, expected));
    }
    return row;
}

}  // namespace spinchar
