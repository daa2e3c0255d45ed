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

// Characters of S_n as amplitudes of |psi_g> = prod_j J_{nu_j} |1^n 0^n>,
// built by alternating MPO application and compression.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "spinchar/combinatorics.hpp"
#include "spinchar/errors.hpp"
#include "spinchar/exact.hpp"
#include "spinchar/mpo_builders.hpp"
#include "spinchar/tensor.hpp"

namespace spinchar {

inline constexpr double kDefaultCharacterEpsilon = 1e-10;
inline constexpr std::size_t kDefaultBondCap = 4096;
/// Relative norm-identity deviation above which results are not certified.
inline constexpr double kNormTolerance = 1e-6;
/// Rounding is only trusted below 2^52.
inline constexpr double kExactDoubleLimit = 4503599627370496.0;
inline constexpr int kCharacterTableCap = 40;

/// A rounded amplitude: a character or a Kostka number.
struct CharacterResult {
    std::int64_t value = 0;
    double amplitude = 0.0;
    /// |amplitude - value|
    double residual = 0.0;
    std::size_t max_bond_seen = 1;
    /// Set when |amplitude| >= 2^52 or residual >= 0.5.
    bool precision_flag = false;
};

inline CharacterResult round_amplitude(double amplitude, std::size_t max_bond_seen) {
    CharacterResult result;
    result.amplitude = amplitude;
    result.max_bond_seen = max_bond_seen;
    if (!std::isfinite(amplitude) || std::abs(amplitude) >= kExactDoubleLimit) {
        result.precision_flag = true;
        result.residual = std::numeric_limits<double>::infinity();
        return result;
    }
    const double nearest = std::nearbyint(amplitude);
    result.value = static_cast<std::int64_t>(nearest);
    result.residual = std::abs(amplitude - nearest);
    result.precision_flag = result.residual >= 0.5;
    return result;
}

/// An MPS built by a sequence of MPO applications, with bond statistics of the
/// compressed intermediate states.
struct ChainState {
    Mps state;
    /// Largest bond over all compressed intermediate states.
    std::size_t max_bond_seen = 1;
    /// Largest bond after each application step.
    std::vector<std::size_t> step_bonds;
};

namespace detail {

inline ChainState apply_sequence(int n, const std::vector<int>& orders, const std::function<Mpo(int, std::size_t)>& build,
                                 const TruncationPolicy& policy, std::size_t bond_cap) {
    policy.validate();
    const auto sites = static_cast<std::size_t>(2 * n);
    ChainState chain{product_state(encode_occupation(Partition(), n)), 1, {}};
    for (int order : orders) {
        chain.state = compress(mpo_apply(build(order, sites), chain.state), policy);
        const std::size_t bond = max_bond(chain.state);
        if (bond > bond_cap) {
            throw ResourceLimit("bond dimension " + std::to_string(bond) + " exceeds the hard cap " +
                                std::to_string(bond_cap));
        }
        chain.step_bonds.push_back(bond);
        chain.max_bond_seen = std::max(chain.max_bond_seen, bond);
    }
    return chain;
}

}  // namespace detail

/// Builds prod_j J_{l_j} |1^n 0^n> applying the cycle lengths in the given
/// order. The lengths must sum to n.
inline ChainState build_psi_in_order(const std::vector<int>& cycle_lengths, int n, const TruncationPolicy& policy,
                                     std::size_t bond_cap = kDefaultBondCap) {
    require_partition_of(Partition(cycle_lengths), n, "nu");
    return detail::apply_sequence(n, cycle_lengths, current_mpo, policy, bond_cap);
}

/// |psi_g> for cycle type nu; cycles are applied in ascending length.
inline ChainState build_psi(const Partition& nu, int n, const TruncationPolicy& policy,
                            std::size_t bond_cap = kDefaultBondCap) {
    std::vector<int> ascending(nu.parts().rbegin(), nu.parts().rend());
    return build_psi_in_order(ascending, n, policy, bond_cap);
}

/// prod_j (nu_j + 2), the a priori bond bound.
inline BigInt character_bond_bound(const Partition& nu) {
    BigInt bound = 1;
    for (int part : nu.parts()) {
        bound *= part + 2;
    }
    return bound;
}

/// |<psi|psi> - |E_g|| / |E_g|
inline double psi_norm_residual(const Mps& state, const Partition& nu) {
    const double expected = to_double(centralizer_size(nu));
    return std::abs(norm_squared(state) - expected) / expected;
}

inline CharacterResult character(const Partition& lambda, const Partition& nu, int n,
                                 const TruncationPolicy& policy = {kDefaultCharacterEpsilon, std::nullopt},
                                 std::size_t bond_cap = kDefaultBondCap) {
    require_partition_of(lambda, n, "lambda");
    const ChainState chain = build_psi(nu, n, policy, bond_cap);
    return round_amplitude(amplitude(chain.state, encode_occupation(lambda, n)), chain.max_bond_seen);
}

struct CharacterRow {
    int n = 0;
    Partition nu;
    std::map<Partition, CharacterResult, PartitionOrder> entries;
    /// |sum_lambda value^2 - |E_g|| / |E_g| over the rounded values.
    double norm_residual = 0.0;
    /// Same identity evaluated on the MPS norm itself.
    double mps_norm_residual = 0.0;
    std::size_t max_bond_seen = 1;
    std::size_t cache_hits = 0;

    [[nodiscard]] bool certified() const {
        return norm_residual <= kNormTolerance &&
               std::none_of(entries.begin(), entries.end(), [](const auto& e) { return e.second.precision_flag; });
    }
};

/// Every character chi_lambda(nu), lambda |- n, from one MPS.
inline CharacterRow character_row(const Partition& nu, int n,
                                  const TruncationPolicy& policy = {kDefaultCharacterEpsilon, std::nullopt},
                                  std::size_t bond_cap = kDefaultBondCap) {
    const ChainState chain = build_psi(nu, n, policy, bond_cap);
    const std::vector<Partition> irreps = enumerate_partitions(n);
    std::vector<OccupationString> strings;
    strings.reserve(irreps.size());
    for (const auto& lambda : irreps) {
        strings.push_back(encode_occupation(lambda, n));
    }
    BlockCache cache;
    const std::vector<double> amplitudes = amplitude_batch(chain.state, strings, cache);

    CharacterRow row;
    row.n = n;
    row.nu = nu;
    row.max_bond_seen = chain.max_bond_seen;
    row.cache_hits = cache.hits();
    BigInt square_sum = 0;
    for (std::size_t i = 0; i < irreps.size(); ++i) {
        CharacterResult result = round_amplitude(amplitudes[i], chain.max_bond_seen);
        square_sum += BigInt(result.value) * result.value;
        row.entries.emplace(irreps[i], result);
    }
    const BigInt centralizer = centralizer_size(nu);
    const BigInt deviation = square_sum > centralizer ? BigInt(square_sum - centralizer) : BigInt(centralizer - square_sum);
    row.norm_residual = to_double(Rational(deviation, centralizer));
    row.mps_norm_residual = psi_norm_residual(chain.state, nu);
    return row;
}

using CharacterTable = std::map<Partition, CharacterRow, PartitionOrder>;

/// All rows of the character table; `jobs` > 1 computes rows on worker
/// threads. The result does not depend on `jobs`.
inline CharacterTable character_table(int n, const TruncationPolicy& policy = {kDefaultCharacterEpsilon, std::nullopt},
                                      std::size_t bond_cap = kDefaultBondCap, unsigned jobs = 1,
                                      int cap = kCharacterTableCap) {
    if (n > cap) {
        throw ResourceLimit("character_table: n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }
    const std::vector<Partition> classes = enumerate_partitions(n);
    std::vector<CharacterRow> rows(classes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < classes.size(); i = next++) {
            rows[i] = character_row(classes[i], n, policy, bond_cap);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned j = 0; j < jobs; ++j) {
            pool.emplace_back([&]() {
                try {
                    worker();
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    failure = std::current_exception();
                    next = classes.size();
                }
            });
        }
        pool.clear();
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    CharacterTable table;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        table.emplace(classes[i], std::move(rows[i]));
    }
    return table;
}

}  // namespace spinchar
