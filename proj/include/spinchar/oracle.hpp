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

// Brute-force ground truth in exact integer arithmetic: the Murnaghan-Nakayama
// border-strip recursion, semistandard tableau enumeration, and fermionic
// statevector simulation of current-operator products (both in the fixed
// particle-number sector and with explicit Jordan-Wigner matrices).
// Nothing here goes through the tensor-network code path.

#include <Eigen/Sparse>

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinchar/combinatorics.hpp"
#include "spinchar/errors.hpp"
#include "spinchar/exact.hpp"

namespace spinchar::oracle {

inline constexpr int kCharacterCap = 14;
inline constexpr int kTableauCap = 12;
inline constexpr int kDensePsiCap = 8;
inline constexpr int kJordanWignerCap = 5;

namespace detail {

inline void check_cap(int n, int cap, const char* what) {
    if (n > cap) {
        throw ResourceLimit(std::string(what) + ": n=" + std::to_string(n) + " exceeds oracle cap " +
                            std::to_string(cap));
    }
}

/// Shapes reachable by removing one border strip of size r, with the sign
/// (-1)^height. A strip of size r corresponds to a box of hook length r; its
/// height is the leg of that box.
inline std::vector<std::pair<std::vector<int>, int>> remove_border_strips(const std::vector<int>& shape, int r) {
    std::vector<std::pair<std::vector<int>, int>> out;
    if (shape.empty()) {
        return out;
    }
    std::vector<int> columns(static_cast<std::size_t>(shape[0]), 0);
    for (int row : shape) {
        for (int j = 0; j < row; ++j) {
            ++columns[static_cast<std::size_t>(j)];
        }
    }
    for (std::size_t i = 0; i < shape.size(); ++i) {
        for (int j = 0; j < shape[i]; ++j) {
            const int arm = shape[i] - j - 1;
            const int leg = columns[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
            if (arm + leg + 1 != r) {
                continue;
            }
            std::vector<int> rest = shape;
            for (std::size_t t = i; t < i + static_cast<std::size_t>(leg); ++t) {
                rest[t] = shape[t + 1] - 1;
            }
            rest[i + static_cast<std::size_t>(leg)] = j;
            while (!rest.empty() && rest.back() == 0) {
                rest.pop_back();
            }
            out.emplace_back(std::move(rest), leg % 2 == 0 ? 1 : -1);
        }
    }
    return out;
}

}  // namespace detail

/// chi_lambda(nu) by the Murnaghan-Nakayama rule, memoized per call.
inline std::int64_t mn_character(const Partition& lambda, const Partition& nu, int cap = kCharacterCap) {
    const int n = lambda.size();
    require_partition_of(nu, n, "nu");
    detail::check_cap(n, cap, "mn_character");
    const std::vector<int>& cycles = nu.parts();
    std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo;
    std::function<std::int64_t(const std::vector<int>&, std::size_t)> chi =
        [&](const std::vector<int>& shape, std::size_t next) -> std::int64_t {
        if (next == cycles.size()) {
            return shape.empty() ? 1 : 0;
        }
        auto key = std::make_pair(shape, next);
        if (auto it = memo.find(key); it != memo.end()) {
            return it->second;
        }
        std::int64_t total = 0;
        for (const auto& [rest, sign] : detail::remove_border_strips(shape, cycles[next])) {
            total += sign * chi(rest, next + 1);
        }
        memo.emplace(std::move(key), total);
        return total;
    };
    return chi(lambda.parts(), 0);
}

/// Number of semistandard tableaux of shape lambda and content mu, by
/// filling cells in reading order with row-weak / column-strict checks.
inline BigInt ssyt_count(const Partition& lambda, const Partition& mu, int cap = kTableauCap) {
    const int n = lambda.size();
    require_partition_of(mu, n, "mu");
    detail::check_cap(n, cap, "ssyt_count");
    std::vector<std::pair<std::size_t, int>> cells;
    for (std::size_t i = 0; i < lambda.length(); ++i) {
        for (int j = 0; j < lambda[i]; ++j) {
            cells.emplace_back(i, j);
        }
    }
    std::vector<std::vector<int>> filling(lambda.length());
    for (std::size_t i = 0; i < lambda.length(); ++i) {
        filling[i].assign(static_cast<std::size_t>(lambda[i]), 0);
    }
    std::vector<int> remaining(mu.parts());
    const int values = static_cast<int>(mu.length());
    BigInt count = 0;
    std::function<void(std::size_t)> place = [&](std::size_t c) {
        if (c == cells.size()) {
            ++count;
            return;
        }
        const auto [i, j] = cells[c];
        int low = 1;
        if (j > 0) {
            low = std::max(low, filling[i][static_cast<std::size_t>(j - 1)]);
        }
        if (i > 0) {
            low = std::max(low, filling[i - 1][static_cast<std::size_t>(j)] + 1);
        }
        for (int v = low; v <= values; ++v) {
            auto& left = remaining[static_cast<std::size_t>(v - 1)];
            if (left == 0) {
                continue;
            }
            --left;
            filling[i][static_cast<std::size_t>(j)] = v;
            place(c + 1);
            ++left;
        }
        filling[i][static_cast<std::size_t>(j)] = 0;
    };
    place(0);
    return count;
}

/// prod_j J_{nu_j} |1^n 0^n> in the weight-n sector, exact. Particles hop
/// right by l and pick up (-1)^(occupied sites strictly between).
inline std::map<OccupationString, BigInt> dense_psi(const Partition& nu, int n) {
    require_partition_of(nu, n, "nu");
    detail::check_cap(n, kDensePsiCap, "dense_psi");
    const int sites = 2 * n;
    // Bit t of a key is site t.
    std::map<std::uint64_t, BigInt> state;
    state[(std::uint64_t{1} << n) - 1] = 1;
    for (int l : nu.parts()) {
        std::map<std::uint64_t, BigInt> next;
        for (const auto& [bits, value] : state) {
            for (int k = 0; k + l < sites; ++k) {
                const std::uint64_t from = std::uint64_t{1} << k;
                const std::uint64_t to = std::uint64_t{1} << (k + l);
                if ((bits & from) == 0 || (bits & to) != 0) {
                    continue;
                }
                const std::uint64_t between = bits & (to - 1) & ~((from << 1U) - 1);
                const int sign = std::popcount(between) % 2 == 0 ? 1 : -1;
                next[(bits & ~from) | to] += sign * value;
            }
        }
        state = std::move(next);
    }
    std::map<OccupationString, BigInt> out;
    for (const auto& [bits, value] : state) {
        if (value == 0) {
            continue;
        }
        OccupationString x(static_cast<std::size_t>(sites));
        for (int t = 0; t < sites; ++t) {
            x.set(static_cast<std::size_t>(t), ((bits >> t) & 1U) != 0);
        }
        out.emplace(std::move(x), value);
    }
    return out;
}

/// Explicit Jordan-Wigner operators on the full 2^L space. Basis index bits
/// follow OccupationString::to_index (site 0 is the most significant bit).
namespace jw {

using SparseInt = Eigen::SparseMatrix<std::int64_t>;

/// a_k = |0><1|_k prod_{j<k} Z_j
inline SparseInt annihilation(std::size_t k, std::size_t sites) {
    const std::uint64_t dim = std::uint64_t{1} << sites;
    std::vector<Eigen::Triplet<std::int64_t>> entries;
    const std::uint64_t mask = std::uint64_t{1} << (sites - 1 - k);
    for (std::uint64_t b = 0; b < dim; ++b) {
        if ((b & mask) == 0) {
            continue;
        }
        // Sites j < k are the bits above `mask`.
        const int before = std::popcount(b & ~((mask << 1U) - 1));
        entries.emplace_back(static_cast<int>(b & ~mask), static_cast<int>(b), before % 2 == 0 ? 1 : -1);
    }
    SparseInt a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    a.setFromTriplets(entries.begin(), entries.end());
    return a;
}

inline SparseInt creation(std::size_t k, std::size_t sites) {
    return SparseInt(annihilation(k, sites).transpose());
}

/// sum_{k=0}^{L-1-l} a^dag_{k+l} a_k
inline SparseInt current(std::size_t l, std::size_t sites) {
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << sites);
    SparseInt total(dim, dim);
    for (std::size_t k = 0; k + l < sites; ++k) {
        total += SparseInt(creation(k + l, sites) * annihilation(k, sites));
    }
    return total;
}

/// x_i = a^dag_{i+1} a_i
inline SparseInt hop(std::size_t i, std::size_t sites) {
    return SparseInt(creation(i + 1, sites) * annihilation(i, sites));
}

/// sum over i_1 > ... > i_k in 0..L-2 of x_{i_1} ... x_{i_k}, as a sum of
/// explicit operator products.
inline SparseInt complete_homogeneous(std::size_t k, std::size_t sites) {
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << sites);
    std::vector<SparseInt> hops;
    for (std::size_t i = 0; i + 1 < sites; ++i) {
        hops.push_back(hop(i, sites));
    }
    SparseInt total(dim, dim);
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> pick = [&](std::size_t below) {
        if (chosen.size() == k) {
            SparseInt product = hops[chosen.front()];
            for (std::size_t t = 1; t < chosen.size(); ++t) {
                product = SparseInt(product * hops[chosen[t]]);
            }
            total += product;
            return;
        }
        for (std::size_t i = 0; i < below; ++i) {
            chosen.push_back(i);
            pick(i);
            chosen.pop_back();
        }
    };
    pick(hops.size());
    return total;
}

}  // namespace jw

/// Applies explicit 2^{2n}-dimensional J_l matrices to |1^n 0^n> and checks
/// the result against dense_psi, including zeros outside the weight-n sector.
inline bool dense_jw_crosscheck(const Partition& nu, int n) {
    require_partition_of(nu, n, "nu");
    detail::check_cap(n, kJordanWignerCap, "dense_jw_crosscheck");
    const auto sites = static_cast<std::size_t>(2 * n);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << sites);
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> state = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>::Zero(dim);
    state(static_cast<Eigen::Index>(encode_occupation(Partition(), n).to_index())) = 1;
    for (int l : nu.parts()) {
        state = jw::current(static_cast<std::size_t>(l), sites) * state;
    }
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> expected = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>::Zero(dim);
    for (const auto& [x, value] : dense_psi(nu, n)) {
        expected(static_cast<Eigen::Index>(x.to_index())) = value.convert_to<std::int64_t>();
    }
    return state == expected;
}

}  // namespace spinchar::oracle
