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

// Row and column distributions of the character table, their granularity,
// and a reproducible categorical sampler.
//
//   row:     P_g(lambda) = chi_lambda(g)^2 / |E_g|      over lambda |- n
//   column:  P_lambda(g) = chi_lambda(g)^2 / n!         over g in S_n
//
// Column distributions are stored class-collapsed: the label is the cycle
// type nu and the weight is |C_nu| chi_lambda(nu)^2 / n!.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spinchar/character_engine.hpp"
#include "spinchar/combinatorics.hpp"
#include "spinchar/errors.hpp"
#include "spinchar/exact.hpp"
#include "spinchar/oracle.hpp"

namespace spinchar {

inline constexpr int kDistributionCap = 12;
inline constexpr int kGranularityCap = 200;
inline constexpr int kPermutationExpansionCap = 7;

enum class Engine { mn, mps };

inline Engine parse_engine(std::string_view text) {
    if (text == "mn") {
        return Engine::mn;
    }
    if (text == "mps") {
        return Engine::mps;
    }
    throw InvalidArgument("unknown engine '" + std::string(text) + "' (expected mn or mps)");
}

template <typename Label>
class FiniteDistribution {
  public:
    using Outcome = std::pair<Label, Rational>;

    FiniteDistribution() = default;

    /// Weights must be non-negative and sum to exactly one.
    explicit FiniteDistribution(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
        Rational total = 0;
        for (const auto& [label, weight] : outcomes_) {
            if (weight < 0) {
                throw InvalidArgument("distribution weights must be non-negative");
            }
            total += weight;
        }
        if (total != 1) {
            throw InconsistentEngine("distribution weights sum to " + total.str() + ", not 1");
        }
    }

    [[nodiscard]] const std::vector<Outcome>& outcomes() const { return outcomes_; }
    [[nodiscard]] std::size_t size() const { return outcomes_.size(); }

    [[nodiscard]] Rational weight(const Label& label) const {
        for (const auto& [l, w] : outcomes_) {
            if (l == label) {
                return w;
            }
        }
        return 0;
    }

  private:
    std::vector<Outcome> outcomes_;
};

namespace detail {

/// One character per partition lambda |- n at class nu, from the chosen engine.
inline std::vector<std::pair<Partition, std::int64_t>> character_column_values(const Partition& nu, int n,
                                                                               Engine engine,
                                                                               const TruncationPolicy& policy) {
    std::vector<std::pair<Partition, std::int64_t>> out;
    if (engine == Engine::mn) {
        for (const auto& lambda : enumerate_partitions(n)) {
            out.emplace_back(lambda, oracle::mn_character(lambda, nu));
        }
        return out;
    }
    const CharacterRow row = character_row(nu, n, policy);
    for (const auto& [lambda, result] : row.entries) {
        if (result.precision_flag) {
            throw PrecisionFailure("character of " + lambda.to_string() + " at " + nu.to_string() +
                                   " is not certified (residual " + std::to_string(result.residual) + ")");
        }
        out.emplace_back(lambda, result.value);
    }
    return out;
}

inline void check_distribution_cap(int n) {
    if (n <= 0) {
        throw InvalidArgument("n must be positive");
    }
    if (n > kDistributionCap) {
        throw ResourceLimit("distributions are tabulated only for n <= " + std::to_string(kDistributionCap));
    }
}

}  // namespace detail

/// P_nu(lambda) = chi_lambda(nu)^2 / |E_nu|. Fails with InconsistentEngine if
/// the squares do not add up to |E_nu|.
inline FiniteDistribution<Partition> row_distribution(
    const Partition& nu, int n, Engine engine = Engine::mn,
    const TruncationPolicy& policy = {kDefaultCharacterEpsilon, std::nullopt}) {
    detail::check_distribution_cap(n);
    require_partition_of(nu, n, "nu");
    const BigInt centralizer = centralizer_size(nu);
    std::vector<std::pair<Partition, Rational>> outcomes;
    BigInt square_sum = 0;
    for (const auto& [lambda, chi] : detail::character_column_values(nu, n, engine, policy)) {
        const BigInt square = BigInt(chi) * chi;
        square_sum += square;
        outcomes.emplace_back(lambda, Rational(square, centralizer));
    }
    if (square_sum != centralizer) {
        throw InconsistentEngine("sum of squared characters at " + nu.to_string() + " is " + square_sum.str() +
                                 ", expected |E_g| = " + centralizer.str());
    }
    return FiniteDistribution<Partition>(std::move(outcomes));
}

/// Class-collapsed P_lambda: weight(nu) = |C_nu| chi_lambda(nu)^2 / n!.
inline FiniteDistribution<Partition> column_distribution(
    const Partition& lambda, int n, Engine engine = Engine::mn,
    const TruncationPolicy& policy = {kDefaultCharacterEpsilon, std::nullopt}) {
    detail::check_distribution_cap(n);
    require_partition_of(lambda, n, "lambda");
    const BigInt group_order = factorial(static_cast<unsigned>(n));
    std::vector<std::pair<Partition, Rational>> outcomes;
    Rational total = 0;
    for (const auto& nu : enumerate_partitions(n)) {
        std::int64_t chi = 0;
        if (engine == Engine::mn) {
            chi = oracle::mn_character(lambda, nu);
        } else {
            const CharacterResult result = character(lambda, nu, n, policy);
            if (result.precision_flag) {
                throw PrecisionFailure("character of " + lambda.to_string() + " at " + nu.to_string() +
                                       " is not certified");
            }
            chi = result.value;
        }
        Rational weight(class_size(nu) * chi * chi, group_order);
        total += weight;
        outcomes.emplace_back(nu, weight);
    }
    if (total != 1) {
        throw InconsistentEngine("column weights of " + lambda.to_string() + " sum to " + total.str());
    }
    return FiniteDistribution<Partition>(std::move(outcomes));
}

/// Expands a class-collapsed column distribution to one outcome per
/// permutation (one-line notation, 0-based), each with weight chi^2 / n!.
inline FiniteDistribution<std::vector<int>> expand_to_permutations(const FiniteDistribution<Partition>& by_class,
                                                                   int n) {
    if (n > kPermutationExpansionCap) {
        throw ResourceLimit("permutation expansion is limited to n <= " + std::to_string(kPermutationExpansionCap));
    }
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::pair<std::vector<int>, Rational>> outcomes;
    do {
        std::vector<int> cycles;
        std::vector<bool> seen(perm.size(), false);
        for (std::size_t start = 0; start < perm.size(); ++start) {
            int length = 0;
            for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(perm[i])) {
                seen[i] = true;
                ++length;
            }
            if (length > 0) {
                cycles.push_back(length);
            }
        }
        const Partition nu(std::move(cycles));
        outcomes.emplace_back(perm, by_class.weight(nu) / Rational(class_size(nu)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return FiniteDistribution<std::vector<int>>(std::move(outcomes));
}

struct GranularityReport {
    Rational gamma;
    bool granular = false;
    /// An outcome whose weight is not an integer multiple of gamma/|Omega|.
    std::optional<std::string> witness;

    [[nodiscard]] std::string to_string() const {
        return "gamma=" + gamma.str() + " granular=" + (granular ? "true" : "false");
    }
};

/// Row-sampling granularity gamma = p(n) / |E_nu|; granular iff gamma >= 1.
/// Needs no characters: integrality of chi makes every weight an integer
/// multiple of gamma / p(n).
inline GranularityReport granularity(const Partition& nu, int n) {
    if (n > kGranularityCap) {
        throw ResourceLimit("granularity: n exceeds " + std::to_string(kGranularityCap));
    }
    require_partition_of(nu, n, "nu");
    GranularityReport report;
    report.gamma = Rational(partition_count(n), centralizer_size(nu));
    report.granular = report.gamma >= 1;
    return report;
}

/// Checks that every weight of `dist` is an integer multiple of
/// gamma / omega_size and fills `witness` with the first violation.
template <typename Label, typename Format>
GranularityReport certify_granularity(const FiniteDistribution<Label>& dist, const Rational& gamma,
                                      const BigInt& omega_size, Format format) {
    GranularityReport report;
    report.gamma = gamma;
    report.granular = gamma >= 1;
    const Rational unit = gamma / Rational(omega_size);
    for (const auto& [label, weight] : dist.outcomes()) {
        const Rational multiple = weight / unit;
        if (denominator(multiple) != 1) {
            report.granular = false;
            report.witness = format(label);
            break;
        }
    }
    return report;
}

/// Row distribution certified against its granularity gamma = p(n)/|E_nu|.
inline GranularityReport certify_row_granularity(const Partition& nu, int n, Engine engine = Engine::mn) {
    const auto dist = row_distribution(nu, n, engine);
    return certify_granularity(dist, granularity(nu, n).gamma, partition_count(n),
                               [](const Partition& p) { return p.to_string(); });
}

/// Column sampling over S_n has gamma = 1: each permutation has probability
/// chi^2 / n!. Verified class by class: weight(nu) n! / |C_nu| must be a
/// perfect square integer.
inline GranularityReport column_granularity(const Partition& lambda, int n, Engine engine = Engine::mn) {
    const auto dist = column_distribution(lambda, n, engine);
    const BigInt group_order = factorial(static_cast<unsigned>(n));
    GranularityReport report;
    report.gamma = 1;
    report.granular = true;
    for (const auto& [nu, weight] : dist.outcomes()) {
        const Rational per_permutation = weight * Rational(group_order) / Rational(class_size(nu));
        bool square = denominator(per_permutation) == 1;
        if (square) {
            const BigInt value = numerator(per_permutation);
            const BigInt root = sqrt(value);
            square = root * root == value;
        }
        if (!square) {
            report.granular = false;
            report.witness = nu.to_string();
            break;
        }
    }
    return report;
}

/// floor(A sqrt(n) / ln n), the largest cycle count covered by the row
/// granularity bound.
inline long cycle_count_threshold(int n, double a) {
    if (n < 2) {
        throw InvalidArgument("cycle_count_threshold: n must be at least 2");
    }
    if (!(a > 0.0)) {
        throw InvalidArgument("cycle_count_threshold: A must be positive");
    }
    return static_cast<long>(std::floor(a * std::sqrt(static_cast<double>(n)) / std::log(static_cast<double>(n))));
}

/// I.i.d. draws from `dist`. Generator: std::mt19937_64 seeded with `seed`;
/// each draw consumes one 64-bit output, keeps its top 53 bits as
/// u in [0, 1), and returns the first positive-weight outcome whose
/// cumulative weight exceeds u.
template <typename Label>
std::vector<Label> sample(const FiniteDistribution<Label>& dist, std::size_t shots, std::uint64_t seed) {
    std::vector<Label> draws;
    if (shots == 0 || dist.size() == 0) {
        return draws;
    }
    std::vector<double> cumulative;
    std::vector<std::size_t> index;
    Rational running = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const Rational& w = dist.outcomes()[i].second;
        if (w == 0) {
            continue;
        }
        running += w;
        cumulative.push_back(to_double(running));
        index.push_back(i);
    }
    cumulative.back() = 1.0;
    std::mt19937_64 generator(seed);
    draws.reserve(shots);
    for (std::size_t shot = 0; shot < shots; ++shot) {
        const double u = static_cast<double>(generator() >> 11U) * 0x1.0p-53;
        const auto pos = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                                  cumulative.begin());
        draws.push_back(dist.outcomes()[index[std::min(pos, index.size() - 1)]].first);
    }
    return draws;
}

/// Total-variation distance (half the L1 distance) between the empirical
/// histogram of `draws` and `dist`.
template <typename Label>
double total_variation(const FiniteDistribution<Label>& dist, const std::vector<Label>& draws) {
    if (draws.empty()) {
        return 1.0;
    }
    double l1 = 0.0;
    for (const auto& [label, weight] : dist.outcomes()) {
        const auto hits = std::count(draws.begin(), draws.end(), label);
        l1 += std::abs(static_cast<double>(hits) / static_cast<double>(draws.size()) - to_double(weight));
    }
    return 0.5 * l1;
}

}  // namespace spinchar
