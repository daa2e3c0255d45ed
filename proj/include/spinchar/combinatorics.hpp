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

// Partitions, cycle types and the occupation-string encoding that turns a
// partition into a basis state of a 2n-site spin chain.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "spinchar/errors.hpp"
#include "spinchar/exact.hpp"

namespace spinchar {

/// Largest n accepted by enumerate_partitions (p(60) = 966467).
inline constexpr int kPartitionEnumerationCap = 60;

/// A non-increasing sequence of positive integers. The empty sequence is the
/// zero partition, which only appears as the all-padding input of the
/// occupation encoding.
class Partition {
  public:
    Partition() = default;

    /// Parts are sorted into non-increasing order; non-positive parts throw.
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int part : parts_) {
            if (part <= 0) {
                throw InvalidArgument("partition parts must be positive, got " + std::to_string(part));
            }
        }
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    /// Parses `part ("," part)*`; whitespace is ignored.
    static Partition parse(std::string_view text) {
        std::vector<int> parts;
        std::string token;
        auto flush = [&]() {
            if (token.empty()) {
                throw InvalidArgument("malformed partition '" + std::string(text) + "'");
            }
            if (token.size() > 6) {
                throw InvalidArgument("partition part too large in '" + std::string(text) + "'");
            }
            parts.push_back(std::stoi(token));
            token.clear();
        };
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c)) != 0) {
                continue;
            }
            if (c == ',') {
                flush();
            } else if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
                token.push_back(c);
            } else {
                throw InvalidArgument("malformed partition '" + std::string(text) + "'");
            }
        }
        flush();
        return Partition(std::move(parts));
    }

    [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
    [[nodiscard]] std::size_t length() const { return parts_.size(); }
    [[nodiscard]] bool empty() const { return parts_.empty(); }
    [[nodiscard]] int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    /// Part i (0-indexed), or 0 past the last part.
    [[nodiscard]] int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i != 0) {
                out.push_back(',');
            }
            out += std::to_string(parts_[i]);
        }
        return out;
    }

    /// Lexicographic on the parts; descending order is the canonical order.
    auto operator<=>(const Partition&) const = default;

  private:
    std::vector<int> parts_;
};

/// Descending lexicographic order, the order used for every partition listing.
using PartitionOrder = std::greater<Partition>;

inline Partition one_row(int n) { return Partition({n}); }

inline Partition one_column(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

inline void require_partition_of(const Partition& p, int n, std::string_view what) {
    if (n <= 0) {
        throw InvalidArgument("n must be positive");
    }
    if (p.size() != n) {
        throw InvalidArgument(std::string(what) + "=" + p.to_string() + " is not a partition of " +
                              std::to_string(n));
    }
}

/// All partitions of n in lexicographically decreasing order.
inline std::vector<Partition> enumerate_partitions(int n) {
    if (n <= 0 || n > kPartitionEnumerationCap) {
        throw InvalidArgument("enumerate_partitions: n must be in 1.." +
                              std::to_string(kPartitionEnumerationCap) + ", got " + std::to_string(n));
    }
    std::vector<Partition> out;
    std::vector<int> current{n};
    while (true) {
        out.emplace_back(current);
        // Rightmost part greater than one.
        std::size_t k = current.size();
        while (k > 0 && current[k - 1] == 1) {
            --k;
        }
        if (k == 0) {
            break;
        }
        int remainder = static_cast<int>(current.size() - k) + 1;
        int part = --current[k - 1];
        current.resize(k);
        while (remainder > 0) {
            int next = std::min(part, remainder);
            current.push_back(next);
            remainder -= next;
        }
    }
    return out;
}

/// p(n) by the standard dynamic program over largest admissible part.
inline BigInt partition_count(int n) {
    if (n < 0) {
        throw InvalidArgument("partition_count: negative n");
    }
    std::vector<BigInt> ways(static_cast<std::size_t>(n) + 1, 0);
    ways[0] = 1;
    for (int part = 1; part <= n; ++part) {
        for (int total = part; total <= n; ++total) {
            ways[static_cast<std::size_t>(total)] += ways[static_cast<std::size_t>(total - part)];
        }
    }
    return ways[static_cast<std::size_t>(n)];
}

struct CycleMultiplicities {
    /// cycle length -> number of cycles of that length (only non-zero counts)
    std::map<int, int> counts;

    [[nodiscard]] int at(int length) const {
        auto it = counts.find(length);
        return it == counts.end() ? 0 : it->second;
    }
    [[nodiscard]] int total() const {
        int n = 0;
        for (auto [length, count] : counts) {
            n += length * count;
        }
        return n;
    }
    bool operator==(const CycleMultiplicities&) const = default;
};

inline CycleMultiplicities cycle_multiplicities(const Partition& nu) {
    CycleMultiplicities a;
    for (int part : nu.parts()) {
        ++a.counts[part];
    }
    return a;
}

/// |E_g| = prod_l a_l! l^{a_l}, the order of the centralizer of a
/// permutation of cycle type nu.
inline BigInt centralizer_size(const Partition& nu) {
    BigInt size = 1;
    for (auto [length, count] : cycle_multiplicities(nu).counts) {
        size *= factorial(static_cast<unsigned>(count)) * power(length, static_cast<unsigned>(count));
    }
    return size;
}

/// Number of permutations with cycle type nu, n!/|E_g|.
inline BigInt class_size(const Partition& nu) {
    return factorial(static_cast<unsigned>(nu.size())) / centralizer_size(nu);
}

inline Partition conjugate(const Partition& lambda) {
    std::vector<int> columns;
    if (!lambda.empty()) {
        columns.assign(static_cast<std::size_t>(lambda[0]), 0);
        for (int part : lambda.parts()) {
            for (int j = 0; j < part; ++j) {
                ++columns[static_cast<std::size_t>(j)];
            }
        }
    }
    return Partition(std::move(columns));
}

/// Dimension of the irrep lambda by the hook length formula.
inline BigInt hook_length_dimension(const Partition& lambda) {
    const Partition columns = conjugate(lambda);
    BigInt hooks = 1;
    for (std::size_t i = 0; i < lambda.length(); ++i) {
        for (int j = 0; j < lambda[i]; ++j) {
            int arm = lambda[i] - j - 1;
            int leg = columns[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
            hooks *= arm + leg + 1;
        }
    }
    return factorial(static_cast<unsigned>(lambda.size())) / hooks;
}

/// True when lambda dominates mu (partial sums of lambda never fall behind).
inline bool dominates(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) {
        return false;
    }
    int lhs = 0;
    int rhs = 0;
    for (std::size_t i = 0; i < std::max(lambda.length(), mu.length()); ++i) {
        lhs += lambda[i];
        rhs += mu[i];
        if (lhs < rhs) {
            return false;
        }
    }
    return true;
}

/// Sign of any permutation of cycle type nu: (-1)^{n - #cycles}.
inline int permutation_sign(const Partition& nu) {
    return ((nu.size() - static_cast<int>(nu.length())) % 2 == 0) ? 1 : -1;
}

/// Fock-basis label on a chain of sites 0..L-1; site 0 is the leftmost
/// character of the textual form and 1 means occupied.
class OccupationString {
  public:
    OccupationString() = default;
    explicit OccupationString(std::size_t sites) : bits_(sites, 0) {}

    static OccupationString parse(std::string_view text) {
        OccupationString x(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] != '0' && text[i] != '1') {
                throw InvalidArgument("occupation string must be over {0,1}: '" + std::string(text) + "'");
            }
            x.bits_[i] = static_cast<std::uint8_t>(text[i] == '1');
        }
        return x;
    }

    /// Site 0 is the most significant bit of `index`.
    static OccupationString from_index(std::uint64_t index, std::size_t sites) {
        OccupationString x(sites);
        for (std::size_t i = 0; i < sites; ++i) {
            x.bits_[i] = static_cast<std::uint8_t>((index >> (sites - 1 - i)) & 1U);
        }
        return x;
    }

    [[nodiscard]] std::uint64_t to_index() const {
        std::uint64_t index = 0;
        for (std::uint8_t bit : bits_) {
            index = (index << 1U) | bit;
        }
        return index;
    }

    [[nodiscard]] std::size_t size() const { return bits_.size(); }
    [[nodiscard]] int operator[](std::size_t site) const { return bits_[site]; }
    void set(std::size_t site, bool occupied) { bits_[site] = static_cast<std::uint8_t>(occupied); }

    [[nodiscard]] int weight() const { return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1)); }

    [[nodiscard]] std::string to_string() const {
        std::string out(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            out[i] = bits_[i] != 0 ? '1' : '0';
        }
        return out;
    }

    auto operator<=>(const OccupationString&) const = default;

  private:
    std::vector<std::uint8_t> bits_;
};

/// Pads lambda with zeros to n parts and sets sites lambda_j + n - j
/// (j = 1..n) on a chain of 2n sites. The zero partition gives 1^n 0^n.
inline OccupationString encode_occupation(const Partition& lambda, int n) {
    if (n <= 0) {
        throw InvalidArgument("encode_occupation: n must be positive");
    }
    if (!lambda.empty() && lambda.size() != n) {
        throw InvalidArgument("encode_occupation: " + lambda.to_string() + " is not a partition of " +
                              std::to_string(n));
    }
    if (lambda.length() > static_cast<std::size_t>(n)) {
        throw InvalidArgument("encode_occupation: more than n parts");
    }
    OccupationString x(2 * static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        const auto site = static_cast<std::size_t>(lambda[static_cast<std::size_t>(j - 1)] + n - j);
        if (x[site] != 0) {
            throw InternalError("encode_occupation: support collision at site " + std::to_string(site));
        }
        x.set(site, true);
    }
    return x;
}

/// Inverse of encode_occupation; trailing zero parts are dropped.
inline Partition decode_occupation(const OccupationString& x) {
    if (x.size() % 2 != 0 || x.size() == 0) {
        throw InvalidArgument("decode_occupation: length must be even and positive");
    }
    const int n = static_cast<int>(x.size() / 2);
    if (x.weight() != n) {
        throw InvalidArgument("decode_occupation: weight " + std::to_string(x.weight()) + " != " +
                              std::to_string(n));
    }
    std::vector<int> parts;
    int j = 0;
    for (std::size_t site = x.size(); site-- > 0;) {
        if (x[site] != 0) {
            ++j;
            int part = static_cast<int>(site) - n + j;
            if (part > 0) {
                parts.push_back(part);
            }
        }
    }
    return Partition(std::move(parts));
}

}  // namespace spinchar
