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

// MPOs of the fermionic current operator J_l and of the non-commutative
// complete homogeneous polynomial h_k, both written as finite-state automata
// over the virtual index. Occupation convention: |1> is occupied.

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "spinchar/errors.hpp"
#include "spinchar/tensor.hpp"

namespace spinchar {

namespace local_ops {

/// |0><1|: removes the particle from a site.
inline Eigen::Matrix2d annihilate() { return (Eigen::Matrix2d() << 0, 1, 0, 0).finished(); }
/// |1><0|: places a particle on a site.
inline Eigen::Matrix2d create() { return (Eigen::Matrix2d() << 0, 0, 1, 0).finished(); }
inline Eigen::Matrix2d parity() { return (Eigen::Matrix2d() << 1, 0, 0, -1).finished(); }
inline Eigen::Matrix2d empty_projector() { return (Eigen::Matrix2d() << 1, 0, 0, 0).finished(); }
inline Eigen::Matrix2d identity() { return Eigen::Matrix2d::Identity(); }

}  // namespace local_ops

namespace detail {

/// Transition table of an automaton with `states` virtual states: each entry
/// is (from, to, single-site operator).
struct Transition {
    int from;
    int to;
    Eigen::Matrix2d op;
};

inline Mpo automaton_mpo(int states, const std::vector<Transition>& transitions, int start, int accept,
                         std::size_t sites) {
    std::vector<Mpo::SiteTensor> tensors(sites);
    for (std::size_t s = 0; s < sites; ++s) {
        const bool first = s == 0;
        const bool last = s + 1 == sites;
        const Eigen::Index rows = first ? 1 : states;
        const Eigen::Index cols = last ? 1 : states;
        for (int out = 0; out < 2; ++out) {
            for (int in = 0; in < 2; ++in) {
                Matrix w = Matrix::Zero(rows, cols);
                for (const Transition& t : transitions) {
                    if ((first && t.from != start) || (last && t.to != accept)) {
                        continue;
                    }
                    const Eigen::Index r = first ? 0 : t.from;
                    const Eigen::Index c = last ? 0 : t.to;
                    w(r, c) += t.op(out, in);
                }
                tensors[s][out][in] = std::move(w);
            }
        }
    }
    return Mpo(std::move(tensors));
}

}  // namespace detail

/// J_l = sum_j a^dag_{j+l} a_j on `sites` sites: the particle leaves site j,
/// Z acts on j+1..j+l-1, the particle lands on j+l. Bond dimension l+2.
inline Mpo current_mpo(int l, std::size_t sites) {
    if (l < 1 || static_cast<std::size_t>(l) + 1 > sites) {
        throw InvalidArgument("current_mpo: need 1 <= l <= sites-1, got l=" + std::to_string(l) +
                              ", sites=" + std::to_string(sites));
    }
    using namespace local_ops;
    std::vector<detail::Transition> transitions;
    transitions.push_back({0, 0, identity()});
    transitions.push_back({0, 1, annihilate()});
    for (int m = 1; m < l; ++m) {
        transitions.push_back({m, m + 1, parity()});
    }
    transitions.push_back({l, l + 1, create()});
    transitions.push_back({l + 1, l + 1, identity()});
    return detail::automaton_mpo(l + 2, transitions, 0, l + 1, sites);
}

/// h_k = sum_{i_1 > ... > i_k} x_{i_1} ... x_{i_k} with x_i = a^dag_{i+1} a_i.
/// States (m, closed) = m for m = 0..k count completed hops; states
/// (m, open) = k+1+m mark a hop in flight. Two hops sharing a site reduce to
/// the empty projector there. Bond dimension 2k+1.
inline Mpo complete_homogeneous_mpo(int k, std::size_t sites) {
    if (k < 1 || static_cast<std::size_t>(k) + 1 > sites) {
        throw InvalidArgument("complete_homogeneous_mpo: need 1 <= k <= sites-1, got k=" + std::to_string(k) +
                              ", sites=" + std::to_string(sites));
    }
    using namespace local_ops;
    auto open = [k](int m) { return k + 1 + m; };
    std::vector<detail::Transition> transitions;
    for (int m = 0; m <= k; ++m) {
        transitions.push_back({m, m, identity()});
        if (m < k) {
            transitions.push_back({m, open(m), annihilate()});
            transitions.push_back({open(m), m + 1, create()});
        }
        if (m + 1 < k) {
            transitions.push_back({open(m), open(m + 1), empty_projector()});
        }
    }
    return detail::automaton_mpo(2 * k + 1, transitions, 0, k, sites);
}

}  // namespace spinchar
