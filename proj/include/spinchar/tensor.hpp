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

// Open-boundary matrix product states and operators over two-level sites.
//
// Layout conventions:
//   MPS site s:  A[s][p] is a (left bond) x (right bond) matrix, p in {0, 1}.
//   MPO site s:  W[s][out][in] is a (left bond) x (right bond) matrix.
//   Boundary bonds are 1. Dense vectors and matrices index basis strings with
//   site 0 as the most significant bit.
// States are unnormalized; no site-wise rescaling is ever applied.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spinchar/combinatorics.hpp"
#include "spinchar/errors.hpp"

namespace spinchar {

using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;
using Vector = Eigen::VectorXd;

/// Largest site count accepted by dense_materialize.
inline constexpr std::size_t kDenseOperatorSiteCap = 14;
/// Largest site count accepted by dense_vector.
inline constexpr std::size_t kDenseStateSiteCap = 22;

struct TruncationPolicy {
    /// Relative tolerance on the discarded singular-value sum at each cut.
    double epsilon = 0.0;
    /// Optional hard clamp of every bond after the epsilon rule.
    std::optional<std::size_t> max_bond;

    void validate() const {
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
            throw InvalidArgument("truncation epsilon must be a finite non-negative number");
        }
        if (max_bond && *max_bond == 0) {
            throw InvalidArgument("max bond must be at least 1");
        }
    }
};

class Mps {
  public:
    using SiteTensor = std::array<Matrix, 2>;

    Mps() = default;

    /// `center` is the orthogonality center if the sites are in mixed
    /// canonical form, or -1.
    explicit Mps(std::vector<SiteTensor> sites, int center = -1) : sites_(std::move(sites)), center_(center) {
        if (sites_.empty()) {
            throw InvalidArgument("MPS needs at least one site");
        }
        for (std::size_t s = 0; s < sites_.size(); ++s) {
            const auto& a = sites_[s];
            if (a[0].rows() != a[1].rows() || a[0].cols() != a[1].cols()) {
                throw InvalidArgument("MPS site " + std::to_string(s) + ": physical slices differ in shape");
            }
            if (s + 1 < sites_.size() && a[0].cols() != sites_[s + 1][0].rows()) {
                throw InvalidArgument("MPS bond mismatch between sites " + std::to_string(s) + " and " +
                                      std::to_string(s + 1));
            }
        }
        if (sites_.front()[0].rows() != 1 || sites_.back()[0].cols() != 1) {
            throw InvalidArgument("MPS boundary bonds must be 1");
        }
    }

    [[nodiscard]] std::size_t size() const { return sites_.size(); }
    [[nodiscard]] const SiteTensor& site(std::size_t s) const { return sites_[s]; }
    [[nodiscard]] const std::vector<SiteTensor>& sites() const { return sites_; }
    [[nodiscard]] std::size_t left_bond(std::size_t s) const { return static_cast<std::size_t>(sites_[s][0].rows()); }
    [[nodiscard]] std::size_t right_bond(std::size_t s) const { return static_cast<std::size_t>(sites_[s][0].cols()); }
    [[nodiscard]] std::optional<std::size_t> center() const {
        return center_ < 0 ? std::nullopt : std::optional<std::size_t>(static_cast<std::size_t>(center_));
    }

    /// Copy with site s multiplied by c; the canonical center is dropped
    /// unless s is the center.
    [[nodiscard]] Mps scaled(double c, std::size_t s = 0) const {
        Mps out = *this;
        out.sites_[s][0] *= c;
        out.sites_[s][1] *= c;
        if (center_ != static_cast<int>(s)) {
            out.center_ = -1;
        }
        return out;
    }

  private:
    std::vector<SiteTensor> sites_;
    int center_ = -1;
};

class Mpo {
  public:
    /// W[out][in]
    using SiteTensor = std::array<std::array<Matrix, 2>, 2>;

    Mpo() = default;

    explicit Mpo(std::vector<SiteTensor> sites) : sites_(std::move(sites)) {
        if (sites_.empty()) {
            throw InvalidArgument("MPO needs at least one site");
        }
        for (std::size_t s = 0; s < sites_.size(); ++s) {
            const auto& w = sites_[s];
            for (const auto& row : w) {
                for (const auto& m : row) {
                    if (m.rows() != w[0][0].rows() || m.cols() != w[0][0].cols()) {
                        throw InvalidArgument("MPO site " + std::to_string(s) + ": slices differ in shape");
                    }
                }
            }
            if (s + 1 < sites_.size() && w[0][0].cols() != sites_[s + 1][0][0].rows()) {
                throw InvalidArgument("MPO bond mismatch between sites " + std::to_string(s) + " and " +
                                      std::to_string(s + 1));
            }
        }
        if (sites_.front()[0][0].rows() != 1 || sites_.back()[0][0].cols() != 1) {
            throw InvalidArgument("MPO boundary bonds must be 1");
        }
    }

    [[nodiscard]] std::size_t size() const { return sites_.size(); }
    [[nodiscard]] const SiteTensor& site(std::size_t s) const { return sites_[s]; }
    [[nodiscard]] std::size_t left_bond(std::size_t s) const { return static_cast<std::size_t>(sites_[s][0][0].rows()); }
    [[nodiscard]] std::size_t right_bond(std::size_t s) const {
        return static_cast<std::size_t>(sites_[s][0][0].cols());
    }

    /// Product of single-site operators (bond 1 everywhere).
    static Mpo product(const std::vector<Eigen::Matrix2d>& ops) {
        std::vector<SiteTensor> sites(ops.size());
        for (std::size_t s = 0; s < ops.size(); ++s) {
            for (int o = 0; o < 2; ++o) {
                for (int i = 0; i < 2; ++i) {
                    sites[s][o][i] = Matrix::Constant(1, 1, ops[s](o, i));
                }
            }
        }
        return Mpo(std::move(sites));
    }

    static Mpo identity(std::size_t sites) {
        return product(std::vector<Eigen::Matrix2d>(sites, Eigen::Matrix2d::Identity()));
    }

  private:
    std::vector<SiteTensor> sites_;
};

inline std::size_t max_bond(const Mps& state) {
    std::size_t bond = 1;
    for (std::size_t s = 0; s < state.size(); ++s) {
        bond = std::max(bond, state.right_bond(s));
    }
    return bond;
}

inline std::size_t max_bond(const Mpo& op) {
    std::size_t bond = 1;
    for (std::size_t s = 0; s < op.size(); ++s) {
        bond = std::max(bond, op.right_bond(s));
    }
    return bond;
}

/// Bond-1 MPS of the basis state |x>.
inline Mps product_state(const OccupationString& x) {
    if (x.size() == 0) {
        throw InvalidArgument("product_state: empty occupation string");
    }
    std::vector<Mps::SiteTensor> sites(x.size());
    for (std::size_t s = 0; s < x.size(); ++s) {
        sites[s][0] = Matrix::Constant(1, 1, x[s] == 0 ? 1.0 : 0.0);
        sites[s][1] = Matrix::Constant(1, 1, x[s] == 1 ? 1.0 : 0.0);
    }
    return Mps(std::move(sites), 0);
}

/// Exact MPO x MPS product; bond dimensions multiply.
inline Mps mpo_apply(const Mpo& op, const Mps& state) {
    if (op.size() != state.size()) {
        throw InvalidArgument("mpo_apply: MPO has " + std::to_string(op.size()) + " sites, MPS has " +
                              std::to_string(state.size()));
    }
    std::vector<Mps::SiteTensor> sites(state.size());
    for (std::size_t s = 0; s < state.size(); ++s) {
        const auto& w = op.site(s);
        const auto& a = state.site(s);
        const Eigen::Index al = a[0].rows();
        const Eigen::Index ar = a[0].cols();
        const Eigen::Index wl = w[0][0].rows();
        const Eigen::Index wr = w[0][0].cols();
        for (int out = 0; out < 2; ++out) {
            Matrix b = Matrix::Zero(wl * al, wr * ar);
            for (int in = 0; in < 2; ++in) {
                const Matrix& wm = w[out][in];
                for (Eigen::Index r = 0; r < wl; ++r) {
                    for (Eigen::Index c = 0; c < wr; ++c) {
                        const double coefficient = wm(r, c);
                        if (coefficient != 0.0) {
                            b.block(r * al, c * ar, al, ar).noalias() += coefficient * a[in];
                        }
                    }
                }
            }
            sites[s][out] = std::move(b);
        }
    }
    return Mps(std::move(sites));
}

/// Smallest kept count d >= 1 such that sum_{i>d} s_i <= epsilon * sum_i s_i,
/// followed by dropping numerically-zero values and the optional clamp.
/// `singular_values` must be sorted in non-increasing order.
inline std::size_t truncation_rank(const Vector& singular_values, const TruncationPolicy& policy,
                                   double zero_threshold) {
    const auto count = static_cast<std::size_t>(singular_values.size());
    if (count == 0) {
        return 1;
    }
    const double total = singular_values.sum();
    if (total <= 0.0) {
        return 1;
    }
    std::size_t keep = count;
    double tail = 0.0;
    // Grow the discarded tail while it stays within budget.
    while (keep > 1) {
        const double next = tail + singular_values[static_cast<Eigen::Index>(keep - 1)];
        if (next > policy.epsilon * total) {
            break;
        }
        tail = next;
        --keep;
    }
    while (keep > 1 && singular_values[static_cast<Eigen::Index>(keep - 1)] <= zero_threshold) {
        --keep;
    }
    if (policy.max_bond) {
        keep = std::min(keep, *policy.max_bond);
    }
    return keep;
}

namespace detail {

struct Svd {
    Matrix u;
    Vector values;
    Matrix v;
};

/// Thin SVD. Eigen 3.4.0's divide-and-conquer solver occasionally returns
/// NaNs or an inaccurate factorization for rank-deficient inputs, so its
/// result is checked and recomputed with one-sided Jacobi when needed.
inline Svd thin_svd(const Matrix& m, std::size_t cut) {
    const double scale = m.norm();
    auto accurate = [&](const Svd& f) {
        if (!f.u.allFinite() || !f.values.allFinite() || !f.v.allFinite()) {
            return false;
        }
        auto orthonormal = [](const Matrix& q) {
            return ((q.transpose() * q) - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff() <= 1e-10;
        };
        return orthonormal(f.u) && orthonormal(f.v) &&
               (f.u * f.values.asDiagonal() * f.v.transpose() - m).norm() <= 1e-11 * std::max(scale, 1e-300);
    };
    {
        Eigen::BDCSVD<Matrix> bdc(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Svd f{bdc.matrixU(), bdc.singularValues(), bdc.matrixV()};
        if (scale == 0.0 || accurate(f)) {
            return f;
        }
    }
    Eigen::JacobiSVD<Matrix> jacobi(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Svd f{jacobi.matrixU(), jacobi.singularValues(), jacobi.matrixV()};
    if (!accurate(f)) {
        throw NumericalError("SVD failed at cut " + std::to_string(cut - 1) + "|" + std::to_string(cut));
    }
    return f;
}

}  // namespace detail

struct CompressResult {
    Mps state;
    /// Sum of discarded singular values at the cut left of site s (index s-1).
    std::vector<double> discarded;
};

/// Mixed-canonical compression: a left-to-right QR sweep followed by a
/// right-to-left SVD sweep that truncates cut by cut. The result has its
/// orthogonality center at site 0 and every other site right-isometric.
inline CompressResult compress_detailed(const Mps& input, const TruncationPolicy& policy) {
    policy.validate();
    std::vector<Mps::SiteTensor> sites = input.sites();
    const std::size_t length = sites.size();

    for (std::size_t s = 0; s + 1 < length; ++s) {
        auto& a = sites[s];
        const Eigen::Index rows = a[0].rows();
        const Eigen::Index cols = a[0].cols();
        Matrix stacked(2 * rows, cols);
        stacked << a[0], a[1];
        Eigen::HouseholderQR<Matrix> qr(stacked);
        const Eigen::Index k = std::min(2 * rows, cols);
        Matrix q = qr.householderQ() * Matrix::Identity(2 * rows, k);
        Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
        a[0] = q.topRows(rows);
        a[1] = q.bottomRows(rows);
        auto& next = sites[s + 1];
        next[0] = r * next[0];
        next[1] = r * next[1];
    }

    std::vector<double> discarded(length > 0 ? length - 1 : 0, 0.0);
    for (std::size_t s = length - 1; s >= 1; --s) {
        auto& a = sites[s];
        const Eigen::Index rows = a[0].rows();
        const Eigen::Index cols = a[0].cols();
        Matrix joined(rows, 2 * cols);
        joined << a[0], a[1];
        const detail::Svd svd = detail::thin_svd(joined, s);
        const Vector& values = svd.values;
        const double zero_threshold = values.size() > 0
                                          ? values[0] * static_cast<double>(std::max(rows, 2 * cols)) * DBL_EPSILON
                                          : 0.0;
        const std::size_t keep =
            std::min(truncation_rank(values, policy, zero_threshold), static_cast<std::size_t>(values.size()));
        const auto d = static_cast<Eigen::Index>(keep);
        discarded[s - 1] = values.tail(values.size() - d).sum();

        Matrix vt = svd.v.leftCols(d).transpose();
        a[0] = vt.leftCols(cols);
        a[1] = vt.rightCols(cols);
        const Matrix us = svd.u.leftCols(d) * values.head(d).asDiagonal();
        auto& prev = sites[s - 1];
        prev[0] = prev[0] * us;
        prev[1] = prev[1] * us;
    }
    return {Mps(std::move(sites), 0), std::move(discarded)};
}

inline Mps compress(const Mps& state, const TruncationPolicy& policy) {
    return compress_detailed(state, policy).state;
}

/// <x|state>, contracting the selected site matrices left to right.
inline double amplitude(const Mps& state, const OccupationString& x) {
    if (x.size() != state.size()) {
        throw InvalidArgument("amplitude: string has " + std::to_string(x.size()) + " sites, MPS has " +
                              std::to_string(state.size()));
    }
    RowVector v = state.site(0)[x[0]].row(0);
    for (std::size_t s = 1; s < state.size(); ++s) {
        v = v * state.site(s)[x[s]];
    }
    return v(0);
}

/// Cache of per-block products of physical-index-selected site matrices.
/// The chain is split into four blocks of ceil(L/4) sites, the remainder
/// going to the last block. A cache belongs to one MPS and one thread.
class BlockCache {
  public:
    [[nodiscard]] std::size_t hits() const { return hits_; }
    [[nodiscard]] std::size_t misses() const { return misses_; }
    [[nodiscard]] std::size_t entries() const {
        std::size_t total = 0;
        for (const auto& block : blocks_) {
            total += block.size();
        }
        return total;
    }

    /// [begin, end) site range of block k for a chain of `sites` sites.
    static std::pair<std::size_t, std::size_t> block_range(std::size_t sites, std::size_t k) {
        const std::size_t width = (sites + 3) / 4;
        const std::size_t begin = std::min(k * width, sites);
        const std::size_t end = k == 3 ? sites : std::min(begin + width, sites);
        return {begin, end};
    }

  private:
    friend std::vector<double> amplitude_batch(const Mps&, const std::vector<OccupationString>&, BlockCache&);

    const Matrix& block(const Mps& state, const OccupationString& x, std::size_t k) {
        const auto [begin, end] = block_range(state.size(), k);
        std::string key;
        key.reserve(end - begin);
        for (std::size_t s = begin; s < end; ++s) {
            key.push_back(static_cast<char>('0' + x[s]));
        }
        auto& table = blocks_[k];
        if (auto it = table.find(key); it != table.end()) {
            ++hits_;
            return it->second;
        }
        ++misses_;
        Matrix product = state.site(begin)[x[begin]];
        for (std::size_t s = begin + 1; s < end; ++s) {
            product = product * state.site(s)[x[s]];
        }
        return table.emplace(std::move(key), std::move(product)).first->second;
    }

    std::size_t sites_ = 0;
    std::array<std::unordered_map<std::string, Matrix>, 4> blocks_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

/// Amplitudes of many basis strings, reusing block products from `cache`.
inline std::vector<double> amplitude_batch(const Mps& state, const std::vector<OccupationString>& xs,
                                           BlockCache& cache) {
    if (cache.sites_ == 0) {
        cache.sites_ = state.size();
    } else if (cache.sites_ != state.size()) {
        throw InvalidArgument("amplitude_batch: cache was filled for a chain of " + std::to_string(cache.sites_) +
                              " sites");
    }
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) {
        if (x.size() != state.size()) {
            throw InvalidArgument("amplitude_batch: string length does not match the MPS");
        }
        RowVector v;
        bool started = false;
        for (std::size_t k = 0; k < 4; ++k) {
            const auto [begin, end] = BlockCache::block_range(state.size(), k);
            if (begin == end) {
                continue;
            }
            const Matrix& product = cache.block(state, x, k);
            if (!started) {
                v = product.row(0);
                started = true;
            } else {
                v = v * product;
            }
        }
        out.push_back(v(0));
    }
    return out;
}

/// <state|state> by transfer-matrix contraction.
inline double norm_squared(const Mps& state) {
    Matrix environment = Matrix::Ones(1, 1);
    for (std::size_t s = 0; s < state.size(); ++s) {
        const auto& a = state.site(s);
        environment = a[0].transpose() * environment * a[0] + a[1].transpose() * environment * a[1];
    }
    return environment(0, 0);
}

/// Full 2^L amplitude vector (site 0 most significant).
inline Vector dense_vector(const Mps& state) {
    if (state.size() > kDenseStateSiteCap) {
        throw ResourceLimit("dense_vector: " + std::to_string(state.size()) + " sites exceeds cap " +
                            std::to_string(kDenseStateSiteCap));
    }
    Matrix rows(2, state.right_bond(0));
    rows << state.site(0)[0], state.site(0)[1];
    for (std::size_t s = 1; s < state.size(); ++s) {
        const auto& a = state.site(s);
        Matrix next(rows.rows() * 2, a[0].cols());
        for (Eigen::Index r = 0; r < rows.rows(); ++r) {
            next.row(2 * r) = rows.row(r) * a[0];
            next.row(2 * r + 1) = rows.row(r) * a[1];
        }
        rows = std::move(next);
    }
    return rows.col(0);
}

/// Full 2^L x 2^L matrix of an MPO, built column by column by propagating
/// the non-zero virtual paths for each input basis string.
inline Matrix dense_materialize(const Mpo& op) {
    const std::size_t length = op.size();
    if (length > kDenseOperatorSiteCap) {
        throw ResourceLimit("dense_materialize: " + std::to_string(length) + " sites exceeds cap " +
                            std::to_string(kDenseOperatorSiteCap));
    }
    struct Entry {
        int out;
        int in;
        Eigen::Index row;
        Eigen::Index col;
        double value;
    };
    std::vector<std::vector<Entry>> nonzeros(length);
    for (std::size_t s = 0; s < length; ++s) {
        for (int out = 0; out < 2; ++out) {
            for (int in = 0; in < 2; ++in) {
                const Matrix& m = op.site(s)[out][in];
                for (Eigen::Index r = 0; r < m.rows(); ++r) {
                    for (Eigen::Index c = 0; c < m.cols(); ++c) {
                        if (m(r, c) != 0.0) {
                            nonzeros[s].push_back({out, in, r, c, m(r, c)});
                        }
                    }
                }
            }
        }
    }
    const std::uint64_t dim = std::uint64_t{1} << length;
    Matrix dense = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::map<std::pair<std::uint64_t, Eigen::Index>, double> paths;
    std::map<std::pair<std::uint64_t, Eigen::Index>, double> next;
    for (std::uint64_t column = 0; column < dim; ++column) {
        paths.clear();
        paths[{0, 0}] = 1.0;
        for (std::size_t s = 0; s < length && !paths.empty(); ++s) {
            const int in = static_cast<int>((column >> (length - 1 - s)) & 1U);
            next.clear();
            for (const auto& [key, value] : paths) {
                for (const Entry& e : nonzeros[s]) {
                    if (e.in == in && e.row == key.second) {
                        next[{(key.first << 1U) | static_cast<std::uint64_t>(e.out), e.col}] += value * e.value;
                    }
                }
            }
            std::swap(paths, next);
        }
        for (const auto& [key, value] : paths) {
            dense(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(column)) += value;
        }
    }
    return dense;
}

/// Largest entry of |sum_p A_p A_p^T - I|; zero for a right-isometric site.
inline double right_isometry_defect(const Mps& state, std::size_t s) {
    const auto& a = state.site(s);
    Matrix gram = a[0] * a[0].transpose() + a[1] * a[1].transpose();
    return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

/// Largest entry of |sum_p A_p^T A_p - I|; zero for a left-isometric site.
inline double left_isometry_defect(const Mps& state, std::size_t s) {
    const auto& a = state.site(s);
    Matrix gram = a[0].transpose() * a[0] + a[1].transpose() * a[1];
    return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

/// Debug dump: `sites=<L>`, then per site a `bond_left bond_right` line and
/// a line with the (left, physical, right) tensor entries in row-major order.
inline void dump(std::ostream& out, const Mps& state) {
    const auto precision = out.precision(17);
    out << "sites=" << state.size() << '\n';
    for (std::size_t s = 0; s < state.size(); ++s) {
        const auto& a = state.site(s);
        out << a[0].rows() << ' ' << a[0].cols() << '\n';
        bool first = true;
        for (Eigen::Index l = 0; l < a[0].rows(); ++l) {
            for (int p = 0; p < 2; ++p) {
                for (Eigen::Index r = 0; r < a[0].cols(); ++r) {
                    out << (first ? "" : " ") << a[p](l, r);
                    first = false;
                }
            }
        }
        out << '\n';
    }
    out.precision(precision);
}

}  // namespace spinchar
