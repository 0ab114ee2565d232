// Copyright 2026 The signdicke Authors
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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "signdicke/combinatorics.hpp"
#include "signdicke/dicke_state.hpp"
#include "signdicke/errors.hpp"
#include "signdicke/jacobi.hpp"
#include "signdicke/parallel.hpp"

namespace signdicke {

/// One Hamming-weight block of the bipartite amplitude matrix: rows are the
/// weight-w strings of subsystem A, columns the weight-(k-w) strings of B,
/// both in colex order.
struct SchmidtBlock {
    int weight_a = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::span<const double> values;  // row-major rows x cols

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

/// All blocks of the amplitude matrix of a weight-k state. Entries are stored
/// in one contiguous buffer, block after block.
class BlockedSchmidtMatrix {
  public:
    struct Shape {
        int weight_a;
        std::size_t rows;
        std::size_t cols;
        std::size_t offset;
    };

    BlockedSchmidtMatrix(std::vector<Shape> shapes, std::vector<double> values)
        : shapes_(std::move(shapes)), values_(std::move(values)) {}

    std::size_t block_count() const { return shapes_.size(); }

    SchmidtBlock block(std::size_t i) const {
        const auto& s = shapes_[i];
        return SchmidtBlock{s.weight_a, s.rows, s.cols,
                            std::span<const double>(values_).subspan(s.offset, s.rows * s.cols)};
    }

    double squared_norm() const {
        double s = 0.0;
        for (double v : values_) {
            s += v * v;
        }
        return s;
    }

  private:
    std::vector<Shape> shapes_;
    std::vector<double> values_;
};

/// Maps each basis-state rank of a weight-k state to its slot in the blocked
/// matrix for a fixed bipartition. Build once, fill many states.
class SchmidtLayout {
  public:
    SchmidtLayout(int n, int k, const Bipartition& part) : n_(n), k_(k) {
        if (part.num_qubits() != n) {
            throw DomainError("SchmidtLayout: bipartition is for " + std::to_string(part.num_qubits()) +
                              " qubits, state has " + std::to_string(n));
        }
        const int na = part.size_a();
        const int nb = part.size_b();
        const int w_lo = std::max(0, k - nb);
        const int w_hi = std::min(k, na);
        std::vector<std::size_t> block_of_weight(static_cast<std::size_t>(na + 1), 0);
        std::size_t offset = 0;
        for (int w = w_lo; w <= w_hi; ++w) {
            std::size_t rows = binomial(na, w);
            std::size_t cols = binomial(nb, k - w);
            block_of_weight[static_cast<std::size_t>(w)] = shapes_.size();
            shapes_.push_back({w, rows, cols, offset});
            offset += rows * cols;
        }
        total_ = offset;
        slot_.resize(binomial(n, k));
        for_each_weight_k(n, k, [&](Index r, Bits bits) {
            Bits a = part.extract_a(bits);
            Bits b = part.extract_b(bits);
            const auto& s = shapes_[block_of_weight[static_cast<std::size_t>(std::popcount(a))]];
            slot_[r] = static_cast<std::uint32_t>(s.offset + colex_rank(a) * s.cols + colex_rank(b));
        });
    }

    int num_qubits() const { return n_; }
    int excitations() const { return k_; }
    const std::vector<BlockedSchmidtMatrix::Shape>& shapes() const { return shapes_; }

    BlockedSchmidtMatrix fill(const SignedDickeState& state) const {
        if (state.num_qubits() != n_ || state.excitations() != k_) {
            throw DomainError("SchmidtLayout::fill: state (n,k) does not match the layout");
        }
        std::vector<double> values(total_, 0.0);
        const double a = 1.0 / std::sqrt(static_cast<double>(state.size()));
        for (Index r = 0; r < state.size(); ++r) {
            values[slot_[r]] = state.is_negative(r) ? -a : a;
        }
        return BlockedSchmidtMatrix(shapes_, std::move(values));
    }

  private:
    int n_;
    int k_;
    std::vector<BlockedSchmidtMatrix::Shape> shapes_;
    std::vector<std::uint32_t> slot_;
    std::size_t total_ = 0;
};

inline BlockedSchmidtMatrix build_blocked_matrix(const SignedDickeState& state, const Bipartition& part) {
    return SchmidtLayout(state.num_qubits(), state.excitations(), part).fill(state);
}

struct EntropyResult {
    double entropy_bits = 0.0;
    /// Eigenvalues of rho_A (squared Schmidt coefficients), descending.
    std::vector<double> schmidt_spectrum;
    std::size_t rank = 0;
};

struct EntropyOptions {
    JacobiOptions jacobi;
    /// Eigenvalues in [-clamp, 0) are roundoff and become 0; anything more
    /// negative is reported as a numerical error.
    double clamp = 1e-12;
    double rank_tolerance = 1e-12;
    /// Replaces the built-in Jacobi solver when set.
    EigenvalueSolver solver;
};

/// -sum p log2 p over a probability spectrum, with 0 log 0 = 0.
inline double shannon_bits(std::span<const double> spectrum) {
    double s = 0.0;
    for (double p : spectrum) {
        if (p > 0.0) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

namespace detail {

// Gram matrix of the smaller side of a block: M M^T if rows <= cols, else M^T M.
inline std::vector<double> block_gram(const SchmidtBlock& b, std::size_t& dim) {
    if (b.rows <= b.cols) {
        dim = b.rows;
        std::vector<double> g(dim * dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            const double* ri = &b.values[i * b.cols];
            for (std::size_t j = i; j < dim; ++j) {
                const double* rj = &b.values[j * b.cols];
                double s = 0.0;
                for (std::size_t c = 0; c < b.cols; ++c) {
                    s += ri[c] * rj[c];
                }
                g[i * dim + j] = s;
                g[j * dim + i] = s;
            }
        }
        return g;
    }
    dim = b.cols;
    std::vector<double> g(dim * dim, 0.0);
    for (std::size_t r = 0; r < b.rows; ++r) {
        const double* row = &b.values[r * b.cols];
        for (std::size_t i = 0; i < dim; ++i) {
            const double vi = row[i];
            if (vi == 0.0) {
                continue;
            }
            double* gi = &g[i * dim];
            for (std::size_t j = i; j < dim; ++j) {
                gi[j] += vi * row[j];
            }
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            g[i * dim + j] = g[j * dim + i];
        }
    }
    return g;
}

}  // namespace detail

/// Von Neumann entropy (bits) of subsystem A from the blocked amplitude matrix.
/// Each block contributes the eigenvalues of its Gram matrix.
inline EntropyResult von_neumann_entropy(const BlockedSchmidtMatrix& m, const EntropyOptions& opt = {}) {
    EntropyResult out;
    for (std::size_t i = 0; i < m.block_count(); ++i) {
        SchmidtBlock b = m.block(i);
        std::size_t dim = 0;
        std::vector<double> eig;
        if (b.rows == 1 || b.cols == 1) {
            double s = 0.0;
            for (double v : b.values) {
                s += v * v;
            }
            eig.push_back(s);
        } else {
            std::vector<double> g = detail::block_gram(b, dim);
            try {
                eig = opt.solver ? opt.solver(std::move(g), dim) : jacobi_eigenvalues(std::move(g), dim, opt.jacobi);
            } catch (const NumericalError& e) {
                throw NumericalError("Schmidt block with A-weight " + std::to_string(b.weight_a) + ": " + e.what());
            }
        }
        for (double& v : eig) {
            if (v < 0.0) {
                if (v < -opt.clamp) {
                    throw NumericalError("Schmidt block with A-weight " + std::to_string(b.weight_a) +
                                         ": Gram eigenvalue " + std::to_string(v) + " is not PSD");
                }
                v = 0.0;
            }
            out.schmidt_spectrum.push_back(v);
        }
    }
    std::sort(out.schmidt_spectrum.begin(), out.schmidt_spectrum.end(), std::greater<>());
    out.rank = static_cast<std::size_t>(std::count_if(out.schmidt_spectrum.begin(), out.schmidt_spectrum.end(),
                                                      [&](double v) { return v > opt.rank_tolerance; }));
    out.entropy_bits = shannon_bits(out.schmidt_spectrum);
    return out;
}

inline double entanglement_entropy(const SignedDickeState& state, const Bipartition& part,
                                   const EntropyOptions& opt = {}) {
    return von_neumann_entropy(build_blocked_matrix(state, part), opt).entropy_bits;
}

namespace detail {

// sum_{j=lo+1}^{hi} 1/j with Kahan summation, smallest terms first.
inline double harmonic_direct(std::uint64_t lo, std::uint64_t hi) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::uint64_t j = hi; j > lo; --j) {
        double y = 1.0 / static_cast<double>(j) - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// H(x) - ln(x) - gamma, asymptotic series; accurate to ~1e-30 for x >= 1e4.
inline double harmonic_tail(double x) {
    double x2 = 1.0 / (x * x);
    return 1.0 / (2.0 * x) - x2 / 12.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 252.0;
}

}  // namespace detail

/// sum_{j=lo+1}^{hi} 1/j = H(hi) - H(lo).
inline double harmonic_difference(std::uint64_t lo, std::uint64_t hi) {
    if (hi <= lo) {
        return 0.0;
    }
    constexpr std::uint64_t kSwitch = 10000;
    if (hi - lo <= 4 * kSwitch) {
        return detail::harmonic_direct(lo, hi);
    }
    std::uint64_t mid = std::max(lo, kSwitch);
    double head = detail::harmonic_direct(lo, mid);
    double a = static_cast<double>(mid);
    double b = static_cast<double>(hi);
    double tail = std::log1p((b - a) / a) + detail::harmonic_tail(b) - detail::harmonic_tail(a);
    return head + tail;
}

/// Average entanglement entropy (bits) of a Haar-random pure state on n_a + n_b
/// qubits, for the exact finite-dimension formula.
inline double page_entropy(int n_a, int n_b) {
    if (n_a < 0 || n_b < 0 || n_a + n_b > 62) {
        throw DomainError("page_entropy: subsystem sizes must be non-negative with n_a + n_b <= 62");
    }
    if (n_a > n_b) {
        std::swap(n_a, n_b);
    }
    const std::uint64_t da = std::uint64_t{1} << n_a;
    const std::uint64_t db = std::uint64_t{1} << n_b;
    const double ln2 = std::numbers::ln2;
    return harmonic_difference(db, da * db) / ln2 -
           static_cast<double>(da - 1) / (2.0 * static_cast<double>(db) * ln2);
}

/// a log2(n/2) + b, the logarithmic reference curve for ordinary Dicke states.
inline double dicke_log_fit(int n, double a = 0.435, double b = 0.787) {
    if (n <= 0 || n % 2 != 0) {
        throw DomainError("dicke_log_fit: n must be even and positive");
    }
    return a * std::log2(n / 2.0) + b;
}

inline constexpr Index kSignEnumerationGuard = 20;

struct SignEntropyHistogram {
    /// Number of sign patterns evaluated (2^C, or 2^(C-1) modulo global sign).
    std::uint64_t patterns = 0;
    /// Entropy (rounded to 1e-9 bits) -> number of patterns.
    std::map<double, std::uint64_t> counts;
    double max_entropy = 0.0;
    /// Bit r set means rank r carries a minus sign.
    std::uint64_t argmax_pattern = 0;
};

/// Exact entropy of every sign pattern of a weight-k Dicke state for one
/// bipartition. With `modulo_global_sign`, rank 0 is pinned to +1.
inline SignEntropyHistogram enumerate_sign_entropies(int n, int k, const Bipartition& part,
                                                     bool modulo_global_sign = true, unsigned threads = 0) {
    const Index c = binomial(n, k);
    if (c > kSignEnumerationGuard) {
        throw ResourceError("enumerate_sign_entropies: C(n,k)=" + std::to_string(c) + " exceeds the guard of " +
                            std::to_string(kSignEnumerationGuard) + " (2^20 patterns)");
    }
    const SchmidtLayout layout(n, k, part);
    const int free_bits = static_cast<int>(c) - (modulo_global_sign && c > 0 ? 1 : 0);
    const std::uint64_t patterns = std::uint64_t{1} << free_bits;
    const int shift = modulo_global_sign ? 1 : 0;

    const std::size_t chunks = std::min<std::uint64_t>(patterns, 64);
    std::vector<SignEntropyHistogram> partial(chunks);
    parallel_for(
        chunks,
        [&](std::size_t ci) {
            auto& h = partial[ci];
            h.max_entropy = -1.0;
            std::uint64_t begin = patterns * ci / chunks;
            std::uint64_t end = patterns * (ci + 1) / chunks;
            for (std::uint64_t m = begin; m < end; ++m) {
                std::uint64_t word = m << shift;
                SignedDickeState s(n, k, std::vector<std::uint64_t>{word});
                double e = von_neumann_entropy(layout.fill(s)).entropy_bits;
                double key = std::round(e * 1e9) / 1e9;
                ++h.counts[key];
                if (e > h.max_entropy) {
                    h.max_entropy = e;
                    h.argmax_pattern = word;
                }
            }
        },
        threads);

    SignEntropyHistogram out;
    out.patterns = patterns;
    out.max_entropy = -1.0;
    for (const auto& h : partial) {
        for (const auto& [key, count] : h.counts) {
            out.counts[key] += count;
        }
        if (h.max_entropy > out.max_entropy) {
            out.max_entropy = h.max_entropy;
            out.argmax_pattern = h.argmax_pattern;
        }
    }
    return out;
}

}  // namespace signdicke
