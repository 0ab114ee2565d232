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

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "signdicke/combinatorics.hpp"
#include "signdicke/errors.hpp"
#include "signdicke/record.hpp"
#include "signdicke/rng.hpp"

namespace signdicke {

namespace detail {

inline std::size_t checked_power(int lambda, int m) {
    if (lambda < 2) {
        throw DomainError("window base lambda must be at least 2");
    }
    if (m < 0) {
        throw DomainError("renormalization step must be non-negative");
    }
    std::size_t w = 1;
    for (int i = 0; i < m; ++i) {
        if (w > (std::size_t{1} << 62) / static_cast<std::size_t>(lambda)) {
            throw DomainError("window lambda^m overflows");
        }
        w *= static_cast<std::size_t>(lambda);
    }
    return w;
}

}  // namespace detail

/// Coarse-grained copy of b at step m: each element is replaced by the mean of
/// its non-overlapping window of lambda^m elements. The length must be a
/// multiple of the window.
inline std::vector<double> coarse_grain(std::span<const double> b, int m, int lambda = 2) {
    const std::size_t w = detail::checked_power(lambda, m);
    if (b.size() % w != 0) {
        throw DomainError("coarse_grain: length " + std::to_string(b.size()) + " is not a multiple of window " +
                          std::to_string(w) + "; truncate first");
    }
    std::vector<double> out(b.size());
    for (std::size_t start = 0; start < b.size(); start += w) {
        double s = 0.0;
        for (std::size_t i = 0; i < w; ++i) {
            s += b[start + i];
        }
        const double mean = s / static_cast<double>(w);
        for (std::size_t i = 0; i < w; ++i) {
            out[start + i] = mean;
        }
    }
    return out;
}

/// (1 / 2L) |sum_i (b_next_i^2 - b_i^2)|.
inline double partial_dissimilarity(std::span<const double> b, std::span<const double> b_next) {
    if (b.size() != b_next.size() || b.empty()) {
        throw DomainError("partial_dissimilarity: arrays must be non-empty and of equal length");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        s += b_next[i] * b_next[i] - b[i] * b[i];
    }
    return std::abs(s) / (2.0 * static_cast<double>(b.size()));
}

struct DissimilarityProfile {
    int lambda = 2;
    /// partials[m-1] = D_m, the dissimilarity between coarse-graining steps m
    /// and m+1, for m = 1..steps.
    std::vector<double> partials;
    double total = 0.0;
    /// M = log_lambda of the analysed length.
    int steps = 0;
    std::size_t analysed_length = 0;

    double partial(int m) const { return partials.at(static_cast<std::size_t>(m - 1)); }
};

/// Multi-scale dissimilarity of a symbol sequence. The sequence is truncated to
/// its longest prefix of length lambda^M; D_m compares steps m and m+1 for
/// m = 1..M (the window never exceeds the analysed length, so D_M = 0).
inline DissimilarityProfile total_dissimilarity(std::span<const double> b, int lambda = 2) {
    if (b.empty()) {
        throw DomainError("total_dissimilarity: empty sequence");
    }
    detail::checked_power(lambda, 0);
    const auto base = static_cast<std::size_t>(lambda);
    int steps = 0;
    std::size_t len = 1;
    while (len <= b.size() / base) {
        len *= base;
        ++steps;
    }

    // sq[m] = sum_i (b_i^m)^2 = sum over windows of (window sum)^2 / window.
    std::vector<double> sums(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(len));
    std::vector<double> sq(static_cast<std::size_t>(steps) + 2, 0.0);
    std::size_t window = 1;
    for (int m = 0; m <= steps; ++m) {
        double s = 0.0;
        for (double v : sums) {
            s += v * v;
        }
        sq[static_cast<std::size_t>(m)] = s / static_cast<double>(window);
        if (m < steps) {
            std::vector<double> next(sums.size() / base, 0.0);
            for (std::size_t i = 0; i < sums.size(); ++i) {
                next[i / base] += sums[i];
            }
            sums = std::move(next);
            window *= base;
        }
    }
    sq[static_cast<std::size_t>(steps) + 1] = sq[static_cast<std::size_t>(steps)];

    DissimilarityProfile p;
    p.lambda = lambda;
    p.steps = steps;
    p.analysed_length = len;
    for (int m = 1; m <= steps; ++m) {
        double d = std::abs(sq[static_cast<std::size_t>(m) + 1] - sq[static_cast<std::size_t>(m)]) /
                   (2.0 * static_cast<double>(len));
        p.partials.push_back(d);
        p.total += d;
    }
    return p;
}

inline DissimilarityProfile total_dissimilarity(const BitstringRecord& rec, int lambda = 2) {
    std::vector<double> b(rec.symbols.begin(), rec.symbols.end());
    return total_dissimilarity(b, lambda);
}

/// Expected D_m for an i.i.d. uniform +-1 sequence: (1/2)(1 - 1/lambda) lambda^-m.
inline double haar_partial_law(int m, int lambda = 2) {
    if (m < 1) {
        throw DomainError("haar_partial_law: m must be at least 1");
    }
    if (lambda < 2) {
        throw DomainError("haar_partial_law: lambda must be at least 2");
    }
    return 0.5 * (1.0 - 1.0 / lambda) * std::pow(static_cast<double>(lambda), -m);
}

/// Record of `samples` weight-k bitstrings drawn uniformly with replacement.
inline BitstringRecord sample_weight_k_record(int n, int k, std::size_t samples, std::uint64_t seed) {
    const Index c = binomial(n, k);
    if (c == 0) {
        throw DomainError("sample_weight_k_record: need 0 <= k <= n");
    }
    BitstringRecord rec;
    rec.n = n;
    rec.symbols.reserve(samples * static_cast<std::size_t>(n));
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        rec.append_shot(unrank_subset(uniform_index(rng, c), n, k));
    }
    return rec;
}

/// Z-basis dissimilarity of |D_n^k>: all weight-k strings are equally likely,
/// so the record is built from uniformly sampled weight-k strings.
inline double z_basis_dissimilarity(int n, int k, std::size_t samples, std::uint64_t seed, int lambda = 2) {
    if (samples < 1) {
        throw DomainError("z_basis_dissimilarity: need at least one sample");
    }
    return total_dissimilarity(sample_weight_k_record(n, k, samples, seed), lambda).total;
}

/// Expected value of z_basis_dissimilarity over the sampling, computed exactly
/// by enumerating all C(n,k) strings: per-position means and pair correlations
/// give E[(window sum)^2] for every window, since distinct shots are
/// independent. Each D_m is a non-negative random variable's mean, so the
/// expectation of the total is exact.
inline double z_basis_dissimilarity_exact(int n, int k, std::size_t samples, int lambda = 2) {
    const Index c = binomial(n, k);
    if (c == 0 || samples < 1) {
        throw DomainError("z_basis_dissimilarity_exact: need 0 <= k <= n and samples >= 1");
    }
    const auto un = static_cast<std::size_t>(n);
    std::vector<double> mu(un, 0.0);
    std::vector<double> corr(un * un, 0.0);
    for_each_weight_k(n, k, [&](Index, Bits b) {
        for (int i = 0; i < n; ++i) {
            double bi = (b & qubit_mask(n, i)) ? 1.0 : -1.0;
            mu[static_cast<std::size_t>(i)] += bi;
            for (int j = 0; j < n; ++j) {
                double bj = (b & qubit_mask(n, j)) ? 1.0 : -1.0;
                corr[static_cast<std::size_t>(i) * un + static_cast<std::size_t>(j)] += bi * bj;
            }
        }
    });
    for (auto& v : mu) {
        v /= static_cast<double>(c);
    }
    for (auto& v : corr) {
        v /= static_cast<double>(c);
    }
    // Prefix sums: mu_pre[x] = sum_{i<x} mu_i, corr_pre[x][y] = sum_{i<x, j<y} C_ij.
    std::vector<double> mu_pre(un + 1, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
        mu_pre[i + 1] = mu_pre[i] + mu[i];
    }
    std::vector<double> corr_pre((un + 1) * (un + 1), 0.0);
    for (std::size_t x = 1; x <= un; ++x) {
        for (std::size_t y = 1; y <= un; ++y) {
            corr_pre[x * (un + 1) + y] = corr[(x - 1) * un + (y - 1)] + corr_pre[(x - 1) * (un + 1) + y] +
                                         corr_pre[x * (un + 1) + y - 1] - corr_pre[(x - 1) * (un + 1) + y - 1];
        }
    }
    auto seg_mean = [&](std::size_t a, std::size_t b) { return mu_pre[b] - mu_pre[a]; };
    auto seg_second = [&](std::size_t a, std::size_t b) {
        return corr_pre[b * (un + 1) + b] - corr_pre[a * (un + 1) + b] - corr_pre[b * (un + 1) + a] +
               corr_pre[a * (un + 1) + a];
    };

    const std::size_t length = un * samples;
    const auto base = static_cast<std::size_t>(lambda);
    detail::checked_power(lambda, 0);
    int steps = 0;
    std::size_t len = 1;
    while (len <= length / base) {
        len *= base;
        ++steps;
    }
    std::vector<double> sq(static_cast<std::size_t>(steps) + 2, 0.0);
    std::size_t window = 1;
    for (int m = 0; m <= steps; ++m) {
        double total = 0.0;
        for (std::size_t start = 0; start < len; start += window) {
            double mean = 0.0;
            double var = 0.0;
            std::size_t pos = start;
            const std::size_t end = start + window;
            while (pos < end) {
                std::size_t a = pos % un;
                std::size_t b = std::min(un, a + (end - pos));
                double e = seg_mean(a, b);
                mean += e;
                var += seg_second(a, b) - e * e;
                pos += b - a;
            }
            total += (var + mean * mean) / static_cast<double>(window);
        }
        sq[static_cast<std::size_t>(m)] = total;
        window *= base;
    }
    sq[static_cast<std::size_t>(steps) + 1] = sq[static_cast<std::size_t>(steps)];
    double d = 0.0;
    for (int m = 1; m <= steps; ++m) {
        d += std::abs(sq[static_cast<std::size_t>(m) + 1] - sq[static_cast<std::size_t>(m)]) /
             (2.0 * static_cast<double>(len));
    }
    return d;
}

}  // namespace signdicke
