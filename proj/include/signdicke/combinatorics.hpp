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

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "signdicke/errors.hpp"

namespace signdicke {

/// Computational basis state of up to 64 qubits. Qubit 0 is the most
/// significant of the n used bits, i.e. the leftmost printed character.
using Bits = std::uint64_t;
using Index = std::uint64_t;

inline constexpr int kMaxQubits = 64;

namespace detail {

inline constexpr Index kSaturated = std::numeric_limits<Index>::max();

// Pascal's triangle up to 64, saturating on overflow.
inline constexpr auto kBinomialTable = [] {
    std::array<std::array<Index, kMaxQubits + 1>, kMaxQubits + 1> t{};
    for (int n = 0; n <= kMaxQubits; ++n) {
        t[n][0] = 1;
        for (int k = 1; k <= n; ++k) {
            Index a = t[n - 1][k - 1];
            Index b = k <= n - 1 ? t[n - 1][k] : 0;
            t[n][k] = (a > kSaturated - b) ? kSaturated : a + b;
        }
    }
    return t;
}();

}  // namespace detail

/// C(n, k); zero outside 0 <= k <= n. Throws ResourceError when the value
/// does not fit in 64 bits.
constexpr Index binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    if (n > kMaxQubits) {
        throw ResourceError("binomial: n=" + std::to_string(n) + " exceeds 64");
    }
    Index v = detail::kBinomialTable[n][k];
    if (v == detail::kSaturated) {
        throw ResourceError("binomial: C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
    }
    return v;
}

/// Mask selecting qubit `q` of an n-qubit register.
constexpr Bits qubit_mask(int n, int q) {
    return Bits{1} << (n - 1 - q);
}

constexpr Bits low_mask(int n) {
    return n >= 64 ? ~Bits{0} : (Bits{1} << n) - 1;
}

/// Position of one weight-k bitstring in the colexicographic (combinadic)
/// order of all weight-k strings of n bits.
struct SubsetRank {
    int n = 0;
    int k = 0;
    Index rank = 0;

    friend bool operator==(const SubsetRank&, const SubsetRank&) = default;
};

/// Combinadic rank of `bits`: sum over set bit positions c_0 < c_1 < ... of
/// C(c_i, i + 1), positions counted from the least significant bit. For a fixed
/// weight this order coincides with increasing integer value.
inline Index colex_rank(Bits bits) {
    Index r = 0;
    int i = 1;
    while (bits != 0) {
        int c = std::countr_zero(bits);
        r += binomial(c, i);
        ++i;
        bits &= bits - 1;
    }
    return r;
}

inline SubsetRank rank_subset(Bits bits, int n, int k) {
    if (n < 1 || n > kMaxQubits || (bits & ~low_mask(n)) != 0) {
        throw DomainError("rank_subset: bitstring does not fit in n=" + std::to_string(n) + " qubits");
    }
    if (std::popcount(bits) != k) {
        throw InvalidWeightError("rank_subset: weight " + std::to_string(std::popcount(bits)) +
                                 " differs from k=" + std::to_string(k));
    }
    return SubsetRank{n, k, colex_rank(bits)};
}

/// Inverse of colex_rank: the weight-k string of n bits at position `rank`.
inline Bits unrank_subset(Index rank, int n, int k) {
    Index total = binomial(n, k);
    if (rank >= total) {
        throw DomainError("unrank_subset: rank " + std::to_string(rank) + " >= C(" + std::to_string(n) + "," +
                          std::to_string(k) + ")");
    }
    Bits bits = 0;
    int c = n - 1;
    for (int i = k; i >= 1; --i) {
        while (binomial(c, i) > rank) {
            --c;
        }
        bits |= Bits{1} << c;
        rank -= binomial(c, i);
        --c;
    }
    return bits;
}

inline Bits unrank(const SubsetRank& s) {
    return unrank_subset(s.rank, s.n, s.k);
}

/// Next larger integer with the same popcount (Gosper's hack). Enumerates
/// weight-k strings in rank order starting from low_mask(k).
constexpr Bits next_same_weight(Bits v) {
    Bits c = v & (~v + 1);
    Bits r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

/// Calls fn(rank, bits) for every weight-k string of n bits in rank order.
template <typename Fn>
void for_each_weight_k(int n, int k, Fn&& fn) {
    Index total = binomial(n, k);
    if (k == 0) {
        fn(Index{0}, Bits{0});
        return;
    }
    Bits v = low_mask(k);
    for (Index r = 0; r < total; ++r) {
        fn(r, v);
        if (r + 1 < total) {
            v = next_same_weight(v);
        }
    }
}

/// "0110" -> bits with qubit 0 as the most significant position.
inline Bits parse_bitstring(std::string_view text) {
    if (text.empty() || text.size() > kMaxQubits) {
        throw DomainError("bitstring length must be in [1, 64]");
    }
    Bits b = 0;
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw DomainError("bitstring contains '" + std::string(1, ch) + "'");
        }
        b = (b << 1) | Bits(ch == '1');
    }
    return b;
}

inline std::string format_bitstring(Bits bits, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q) {
        if (bits & qubit_mask(n, q)) {
            s[static_cast<std::size_t>(q)] = '1';
        }
    }
    return s;
}

}  // namespace signdicke
