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
#include <istream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "signdicke/combinatorics.hpp"
#include "signdicke/errors.hpp"
#include "signdicke/rng.hpp"
#include "signdicke/statevector.hpp"

namespace signdicke {

/// Dicke state over the C(n,k) weight-k basis states with a +-1 sign per
/// basis state. The amplitude of the basis state with colex rank r is
/// sign(r) / sqrt(C(n,k)). Signs are packed one bit per basis state (set bit
/// means -1), so n=28, k=14 costs about 5 MB.
class SignedDickeState {
  public:
    SignedDickeState() = default;

    /// Ordinary Dicke state: every sign +1.
    SignedDickeState(int n, int k) : n_(n), k_(k) {
        if (n < 1 || n > kMaxQubits || k < 0 || k > n) {
            throw DomainError("SignedDickeState: need 0 <= k <= n and 1 <= n <= 64");
        }
        size_ = binomial(n, k);
        words_.assign((size_ + 63) / 64, 0);
    }

    /// Builds the state from packed sign words (bit r of the word stream set
    /// means rank r carries a minus sign). Bits past C(n,k) must be zero.
    SignedDickeState(int n, int k, std::vector<std::uint64_t> negative_words) : SignedDickeState(n, k) {
        if (negative_words.size() != words_.size()) {
            throw DomainError("SignedDickeState: sign word count mismatch");
        }
        words_ = std::move(negative_words);
        if (size_ % 64 != 0 && !words_.empty()) {
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
        }
    }

    int num_qubits() const { return n_; }
    int excitations() const { return k_; }
    Index size() const { return size_; }

    bool is_negative(Index r) const { return (words_[r / 64] >> (r % 64)) & 1u; }
    int sign(Index r) const { return is_negative(r) ? -1 : 1; }
    double amplitude(Index r) const { return sign(r) / std::sqrt(static_cast<double>(size_)); }

    Index negative_count() const {
        Index c = 0;
        for (auto w : words_) {
            c += static_cast<Index>(std::popcount(w));
        }
        return c;
    }

    /// Copy with the sign of rank r flipped.
    SignedDickeState with_flipped(Index r) const {
        if (r >= size_) {
            throw DomainError("with_flipped: rank out of range");
        }
        SignedDickeState s = *this;
        s.words_[r / 64] ^= std::uint64_t{1} << (r % 64);
        return s;
    }

    /// Copy with every sign flipped (a global phase of -1).
    SignedDickeState negated() const {
        SignedDickeState s = *this;
        for (auto& w : s.words_) {
            w = ~w;
        }
        if (size_ % 64 != 0) {
            s.words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
        }
        return s;
    }

    const std::vector<std::uint64_t>& negative_words() const { return words_; }

    friend bool operator==(const SignedDickeState&, const SignedDickeState&) = default;

  private:
    int n_ = 0;
    int k_ = 0;
    Index size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Random-sign Dicke state: each sign is independently -1 with probability p.
inline SignedDickeState sample_signed_dicke(int n, int k, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("sample_signed_dicke: flip probability must lie in [0, 1]");
    }
    SignedDickeState base(n, k);
    std::vector<std::uint64_t> words(base.negative_words().size(), 0);
    Rng rng(seed);
    for (Index r = 0; r < base.size(); ++r) {
        if (bernoulli(rng, p)) {
            words[r / 64] |= std::uint64_t{1} << (r % 64);
        }
    }
    return SignedDickeState(n, k, std::move(words));
}

/// Signed Dicke state from an explicit list of signs in rank order.
inline SignedDickeState signed_dicke_from_signs(int n, int k, const std::vector<int>& signs) {
    SignedDickeState base(n, k);
    if (signs.size() != base.size()) {
        throw DomainError("signed_dicke_from_signs: expected C(n,k) signs");
    }
    std::vector<std::uint64_t> words(base.negative_words().size(), 0);
    for (std::size_t r = 0; r < signs.size(); ++r) {
        if (signs[r] != 1 && signs[r] != -1) {
            throw DomainError("signed_dicke_from_signs: signs must be +1 or -1");
        }
        if (signs[r] < 0) {
            words[r / 64] |= std::uint64_t{1} << (r % 64);
        }
    }
    return SignedDickeState(n, k, std::move(words));
}

/// Dense embedding into the full 2^n register.
inline StateVector embed_statevector(const SignedDickeState& state, int max_qubits = kDefaultStatevectorGuard) {
    const int n = state.num_qubits();
    check_statevector_guard(n, max_qubits);
    std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
    const double a = 1.0 / std::sqrt(static_cast<double>(state.size()));
    for_each_weight_k(n, state.excitations(), [&](Index r, Bits b) { amps[b] = state.is_negative(r) ? -a : a; });
    return StateVector(n, std::move(amps));
}

/// One line per nonzero amplitude: "<bitstring> <+1|-1>", rank order.
inline std::string dump_state(const SignedDickeState& state) {
    std::ostringstream out;
    for_each_weight_k(state.num_qubits(), state.excitations(), [&](Index r, Bits b) {
        out << format_bitstring(b, state.num_qubits()) << (state.is_negative(r) ? " -1\n" : " +1\n");
    });
    return out.str();
}

/// Parses the dump format. Every weight-k string must appear exactly once.
inline SignedDickeState parse_state_dump(std::istream& in) {
    std::vector<std::pair<Bits, int>> entries;
    int n = -1;
    int k = -1;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string bits;
        std::string sign;
        if (!(ls >> bits) || bits[0] == '#') {
            continue;
        }
        if (!(ls >> sign) || (sign != "+1" && sign != "-1" && sign != "+" && sign != "-")) {
            throw DomainError("state dump: bad sign on line '" + line + "'");
        }
        Bits b = parse_bitstring(bits);
        int w = std::popcount(b);
        if (n < 0) {
            n = static_cast<int>(bits.size());
            k = w;
        } else if (static_cast<int>(bits.size()) != n) {
            throw DomainError("state dump: inconsistent bitstring lengths");
        } else if (w != k) {
            throw InvalidWeightError("state dump: mixed Hamming weights");
        }
        entries.emplace_back(b, sign[0] == '-' ? -1 : 1);
    }
    if (n < 0) {
        throw DomainError("state dump: no amplitudes");
    }
    std::vector<int> signs(binomial(n, k), 0);
    for (auto [b, s] : entries) {
        auto r = colex_rank(b);
        if (signs[r] != 0) {
            throw DomainError("state dump: duplicate bitstring " + format_bitstring(b, n));
        }
        signs[r] = s;
    }
    if (std::find(signs.begin(), signs.end(), 0) != signs.end()) {
        throw DomainError("state dump: missing weight-k bitstrings");
    }
    return signed_dicke_from_signs(n, k, signs);
}

/// Split of the qubit labels 0..n-1 into subsystems A and B; both sorted and
/// non-empty.
class Bipartition {
  public:
    Bipartition() = default;

    Bipartition(int n, std::vector<int> members_a) : n_(n), a_(std::move(members_a)) {
        if (n < 2 || n > kMaxQubits) {
            throw DomainError("Bipartition: need 2 <= n <= 64");
        }
        std::sort(a_.begin(), a_.end());
        if (a_.empty() || static_cast<int>(a_.size()) >= n || a_.front() < 0 || a_.back() >= n ||
            std::adjacent_find(a_.begin(), a_.end()) != a_.end()) {
            throw DomainError("Bipartition: subsystem A must be a proper non-empty subset of distinct labels");
        }
        std::vector<char> in_a(static_cast<std::size_t>(n), 0);
        for (int q : a_) {
            in_a[static_cast<std::size_t>(q)] = 1;
        }
        for (int q = 0; q < n; ++q) {
            if (!in_a[static_cast<std::size_t>(q)]) {
                b_.push_back(q);
            }
        }
    }

    /// A = {0, ..., n_a - 1}.
    static Bipartition contiguous(int n, int n_a) {
        std::vector<int> a(static_cast<std::size_t>(std::max(n_a, 0)));
        std::iota(a.begin(), a.end(), 0);
        return Bipartition(n, std::move(a));
    }

    static Bipartition contiguous_half(int n) { return contiguous(n, n / 2); }

    /// Uniformly random A of size n_a.
    static Bipartition random(int n, int n_a, Rng& rng) {
        std::vector<int> labels(static_cast<std::size_t>(n));
        std::iota(labels.begin(), labels.end(), 0);
        for (int i = 0; i < n_a; ++i) {
            auto j = static_cast<std::size_t>(i) + uniform_index(rng, static_cast<std::uint64_t>(n - i));
            std::swap(labels[static_cast<std::size_t>(i)], labels[j]);
        }
        labels.resize(static_cast<std::size_t>(n_a));
        return Bipartition(n, std::move(labels));
    }

    int num_qubits() const { return n_; }
    int size_a() const { return static_cast<int>(a_.size()); }
    int size_b() const { return static_cast<int>(b_.size()); }
    const std::vector<int>& members_a() const { return a_; }
    const std::vector<int>& members_b() const { return b_; }

    Bipartition swapped() const { return Bipartition(n_, b_); }

    /// Qubits of A packed into an n_A-bit string, A's first member leftmost.
    Bits extract_a(Bits bits) const { return gather(bits, a_); }
    Bits extract_b(Bits bits) const { return gather(bits, b_); }

  private:
    Bits gather(Bits bits, const std::vector<int>& members) const {
        Bits out = 0;
        for (int q : members) {
            out = (out << 1) | ((bits >> (n_ - 1 - q)) & 1u);
        }
        return out;
    }

    int n_ = 0;
    std::vector<int> a_;
    std::vector<int> b_;
};

}  // namespace signdicke
