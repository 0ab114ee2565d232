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
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "signdicke/combinatorics.hpp"
#include "signdicke/errors.hpp"

namespace signdicke {

using Complex = std::complex<double>;

/// Largest register a dense statevector may hold unless the caller raises the
/// guard explicitly (2^26 complex doubles = 1 GiB).
inline constexpr int kDefaultStatevectorGuard = 26;

inline void check_statevector_guard(int n, int max_qubits) {
    if (n > max_qubits) {
        throw ResourceError("statevector of " + std::to_string(n) + " qubits exceeds the guard of " +
                            std::to_string(max_qubits) + " qubits");
    }
}

/// Dense amplitude array over the 2^n computational basis states. Index bit
/// (n-1-q) holds qubit q.
class StateVector {
  public:
    StateVector() = default;

    /// |0...0> on n qubits.
    explicit StateVector(int n, int max_qubits = kDefaultStatevectorGuard) : n_(n) {
        if (n < 1) {
            throw DomainError("StateVector: need at least one qubit");
        }
        check_statevector_guard(n, max_qubits);
        amps_.assign(std::size_t{1} << n, Complex{0.0, 0.0});
        amps_[0] = 1.0;
    }

    StateVector(int n, std::vector<Complex> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
        if (n < 1 || n > kMaxQubits || amps_.size() != (std::size_t{1} << n)) {
            throw DomainError("StateVector: amplitude count must be 2^n");
        }
    }

    static StateVector basis_state(int n, Bits bits) {
        StateVector s(n);
        s.amps_[0] = 0.0;
        s.amps_[bits] = 1.0;
        return s;
    }

    int num_qubits() const { return n_; }
    std::size_t size() const { return amps_.size(); }

    Complex& operator[](std::size_t i) { return amps_[i]; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }

    std::span<Complex> amplitudes() { return amps_; }
    std::span<const Complex> amplitudes() const { return amps_; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    double norm() const { return std::sqrt(norm_squared()); }

  private:
    int n_ = 0;
    std::vector<Complex> amps_;
};

inline Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) {
        throw DomainError("inner_product: register sizes differ");
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// |<a|b>|^2
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

}  // namespace signdicke
