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

#include <Eigen/Dense>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "signdicke/hamiltonian.hpp"

namespace signdicke::testing {

// Entropy by explicit partial trace of the dense 2^n amplitude vector.
inline double dense_entropy(const SignedDickeState& s, const Bipartition& part) {
    StateVector v = embed_statevector(s);
    const auto da = std::size_t{1} << part.size_a();
    const auto db = std::size_t{1} << part.size_b();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
    for (std::size_t b = 0; b < v.size(); ++b) {
        m(static_cast<Eigen::Index>(part.extract_a(b)), static_cast<Eigen::Index>(part.extract_b(b))) = v[b].real();
    }
    Eigen::MatrixXd rho = m * m.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
    double e = 0.0;
    for (double l : es.eigenvalues()) {
        if (l > 1e-15) {
            e -= l * std::log2(l);
        }
    }
    return e;
}


using Dense = Eigen::MatrixXcd;

// Kronecker product of 2x2 letters with qubit 0 as the leftmost factor.
inline Dense dense_string(const PauliString& p) {
    Dense out = Dense::Identity(1, 1);
    for (int q = 0; q < p.n; ++q) {
        Eigen::Matrix2cd m;
        switch (p.letter(q)) {
            case 'X': m << 0, 1, 1, 0; break;
            case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
            case 'Z': m << 1, 0, 0, -1; break;
            default: m = Eigen::Matrix2cd::Identity();
        }
        Dense next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) {
                next.block<2, 2>(2 * r, 2 * c) = out(r, c) * m;
            }
        }
        out = next;
    }
    return out;
}

inline Dense dense(const PauliSum& s) {
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits();
    Dense out = Dense::Zero(dim, dim);
    for (const auto& t : s.terms()) {
        out += t.coefficient * dense_string(t.string);
    }
    return out;
}

// Diagonal unitary of a product of CZ gates.
inline Dense dense_cz_product(int n, std::span<const CzPair> xi) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Dense u = Dense::Identity(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        for (const auto& g : xi) {
            if ((b & qubit_mask(n, g.a)) && (b & qubit_mask(n, g.b))) {
                u(b, b) = -u(b, b);
            }
        }
    }
    return u;
}

// -(X_i X_j + Y_i Y_j) Z_{z1} Z_{z2} ...
inline void add_hop(PauliSum& h, int i, int j, std::initializer_list<int> zs) {
    for (char l : {'X', 'Y'}) {
        PauliString p = PauliString::single(h.num_qubits(), i, l);
        p.set(j, l);
        for (int z : zs) {
            p.set(z, 'Z');
        }
        h.add(-1.0, p);
    }
}

inline PauliSum four_qubit_parent() {
    PauliSum h(4);
    add_hop(h, 0, 1, {2});
    add_hop(h, 0, 2, {1});
    add_hop(h, 1, 3, {2});
    add_hop(h, 2, 3, {1});
    add_hop(h, 0, 3, {});
    add_hop(h, 1, 2, {});
    return h;
}

inline PauliSum six_qubit_parent() {
    PauliSum h(6);
    add_hop(h, 0, 1, {2, 3});
    add_hop(h, 4, 5, {2, 3});
    add_hop(h, 0, 2, {1, 4});
    add_hop(h, 3, 5, {1, 4});
    add_hop(h, 0, 3, {1, 5});
    add_hop(h, 2, 4, {1, 5});
    add_hop(h, 0, 4, {2, 5});
    add_hop(h, 1, 3, {2, 5});
    add_hop(h, 0, 5, {3, 4});
    add_hop(h, 1, 2, {3, 4});
    add_hop(h, 1, 4, {3, 5});
    add_hop(h, 1, 5, {2, 4});
    add_hop(h, 2, 3, {4, 5});
    add_hop(h, 2, 5, {1, 3});
    add_hop(h, 3, 4, {1, 2});
    return h;
}

inline const std::vector<CzPair> kSixQubitXi{{1, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}};

// Signs of the highly entangled six-qubit state in basis order.
inline SignedDickeState six_qubit_state() {
    const std::vector<std::string> negative{"001101", "001110", "010011", "010110", "011001",
                                            "100011", "100101", "101010", "110100", "111000"};
    std::vector<int> signs(20, 1);
    for (const auto& s : negative) {
        signs[colex_rank(parse_bitstring(s))] = -1;
    }
    return signed_dicke_from_signs(6, 3, signs);
}

inline SignedDickeState signs_from_xi(int n, int k, std::span<const CzPair> xi) {
    std::vector<int> signs;
    for_each_weight_k(n, k, [&](Index, Bits b) {
        int s = 1;
        for (const auto& g : xi) {
            if ((b & qubit_mask(n, g.a)) && (b & qubit_mask(n, g.b))) {
                s = -s;
            }
        }
        signs.push_back(s);
    });
    return signed_dicke_from_signs(n, k, signs);
}

inline std::vector<CzPair> random_xi(int n, int gates, Rng& rng) {
    std::vector<CzPair> xi;
    while (static_cast<int>(xi.size()) < gates) {
        int a = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
        int b = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
        if (a != b) {
            xi.push_back({a, b});
        }
    }
    return xi;
}

}  // namespace signdicke::testing
