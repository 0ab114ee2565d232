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
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "signdicke/combinatorics.hpp"
#include "signdicke/dicke_state.hpp"
#include "signdicke/errors.hpp"
#include "signdicke/parallel.hpp"
#include "signdicke/pauli.hpp"
#include "signdicke/rng.hpp"

namespace signdicke {

/// Ordered pair of qubits joined by a CZ gate.
struct CzPair {
    int a = 0;
    int b = 0;
    friend bool operator==(const CzPair&, const CzPair&) = default;
};

/// -sum_{i<j} (X_i X_j + Y_i Y_j) - h sum_i Z_i.
inline PauliSum build_lmg(int n, double h) {
    if (n < 2) {
        throw DomainError("build_lmg: need at least 2 qubits");
    }
    std::vector<PauliTerm> terms;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            PauliString xx = PauliString::single(n, i, 'X');
            xx.set(j, 'X');
            PauliString yy = PauliString::single(n, i, 'Y');
            yy.set(j, 'Y');
            terms.push_back({-1.0, xx});
            terms.push_back({-1.0, yy});
        }
        terms.push_back({-h, PauliString::single(n, i, 'Z')});
    }
    return PauliSum(n, std::move(terms));
}

/// CZ(i,j) = (I + Z_i + Z_j - Z_i Z_j) / 2.
inline PauliSum cz_as_pauli(int i, int j, int n) {
    if (i == j) {
        throw DomainError("cz_as_pauli: qubits must differ");
    }
    if (i < 0 || j < 0 || i >= n || j >= n) {
        throw DomainError("cz_as_pauli: qubit index out of range");
    }
    PauliString zz = PauliString::single(n, i, 'Z');
    zz.set(j, 'Z');
    return PauliSum(n, {{0.5, PauliString::identity(n)},
                        {0.5, PauliString::single(n, i, 'Z')},
                        {0.5, PauliString::single(n, j, 'Z')},
                        {-0.5, zz}});
}

inline void validate_cz_pairs(int n, std::span<const CzPair> xi) {
    for (const auto& p : xi) {
        if (p.a == p.b || p.a < 0 || p.b < 0 || p.a >= n || p.b >= n) {
            throw DomainError("invalid CZ pair (" + std::to_string(p.a) + "," + std::to_string(p.b) + ") for " +
                              std::to_string(n) + " qubits");
        }
    }
}

namespace detail {

/// Image of the letter on qubit q under CZ(q, other): X -> X Z_other,
/// Y -> Y Z_other, Z and I unchanged.
inline PauliString cz_letter_image(const PauliString& p, int q, int other) {
    char l = p.letter(q);
    PauliString img = PauliString::single(p.n, q, l);
    if (l == 'X' || l == 'Y') {
        img.set(other, 'Z');
    }
    return img;
}

/// CZ(a,b) P CZ(a,b) for a single string, with the resulting phase.
inline std::pair<Complex, PauliString> conjugate_by_cz(const PauliString& p, int a, int b) {
    PauliString rest = p;
    rest.set(a, 'I');
    rest.set(b, 'I');
    auto [ph1, ab] = multiply(cz_letter_image(p, a, b), cz_letter_image(p, b, a));
    auto [ph2, out] = multiply(ab, rest);
    return {i_power(ph1 + ph2), out};
}

}  // namespace detail

/// xi H xi^dagger for xi a product of CZ gates, by rewriting each term with
/// the CZ Clifford rules. CZ gates commute, so the pair order is immaterial.
inline PauliSum conjugate(const PauliSum& h, std::span<const CzPair> xi, unsigned threads = 1) {
    validate_cz_pairs(h.num_qubits(), xi);
    const auto& in = h.terms();
    std::vector<PauliTerm> out(in.size());
    parallel_for(
        in.size(),
        [&](std::size_t t) {
            Complex c = in[t].coefficient;
            PauliString p = in[t].string;
            for (const auto& pair : xi) {
                auto [phase, q] = detail::conjugate_by_cz(p, pair.a, pair.b);
                c *= phase;
                p = q;
            }
            out[t] = {c, p};
        },
        threads);
    return PauliSum(h.num_qubits(), std::move(out));
}

/// xi as an explicit Pauli sum.
inline PauliSum cz_product_as_pauli(int n, std::span<const CzPair> xi) {
    validate_cz_pairs(n, xi);
    PauliSum s = PauliSum::identity(n);
    for (const auto& p : xi) {
        s = s * cz_as_pauli(p.a, p.b, n);
    }
    return s;
}

/// xi H xi by full Pauli-sum multiplication.
inline PauliSum conjugate_by_product(const PauliSum& h, std::span<const CzPair> xi) {
    PauliSum x = cz_product_as_pauli(h.num_qubits(), xi);
    return x * h * x;
}

/// True when [H, sum_i Z_i] vanishes identically.
inline bool conserves_excitations(const PauliSum& h) {
    return commutator(h, total_z(h.num_qubits())).empty();
}

/// out = H in over the full 2^n space.
inline void apply_pauli_sum(const PauliSum& h, std::span<const Complex> in, std::span<Complex> out) {
    const int n = h.num_qubits();
    if (n > 30 || in.size() != (std::size_t{1} << n) || out.size() != in.size()) {
        throw DomainError("apply_pauli_sum: vector length must be 2^n");
    }
    std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
    for (const auto& t : h.terms()) {
        for (std::size_t b = 0; b < in.size(); ++b) {
            if (in[b] == Complex{0.0, 0.0}) {
                continue;
            }
            auto act = act_on_basis(t.string, b);
            out[act.target] += t.coefficient * act.amplitude * in[b];
        }
    }
}

/// Restriction of an excitation-conserving H to the weight-w sector, indexed
/// by colex rank.
class SectorOperator {
public:
    SectorOperator(const PauliSum& h, int w) : h_(&h), n_(h.num_qubits()), w_(w) {
        const Index dim = binomial(n_, w_);
        if (w < 0 || w > n_ || dim == 0) {
            throw InvalidWeightError("sector weight out of range");
        }
        basis_.reserve(dim);
        for_each_weight_k(n_, w_, [&](Index, Bits b) { basis_.push_back(b); });
    }

    std::size_t dim() const { return basis_.size(); }
    std::span<const Bits> basis() const { return basis_; }

    void apply(std::span<const Complex> in, std::span<Complex> out) const {
        std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
        for (const auto& t : h_->terms()) {
            const bool keeps = std::popcount(t.string.x) == 0;
            for (std::size_t r = 0; r < basis_.size(); ++r) {
                auto act = act_on_basis(t.string, basis_[r]);
                if (!keeps && std::popcount(act.target) != w_) {
                    continue;  // cancels against other terms when H conserves weight
                }
                out[keeps ? r : colex_rank(act.target)] += t.coefficient * act.amplitude * in[r];
            }
        }
    }

private:
    const PauliSum* h_;
    int n_;
    int w_;
    std::vector<Bits> basis_;
};

struct LanczosOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 1000;
    std::uint64_t seed = 0x1a2c05ULL;
};

struct LanczosResult {
    double eigenvalue = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

namespace detail {

/// Number of eigenvalues of the symmetric tridiagonal (alpha, beta) below x.
inline std::size_t sturm_count(std::span<const double> alpha, std::span<const double> beta, double x) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        double off = i == 0 ? 0.0 : beta[i - 1] * beta[i - 1] / q;
        q = alpha[i] - x - off;
        if (q == 0.0) {
            q = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

inline double tridiagonal_min_eigenvalue(std::span<const double> alpha, std::span<const double> beta) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        double r = (i > 0 ? std::abs(beta[i - 1]) : 0.0) + (i + 1 < alpha.size() ? std::abs(beta[i]) : 0.0);
        lo = std::min(lo, alpha[i] - r);
        hi = std::max(hi, alpha[i] + r);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (sturm_count(alpha, beta, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

}  // namespace detail

/// Smallest eigenvalue of a Hermitian operator given by its action, via
/// Lanczos with full reorthogonalization and Sturm bisection on the
/// tridiagonal projection.
template <typename MatVec>
LanczosResult lanczos_min_eigenvalue(MatVec&& apply, std::size_t dim, const LanczosOptions& opt = {}) {
    if (dim == 0) {
        throw DomainError("lanczos_min_eigenvalue: empty space");
    }
    Rng rng(opt.seed);
    std::vector<std::vector<Complex>> basis;
    std::vector<Complex> v(dim);
    double norm = 0.0;
    for (auto& c : v) {
        c = {standard_normal(rng), standard_normal(rng)};
        norm += std::norm(c);
    }
    for (auto& c : v) {
        c /= std::sqrt(norm);
    }
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<Complex> w(dim);
    LanczosResult res;
    double prev = std::numeric_limits<double>::infinity();
    int stable = 0;
    const std::size_t limit = std::min(dim, opt.max_iterations);
    for (std::size_t j = 0; j < limit; ++j) {
        basis.push_back(v);
        apply(std::span<const Complex>(basis.back()), std::span<Complex>(w));
        double a = detail::dot(basis.back(), w).real();
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : basis) {
                Complex c = detail::dot(u, w);
                for (std::size_t i = 0; i < dim; ++i) {
                    w[i] -= c * u[i];
                }
            }
        }
        double b = std::sqrt(detail::dot(w, w).real());
        double theta = detail::tridiagonal_min_eigenvalue(alpha, beta);
        res.eigenvalue = theta;
        res.iterations = j + 1;
        double scale = std::max(1.0, std::abs(theta));
        if (b <= 1e-12 * std::max(1.0, std::abs(a)) || j + 1 == dim) {
            res.converged = true;
            return res;
        }
        stable = std::abs(theta - prev) <= opt.tolerance * scale ? stable + 1 : 0;
        if (stable >= 3) {
            res.converged = true;
            return res;
        }
        prev = theta;
        beta.push_back(b);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = w[i] / b;
        }
    }
    return res;
}

/// Smallest eigenvalue of H restricted to the weight-w sector.
inline double sector_min_eigenvalue(const PauliSum& h, int w, const LanczosOptions& opt = {}) {
    SectorOperator op(h, w);
    auto res = lanczos_min_eigenvalue([&](std::span<const Complex> in, std::span<Complex> out) { op.apply(in, out); },
                                      op.dim(), opt);
    if (!res.converged) {
        throw NumericalError("Lanczos did not converge in sector " + std::to_string(w));
    }
    return res.eigenvalue;
}

inline constexpr int kGroundStateGuard = 12;

struct GroundStateCheck {
    bool is_eigenstate = false;
    double energy = 0.0;
    bool is_ground = false;
    double residual = 0.0;
    /// Minimum over all excitation sectors.
    double ground_energy = 0.0;
    /// Minimum within the candidate's own sector.
    double sector_ground_energy = 0.0;
};

/// Tests whether a signed Dicke state is an eigenstate of H and whether its
/// energy is the global minimum. H must be Hermitian and conserve the
/// excitation number.
inline GroundStateCheck ground_state_check(const PauliSum& h, const SignedDickeState& candidate,
                                           const LanczosOptions& opt = {}) {
    const int n = candidate.num_qubits();
    if (n > kGroundStateGuard) {
        throw ResourceError("ground_state_check supports at most " + std::to_string(kGroundStateGuard) +
                            " qubits, got " + std::to_string(n));
    }
    if (h.num_qubits() != n) {
        throw DomainError("Hamiltonian and state widths differ");
    }
    if (!h.is_hermitian()) {
        throw DomainError("ground_state_check: Hamiltonian is not Hermitian");
    }
    if (!conserves_excitations(h)) {
        throw DomainError("ground_state_check: Hamiltonian does not conserve the excitation number");
    }
    StateVector psi = embed_statevector(candidate, kGroundStateGuard);
    std::vector<Complex> hpsi(psi.size());
    apply_pauli_sum(h, psi.amplitudes(), hpsi);
    GroundStateCheck out;
    out.energy = detail::dot(psi.amplitudes(), hpsi).real();
    double r2 = 0.0;
    for (std::size_t i = 0; i < hpsi.size(); ++i) {
        r2 += std::norm(hpsi[i] - out.energy * psi[i]);
    }
    out.residual = std::sqrt(r2);
    out.is_eigenstate = out.residual < 1e-9;
    out.ground_energy = std::numeric_limits<double>::infinity();
    for (int w = 0; w <= n; ++w) {
        double e = sector_min_eigenvalue(h, w, opt);
        out.ground_energy = std::min(out.ground_energy, e);
        if (w == candidate.excitations()) {
            out.sector_ground_energy = e;
        }
    }
    out.is_ground = out.is_eigenstate && out.energy <= out.ground_energy + 1e-8 * std::max(1.0, std::abs(out.ground_energy));
    return out;
}

/// Field at which the LMG ground state passes between |D_n^k> and
/// |D_n^{k+1}>: n - 2k - 1.
inline double critical_field(int n, int k) {
    if (k < 0 || k >= n) {
        throw DomainError("critical_field: need 0 <= k < n");
    }
    return static_cast<double>(n - 2 * k - 1);
}

/// Closed-form LMG energy of |D_n^k>: -2k(n-k) - h(n-2k).
inline double lmg_dicke_energy(int n, int k, double h) {
    if (k < 0 || k > n) {
        throw InvalidWeightError("lmg_dicke_energy: need 0 <= k <= n");
    }
    return -2.0 * k * (n - k) - h * (n - 2 * k);
}

/// Excitation number of the LMG ground state at field h, found by
/// diagonalizing every sector. Ties resolve to the smaller index.
inline int ground_state_dicke_index(int n, double h, const LanczosOptions& opt = {}) {
    PauliSum lmg = build_lmg(n, h);
    int best = 0;
    double best_e = std::numeric_limits<double>::infinity();
    for (int w = 0; w <= n; ++w) {
        double e = sector_min_eigenvalue(lmg, w, opt);
        if (e < best_e - 1e-9 * std::max(1.0, std::abs(e))) {
            best_e = e;
            best = w;
        }
    }
    return best;
}

}  // namespace signdicke
