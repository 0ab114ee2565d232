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
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "signdicke/combinatorics.hpp"
#include "signdicke/dicke_state.hpp"
#include "signdicke/errors.hpp"
#include "signdicke/record.hpp"
#include "signdicke/rng.hpp"
#include "signdicke/statevector.hpp"

namespace signdicke {

enum class GateKind { X, CNOT, CZ, CRY, CCRY, U0, MCZ };

/// A gate on explicit qubit labels. Controlled kinds act on `target` when
/// every control is 1. CZ and MCZ are symmetric: the "target" is just the last
/// participating qubit. Angles are in radians.
struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> controls;
    int target = 0;
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;

    static Gate x(int t) { return {GateKind::X, {}, t}; }
    static Gate cnot(int c, int t) { return {GateKind::CNOT, {c}, t}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, {a}, b}; }
    static Gate cry(double theta, int c, int t) { return {GateKind::CRY, {c}, t, theta}; }
    static Gate ccry(double theta, int c1, int c2, int t) { return {GateKind::CCRY, {c1, c2}, t, theta}; }
    static Gate u0(double theta, double phi, double lambda, int t) {
        return {GateKind::U0, {}, t, theta, phi, lambda};
    }
    static Gate mcz(std::vector<int> controls, int t) { return {GateKind::MCZ, std::move(controls), t}; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

using Matrix2 = std::array<Complex, 4>;  // row-major

/// Y rotation: [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
inline Matrix2 ry_matrix(double theta) {
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    return {Complex{c, 0.0}, Complex{-s, 0.0}, Complex{s, 0.0}, Complex{c, 0.0}};
}

/// Universal rotation U0(theta, phi, lambda) =
/// [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]].
inline Matrix2 u0_matrix(double theta, double phi, double lambda) {
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    return {Complex{c, 0.0}, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
}

namespace detail {

// (a + ib)(c + id) without the inf/nan recovery path of operator*.
inline Complex cmul(Complex x, Complex y) {
    return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

inline void validate_gate(const Gate& g, int n) {
    std::vector<int> labels = g.controls;
    labels.push_back(g.target);
    std::size_t want = 1;
    switch (g.kind) {
        case GateKind::X:
        case GateKind::U0:
            want = 1;
            break;
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CRY:
            want = 2;
            break;
        case GateKind::CCRY:
            want = 3;
            break;
        case GateKind::MCZ:
            want = labels.size();
            break;
    }
    if (labels.size() != want) {
        throw DomainError("gate has the wrong number of qubits");
    }
    for (int q : labels) {
        if (q < 0 || q >= n) {
            throw DomainError("gate qubit label " + std::to_string(q) + " outside [0, " + std::to_string(n) + ")");
        }
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        throw DomainError("gate qubit labels must be distinct");
    }
}

inline void apply_controlled(StateVector& s, Bits ctrl, Bits tmask, const Matrix2& u) {
    auto amps = s.amplitudes();
    const std::size_t size = amps.size();
    for (std::size_t i = 0; i < size; ++i) {
        if ((i & tmask) != 0 || (i & ctrl) != ctrl) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | tmask];
        amps[i] = cmul(u[0], a0) + cmul(u[1], a1);
        amps[i | tmask] = cmul(u[2], a0) + cmul(u[3], a1);
    }
}

inline void apply_phase_flip(StateVector& s, Bits all) {
    auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & all) == all) {
            amps[i] = -amps[i];
        }
    }
}

}  // namespace detail

/// Applies g in place. Throws DomainError for invalid labels.
inline void apply(StateVector& s, const Gate& g) {
    const int n = s.num_qubits();
    detail::validate_gate(g, n);
    Bits ctrl = 0;
    for (int c : g.controls) {
        ctrl |= qubit_mask(n, c);
    }
    const Bits t = qubit_mask(n, g.target);
    static const Matrix2 kX = {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}};
    switch (g.kind) {
        case GateKind::X:
        case GateKind::CNOT:
            detail::apply_controlled(s, ctrl, t, kX);
            break;
        case GateKind::CRY:
        case GateKind::CCRY:
            detail::apply_controlled(s, ctrl, t, ry_matrix(g.theta));
            break;
        case GateKind::U0:
            detail::apply_controlled(s, 0, t, u0_matrix(g.theta, g.phi, g.lambda));
            break;
        case GateKind::CZ:
        case GateKind::MCZ:
            detail::apply_phase_flip(s, ctrl | t);
            break;
    }
}

inline StateVector apply_gate(StateVector s, const Gate& g) {
    apply(s, g);
    return s;
}

enum class CircuitPart { Preparation, SignLayer, Mixed };

struct CircuitSpec {
    int n = 0;
    std::vector<Gate> gates;
    CircuitPart part = CircuitPart::Mixed;

    void validate() const {
        for (const auto& g : gates) {
            detail::validate_gate(g, n);
        }
    }

    CircuitSpec& append(const CircuitSpec& other) {
        if (other.n != n) {
            throw DomainError("CircuitSpec::append: register sizes differ");
        }
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
        if (other.part != part) {
            part = CircuitPart::Mixed;
        }
        return *this;
    }
};

inline void run(const CircuitSpec& c, StateVector& s) {
    if (c.n != s.num_qubits()) {
        throw DomainError("run: circuit and state register sizes differ");
    }
    for (const auto& g : c.gates) {
        apply(s, g);
    }
}

namespace detail {

// Split-and-cyclic-shift block SCS_{l,k} on qubits 0..l-1.
inline void append_scs(std::vector<Gate>& out, int l, int k) {
    const int last = l - 1;
    out.push_back(Gate::cnot(last - 1, last));
    out.push_back(Gate::cry(2.0 * std::acos(std::sqrt(1.0 / l)), last, last - 1));
    out.push_back(Gate::cnot(last - 1, last));
    for (int j = 2; j <= k; ++j) {
        const int t = l - j - 1;
        out.push_back(Gate::cnot(t, last));
        out.push_back(Gate::ccry(2.0 * std::acos(std::sqrt(static_cast<double>(j) / l)), last, t + 1, t));
        out.push_back(Gate::cnot(t, last));
    }
}

}  // namespace detail

/// Deterministic circuit taking |0...0> to the Dicke state |D_n^k>: X gates on
/// the last k qubits, then the split-and-cyclic-shift cascade
/// SCS_{n,k} ... SCS_{k+1,k} SCS_{k,k-1} ... SCS_{2,1}.
inline CircuitSpec build_dicke_prep(int n, int k) {
    if (n < 1 || k < 0 || k > n) {
        throw DomainError("build_dicke_prep: need 0 <= k <= n");
    }
    CircuitSpec c{n, {}, CircuitPart::Preparation};
    for (int q = n - k; q < n; ++q) {
        c.gates.push_back(Gate::x(q));
    }
    if (k == 0 || k == n) {
        return c;
    }
    for (int l = n; l > k; --l) {
        detail::append_scs(c.gates, l, k);
    }
    for (int l = k; l >= 2; --l) {
        detail::append_scs(c.gates, l, l - 1);
    }
    return c;
}

enum class PairSampling {
    /// floor(n^2/2) slots; each draws a uniformly random unordered pair (with
    /// replacement across slots) and keeps it with probability q.
    Slots,
    /// Each of the n(n-1)/2 pairs is kept once with probability q.
    AllPairs,
};

/// Random layer of CZ gates imposing a sign structure.
inline CircuitSpec build_random_cz_layer(int n, double q, std::uint64_t seed, PairSampling mode = PairSampling::Slots) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw DomainError("build_random_cz_layer: probability q must lie in [0, 1]");
    }
    if (n < 1) {
        throw DomainError("build_random_cz_layer: need n >= 1");
    }
    CircuitSpec c{n, {}, CircuitPart::SignLayer};
    if (n < 2) {
        return c;
    }
    Rng rng(seed);
    if (mode == PairSampling::Slots) {
        const int slots = n * n / 2;
        for (int s = 0; s < slots; ++s) {
            int i = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
            int j = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - 1)));
            if (j >= i) {
                ++j;
            }
            if (bernoulli(rng, q)) {
                c.gates.push_back(Gate::cz(std::min(i, j), std::max(i, j)));
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (bernoulli(rng, q)) {
                    c.gates.push_back(Gate::cz(i, j));
                }
            }
        }
    }
    return c;
}

/// Dicke preparation followed by a random CZ layer, applied to |0...0>.
inline StateVector run_prep_protocol(int n, int k, double q, std::uint64_t seed,
                                     PairSampling mode = PairSampling::Slots,
                                     int max_qubits = kDefaultStatevectorGuard) {
    check_statevector_guard(n, max_qubits);
    CircuitSpec c = build_dicke_prep(n, k);
    c.append(build_random_cz_layer(n, q, seed, mode));
    StateVector s(n, max_qubits);
    run(c, s);
    return s;
}

/// Reads a signed Dicke state back out of a statevector whose amplitudes are
/// real, +-1/sqrt(C(n,k)) on the weight-k sector and zero elsewhere.
inline SignedDickeState read_signs(const StateVector& s, int k, double tol = 1e-9) {
    const int n = s.num_qubits();
    SignedDickeState base(n, k);
    const double mag = 1.0 / std::sqrt(static_cast<double>(base.size()));
    std::vector<std::uint64_t> words(base.negative_words().size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Complex a = s[i];
        if (std::popcount(static_cast<Bits>(i)) != k) {
            if (std::abs(a) > tol) {
                throw DomainError("read_signs: amplitude outside the weight-k sector");
            }
            continue;
        }
        if (std::abs(a.imag()) > tol || std::abs(std::abs(a.real()) - mag) > tol) {
            throw DomainError("read_signs: amplitude of " + format_bitstring(i, n) + " is not +-1/sqrt(C(n,k))");
        }
        if (a.real() < 0.0) {
            Index r = colex_rank(i);
            words[r / 64] |= std::uint64_t{1} << (r % 64);
        }
    }
    return SignedDickeState(n, k, std::move(words));
}

/// Multi-controlled-Z oracle for one basis state: flips the sign of exactly
/// the amplitude of `pattern`.
inline void apply_mcz_oracle(StateVector& s, Bits pattern) {
    if (pattern >= s.size()) {
        throw DomainError("apply_mcz_oracle: pattern wider than the register");
    }
    s[pattern] = -s[pattern];
}

inline StateVector mcz_oracle(StateVector s, Bits pattern) {
    apply_mcz_oracle(s, pattern);
    return s;
}

enum class MeasurementBasis { Z, RandomPerShot };

enum class AxisSampling {
    /// Measurement axis uniform over the Bloch-sphere octant theta, phi in
    /// [0, pi/2] (cos theta uniform on [0, 1]); lambda uniform on [0, pi/2].
    SphereSegment,
    /// theta, phi, lambda each uniform on [0, pi/2].
    UniformAngles,
};

struct RandomAngles {
    double theta;
    double phi;
    double lambda;
};

inline RandomAngles draw_axis(Rng& rng, AxisSampling mode) {
    constexpr double kQuarter = std::numbers::pi / 2.0;
    RandomAngles a{};
    a.theta = mode == AxisSampling::SphereSegment ? std::acos(1.0 - uniform01(rng)) : kQuarter * uniform01(rng);
    a.phi = kQuarter * uniform01(rng);
    a.lambda = kQuarter * uniform01(rng);
    return a;
}

namespace detail {

// Samples one outcome of u^{(x)n}|psi> in the computational basis, qubit by
// qubit from qubit 0: the marginal of the leading qubit only depends on the
// rotation applied to it, and the conditional state of the rest is the
// corresponding half of the rotated vector.
inline Bits sample_rotated(std::span<const Complex> psi, const Matrix2& u, Rng& rng, std::vector<Complex>& buf_a,
                           std::vector<Complex>& buf_b) {
    std::size_t size = psi.size();
    const Complex* in = psi.data();
    bool into_a = true;
    Bits outcome = 0;
    while (size > 1) {
        const std::size_t half = size / 2;
        Complex* out = into_a ? buf_a.data() : buf_b.data();
        Complex* out0 = out;
        Complex* out1 = out + half;
        double p0 = 0.0;
        double p1 = 0.0;
        for (std::size_t i = 0; i < half; ++i) {
            const Complex a0 = in[i];
            const Complex a1 = in[i + half];
            const Complex b0 = cmul(u[0], a0) + cmul(u[1], a1);
            const Complex b1 = cmul(u[2], a0) + cmul(u[3], a1);
            out0[i] = b0;
            out1[i] = b1;
            p0 += std::norm(b0);
            p1 += std::norm(b1);
        }
        const bool one = uniform01(rng) * (p0 + p1) >= p0;
        outcome = (outcome << 1) | Bits(one);
        in = one ? out1 : out0;
        size = half;
        into_a = !into_a;
    }
    return outcome;
}

// Real counterpart of sample_rotated for u = [[c, -s], [s, c]].
inline Bits sample_rotated_real(std::span<const double> psi, double c, double s, Rng& rng, std::vector<double>& buf_a,
                                std::vector<double>& buf_b) {
    std::size_t size = psi.size();
    const double* in = psi.data();
    bool into_a = true;
    Bits outcome = 0;
    while (size > 1) {
        const std::size_t half = size / 2;
        double* out0 = into_a ? buf_a.data() : buf_b.data();
        double* out1 = out0 + half;
        double p0 = 0.0;
        double p1 = 0.0;
        for (std::size_t i = 0; i < half; ++i) {
            const double a0 = in[i];
            const double a1 = in[i + half];
            const double b0 = c * a0 - s * a1;
            const double b1 = s * a0 + c * a1;
            out0[i] = b0;
            out1[i] = b1;
            p0 += b0 * b0;
            p1 += b1 * b1;
        }
        const bool one = uniform01(rng) * (p0 + p1) >= p0;
        outcome = (outcome << 1) | Bits(one);
        in = one ? out1 : out0;
        size = half;
        into_a = !into_a;
    }
    return outcome;
}

// Real amplitudes supported on a single Hamming weight, or empty.
inline std::vector<double> real_fixed_weight_amplitudes(const StateVector& state) {
    std::vector<double> re(state.size());
    int weight = -1;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const Complex a = state[i];
        if (a.imag() != 0.0) {
            return {};
        }
        re[i] = a.real();
        if (a.real() != 0.0) {
            const int w = std::popcount(static_cast<Bits>(i));
            if (weight >= 0 && w != weight) {
                return {};
            }
            weight = w;
        }
    }
    return re;
}

}  // namespace detail

/// Projective measurements of `state`. Z basis samples |amplitude|^2 directly;
/// RandomPerShot draws fresh angles each shot, applies U0 to every qubit and
/// then measures in Z.
inline BitstringRecord sample_measurements(const StateVector& state, std::size_t shots, MeasurementBasis basis,
                                           std::uint64_t seed, AxisSampling axis = AxisSampling::SphereSegment) {
    const int n = state.num_qubits();
    BitstringRecord rec;
    rec.n = n;
    rec.symbols.reserve(shots * static_cast<std::size_t>(n));
    Rng rng(seed);
    if (basis == MeasurementBasis::Z) {
        std::vector<double> cdf(state.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i) {
            acc += std::norm(state[i]);
            cdf[i] = acc;
        }
        for (std::size_t s = 0; s < shots; ++s) {
            double u = uniform01(rng) * acc;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) {
                // u rounded up to the total; take the last outcome with weight.
                it = std::lower_bound(cdf.begin(), cdf.end(), acc);
            }
            rec.append_shot(static_cast<Bits>(it - cdf.begin()));
        }
        return rec;
    }
    // With one U0 on every qubit, U0 = diag(1, e^{i phi}) Ry(theta) diag(1, e^{i lambda}).
    // The left phases do not change outcome probabilities and the right ones
    // contribute e^{i lambda w}, a global phase on a weight-w state, so such
    // states only need the real rotation.
    if (auto re = detail::real_fixed_weight_amplitudes(state); !re.empty()) {
        std::vector<double> buf_a(state.size());
        std::vector<double> buf_b(state.size() / 2 + 1);
        for (std::size_t s = 0; s < shots; ++s) {
            RandomAngles a = draw_axis(rng, axis);
            rec.append_shot(detail::sample_rotated_real(re, std::cos(a.theta / 2), std::sin(a.theta / 2), rng, buf_a,
                                                        buf_b));
        }
        return rec;
    }
    std::vector<Complex> buf_a(state.size());
    std::vector<Complex> buf_b(state.size() / 2 + 1);
    for (std::size_t s = 0; s < shots; ++s) {
        RandomAngles a = draw_axis(rng, axis);
        Matrix2 u = u0_matrix(a.theta, a.phi, a.lambda);
        rec.append_shot(detail::sample_rotated(state.amplitudes(), u, rng, buf_a, buf_b));
    }
    return rec;
}

inline std::string gate_name(GateKind k) {
    switch (k) {
        case GateKind::X:
            return "X";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CRY:
            return "CRY";
        case GateKind::CCRY:
            return "CCRY";
        case GateKind::U0:
            return "U0";
        case GateKind::MCZ:
            return "MCZ";
    }
    return "?";
}

/// Line-oriented circuit text: a "qubits <n>" header, then one gate per line:
///   X 3 | CZ 1 2 | CNOT c=0 t=1 | CRY <theta> c=3 t=2 | CCRY <theta> c=3,2 t=1
///   U0 <theta> <phi> <lambda> t=0 | MCZ c=0,1,2 t=3
/// Angles are written with 17 significant digits.
inline std::string dump_circuit(const CircuitSpec& c) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "qubits " << c.n << '\n';
    auto controls = [](const std::vector<int>& cs) {
        std::string s;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            s += (i ? "," : "") + std::to_string(cs[i]);
        }
        return s;
    };
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::X:
                out << "X " << g.target;
                break;
            case GateKind::CZ:
                out << "CZ " << g.controls[0] << ' ' << g.target;
                break;
            case GateKind::CNOT:
                out << "CNOT c=" << g.controls[0] << " t=" << g.target;
                break;
            case GateKind::CRY:
            case GateKind::CCRY:
                out << gate_name(g.kind) << ' ' << g.theta << " c=" << controls(g.controls) << " t=" << g.target;
                break;
            case GateKind::U0:
                out << "U0 " << g.theta << ' ' << g.phi << ' ' << g.lambda << " t=" << g.target;
                break;
            case GateKind::MCZ:
                out << "MCZ c=" << controls(g.controls) << " t=" << g.target;
                break;
        }
        out << '\n';
    }
    return out.str();
}

inline CircuitSpec parse_circuit(std::istream& in) {
    CircuitSpec c;
    bool have_header = false;
    std::string line;
    auto parse_int = [](const std::string& s) {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) {
            throw DomainError("circuit: bad integer '" + s + "'");
        }
        return v;
    };
    auto parse_list = [&](const std::string& s) {
        std::vector<int> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(parse_int(item));
        }
        return out;
    };
    auto keyed = [](const std::string& tok, const char* key) {
        std::string prefix = std::string(key) + "=";
        if (tok.rfind(prefix, 0) != 0) {
            throw DomainError("circuit: expected '" + prefix + "...' but found '" + tok + "'");
        }
        return tok.substr(prefix.size());
    };
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty() || tok[0][0] == '#') {
            continue;
        }
        try {
            if (tok[0] == "qubits" && tok.size() == 2) {
                c.n = parse_int(tok[1]);
                have_header = true;
            } else if (tok[0] == "X" && tok.size() == 2) {
                c.gates.push_back(Gate::x(parse_int(tok[1])));
            } else if (tok[0] == "CZ" && tok.size() == 3) {
                c.gates.push_back(Gate::cz(parse_int(tok[1]), parse_int(tok[2])));
            } else if (tok[0] == "CNOT" && tok.size() == 3) {
                c.gates.push_back(Gate::cnot(parse_int(keyed(tok[1], "c")), parse_int(keyed(tok[2], "t"))));
            } else if ((tok[0] == "CRY" || tok[0] == "CCRY") && tok.size() == 4) {
                Gate g{tok[0] == "CRY" ? GateKind::CRY : GateKind::CCRY, parse_list(keyed(tok[2], "c")),
                       parse_int(keyed(tok[3], "t")), std::stod(tok[1])};
                c.gates.push_back(g);
            } else if (tok[0] == "U0" && tok.size() == 5) {
                c.gates.push_back(Gate::u0(std::stod(tok[1]), std::stod(tok[2]), std::stod(tok[3]),
                                           parse_int(keyed(tok[4], "t"))));
            } else if (tok[0] == "MCZ" && tok.size() == 3) {
                c.gates.push_back(Gate::mcz(parse_list(keyed(tok[1], "c")), parse_int(keyed(tok[2], "t"))));
            } else {
                throw DomainError("circuit: cannot parse line '" + line + "'");
            }
        } catch (const std::logic_error&) {
            throw DomainError("circuit: cannot parse line '" + line + "'");
        }
    }
    if (!have_header) {
        throw DomainError("circuit: missing 'qubits <n>' header");
    }
    c.validate();
    return c;
}

}  // namespace signdicke
