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

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "signdicke.hpp"
#include "support/oracles.hpp"

using namespace signdicke;
using namespace signdicke::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
        }
        detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [FAIL]");
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

SignedDickeState pm_d42() {
    return SignedDickeState(4, 2).with_flipped(colex_rank(parse_bitstring("0110")));
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

Outcome golden_values() {
    Outcome o;
    const auto part = Bipartition::contiguous_half(4);
    const auto plain = von_neumann_entropy(build_blocked_matrix(SignedDickeState(4, 2), part));
    const auto sign = von_neumann_entropy(build_blocked_matrix(pm_d42(), part));
    const double e1 = std::abs(plain.entropy_bits - (std::log2(3.0) - 1.0 / 3.0));
    const double e2 = std::abs(sign.entropy_bits - (std::log2(3.0) + 1.0 / 3.0));
    o.require(e1 < 1e-10, "S(D_4^2)=" + fmt(plain.entropy_bits, 10) + " err " + sci(e1));
    o.require(e2 < 1e-10, "S(+-D_4^2)=" + fmt(sign.entropy_bits, 10) + " err " + sci(e2));
    const double s1 = max_abs_diff(plain.schmidt_spectrum, {2.0 / 3, 1.0 / 6, 1.0 / 6, 0.0});
    const double s2 = max_abs_diff(sign.schmidt_spectrum, {1.0 / 3, 1.0 / 3, 1.0 / 6, 1.0 / 6});
    o.require(s1 < 1e-10, "spectrum err " + sci(s1));
    o.require(s2 < 1e-10, "signed spectrum err " + sci(s2));
    return o;
}

const SweepResult& entropy_sweep() {
    static const SweepResult r = [] {
        SweepConfig c = default_config(ExperimentId::EntropyVsP);
        c.n_values = {14, 16, 18, 20};
        c.p_values = {0.0, 0.5};
        c.instances = 128;
        return run_entropy_vs_p(c);
    }();
    return r;
}

Outcome volume_law() {
    Outcome o;
    const auto& r = entropy_sweep();
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (r.at(i, "p") != 0.5) {
            continue;
        }
        const double n = r.at(i, "n");
        const double target = n / 2 - 0.8;
        const double mean = r.at(i, "mean");
        o.require(std::abs(mean - target) < 0.05,
                  "n=" + fmt(n, 0) + " mean " + fmt(mean) + " vs " + fmt(target) + " (tol 0.05)");
    }
    return o;
}

Outcome log_law() {
    Outcome o;
    const auto& r = entropy_sweep();
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (r.at(i, "p") != 0.0) {
            continue;
        }
        const double n = r.at(i, "n");
        const double target = 0.435 * std::log2(n / 2) + 0.787;
        const double mean = r.at(i, "mean");
        o.require(std::abs(mean - target) < 0.1,
                  "n=" + fmt(n, 0) + " mean " + fmt(mean) + " vs " + fmt(target) + " (tol 0.1)");
    }
    return o;
}

Outcome page_formula() {
    Outcome o;
    double worst = 0.0;
    for (int n = 14; n <= 40; n += 2) {
        worst = std::max(worst, std::abs(page_entropy(n / 2, n / 2) - (n / 2.0 - 1.0 / (2.0 * std::numbers::ln2))));
    }
    o.require(worst < 1e-3, "max |Page - asymptote| for n=14..40: " + sci(worst));
    Rng rng(8);
    const int n = 8;
    const int samples = 10000;
    for (int na = 1; na <= 4; ++na) {
        const Eigen::Index da = Eigen::Index{1} << na;
        const Eigen::Index db = Eigen::Index{1} << (n - na);
        double acc = 0.0;
        for (int s = 0; s < samples; ++s) {
            Eigen::MatrixXcd m(da, db);
            for (Eigen::Index r = 0; r < da; ++r) {
                for (Eigen::Index c = 0; c < db; ++c) {
                    m(r, c) = Complex(standard_normal(rng), standard_normal(rng));
                }
            }
            m /= m.norm();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m * m.adjoint(), Eigen::EigenvaluesOnly);
            for (double l : es.eigenvalues()) {
                if (l > 1e-15) {
                    acc -= l * std::log2(l);
                }
            }
        }
        const double haar = acc / samples;
        const double page = page_entropy(na, n - na);
        o.require(std::abs(haar - page) < 0.02,
                  "n_A=" + std::to_string(na) + " Page " + fmt(page) + " Haar " + fmt(haar) + " (tol 0.02)");
    }
    return o;
}

Outcome circuit_protocol() {
    Outcome o;
    SweepConfig c = default_config(ExperimentId::CircuitEntropy);
    c.n_values = {16};
    c.p_values = {0.5};
    c.instances = 128;
    c.bipartitions = 10;
    c.bipartition = BipartitionPolicy::Random;
    const SweepResult r = run_circuit_entropy(c);
    const double page = page_entropy(8, 8);
    const double mean = r.at(0, "mean");
    const double spread = r.at(0, "std_all");
    o.require(std::abs(mean - page) < 0.2, "mean " + fmt(mean) + " vs Page(8,8) " + fmt(page) + " (tol 0.2)");
    o.require(spread > 0.0, "std " + fmt(spread));
    c.pairs = PairSampling::AllPairs;
    o.detail += "; diagnostic all-pairs layer mean " + fmt(run_circuit_entropy(c).at(0, "mean"));
    return o;
}

Outcome preparation() {
    Outcome o;
    double worst = 0.0;
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            StateVector psi(n);
            run(build_dicke_prep(n, k), psi);
            worst = std::max(worst, 1.0 - fidelity(psi, embed_statevector(SignedDickeState(n, k))));
        }
    }
    o.require(worst <= 1e-10, "worst infidelity n<=12 all k: " + sci(worst));
    StateVector psi(4);
    CircuitSpec c = build_dicke_prep(4, 2);
    c.gates.push_back(Gate::cz(1, 2));
    run(c, psi);
    const StateVector want = embed_statevector(pm_d42());
    double diff = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        diff = std::max(diff, std::abs(psi[i] - want[i]));
    }
    o.require(diff < 1e-12, "4-qubit circuit with CZ(1,2) amplitude error " + sci(diff));
    return o;
}

Outcome dissimilarity() {
    Outcome o;
    SweepConfig c = default_config(ExperimentId::DissimVsP);
    c.n_values = {16};
    c.p_values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    c.instances = 100;
    c.shots = 8192;
    const SweepResult r = run_dissim_vs_p(c);
    const double d0 = r.at(0, "mean");
    const double d5 = r.at(5, "mean");
    o.require(std::abs(d0 - 0.33) <= 0.01, "D^r(p=0)=" + fmt(d0) + " vs 0.33");
    o.require(std::abs(d5 - 0.245) <= 0.01, "D^r(p=0.5)=" + fmt(d5) + " vs 0.245");
    auto d = [&](std::size_t row, int m) { return r.at(row, "D_" + std::to_string(m)); };
    o.require(d(0, 1) > d(0, 2) && d(0, 4) > d(0, 3) && d(0, 4) > d(0, 5),
              "p=0 maxima at m=1,4 (D_1..D_5: " + fmt(d(0, 1)) + "," + fmt(d(0, 2)) + "," + fmt(d(0, 3)) + "," +
                  fmt(d(0, 4)) + "," + fmt(d(0, 5)) + ")");
    bool monotone = true;
    std::string d4;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        d4 += (i ? "," : "") + fmt(d(i, 4));
        if (i > 0 && !(d(i, 4) < d(i - 1, 4))) {
            monotone = false;
        }
    }
    o.require(monotone, "D_4 decreasing in p (" + d4 + ")");
    Rng rng(77);
    std::vector<double> iid(std::size_t{1} << 17);
    for (auto& v : iid) {
        v = bernoulli(rng, 0.5) ? 1.0 : -1.0;
    }
    const auto prof = total_dissimilarity(iid);
    double worst = 0.0;
    for (int m = 1; m <= prof.steps; ++m) {
        worst = std::max(worst, std::abs(prof.partial(m) - haar_partial_law(m, 2)));
    }
    o.require(std::abs(prof.total - 0.25) <= 0.005, "iid total " + fmt(prof.total) + " vs 0.25");
    o.require(worst <= 0.01, "iid max |D_m - law| " + sci(worst));
    return o;
}

Outcome z_dissimilarity() {
    Outcome o;
    const double exact = z_basis_dissimilarity_exact(16, 8, 8192);
    const double sampled = z_basis_dissimilarity(16, 8, 8192, 1601);
    o.require(std::abs(sampled - exact) <= 0.02, "n=16 sampled " + fmt(sampled) + " exact " + fmt(exact));
    const double big = z_basis_dissimilarity(24, 12, 8192, 2401);
    o.require(big >= 0.23 && big <= 0.27, "n=24 sampled " + fmt(big) + " in [0.23,0.27]");
    return o;
}

Outcome parent_hamiltonians() {
    Outcome o;
    const std::vector<CzPair> one{{1, 2}};
    const PauliSum h4 = conjugate(build_lmg(4, 0.0), one);
    o.require(h4.size() == four_qubit_parent().size() && h4.approx_equal(four_qubit_parent(), 1e-12),
              "4-qubit parent " + std::to_string(h4.size()) + " terms match");
    const PauliSum h6 = conjugate(build_lmg(6, 0.0), kSixQubitXi);
    o.require(h6.size() == six_qubit_parent().size() && h6.approx_equal(six_qubit_parent(), 1e-12),
              "6-qubit parent " + std::to_string(h6.size()) + " terms match");
    Rng rng(9);
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const auto xi = random_xi(n, n, rng);
        const PauliSum lmg = build_lmg(n, 0.3);
        Eigen::SelfAdjointEigenSolver<Dense> a(dense(lmg), Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Dense> b(dense(conjugate(lmg, xi)), Eigen::EigenvaluesOnly);
        worst = std::max(worst, (a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff());
    }
    o.require(worst < 1e-9, "spectrum difference n<=8 " + sci(worst));
    const auto g4 = ground_state_check(h4, pm_d42());
    const auto g6 = ground_state_check(h6, six_qubit_state());
    o.require(g4.is_ground && g4.residual < 1e-9,
              "+-D_4^2 ground E=" + fmt(g4.energy) + " residual " + sci(g4.residual));
    o.require(g6.is_ground && g6.residual < 1e-9,
              "+-D_6^3 ground E=" + fmt(g6.energy) + " residual " + sci(g6.residual));
    return o;
}

Outcome critical_fields() {
    Outcome o;
    for (int k = 0; k <= 2; ++k) {
        const double hc = critical_field(6, k);
        const int below = ground_state_dicke_index(6, hc - 0.05);
        const int above = ground_state_dicke_index(6, hc + 0.05);
        o.require(below == k + 1 && above == k, "h_crit=" + fmt(hc, 0) + ": index " + std::to_string(below) +
                                                    " below, " + std::to_string(above) + " above");
    }
    return o;
}

Outcome sign_enumeration() {
    Outcome o;
    const auto h = enumerate_sign_entropies(6, 3, Bipartition::contiguous_half(6));
    o.require(std::abs(h.max_entropy - 2.722) <= 0.001,
              "max entropy " + fmt(h.max_entropy, 5) + " over " + std::to_string(h.patterns) + " patterns");
    return o;
}

Outcome property_suites() {
    Outcome o;
    Rng rng(12);
    int oracle_fail = 0;
    for (int c = 0; c < 200; ++c) {
        const int n = 2 + static_cast<int>(uniform_index(rng, 9));
        const int k = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n + 1)));
        const int na = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n - 1)));
        const auto s = sample_signed_dicke(n, k, uniform01(rng), rng());
        const auto part = Bipartition::random(n, na, rng);
        if (std::abs(entanglement_entropy(s, part) - dense_entropy(s, part)) >= 1e-8) {
            ++oracle_fail;
        }
    }
    o.require(oracle_fail == 0, "blocked vs dense: " + std::to_string(oracle_fail) + "/200 failures");

    double norm_err = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int n = 8;
        StateVector psi = embed_statevector(sample_signed_dicke(n, 4, 0.5, rng()));
        auto q = [&] { return static_cast<int>(uniform_index(rng, n)); };
        for (int g = 0; g < 500; ++g) {
            int a = q(), b = q(), c = q();
            while (b == a) {
                b = q();
            }
            while (c == a || c == b) {
                c = q();
            }
            const double th = 2 * std::numbers::pi * uniform01(rng);
            switch (uniform_index(rng, 7)) {
                case 0: apply(psi, Gate::x(a)); break;
                case 1: apply(psi, Gate::cnot(a, b)); break;
                case 2: apply(psi, Gate::cz(a, b)); break;
                case 3: apply(psi, Gate::cry(th, a, b)); break;
                case 4: apply(psi, Gate::ccry(th, a, b, c)); break;
                case 5: apply(psi, Gate::u0(th, uniform01(rng), uniform01(rng), a)); break;
                default: apply(psi, Gate::mcz({a, b}, c)); break;
            }
        }
        norm_err = std::max(norm_err, std::abs(psi.norm() - 1.0));
    }
    o.require(norm_err < 1e-10, "unitarity: norm drift " + sci(norm_err));

    bool same = sample_signed_dicke(12, 6, 0.5, 42) == sample_signed_dicke(12, 6, 0.5, 42);
    const auto psi = embed_statevector(sample_signed_dicke(8, 4, 0.5, 3));
    same = same && sample_measurements(psi, 256, MeasurementBasis::RandomPerShot, 5).symbols ==
                       sample_measurements(psi, 256, MeasurementBasis::RandomPerShot, 5).symbols;
    SweepConfig c = default_config(ExperimentId::EntropyVsP);
    c.n_values = {8};
    c.instances = 8;
    std::ostringstream a, b;
    write_csv(a, run_entropy_vs_p(c));
    write_csv(b, run_entropy_vs_p(c));
    same = same && a.str() == b.str();
    o.require(same, "determinism");

    bool involution = true;
    for (int t = 0; t < 50; ++t) {
        const auto s = sample_signed_dicke(10, 5, 0.3, rng());
        const Index r = uniform_index(rng, s.size());
        involution = involution && s.with_flipped(r).with_flipped(r) == s && s.negated().negated() == s;
        const auto xi = random_xi(6, 4, rng);
        const PauliSum lmg = build_lmg(6, 0.2);
        involution = involution && conjugate(conjugate(lmg, xi), xi).approx_equal(lmg, 1e-12);
    }
    o.require(involution, "involution");

    bool conserving = true;
    for (int t = 0; t < 50; ++t) {
        const int n = 3 + static_cast<int>(uniform_index(rng, 8));
        conserving = conserving && conserves_excitations(conjugate(build_lmg(n, 0.5), random_xi(n, n, rng)));
        const auto state = run_prep_protocol(n, n / 2, 0.5, rng(), PairSampling::Slots, 12);
        double outside = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i) {
            if (std::popcount(i) != n / 2) {
                outside += std::norm(state[i]);
            }
        }
        conserving = conserving && outside < 1e-20;
    }
    o.require(conserving, "excitation conservation");
    return o;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "analytic golden values", golden_values},
        {2, "volume law", volume_law},
        {3, "logarithmic law", log_law},
        {4, "Page formula", page_formula},
        {5, "circuit protocol", circuit_protocol},
        {6, "preparation correctness", preparation},
        {7, "dissimilarity", dissimilarity},
        {8, "z-basis dissimilarity", z_dissimilarity},
        {9, "parent Hamiltonians", parent_hamiltonians},
        {10, "critical field", critical_fields},
        {11, "sign-pattern enumeration", sign_enumeration},
        {12, "property suites", property_suites},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.insert(std::stoi(argv[i]));
    }
    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.contains(c.id)) {
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += o.pass ? 0 : 1;
        std::printf("%s  criterion %2d  %-26s (%.1f s)  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
