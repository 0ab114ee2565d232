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
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "signdicke/circuit.hpp"
#include "signdicke/combinatorics.hpp"
#include "signdicke/dicke_state.hpp"
#include "signdicke/dissimilarity.hpp"
#include "signdicke/entanglement.hpp"
#include "signdicke/errors.hpp"
#include "signdicke/parallel.hpp"
#include "signdicke/rng.hpp"

namespace signdicke {

enum class ExperimentId {
    EntropyVsP,
    CircuitEntropy,
    DissimVsP,
    SubsystemScan,
    KScan,
    Invariance,
    DzScan,
    SignEnum,
};

inline constexpr std::array<std::pair<ExperimentId, std::string_view>, 8> kExperimentNames{{
    {ExperimentId::EntropyVsP, "entropy_vs_p"},
    {ExperimentId::CircuitEntropy, "circuit_entropy"},
    {ExperimentId::DissimVsP, "dissim_vs_p"},
    {ExperimentId::SubsystemScan, "subsystem_scan"},
    {ExperimentId::KScan, "k_scan"},
    {ExperimentId::Invariance, "invariance"},
    {ExperimentId::DzScan, "dz_scan"},
    {ExperimentId::SignEnum, "sign_enum"},
}};

inline std::string_view experiment_name(ExperimentId id) {
    for (const auto& [e, name] : kExperimentNames) {
        if (e == id) {
            return name;
        }
    }
    return "unknown";
}

inline ExperimentId parse_experiment(std::string_view name) {
    for (const auto& [e, n] : kExperimentNames) {
        if (n == name) {
            return e;
        }
    }
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

enum class BipartitionPolicy {
    /// A = {0, ..., n_A - 1}.
    Contiguous,
    /// A drawn uniformly among subsets of size n_A, fresh for each draw.
    Random,
};

struct SweepConfig {
    ExperimentId experiment = ExperimentId::EntropyVsP;
    std::vector<int> n_values{16};
    /// Excitation numbers; empty means k = n/2 (n must then be even).
    std::vector<int> k_values;
    /// Sign-flip probability p, or CZ probability q for circuit_entropy.
    std::vector<double> p_values{0.5};
    /// Subsystem sizes n_A; empty means n/2, or every size for subsystem_scan.
    std::vector<int> subsystem_sizes;
    int instances = 128;
    std::size_t shots = 8192;
    BipartitionPolicy bipartition = BipartitionPolicy::Contiguous;
    int bipartitions = 1;
    std::uint64_t seed = 20240501;
    int lambda = 2;
    AxisSampling axis = AxisSampling::SphereSegment;
    PairSampling pairs = PairSampling::Slots;
    /// Largest register accepted; 0 selects 24 for entropy-only sweeps and 20
    /// for statevector sweeps.
    int max_qubits = 0;
    unsigned threads = 0;
    std::string output;

    int qubit_limit() const {
        if (max_qubits > 0) {
            return max_qubits;
        }
        return experiment == ExperimentId::CircuitEntropy || experiment == ExperimentId::DissimVsP ? 20 : 24;
    }

    std::vector<int> ks_for(int n) const { return k_values.empty() ? std::vector<int>{n / 2} : k_values; }

    std::vector<int> subsystems_for(int n) const {
        if (!subsystem_sizes.empty()) {
            return subsystem_sizes;
        }
        if (experiment == ExperimentId::SubsystemScan) {
            std::vector<int> all;
            for (int a = 1; a < n; ++a) {
                all.push_back(a);
            }
            return all;
        }
        return {n / 2};
    }

    /// Throws ConfigError naming every offending field.
    void validate() const {
        std::vector<std::string> bad;
        auto complain = [&](const std::string& s) { bad.push_back(s); };
        if (n_values.empty()) {
            complain("n: empty grid");
        }
        for (int n : n_values) {
            if (n < 2 || n > qubit_limit()) {
                complain("n: " + std::to_string(n) + " outside [2, " + std::to_string(qubit_limit()) + "]");
                continue;
            }
            if (k_values.empty() && n % 2 != 0) {
                complain("k: n/2 rule needs even n, got n=" + std::to_string(n));
            }
            for (int k : k_values) {
                if (k < 0 || k > n) {
                    complain("k: " + std::to_string(k) + " outside [0, " + std::to_string(n) + "]");
                }
            }
            for (int a : subsystem_sizes) {
                if (a < 1 || a >= n) {
                    complain("subsystem: n_A=" + std::to_string(a) + " outside [1, " + std::to_string(n - 1) + "]");
                }
            }
        }
        for (double p : p_values) {
            if (!(p >= 0.0 && p <= 1.0)) {
                complain("p: " + std::to_string(p) + " outside [0, 1]");
            }
        }
        if (instances < 1) {
            complain("instances: must be >= 1");
        }
        if (bipartitions < 1) {
            complain("bipartitions: must be >= 1");
        }
        if (shots < 1) {
            complain("shots: must be >= 1");
        }
        if (lambda < 2) {
            complain("lambda: must be >= 2");
        }
        if (!bad.empty()) {
            std::string msg = "invalid configuration for " + std::string(experiment_name(experiment)) + ":";
            for (const auto& b : bad) {
                msg += "\n  " + b;
            }
            throw ConfigError(msg);
        }
    }
};

/// Defaults reproducing each dataset at desk scale.
inline SweepConfig default_config(ExperimentId id) {
    SweepConfig c;
    c.experiment = id;
    switch (id) {
        case ExperimentId::EntropyVsP:
            c.n_values = {8, 10, 12, 14, 16, 18, 20};
            c.p_values = {0.0, 0.5};
            break;
        case ExperimentId::CircuitEntropy:
            c.n_values = {8, 10, 12, 14, 16};
            c.p_values = {0.5};
            c.bipartition = BipartitionPolicy::Random;
            c.bipartitions = 10;
            break;
        case ExperimentId::DissimVsP:
            c.n_values = {16};
            c.p_values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
            c.instances = 100;
            break;
        case ExperimentId::SubsystemScan:
            c.n_values = {16};
            c.p_values = {0.0, 0.1, 0.5};
            break;
        case ExperimentId::KScan:
            c.n_values = {16};
            c.k_values = {2, 4, 6, 8};
            c.p_values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
            break;
        case ExperimentId::Invariance:
            c.n_values = {6, 8, 10, 12, 14, 16};
            c.p_values = {0.5};
            c.bipartition = BipartitionPolicy::Random;
            c.bipartitions = 10;
            break;
        case ExperimentId::DzScan:
            c.n_values = {4, 8, 12, 16, 20, 24};
            c.p_values = {0.0};
            c.instances = 10;
            break;
        case ExperimentId::SignEnum:
            c.n_values = {6};
            c.k_values = {3};
            c.p_values = {0.0};
            c.instances = 1;
            break;
    }
    return c;
}

/// Numeric table; one row per grid point.
struct SweepResult {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(std::string_view name) const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns[i] == name) {
                return i;
            }
        }
        throw DomainError("no column named '" + std::string(name) + "'");
    }

    double at(std::size_t row, std::string_view name) const { return rows.at(row).at(column(name)); }
};

struct Summary {
    double mean = 0.0;
    /// Spread of every (instance, bipartition) value.
    double std_all = 0.0;
    /// Spread of the per-instance means.
    double std_instances = 0.0;
    /// Average spread across bipartitions within an instance.
    double std_bipartitions = 0.0;
    std::size_t count = 0;
};

inline double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) {
        return 0.0;
    }
    double m = 0.0;
    for (double x : v) {
        m += x;
    }
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline Summary summarize(const std::vector<std::vector<double>>& per_instance) {
    Summary s;
    std::vector<double> all;
    std::vector<double> means;
    double within = 0.0;
    for (const auto& inst : per_instance) {
        double m = 0.0;
        for (double x : inst) {
            all.push_back(x);
            m += x;
        }
        if (!inst.empty()) {
            means.push_back(m / static_cast<double>(inst.size()));
        }
        within += sample_std(inst);
    }
    s.count = all.size();
    if (all.empty()) {
        return s;
    }
    for (double x : all) {
        s.mean += x;
    }
    s.mean /= static_cast<double>(all.size());
    s.std_all = sample_std(all);
    s.std_instances = sample_std(means);
    s.std_bipartitions = within / static_cast<double>(per_instance.size());
    return s;
}

/// Grid key from parameter values, so a sub-sweep reproduces the same numbers.
inline std::uint64_t grid_key(int n, int k, double p, int n_a = 0) {
    return derive_seed(derive_seed(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                                   static_cast<std::uint64_t>(n_a)),
                       std::bit_cast<std::uint64_t>(p));
}

/// Seed of one instance: derive_seed(master, grid_key, instance). Streams
/// inside an instance are derive_seed(instance_seed, 0) for the state or
/// circuit, 1 for bipartitions and 2 for measurements.
inline std::uint64_t instance_seed(std::uint64_t master, std::uint64_t key, int instance) {
    return derive_seed(master, key, static_cast<std::uint64_t>(instance));
}

inline std::vector<Bipartition> draw_bipartitions(const SweepConfig& cfg, int n, int n_a, std::uint64_t seed) {
    std::vector<Bipartition> parts;
    if (cfg.bipartition == BipartitionPolicy::Contiguous) {
        parts.push_back(Bipartition::contiguous(n, n_a));
        return parts;
    }
    Rng rng(seed);
    for (int b = 0; b < cfg.bipartitions; ++b) {
        parts.push_back(Bipartition::random(n, n_a, rng));
    }
    return parts;
}

namespace detail {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct EntropyPoint {
    int n;
    int k;
    double p;
    int n_a;
};

inline std::vector<EntropyPoint> entropy_grid(const SweepConfig& cfg) {
    std::vector<EntropyPoint> pts;
    for (int n : cfg.n_values) {
        for (int k : cfg.ks_for(n)) {
            for (double p : cfg.p_values) {
                for (int a : cfg.subsystems_for(n)) {
                    pts.push_back({n, k, p, a});
                }
            }
        }
    }
    return pts;
}

// Entropies of sampled (or circuit-prepared) states over a grid of
// (n, k, p, n_A) points.
inline SweepResult run_entropy_grid(const SweepConfig& cfg, bool circuit) {
    cfg.validate();
    const auto pts = entropy_grid(cfg);
    const auto inst = static_cast<std::size_t>(cfg.instances);
    std::vector<std::vector<double>> values(pts.size() * inst);
    parallel_for(
        values.size(),
        [&](std::size_t task) {
            const auto& pt = pts[task / inst];
            const int i = static_cast<int>(task % inst);
            const std::uint64_t seed = instance_seed(cfg.seed, grid_key(pt.n, pt.k, pt.p, pt.n_a), i);
            SignedDickeState state =
                circuit ? read_signs(run_prep_protocol(pt.n, pt.k, pt.p, derive_seed(seed, 0), cfg.pairs,
                                                       cfg.qubit_limit()),
                                     pt.k)
                        : sample_signed_dicke(pt.n, pt.k, pt.p, derive_seed(seed, 0));
            auto& out = values[task];
            for (const auto& part : draw_bipartitions(cfg, pt.n, pt.n_a, derive_seed(seed, 1))) {
                out.push_back(entanglement_entropy(state, part));
            }
        },
        cfg.threads);

    SweepResult r;
    r.experiment = std::string(experiment_name(cfg.experiment));
    r.columns = {"n",   circuit ? "q" : "p", "k",     "n_a",   "instances", "mean", "std_all",
                 "std_instances", "std_bipartitions", "count", "page", "log_fit"};
    for (std::size_t g = 0; g < pts.size(); ++g) {
        const auto& pt = pts[g];
        std::vector<std::vector<double>> per(values.begin() + static_cast<std::ptrdiff_t>(g * inst),
                                             values.begin() + static_cast<std::ptrdiff_t>((g + 1) * inst));
        Summary s = summarize(per);
        const bool half_filled = pt.n % 2 == 0 && pt.k == pt.n / 2 && pt.n_a == pt.n / 2;
        r.rows.push_back({double(pt.n), pt.p, double(pt.k), double(pt.n_a), double(cfg.instances), s.mean, s.std_all,
                          s.std_instances, s.std_bipartitions, double(s.count), page_entropy(pt.n_a, pt.n - pt.n_a),
                          half_filled ? dicke_log_fit(pt.n) : kNaN});
    }
    return r;
}

inline int analysed_steps(std::size_t length, int lambda) {
    int steps = 0;
    std::size_t len = 1;
    while (len <= length / static_cast<std::size_t>(lambda)) {
        len *= static_cast<std::size_t>(lambda);
        ++steps;
    }
    return steps;
}

inline SweepResult run_dissim(const SweepConfig& cfg) {
    cfg.validate();
    struct Point {
        int n;
        int k;
        double p;
    };
    std::vector<Point> pts;
    int max_steps = 0;
    for (int n : cfg.n_values) {
        for (int k : cfg.ks_for(n)) {
            for (double p : cfg.p_values) {
                pts.push_back({n, k, p});
            }
        }
        max_steps = std::max(max_steps, analysed_steps(static_cast<std::size_t>(n) * cfg.shots, cfg.lambda));
    }
    const auto inst = static_cast<std::size_t>(cfg.instances);
    std::vector<DissimilarityProfile> profiles(pts.size() * inst);
    parallel_for(
        profiles.size(),
        [&](std::size_t task) {
            const auto& pt = pts[task / inst];
            const int i = static_cast<int>(task % inst);
            const std::uint64_t seed = instance_seed(cfg.seed, grid_key(pt.n, pt.k, pt.p), i);
            StateVector psi = embed_statevector(sample_signed_dicke(pt.n, pt.k, pt.p, derive_seed(seed, 0)),
                                                cfg.qubit_limit());
            BitstringRecord rec =
                sample_measurements(psi, cfg.shots, MeasurementBasis::RandomPerShot, derive_seed(seed, 2), cfg.axis);
            profiles[task] = total_dissimilarity(rec, cfg.lambda);
        },
        cfg.threads);

    SweepResult r;
    r.experiment = std::string(experiment_name(cfg.experiment));
    r.columns = {"n", "p", "k", "instances", "shots", "mean", "std", "count"};
    for (int m = 1; m <= max_steps; ++m) {
        r.columns.push_back("D_" + std::to_string(m));
    }
    for (std::size_t g = 0; g < pts.size(); ++g) {
        std::vector<double> totals;
        std::vector<double> partial(static_cast<std::size_t>(max_steps), 0.0);
        int steps = 0;
        for (std::size_t i = 0; i < inst; ++i) {
            const auto& prof = profiles[g * inst + i];
            totals.push_back(prof.total);
            steps = prof.steps;
            for (int m = 1; m <= prof.steps; ++m) {
                partial[static_cast<std::size_t>(m - 1)] += prof.partial(m) / static_cast<double>(inst);
            }
        }
        Summary s = summarize({totals});
        std::vector<double> row{double(pts[g].n), pts[g].p, double(pts[g].k), double(cfg.instances),
                                double(cfg.shots), s.mean, s.std_all, double(s.count)};
        for (int m = 1; m <= max_steps; ++m) {
            row.push_back(m <= steps ? partial[static_cast<std::size_t>(m - 1)] : kNaN);
        }
        r.rows.push_back(std::move(row));
    }
    return r;
}

inline SweepResult run_dz(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<std::pair<int, int>> pts;
    for (int n : cfg.n_values) {
        for (int k : cfg.ks_for(n)) {
            pts.emplace_back(n, k);
        }
    }
    const auto inst = static_cast<std::size_t>(cfg.instances);
    std::vector<double> values(pts.size() * inst);
    std::vector<double> exact(pts.size());
    parallel_for(
        values.size() + pts.size(),
        [&](std::size_t task) {
            if (task >= values.size()) {
                const auto& [n, k] = pts[task - values.size()];
                exact[task - values.size()] = z_basis_dissimilarity_exact(n, k, cfg.shots, cfg.lambda);
                return;
            }
            const auto& [n, k] = pts[task / inst];
            const int i = static_cast<int>(task % inst);
            const std::uint64_t seed = instance_seed(cfg.seed, grid_key(n, k, 0.0), i);
            values[task] = z_basis_dissimilarity(n, k, cfg.shots, derive_seed(seed, 2), cfg.lambda);
        },
        cfg.threads);
    SweepResult r;
    r.experiment = std::string(experiment_name(cfg.experiment));
    r.columns = {"n", "k", "samples", "instances", "mean", "std", "count", "exact"};
    for (std::size_t g = 0; g < pts.size(); ++g) {
        std::vector<double> v(values.begin() + static_cast<std::ptrdiff_t>(g * inst),
                              values.begin() + static_cast<std::ptrdiff_t>((g + 1) * inst));
        Summary s = summarize({v});
        r.rows.push_back({double(pts[g].first), double(pts[g].second), double(cfg.shots), double(cfg.instances),
                          s.mean, s.std_all, double(s.count), exact[g]});
    }
    return r;
}

inline SweepResult run_sign_enum(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult r;
    r.experiment = std::string(experiment_name(cfg.experiment));
    r.columns = {"n", "k", "n_a", "entropy", "patterns", "fraction"};
    for (int n : cfg.n_values) {
        for (int k : cfg.ks_for(n)) {
            for (int a : cfg.subsystems_for(n)) {
                auto h = enumerate_sign_entropies(n, k, Bipartition::contiguous(n, a), true, cfg.threads);
                for (const auto& [e, count] : h.counts) {
                    r.rows.push_back({double(n), double(k), double(a), e, double(count),
                                      double(count) / static_cast<double>(h.patterns)});
                }
            }
        }
    }
    return r;
}

}  // namespace detail

/// Mean entropy of sampled random-sign Dicke states over an (n, p) grid.
inline SweepResult run_entropy_vs_p(const SweepConfig& cfg) { return detail::run_entropy_grid(cfg, false); }

/// Entropy of states prepared by the Dicke circuit plus a random CZ layer with
/// probability q (taken from p_values).
inline SweepResult run_circuit_entropy(const SweepConfig& cfg) { return detail::run_entropy_grid(cfg, true); }

/// Random-basis dissimilarity totals and partial profiles over an (n, p) grid.
inline SweepResult run_dissim_vs_p(const SweepConfig& cfg) { return detail::run_dissim(cfg); }

/// Entropy across subsystem sizes.
inline SweepResult run_subsystem_scan(const SweepConfig& cfg) { return detail::run_entropy_grid(cfg, false); }

/// Entropy across excitation numbers and p.
inline SweepResult run_k_scan(const SweepConfig& cfg) { return detail::run_entropy_grid(cfg, false); }

/// Entropy spread over random balanced bipartitions.
inline SweepResult run_invariance(const SweepConfig& cfg) { return detail::run_entropy_grid(cfg, false); }

/// Z-basis dissimilarity of |D_n^k> from sampled records, with the exact
/// expectation alongside.
inline SweepResult run_dz_scan(const SweepConfig& cfg) { return detail::run_dz(cfg); }

/// Histogram of entropies over every sign pattern (modulo global sign).
inline SweepResult run_sign_enum(const SweepConfig& cfg) { return detail::run_sign_enum(cfg); }

inline SweepResult run_sweep(const SweepConfig& cfg) {
    switch (cfg.experiment) {
        case ExperimentId::EntropyVsP: return run_entropy_vs_p(cfg);
        case ExperimentId::CircuitEntropy: return run_circuit_entropy(cfg);
        case ExperimentId::DissimVsP: return run_dissim_vs_p(cfg);
        case ExperimentId::SubsystemScan: return run_subsystem_scan(cfg);
        case ExperimentId::KScan: return run_k_scan(cfg);
        case ExperimentId::Invariance: return run_invariance(cfg);
        case ExperimentId::DzScan: return run_dz_scan(cfg);
        case ExperimentId::SignEnum: return run_sign_enum(cfg);
    }
    throw ConfigError("unknown experiment");
}

inline std::string format_csv_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& out, const SweepResult& r) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
        out << (i ? "," : "") << r.columns[i];
    }
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_csv_value(row[i]);
        }
        out << '\n';
    }
}

inline void emit_csv(const SweepResult& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_csv(out, r);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

/// Line chart of y against x, one polyline per distinct value of `series`
/// (or a single line when `series` is empty).
inline void write_svg(std::ostream& out, const SweepResult& r, std::string_view x, std::string_view y,
                      std::string_view series = {}) {
    const std::size_t xi = r.column(x);
    const std::size_t yi = r.column(y);
    std::map<double, std::vector<std::pair<double, double>>> lines;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& row : r.rows) {
        double key = series.empty() ? 0.0 : row[r.column(series)];
        double vx = row[xi];
        double vy = row[yi];
        if (!std::isfinite(vx) || !std::isfinite(vy)) {
            continue;
        }
        lines[key].emplace_back(vx, vy);
        x0 = std::min(x0, vx);
        x1 = std::max(x1, vx);
        y0 = std::min(y0, vy);
        y1 = std::max(y1, vy);
    }
    constexpr double W = 640, H = 420, M = 50;
    if (lines.empty()) {
        x0 = y0 = 0.0;
        x1 = y1 = 1.0;
    }
    if (x1 == x0) {
        x1 = x0 + 1.0;
    }
    if (y1 == y0) {
        y1 = y0 + 1.0;
    }
    auto px = [&](double v) { return M + (v - x0) / (x1 - x0) * (W - 2 * M); };
    auto py = [&](double v) { return H - M - (v - y0) / (y1 - y0) * (H - 2 * M); };
    static constexpr std::array<std::string_view, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                                             "#ff7f0e", "#9467bd", "#8c564b"};
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << x << "</text>\n";
    out << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2 << ")\" text-anchor=\"middle\">"
        << y << "</text>\n";
    out << "<text x=\"" << M << "\" y=\"" << H - M + 15 << "\" font-size=\"10\">" << format_csv_value(x0) << "</text>\n";
    out << "<text x=\"" << W - M << "\" y=\"" << H - M + 15 << "\" font-size=\"10\" text-anchor=\"end\">"
        << format_csv_value(x1) << "</text>\n";
    out << "<text x=\"" << M - 4 << "\" y=\"" << H - M << "\" font-size=\"10\" text-anchor=\"end\">"
        << format_csv_value(y0) << "</text>\n";
    out << "<text x=\"" << M - 4 << "\" y=\"" << M + 4 << "\" font-size=\"10\" text-anchor=\"end\">"
        << format_csv_value(y1) << "</text>\n";
    std::size_t c = 0;
    for (auto& [key, pts] : lines) {
        std::sort(pts.begin(), pts.end());
        const auto color = kColors[c % kColors.size()];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (const auto& [vx, vy] : pts) {
            out << px(vx) << ',' << py(vy) << ' ';
        }
        out << "\"/>\n";
        for (const auto& [vx, vy] : pts) {
            out << "<circle cx=\"" << px(vx) << "\" cy=\"" << py(vy) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        if (!series.empty()) {
            out << "<text x=\"" << W - M + 4 << "\" y=\"" << M + 14 * static_cast<double>(c) << "\" font-size=\"10\" fill=\""
                << color << "\">" << series << '=' << format_csv_value(key) << "</text>\n";
        }
        ++c;
    }
    out << "</svg>\n";
}

inline void emit_svg(const SweepResult& r, const std::string& path, std::string_view x, std::string_view y,
                     std::string_view series = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_svg(out, r, x, y, series);
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace signdicke
