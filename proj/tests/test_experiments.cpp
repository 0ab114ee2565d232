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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "signdicke/experiments.hpp"

using namespace signdicke;

namespace {

std::string csv(const SweepResult& r) {
    std::ostringstream out;
    write_csv(out, r);
    return out.str();
}

SweepConfig small(ExperimentId id) {
    SweepConfig c = default_config(id);
    c.n_values = {6};
    c.instances = 4;
    c.shots = 64;
    return c;
}

}  // namespace

TEST(Config, ExperimentNamesRoundTrip) {
    for (const auto& [id, name] : kExperimentNames) {
        EXPECT_EQ(parse_experiment(name), id);
        EXPECT_EQ(experiment_name(id), name);
        EXPECT_NO_THROW(default_config(id).validate()) << name;
    }
    EXPECT_THROW(parse_experiment("entropy"), ConfigError);
}

TEST(Config, ValidationListsEveryBadField) {
    SweepConfig c;
    c.n_values = {7, 40};
    c.p_values = {1.5};
    c.instances = 0;
    c.lambda = 1;
    try {
        c.validate();
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        for (const char* field : {"k:", "n: 40", "p:", "instances", "lambda"}) {
            EXPECT_NE(msg.find(field), std::string::npos) << field << " missing from: " << msg;
        }
    }
    SweepConfig k;
    k.n_values = {4};
    k.k_values = {5};
    EXPECT_THROW(k.validate(), ConfigError);
    SweepConfig a;
    a.n_values = {4};
    a.subsystem_sizes = {4};
    EXPECT_THROW(a.validate(), ConfigError);
}

TEST(Config, QubitLimits) {
    SweepConfig c = default_config(ExperimentId::DissimVsP);
    c.n_values = {22};
    EXPECT_THROW(c.validate(), ConfigError);
    c.max_qubits = 22;
    EXPECT_NO_THROW(c.validate());
    SweepConfig e = default_config(ExperimentId::EntropyVsP);
    e.n_values = {24};
    EXPECT_NO_THROW(e.validate());
}

TEST(Summaries, SampleStatistics) {
    EXPECT_EQ(sample_std({1.0}), 0.0);
    EXPECT_DOUBLE_EQ(sample_std({1.0, 3.0}), std::sqrt(2.0));
    Summary s = summarize({{1.0, 3.0}, {5.0, 7.0}});
    EXPECT_DOUBLE_EQ(s.mean, 4.0);
    EXPECT_EQ(s.count, 4u);
    EXPECT_DOUBLE_EQ(s.std_instances, std::sqrt(8.0));
    EXPECT_DOUBLE_EQ(s.std_bipartitions, std::sqrt(2.0));
}

TEST(EntropySweep, FourQubitDickeHasNoSpread) {
    SweepConfig c = default_config(ExperimentId::EntropyVsP);
    c.n_values = {4};
    c.p_values = {0.0};
    c.instances = 5;
    SweepResult r = run_entropy_vs_p(c);
    ASSERT_EQ(r.rows.size(), 1u);
    // Schmidt spectrum {1/6, 2/3, 1/6}.
    const double expected = -2.0 / 6.0 * std::log2(1.0 / 6.0) - 2.0 / 3.0 * std::log2(2.0 / 3.0);
    EXPECT_NEAR(r.at(0, "mean"), expected, 1e-12);
    EXPECT_EQ(r.at(0, "std_all"), 0.0);
    EXPECT_EQ(r.at(0, "count"), 5.0);
    EXPECT_NEAR(r.at(0, "log_fit"), dicke_log_fit(4), 0.0);
    EXPECT_NEAR(r.at(0, "page"), page_entropy(2, 2), 0.0);
}

TEST(EntropySweep, CircuitWithoutGatesMatchesUnsignedSampling) {
    SweepConfig c = small(ExperimentId::CircuitEntropy);
    c.p_values = {0.0};
    SweepConfig s = c;
    s.experiment = ExperimentId::EntropyVsP;
    SweepResult a = run_circuit_entropy(c);
    SweepResult b = run_entropy_vs_p(s);
    EXPECT_EQ(a.columns[1], "q");
    EXPECT_EQ(b.columns[1], "p");
    EXPECT_NEAR(a.at(0, "mean"), b.at(0, "mean"), 1e-9);
    EXPECT_NEAR(a.at(0, "std_all"), 0.0, 1e-9);
}

TEST(EntropySweep, GridShapeAndLogFitMask) {
    SweepConfig c = default_config(ExperimentId::KScan);
    c.n_values = {8};
    c.k_values = {2, 3, 4};
    c.p_values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    c.instances = 2;
    SweepResult r = run_k_scan(c);
    ASSERT_EQ(r.rows.size(), 18u);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_EQ(std::isnan(r.at(i, "log_fit")), r.at(i, "k") != 4.0);
    }
    SweepConfig e = c;
    e.p_values.clear();
    SweepResult empty = run_k_scan(e);
    EXPECT_TRUE(empty.rows.empty());
    EXPECT_EQ(csv(empty), "n,p,k,n_a,instances,mean,std_all,std_instances,std_bipartitions,count,page,log_fit\n");
}

TEST(EntropySweep, SubsystemScanCoversEveryCut) {
    SweepConfig c = small(ExperimentId::SubsystemScan);
    c.p_values = {0.0};
    SweepResult r = run_subsystem_scan(c);
    ASSERT_EQ(r.rows.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(r.at(i, "n_a"), static_cast<double>(i + 1));
    }
    // S(A) = S(B) for the pure unsigned state.
    EXPECT_NEAR(r.at(0, "mean"), r.at(4, "mean"), 1e-9);
    EXPECT_NEAR(r.at(1, "mean"), r.at(3, "mean"), 1e-9);
}

TEST(EntropySweep, ReproducibleAndIndependentOfThreads) {
    SweepConfig c = small(ExperimentId::Invariance);
    c.n_values = {6, 8};
    c.threads = 1;
    const std::string one = csv(run_invariance(c));
    c.threads = 3;
    EXPECT_EQ(csv(run_invariance(c)), one);
    c.seed += 1;
    EXPECT_NE(csv(run_invariance(c)), one);
}

TEST(EntropySweep, SubGridReproducesFullGridRows) {
    SweepConfig full = small(ExperimentId::EntropyVsP);
    full.n_values = {6, 8};
    full.p_values = {0.1, 0.5};
    SweepConfig sub = full;
    sub.n_values = {8};
    sub.p_values = {0.5};
    SweepResult a = run_entropy_vs_p(full);
    SweepResult b = run_entropy_vs_p(sub);
    EXPECT_EQ(a.rows.back(), b.rows.front());
}

TEST(EntropySweep, InstancesAreDistinct) {
    SweepConfig c = small(ExperimentId::EntropyVsP);
    c.n_values = {10};
    c.instances = 16;
    SweepResult r = run_entropy_vs_p(c);
    EXPECT_GT(r.at(0, "std_all"), 0.0);
    for (int i = 1; i < 16; ++i) {
        const auto key = grid_key(10, 5, 0.5, 5);
        EXPECT_NE(sample_signed_dicke(10, 5, 0.5, derive_seed(instance_seed(c.seed, key, i), 0)),
                  sample_signed_dicke(10, 5, 0.5, derive_seed(instance_seed(c.seed, key, 0), 0)));
    }
    EXPECT_NE(grid_key(8, 4, 0.1), grid_key(8, 4, 0.2));
    EXPECT_NE(grid_key(8, 4, 0.1), grid_key(8, 3, 0.1));
}

TEST(CrossPath, OracleCircuitMatchesSampledState) {
    // Dicke preparation followed by one multi-controlled Z per negative string
    // must reproduce the sampled state and its entropy.
    for (int n = 2; n <= 10; ++n) {
        const int k = n / 2;
        SignedDickeState target = sample_signed_dicke(n, k, 0.5, 1000 + static_cast<std::uint64_t>(n));
        StateVector psi(n);
        run(build_dicke_prep(n, k), psi);
        for_each_weight_k(n, k, [&](Index r, Bits b) {
            if (target.is_negative(r)) {
                apply_mcz_oracle(psi, b);
            }
        });
        SignedDickeState built = read_signs(psi, k);
        EXPECT_EQ(built, target) << n;
        EXPECT_LT(std::abs(fidelity(psi, embed_statevector(target, kDefaultStatevectorGuard)) - 1.0), 1e-10);
        const auto part = Bipartition::contiguous_half(n);
        EXPECT_NEAR(entanglement_entropy(built, part), entanglement_entropy(target, part),
                    1e-12);
    }
}

TEST(CrossPath, OracleCircuitEntropyDistributionMatchesSampling) {
    // Independent sign draws imposed by oracles versus the sampling route:
    // means agree within two standard errors at 128 instances.
    Rng rng(4242);
    for (int n : {6, 8, 10}) {
        for (double p : {0.2, 0.5}) {
            const int k = n / 2;
            const auto part = Bipartition::contiguous_half(n);
            std::vector<double> sampled, oracle;
            for (int i = 0; i < 128; ++i) {
                const auto key = grid_key(n, k, p, k);
                sampled.push_back(entanglement_entropy(
                    sample_signed_dicke(n, k, p, derive_seed(instance_seed(1, key, i), 0)), part));
                StateVector psi(n);
                run(build_dicke_prep(n, k), psi);
                for_each_weight_k(n, k, [&](Index, Bits b) {
                    if (bernoulli(rng, p)) {
                        apply_mcz_oracle(psi, b);
                    }
                });
                oracle.push_back(entanglement_entropy(read_signs(psi, k), part));
            }
            auto mean = [](const std::vector<double>& v) {
                return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
            };
            const double se = std::sqrt((std::pow(sample_std(sampled), 2) + std::pow(sample_std(oracle), 2)) / 128.0);
            EXPECT_LE(std::abs(mean(sampled) - mean(oracle)), 2.0 * se) << "n=" << n << " p=" << p;
        }
    }
}

TEST(DissimSweep, ColumnsAndPartials) {
    SweepConfig c = small(ExperimentId::DissimVsP);
    c.n_values = {4};
    c.p_values = {0.0, 0.5};
    c.shots = 256;
    SweepResult r = run_dissim_vs_p(c);
    ASSERT_EQ(r.rows.size(), 2u);
    // 4 * 256 = 2^10 symbols, hence ten scales.
    EXPECT_EQ(r.columns.back(), "D_10");
    for (std::size_t i = 0; i < 2; ++i) {
        double sum = 0.0;
        for (int m = 1; m <= 10; ++m) {
            sum += r.at(i, "D_" + std::to_string(m));
        }
        EXPECT_NEAR(sum, r.at(i, "mean"), 1e-12);
        EXPECT_EQ(r.at(i, "D_10"), 0.0);
    }
    EXPECT_EQ(csv(run_dissim_vs_p(c)), csv(r));
}

TEST(DzSweep, ExactColumn) {
    SweepConfig c = default_config(ExperimentId::DzScan);
    c.n_values = {4, 8};
    c.instances = 3;
    c.shots = 1024;
    SweepResult r = run_dz_scan(c);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_NEAR(r.at(0, "exact"), z_basis_dissimilarity_exact(4, 2, 1024), 0.0);
    EXPECT_NEAR(r.at(1, "mean"), r.at(1, "exact"), 0.03);
}

TEST(SignEnumSweep, FourQubitHistogram) {
    SweepConfig c = default_config(ExperimentId::SignEnum);
    c.n_values = {4};
    c.k_values = {2};
    SweepResult r = run_sign_enum(c);
    double patterns = 0.0, fraction = 0.0;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        patterns += r.at(i, "patterns");
        fraction += r.at(i, "fraction");
    }
    EXPECT_EQ(patterns, 32.0);
    EXPECT_NEAR(fraction, 1.0, 1e-12);
}

TEST(Output, CsvFileRoundTripAndErrors) {
    SweepConfig c = small(ExperimentId::EntropyVsP);
    SweepResult r = run_entropy_vs_p(c);
    const auto path = std::filesystem::temp_directory_path() / "signdicke_test_output.csv";
    emit_csv(r, path.string());
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), csv(r));
    std::filesystem::remove(path);
    const std::string bad = "/nonexistent_dir/out.csv";
    try {
        emit_csv(r, bad);
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
    }
    EXPECT_EQ(format_csv_value(0.1), "0.10000000000000001");
    EXPECT_EQ(format_csv_value(std::nan("")), "nan");
}

TEST(Output, SvgPlot) {
    SweepConfig c = small(ExperimentId::KScan);
    c.k_values = {2, 3};
    c.p_values = {0.0, 0.5};
    SweepResult r = run_k_scan(c);
    std::ostringstream out;
    write_svg(out, r, "p", "mean", "k");
    const std::string svg = out.str();
    EXPECT_TRUE(svg.starts_with("<svg"));
    EXPECT_EQ(std::count(svg.begin(), svg.end(), '\n') > 5, true);
    std::size_t lines = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) {
        ++lines;
    }
    EXPECT_EQ(lines, 2u);
    EXPECT_THROW(write_svg(out, r, "p", "missing"), DomainError);
}
