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

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "signdicke.hpp"

namespace sd = signdicke;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
    T v{};
    const std::string t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw sd::ConfigError(std::string(what) + ": cannot parse '" + t + "'");
    }
    return v;
}

template <typename T>
std::vector<T> parse_grid(std::string_view text, std::string_view what) {
    std::vector<T> out;
    if (trim(text).empty()) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_number<T>(text.substr(start, comma - start), what));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

// Reads "key = value" lines into "--key value" tokens. Blank lines and lines
// starting with '#' are ignored.
std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw sd::IoError("cannot open config file '" + path + "'");
    }
    std::vector<std::string> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw sd::ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(t).substr(0, eq));
        if (key.empty() || key == "config") {
            throw sd::ConfigError(path + ":" + std::to_string(line_no) + ": invalid key '" + key + "'");
        }
        tokens.push_back("--" + key);
        tokens.push_back(trim(std::string_view(t).substr(eq + 1)));
    }
    return tokens;
}

// Splices config-file tokens right after the subcommand name so that flags on
// the command line, which come later, take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
        }
    }
    if (path.empty() || args.empty()) {
        return args;
    }
    auto tokens = config_tokens(path);
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    return args;
}

std::string columns_help(sd::ExperimentId id) {
    switch (id) {
        case sd::ExperimentId::EntropyVsP:
        case sd::ExperimentId::SubsystemScan:
        case sd::ExperimentId::KScan:
        case sd::ExperimentId::Invariance:
            return "n,p,k,n_a,instances,mean,std_all,std_instances,std_bipartitions,count,page,log_fit";
        case sd::ExperimentId::CircuitEntropy:
            return "n,q,k,n_a,instances,mean,std_all,std_instances,std_bipartitions,count,page,log_fit";
        case sd::ExperimentId::DissimVsP: return "n,p,k,instances,shots,mean,std,count,D_1,...,D_M";
        case sd::ExperimentId::DzScan: return "n,k,samples,instances,mean,std,count,exact";
        case sd::ExperimentId::SignEnum: return "n,k,n_a,entropy,patterns,fraction";
    }
    return {};
}

struct PlotAxes {
    std::string x, y, series;
};

PlotAxes default_axes(sd::ExperimentId id) {
    switch (id) {
        case sd::ExperimentId::SubsystemScan: return {"n_a", "mean", "p"};
        case sd::ExperimentId::KScan: return {"p", "mean", "k"};
        case sd::ExperimentId::DissimVsP: return {"p", "mean", "n"};
        case sd::ExperimentId::DzScan: return {"n", "mean", ""};
        case sd::ExperimentId::SignEnum: return {"entropy", "patterns", ""};
        case sd::ExperimentId::CircuitEntropy: return {"n", "mean", "q"};
        default: return {"n", "mean", "p"};
    }
}

struct SweepFlags {
    std::string n, k, p, subsystem, policy, axis, pairs, out, svg, config;
    PlotAxes plot;
    int instances = 0;
    std::size_t shots = 0;
    std::uint64_t seed = 0;
    int bipartitions = 0;
    int lambda = 0;
    int max_qubits = 0;
    unsigned threads = 0;
};

struct SweepCommand {
    sd::ExperimentId id;
    CLI::App* app;
    std::shared_ptr<SweepFlags> flags;
};

SweepCommand add_sweep(CLI::App& root, sd::ExperimentId id) {
    const std::string name(sd::experiment_name(id));
    auto* app = root.add_subcommand(name, "Run the " + name + " sweep and write CSV");
    auto f = std::make_shared<SweepFlags>();
    f->plot = default_axes(id);
    const sd::SweepConfig d = sd::default_config(id);
    app->add_option("--n", f->n, "comma-separated qubit counts");
    app->add_option("--k", f->k, "comma-separated excitation numbers (default n/2)");
    auto* p = app->add_option("--p", f->p, "comma-separated sign-flip probabilities");
    app->add_option("--q", f->p, "comma-separated CZ probabilities (alias of --p)")->excludes(p);
    app->add_option("--subsystem", f->subsystem, "comma-separated subsystem sizes n_A");
    app->add_option("--instances", f->instances, "random instances per grid point")->check(CLI::PositiveNumber);
    app->add_option("--shots", f->shots, "shots per state (samples for dz_scan)")->check(CLI::PositiveNumber);
    app->add_option("--seed", f->seed, "master seed");
    app->add_option("--bipartitions", f->bipartitions, "bipartitions per state with --policy random")
        ->check(CLI::PositiveNumber);
    app->add_option("--policy", f->policy, "bipartition policy")->check(CLI::IsMember({"contiguous", "random"}));
    app->add_option("--lambda", f->lambda, "coarse-graining factor")->check(CLI::Range(2, 1 << 20));
    app->add_option("--axis", f->axis, "random measurement axis")->check(CLI::IsMember({"segment", "angles"}));
    app->add_option("--pairs", f->pairs, "CZ layer pair sampling")->check(CLI::IsMember({"slots", "all"}));
    app->add_option("--max-qubits", f->max_qubits, "largest register accepted");
    app->add_option("--threads", f->threads, "worker threads (0 = hardware)");
    app->add_option("--out", f->out, "CSV path (default stdout)");
    app->add_option("--svg", f->svg, "also write a line chart to this path");
    app->add_option("--svg-x", f->plot.x, "chart x column");
    app->add_option("--svg-y", f->plot.y, "chart y column");
    app->add_option("--svg-series", f->plot.series, "chart series column");
    app->add_option("--config", f->config, "flat key = value file with the flags above");
    std::ostringstream foot;
    foot << "Columns: " << columns_help(id) << "\nDefaults: n=";
    for (std::size_t i = 0; i < d.n_values.size(); ++i) {
        foot << (i ? "," : "") << d.n_values[i];
    }
    foot << " instances=" << d.instances << " shots=" << d.shots << " seed=" << d.seed;
    app->footer(foot.str());
    return {id, app, f};
}

sd::SweepConfig build_config(const SweepCommand& cmd) {
    const auto& f = *cmd.flags;
    CLI::App& app = *cmd.app;
    sd::SweepConfig c = sd::default_config(cmd.id);
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--n")) {
        c.n_values = parse_grid<int>(f.n, "n");
    }
    if (given("--k")) {
        c.k_values = parse_grid<int>(f.k, "k");
    }
    if (given("--p") || given("--q")) {
        c.p_values = parse_grid<double>(f.p, "p");
    }
    if (given("--subsystem")) {
        c.subsystem_sizes = parse_grid<int>(f.subsystem, "subsystem");
    }
    if (given("--instances")) {
        c.instances = f.instances;
    }
    if (given("--shots")) {
        c.shots = f.shots;
    }
    if (given("--seed")) {
        c.seed = f.seed;
    }
    if (given("--bipartitions")) {
        c.bipartitions = f.bipartitions;
    }
    if (given("--policy")) {
        c.bipartition = f.policy == "random" ? sd::BipartitionPolicy::Random : sd::BipartitionPolicy::Contiguous;
    }
    if (given("--lambda")) {
        c.lambda = f.lambda;
    }
    if (given("--axis")) {
        c.axis = f.axis == "angles" ? sd::AxisSampling::UniformAngles : sd::AxisSampling::SphereSegment;
    }
    if (given("--pairs")) {
        c.pairs = f.pairs == "all" ? sd::PairSampling::AllPairs : sd::PairSampling::Slots;
    }
    c.max_qubits = f.max_qubits;
    c.threads = f.threads;
    c.output = f.out;
    return c;
}

void run_sweep_command(const SweepCommand& cmd) {
    sd::SweepConfig cfg = build_config(cmd);
    sd::SweepResult r = sd::run_sweep(cfg);
    if (cfg.output.empty() || cfg.output == "-") {
        sd::write_csv(std::cout, r);
    } else {
        sd::emit_csv(r, cfg.output);
    }
    if (!cmd.flags->svg.empty()) {
        const auto& a = cmd.flags->plot;
        sd::emit_svg(r, cmd.flags->svg, a.x, a.y, a.series);
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw sd::IoError("cannot write '" + path + "'");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw sd::IoError("cannot open '" + path + "'");
    }
    return in;
}

sd::SignedDickeState load_state(const std::string& path) {
    auto in = open_input(path);
    return sd::parse_state_dump(in);
}

std::vector<sd::CzPair> parse_xi(std::string_view text) {
    std::vector<sd::CzPair> xi;
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        std::string_view item = text.substr(start, comma - start);
        const auto dash = item.find('-');
        if (dash == std::string_view::npos) {
            throw sd::ConfigError("xi: expected pairs like 1-2, got '" + std::string(item) + "'");
        }
        xi.push_back({parse_number<int>(item.substr(0, dash), "xi"), parse_number<int>(item.substr(dash + 1), "xi")});
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return xi;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-sign Dicke states: entanglement, circuits, dissimilarity and parent Hamiltonians"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    std::vector<SweepCommand> sweeps;
    for (const auto& [id, name] : sd::kExperimentNames) {
        sweeps.push_back(add_sweep(app, id));
    }

    int n = 4, k = -1;
    double p = 0.5, field = 0.0;
    std::uint64_t seed = 1;
    std::string out, state_path, members, xi_text, check_path, record_path, basis = "random", axis = "segment",
                                                                          pairs = "slots";
    int subsystem = 0, lambda = 2;
    std::size_t shots = 8192;
    double q = -1.0;

    auto* state_cmd = app.add_subcommand("state", "Sample a signed Dicke state and dump its signs");
    state_cmd->add_option("--n", n, "qubits")->required();
    state_cmd->add_option("--k", k, "excitations (default n/2)");
    state_cmd->add_option("--p", p, "sign-flip probability");
    state_cmd->add_option("--seed", seed, "seed");
    state_cmd->add_option("--out", out, "output path (default stdout)");

    auto* entropy_cmd = app.add_subcommand("entropy", "Entanglement entropy of a dumped state");
    entropy_cmd->add_option("--state", state_path, "state dump")->required();
    entropy_cmd->add_option("--subsystem", subsystem, "contiguous subsystem size n_A (default n/2)");
    entropy_cmd->add_option("--members", members, "comma-separated qubits of subsystem A");

    auto* circuit_cmd = app.add_subcommand("circuit", "Dump the Dicke preparation circuit, optionally with a CZ layer");
    circuit_cmd->add_option("--n", n, "qubits")->required();
    circuit_cmd->add_option("--k", k, "excitations (default n/2)");
    circuit_cmd->add_option("--q", q, "append a random CZ layer with this probability");
    circuit_cmd->add_option("--pairs", pairs, "CZ layer pair sampling")->check(CLI::IsMember({"slots", "all"}));
    circuit_cmd->add_option("--seed", seed, "seed of the CZ layer");
    circuit_cmd->add_option("--out", out, "output path (default stdout)");

    auto* ham_cmd = app.add_subcommand("hamiltonian", "Dump the parent Hamiltonian xi H_LMG xi as Pauli terms");
    ham_cmd->add_option("--n", n, "qubits")->required();
    ham_cmd->add_option("--field", field, "longitudinal field h");
    ham_cmd->add_option("--xi", xi_text, "CZ pairs, e.g. 1-2,1-3 (0-based qubits)");
    ham_cmd->add_option("--check", check_path, "state dump to test as an eigen/ground state");
    ham_cmd->add_option("--out", out, "output path (default stdout)");

    auto* measure_cmd = app.add_subcommand("measure", "Sample a measurement record from a dumped state");
    measure_cmd->add_option("--state", state_path, "state dump")->required();
    measure_cmd->add_option("--shots", shots, "shots")->check(CLI::PositiveNumber);
    measure_cmd->add_option("--seed", seed, "seed");
    measure_cmd->add_option("--basis", basis, "measurement basis")->check(CLI::IsMember({"z", "random"}));
    measure_cmd->add_option("--axis", axis, "random axis sampling")->check(CLI::IsMember({"segment", "angles"}));
    measure_cmd->add_option("--out", out, "output path (default stdout)");

    auto* analyze_cmd = app.add_subcommand("analyze", "Dissimilarity profile of a measurement record file");
    analyze_cmd->add_option("--record", record_path, "record: one shot per line, 0/1 or +-1 symbols")->required();
    analyze_cmd->add_option("--lambda", lambda, "coarse-graining factor")->check(CLI::Range(2, 1 << 20));
    analyze_cmd->footer("Columns: m,D_m followed by a final total row");

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const sd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        for (const auto& s : sweeps) {
            if (s.app->parsed()) {
                run_sweep_command(s);
                return 0;
            }
        }
        if (state_cmd->parsed()) {
            const int kk = k < 0 ? n / 2 : k;
            write_text(out, sd::dump_state(sd::sample_signed_dicke(n, kk, p, seed)));
        } else if (entropy_cmd->parsed()) {
            const auto s = load_state(state_path);
            sd::Bipartition part = sd::Bipartition::contiguous_half(s.num_qubits());
            if (!members.empty()) {
                part = sd::Bipartition(s.num_qubits(), parse_grid<int>(members, "members"));
            } else if (subsystem > 0) {
                part = sd::Bipartition::contiguous(s.num_qubits(), subsystem);
            }
            const auto res = sd::von_neumann_entropy(sd::build_blocked_matrix(s, part));
            std::cout << "entropy " << sd::format_csv_value(res.entropy_bits) << "\nrank " << res.rank << "\nspectrum";
            for (double v : res.schmidt_spectrum) {
                std::cout << ' ' << sd::format_csv_value(v);
            }
            std::cout << '\n';
        } else if (circuit_cmd->parsed()) {
            const int kk = k < 0 ? n / 2 : k;
            sd::CircuitSpec c = sd::build_dicke_prep(n, kk);
            if (q >= 0.0) {
                c.append(sd::build_random_cz_layer(n, q, seed,
                                                   pairs == "all" ? sd::PairSampling::AllPairs : sd::PairSampling::Slots));
            }
            write_text(out, sd::dump_circuit(c));
        } else if (ham_cmd->parsed()) {
            const auto xi = parse_xi(xi_text);
            const sd::PauliSum h = sd::conjugate(sd::build_lmg(n, field), xi);
            write_text(out, sd::to_string(h));
            if (!check_path.empty()) {
                const auto res = sd::ground_state_check(h, load_state(check_path));
                std::cerr << "eigenstate " << (res.is_eigenstate ? "yes" : "no") << "\nenergy "
                          << sd::format_csv_value(res.energy) << "\nground_energy "
                          << sd::format_csv_value(res.ground_energy) << "\nground " << (res.is_ground ? "yes" : "no")
                          << '\n';
            }
        } else if (measure_cmd->parsed()) {
            const auto psi = sd::embed_statevector(load_state(state_path), sd::kDefaultStatevectorGuard);
            const auto rec = sd::sample_measurements(
                psi, shots, basis == "z" ? sd::MeasurementBasis::Z : sd::MeasurementBasis::RandomPerShot, seed,
                axis == "angles" ? sd::AxisSampling::UniformAngles : sd::AxisSampling::SphereSegment);
            std::ostringstream text;
            sd::write_record(text, rec);
            write_text(out, text.str());
        } else if (analyze_cmd->parsed()) {
            const auto prof = sd::total_dissimilarity(sd::read_record_file(record_path), lambda);
            std::cout << "m,D_m\n";
            for (int m = 1; m <= prof.steps; ++m) {
                std::cout << m << ',' << sd::format_csv_value(prof.partial(m)) << '\n';
            }
            std::cout << "total," << sd::format_csv_value(prof.total) << '\n';
        }
    } catch (const sd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
