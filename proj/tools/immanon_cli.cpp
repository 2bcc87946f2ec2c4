// Command-line front end: character tables, immanants, scattering
// probabilities, distinguishability sweeps, the dominance stress campaign and
// occupation-ladder checks, with CSV/JSON output for offline plotting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "immanon/characters.hpp"
#include "immanon/immanant.hpp"
#include "immanon/inequalities.hpp"
#include "immanon/io.hpp"
#include "immanon/log.hpp"
#include "immanon/scattering.hpp"
#include "immanon/state.hpp"

namespace {

using namespace immanon;

std::string g12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

std::string g12_or_null(double value) {
    if (std::isnan(value)) return "null";
    return g12(value);
}

// Dot-joined parts, e.g. "3.1.1". Unsorted input is accepted with a warning.
Partition parse_lambda(const std::string& text) {
    std::vector<int> parts;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, '.')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid partition part '" + tok + "' in '" + text + "'");
        }
        if (pos != tok.size() || v < 1) {
            throw std::invalid_argument("invalid partition part '" + tok + "' in '" + text + "'");
        }
        parts.push_back(v);
    }
    if (parts.empty()) {
        throw std::invalid_argument("empty partition '" + text + "'");
    }
    std::vector<int> sorted = parts;
    std::sort(sorted.rbegin(), sorted.rend());
    if (sorted != parts) {
        log::warn("partition '" + text + "' re-sorted to '" + Partition(sorted).label() + "'");
    }
    return Partition(std::move(sorted));
}

OccupationVector parse_occupation(const std::string& text) {
    std::vector<int> counts;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid occupation count '" + tok + "'");
        }
        if (pos != tok.size() || v < 0) {
            throw std::invalid_argument("invalid occupation count '" + tok + "'");
        }
        counts.push_back(v);
    }
    if (counts.empty()) {
        throw std::invalid_argument("empty occupation list");
    }
    return OccupationVector(std::move(counts));
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing output file: " + path);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"many-body quantities for particles with generalized exchange symmetry"};
    app.require_subcommand(1);
    app.fallthrough();

    int jobs = 1;
    bool deterministic = false;
    app.add_option("--jobs", jobs, "worker pool size for sweeps and campaigns")
        ->check(CLI::PositiveNumber);
    app.add_flag("--deterministic", deterministic,
                 "single-worker mode with byte-stable output (zeroes reported wall time)");

    auto* chartable = app.add_subcommand("chartable", "character table of S_n as CSV");
    int ct_n = 0;
    std::string ct_output;
    chartable->add_option("--n", ct_n, "particle number (1..8)")->required();
    chartable->add_option("--output", ct_output, "output file (default stdout)");

    auto* imm_cmd = app.add_subcommand("immanant", "immanant of a matrix read from JSON");
    std::string imm_lambda, imm_matrix;
    imm_cmd->add_option("--lambda", imm_lambda, "partition, dot-joined (e.g. 2.1)")->required();
    imm_cmd->add_option("--matrix", imm_matrix, "matrix JSON file")->required();

    auto* scatter = app.add_subcommand(
        "scatter", "output-arrangement probability for partially distinguishable particles");
    std::string sc_lambda, sc_matrix, sc_smatrix, sc_occupation;
    scatter->add_option("--lambda", sc_lambda, "species partition")->required();
    scatter->add_option("--matrix", sc_matrix, "scattering matrix JSON file")->required();
    scatter->add_option("--smatrix", sc_smatrix, "distinguishability matrix JSON file")
        ->required();
    scatter->add_option("--occupation", sc_occupation, "output counts per mode, e.g. 2,1,0")
        ->required();

    auto* sweep = app.add_subcommand("sweep",
                                     "bunching factors over the pairwise-overlap transition");
    int sw_n = 0, sw_steps = 101;
    double sw_min = 0.0, sw_max = 1.0;
    std::string sw_output;
    sweep->add_option("--n", sw_n, "particle number (2..6)")->required();
    sweep->add_option("--x-min", sw_min, "grid start (default 0)");
    sweep->add_option("--x-max", sw_max, "grid end (default 1)");
    sweep->add_option("--x-steps", sw_steps, "grid points (default 101)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--output", sw_output, "output CSV file (default stdout)");

    auto* dominance = app.add_subcommand("dominance",
                                         "random-matrix stress run of the immanant bounds");
    int dom_n = 0;
    long long dom_trials = 1000;
    std::uint64_t dom_seed = 1;
    std::string dom_output;
    dominance->add_option("--n", dom_n, "matrix dimension (1..7)")->required();
    dominance->add_option("--trials", dom_trials, "number of random matrices");
    dominance->add_option("--seed", dom_seed, "base seed; trial t uses seed+t");
    dominance->add_option("--output", dom_output, "summary JSON file (default stdout)");

    auto* pauli = app.add_subcommand("pauli", "occupation-ladder projection norm");
    std::string pl_lambda, pl_eta;
    pauli->add_option("--lambda", pl_lambda, "species partition")->required();
    pauli->add_option("--eta", pl_eta, "occupation-multiplicity partition")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (deterministic) jobs = 1;

    if (chartable->parsed()) {
        write_output(ct_output, character_table(ct_n).to_csv());
        return 0;
    }

    if (imm_cmd->parsed()) {
        const Partition lambda = parse_lambda(imm_lambda);
        const ComplexMatrix m = read_matrix_file(imm_matrix);
        if (lambda.size() != m.dim()) {
            throw std::invalid_argument("partition size " + std::to_string(lambda.size()) +
                                        " does not match matrix dimension " +
                                        std::to_string(m.dim()));
        }
        const Complex value = immanant(lambda, m);
        const Complex normalized = value / static_cast<double>(hook_dimension(lambda));
        write_output("", "{\"re\":" + g12(value.real()) + ",\"im\":" + g12(value.imag()) +
                             ",\"normalized\":{\"re\":" + g12(normalized.real()) +
                             ",\"im\":" + g12(normalized.imag()) + "}}\n");
        return 0;
    }

    if (scatter->parsed()) {
        const Partition lambda = parse_lambda(sc_lambda);
        const ScatteringMatrix m(read_matrix_file(sc_matrix));
        const DistinguishabilityMatrix s(read_matrix_file(sc_smatrix));
        const OccupationVector occupation = parse_occupation(sc_occupation);
        if (occupation.modes() != m.dim() || occupation.total() != m.dim()) {
            throw std::invalid_argument("occupation must list " + std::to_string(m.dim()) +
                                        " modes summing to " + std::to_string(m.dim()));
        }
        const double p = arrangement_probability(lambda, m, s, occupation);
        const double classical = distinguishable_probability(m, occupation);
        const double coherent = indistinguishable_probability(lambda, m, occupation);
        write_output("", "{\"lambda\":\"" + lambda.label() + "\",\"occupation\":\"" +
                             occupation.label() + "\",\"probability\":" + g12(p) +
                             ",\"distinguishable\":" + g12(classical) +
                             ",\"indistinguishable\":" + g12(coherent) + "}\n");
        return 0;
    }

    if (sweep->parsed()) {
        if (sw_min < 0.0 || sw_max > 1.0 || sw_min > sw_max) {
            throw std::invalid_argument("sweep grid must satisfy 0 <= x-min <= x-max <= 1");
        }
        std::vector<double> grid;
        for (int k = 0; k < sw_steps; ++k) {
            grid.push_back(sw_steps == 1
                               ? sw_min
                               : sw_min + (sw_max - sw_min) * k / (sw_steps - 1));
        }
        log::info("sweep: n=" + std::to_string(sw_n) + ", " + std::to_string(grid.size()) +
                  " grid points, jobs=" + std::to_string(jobs));
        write_output(sw_output, transition_sweep(sw_n, grid, jobs).to_csv());
        return 0;
    }

    if (dominance->parsed()) {
        std::vector<ViolationRecord> violations;
        const CampaignSummary summary =
            dominance_campaign(dom_n, dom_trials, dom_seed, jobs, &violations);
        const std::filesystem::path dump_dir =
            dom_output.empty() ? std::filesystem::current_path()
                               : std::filesystem::absolute(dom_output).parent_path();
        for (const auto& violation : violations) {
            Json dump = matrix_to_json(violation.matrix);
            dump["seed"] = violation.seed;
            const auto path =
                dump_dir / ("dominance_violation_" + std::to_string(violation.seed) + ".json");
            write_matrix_file(path.string(), dump);
            log::error("bound violation dumped to " + path.string());
        }
        const double wall = deterministic ? 0.0 : summary.wall_time_s;
        write_output(dom_output,
                     "{\"n\":" + std::to_string(summary.n) +
                         ",\"trials\":" + std::to_string(summary.trials) +
                         ",\"schur_violations\":" + std::to_string(summary.schur_violations) +
                         ",\"dominance_violations\":" +
                         std::to_string(summary.dominance_violations) +
                         ",\"min_dominance_margin\":" + g12_or_null(summary.min_dominance_margin) +
                         ",\"wall_time_s\":" + g12(wall) + ",\"violation_detected\":" +
                         (summary.schur_violations + summary.dominance_violations > 0 ? "true"
                                                                                      : "false") +
                         "}\n");
        return 0;
    }

    if (pauli->parsed()) {
        const Partition lambda = parse_lambda(pl_lambda);
        const Partition eta = parse_lambda(pl_eta);
        const PauliCheckResult result = partial_pauli_check(lambda, eta);
        write_output("", "{\"projection_norm\":" + g12(result.projection_norm) +
                             ",\"majorization_allows\":" +
                             (result.majorization_allows ? "true" : "false") + "}\n");
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
