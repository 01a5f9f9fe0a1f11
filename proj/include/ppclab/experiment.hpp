// Reproducible experiment driver: end-to-end error-rate simulation,
// rate sweeps, minimum-distance studies and result persistence.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppclab/bitmat.hpp"
#include "ppclab/channel.hpp"
#include "ppclab/ensemble.hpp"
#include "ppclab/polar.hpp"
#include "ppclab/rng.hpp"

#include <json.hpp>

namespace ppclab {

// Builds a parity-check matrix from its JSON description. Accepted forms:
//   "3 6\n101010\n..."                       inline matrix text
//   "path/to/matrix.txt"                     file in the same text format
//   {"kind":"identity","n":8}
//   {"kind":"empty","n":8}
//   {"kind":"ldpc","n":12,"row_weight":4,"col_weight":2}
//   {"kind":"polar","n":16,"beta":0.25}      threshold design on `channel`
//   {"kind":"polar","n":16,"rate":0.25}      rate-targeted design
// The rng feeds the LDPC permutations; polar designs derive entropies from
// the channel (erasure recursion for the BEC, exhaustive or Monte Carlo
// otherwise, "design_trials" controlling the latter).
BitMatrix h_from_config(const nlohmann::json& spec, const BinaryInputDMC& channel,
                        RngStream& rng);

struct ExperimentConfig {
    nlohmann::json channel;   // channel config json
    nlohmann::json h;         // parity-check config json
    double rate = 0.5;
    double eps_typicality = 0.1;
    std::uint64_t trials = 1000;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;
    bool randomize_message = false;  // default fixes M = 1 (symmetry argument)
    std::string out_dir;

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct ExperimentResult {
    nlohmann::json config;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::uint64_t no_typical = 0;    // no jointly typical codeword
    std::uint64_t non_unique = 0;    // two or more typical codewords
    std::uint64_t wrong_unique = 0;  // unique but not the sent message
    double error_rate = 0.0;
    double half_width = 0.0;  // Wilson 95%
    double wall_seconds = 0.0;
    std::string version;

    nlohmann::json to_json() const;
    static ExperimentResult from_json(const nlohmann::json& j);
    // metric columns only; identical across worker counts for a fixed seed
    std::string csv_header() const;
    std::string csv_row() const;
};

ExperimentResult run_error_sim(const ExperimentConfig& cfg);

struct SweepRow {
    std::size_t n = 0;
    double rate = 0.0;
    ExperimentResult result;
};
// grid over (blocklength, rate); empty inputs give an empty table
std::vector<SweepRow> run_rate_sweep(const ExperimentConfig& base,
                                     const std::vector<double>& rates,
                                     const std::vector<std::size_t>& blocklengths);

// minimum pairwise Hamming distance of an explicit codebook
std::size_t min_distance_exact(const std::vector<BitVector>& codewords);

struct MindistStudy {
    std::size_t polar_min = 0;      // exact min distance of the polar code
    double ppc_mean = 0.0;          // over sampled PPC codebooks (set semantics)
    std::size_t ppc_min = 0;
    std::size_t ppc_max = 0;
    std::size_t samples = 0;
    std::size_t resamples = 0;      // degenerate single-word draws retried
};
MindistStudy run_mindist_study(std::size_t ell, double rate, std::size_t samples,
                               double erasure, RngStream& rng);

// JSON (full fidelity) plus flat CSV next to it; returns the two paths
std::pair<std::string, std::string> emit_results(const ExperimentResult& res,
                                                 const std::string& dir,
                                                 const std::string& name);
ExperimentResult load_result(const std::string& json_path);
void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace ppclab
