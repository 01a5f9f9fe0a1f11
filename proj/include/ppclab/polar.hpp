// Polar transform, frozen-set design rules, the induced parity-check
// matrix and the index classes used by the leakage bound.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppclab/bitmat.hpp"
#include "ppclab/channel.hpp"
#include "ppclab/rng.hpp"

#include <json.hpp>

namespace ppclab {

BitMatrix polar_kernel();  // F = [1 0; 1 1]

// x = u * G_ell over GF(2); self-inverse
BitVector polar_encode(std::size_t ell, const BitVector& u);

struct PolarDesign {
    std::size_t ell = 0;
    std::size_t n = 1;
    double beta = 0.25;
    double threshold = 0.0;  // 2^(-n^beta); selection rule for threshold designs,
                             // class boundary only for rate-targeted ones
    std::vector<double> cond_entropies;  // H(U_i | Y^n, U^{i-1}), natural index order
    std::vector<std::size_t> frozen;     // 0-based, ascending
    std::vector<std::size_t> class_m, class_h, class_l;
    bool rate_targeted = false;          // set by the non-threshold selection mode
    std::string method;                  // "bec-exact" | "exhaustive" | "monte-carlo" | ""

    nlohmann::json to_json() const;      // indices serialized 1-based
    static PolarDesign from_json(const nlohmann::json& j);
};

// erasure recursion z -> {2z - z^2, z^2}; exact for the BEC under uniform inputs
std::vector<double> bec_exact_entropies(std::size_t ell, double erasure);

// exact H(U_i|Y^n,U^{i-1}) for arbitrary channel/input by full enumeration;
// n = 2^ell <= 10 for binary outputs, <= 8 for ternary
std::vector<double> exhaustive_entropies(std::size_t ell, const BinaryInputDMC& ch);

struct MonteCarloEntropies {
    std::vector<double> mean;
    std::vector<double> std_error;
};
// successive-cancellation posterior sampling; uniform input distribution only
MonteCarloEntropies monte_carlo_entropies(std::size_t ell, const BinaryInputDMC& ch,
                                          std::size_t trials, RngStream& rng);

// threshold rule: F = {i : H_i > 2^(-n^beta)}, classes M/H/L per the bound
PolarDesign select_frozen_set(const std::vector<double>& entropies, double beta);
// freeze everything but the round(n*rate) most reliable indices; convenience
// mode, flagged rate_targeted in the output metadata
PolarDesign rate_targeted_design(const std::vector<double>& entropies, double rate);

// H = ((G_ell^-1)_F)^T; satisfies x H^T = (x G_ell)_F
BitMatrix polar_parity_matrix(const PolarDesign& design);

// certified upper bound on I(U_F; Y^n): 1 per mid-entropy frozen index,
// 1 - H_i for the rest of F
double leakage_upper_bound(const PolarDesign& design);

}  // namespace ppclab
