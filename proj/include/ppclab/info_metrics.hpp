// Leakage machinery: the information density i(s;y^n), exact I(S;Y^n)
// by enumeration, Monte Carlo tail probabilities and the
// Azuma-Hoeffding concentration bound.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppclab/channel.hpp"
#include "ppclab/ensemble.hpp"
#include "ppclab/rng.hpp"
#include "ppclab/stats.hpp"

namespace ppclab {

// Evaluates coset sums for a fixed ensemble. Enumeration runs over the
// nullspace translate of a representative, in log domain.
class InfoDensityEvaluator {
public:
    explicit InfoDensityEvaluator(const ParityCheckEnsemble& ens);

    // log2 p_{S,Y^n}(s, y); -inf when the pair has no mass
    double log2_joint_sy(const BitVector& s, const OutputWord& y) const;
    // log2 p_S(s); -inf for unreachable syndromes
    double log2_p_s(const BitVector& s) const;
    // i(s;y^n) in bits; throws when p_S(s) = 0 or t^n(y) = 0
    double info_density(const BitVector& s, const OutputWord& y) const;

    const ParityCheckEnsemble& ensemble() const { return ens_; }

private:
    const ParityCheckEnsemble& ens_;
    std::vector<std::vector<std::size_t>> basis_support_;

    double coset_lse(const BitVector& rep,
                     const std::vector<std::array<double, 2>>& contrib) const;
};

// exact I(S;Y^n) in bits; erasure channels with uniform inputs use the
// rank identity I = rank(H) - E_E[rank(H_E)], everything else the full
// |Y|^n x 2^n enumeration (throws when that is infeasible)
double exact_leakage(const ParityCheckEnsemble& ens);

struct PAEstimate {
    double p_hat = 0.0;
    double half_width = 0.0;
    std::uint64_t exceed_count = 0;
    std::uint64_t trials = 0;
};

// Monte Carlo P(i(S;Y^n) > n*gamma) with Wilson 95% half-width
PAEstimate estimate_P_A(const ParityCheckEnsemble& ens, double gamma,
                        std::uint64_t trials, RngStream& rng);

// exp(-2 n eps^2 / d), clamped to [0,1]; d = 0 degenerates to {eps==0 -> 1, else 0}
double azuma_bound(std::size_t n, double eps, double d);

struct GammaProfilePoint {
    std::size_t n = 0;
    std::size_t r = 0;
    double exact_bits = 0.0;
    double penalty = 0.0;  // (1/n) I(S;Y^n)
};
std::vector<GammaProfilePoint> gamma_star_profile(const std::vector<ParityCheckEnsemble>& family);

struct LipschitzCheck {
    double max_delta = 0.0;  // largest |f(x,y) - f(x~,y~)| over feasible one-coordinate changes
    double d_i = 0.0;        // the Lemma-2 constant for the channel
    std::uint64_t pairs_checked = 0;
};
// exhaustive single-coordinate perturbation scan of f(x,y) = i(xH^T; y); n <= 6
LipschitzCheck lipschitz_check(const ParityCheckEnsemble& ens);

struct LeakageReport {
    std::size_t n = 0;
    std::size_t r = 0;
    std::string matrix_kind;
    std::optional<double> exact_i_sy;
    double per_n_rate_penalty = 0.0;
    PAEstimate empirical_p_a;
    double azuma = 1.0;
    double gamma = 0.0;
};

}  // namespace ppclab
