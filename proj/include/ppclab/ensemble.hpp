// Random code ensembles drawn under a symmetric constraint function,
// specialized to parity checks: exact syndrome/coset distributions at
// small n and samplers at all n.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "ppclab/bitmat.hpp"
#include "ppclab/channel.hpp"
#include "ppclab/rng.hpp"

namespace ppclab {

// General symmetric constraint: sum_s alpha_s phi(s, x^n) = 1 for all x^n.
struct SymmetricConstraint {
    std::size_t space_size = 0;
    std::function<bool(std::size_t, const BitVector&)> phi;
    std::vector<double> alpha;
};

SymmetricConstraint parity_constraint(const BitMatrix& h);
// the even/odd toy constraint; s=0 is even parity, s=1 odd
SymmetricConstraint odd_even_constraint(std::size_t n);
// exhaustive symmetry check, n <= 12
bool check_constraint_symmetry(const SymmetricConstraint& c, std::size_t n);

struct SampledCode {
    BitVector syndrome;
    std::vector<BitVector> codewords;
    double rate = 0.0;
};

// 2^(nR) rounded, never fewer than 2 messages
std::size_t codebook_size(std::size_t n, double rate);

class ParityCheckEnsemble {
public:
    enum class SamplingMode { Auto, ForceRejection };

    ParityCheckEnsemble(BitMatrix h, BinaryInputDMC channel);

    const BitMatrix& h() const { return h_; }
    const BinaryInputDMC& channel() const { return ch_; }
    std::size_t n() const { return h_.cols(); }
    std::size_t r() const { return h_.rows(); }
    std::size_t h_rank() const { return echelon_->rank(); }
    const std::vector<BitVector>& nullspace() const { return basis_; }
    // deterministic representative of K_s; throws for unreachable s
    BitVector coset_representative(const BitVector& s) const;
    bool syndrome_reachable(const BitVector& s) const;

    // p_S over all 2^r syndromes, indexed by BitVector::to_uint of s.
    // exact mode, requires n <= 20 (and r <= 26 for the table)
    std::vector<double> syndrome_distribution() const;
    // q_s over the coset K_s; exact mode, requires n - rank <= 20
    std::vector<std::pair<BitVector, double>> conditional_codeword_distribution(
        const BitVector& s) const;

    // draw S ~ p_S then 2^(nR) conditionally i.i.d. codewords from q_S
    SampledCode sample_constrained_code(double rate, RngStream& rng,
                                        SamplingMode mode = SamplingMode::Auto) const;
    // one codeword from q_s for a given syndrome
    BitVector sample_codeword(const BitVector& s, RngStream& rng,
                              SamplingMode mode = SamplingMode::Auto) const;
    // draw S ~ p_S (valid at any n; marginalizes a q^n draw)
    BitVector sample_syndrome(RngStream& rng) const;

    // total variation distance between sum_s p_S(s) q_s(.) and q^n(.); n <= 12
    double verify_marginal_recovery() const;

private:
    BitMatrix h_;
    BinaryInputDMC ch_;
    std::shared_ptr<const Gf2RowEchelon> echelon_;
    std::vector<BitVector> basis_;

    BitVector sample_input_word(RngStream& rng) const;  // x ~ q^n
    BitVector sample_coset_uniform(const BitVector& rep, RngStream& rng) const;
    BitVector sample_coset_exact(const BitVector& rep, RngStream& rng) const;
    BitVector sample_coset_rejection(const BitVector& s, RngStream& rng) const;
};

// Gallager's regular LDPC construction: stacked blocks of disjoint
// row-weight-`row_weight` checks, later blocks column-permuted at random.
BitMatrix gallager_ldpc_matrix(std::size_t n, std::size_t row_weight,
                               std::size_t col_weight, RngStream& rng);

}  // namespace ppclab
