// epsilon-joint-typicality test, the joint typicality decoder, and an
// ML decoder used as a comparison baseline.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ppclab/channel.hpp"
#include "ppclab/ensemble.hpp"

namespace ppclab {

// empirical joint distribution of coordinate pairs
struct JointType {
    std::size_t n = 0;
    std::array<std::vector<std::size_t>, 2> counts;  // counts[x][y]
    double freq(int x, std::size_t y) const {
        return static_cast<double>(counts[x][y]) / static_cast<double>(n);
    }
};

JointType joint_type(const BitVector& x, const OutputWord& y, std::size_t output_alphabet);

// |pi(x,y) - q(x)w(y|x)| <= eps * q(x)w(y|x) for every pair; cells with
// q(x)w(y|x) = 0 must be unoccupied
bool is_jointly_typical(const BinaryInputDMC& ch, double eps, const BitVector& x,
                        const OutputWord& y);

struct DecoderOutput {
    // empty = failure symbol e; otherwise 0-based index into the codebook
    std::optional<std::size_t> decision;
    bool is_failure() const { return !decision.has_value(); }
};

// unique jointly typical codeword, else failure; always scans the whole codebook
DecoderOutput jt_decode(const BinaryInputDMC& ch, double eps, const SampledCode& code,
                        const OutputWord& y);
// likelihood argmax; ties and all-impossible words give failure
DecoderOutput ml_decode(const BinaryInputDMC& ch, const SampledCode& code,
                        const OutputWord& y);

}  // namespace ppclab
