#include "ppclab/typicality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppclab {

JointType joint_type(const BitVector& x, const OutputWord& y, std::size_t output_alphabet) {
    if (x.size() != y.size()) throw std::invalid_argument("joint_type: length mismatch");
    JointType t;
    t.n = x.size();
    t.counts[0].assign(output_alphabet, 0);
    t.counts[1].assign(output_alphabet, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] >= output_alphabet) throw std::invalid_argument("joint_type: output symbol out of range");
        ++t.counts[x.get(i)][y[i]];
    }
    return t;
}

bool is_jointly_typical(const BinaryInputDMC& ch, double eps, const BitVector& x,
                        const OutputWord& y) {
    if (eps <= 0) throw std::invalid_argument("is_jointly_typical: eps must be positive");
    if (x.size() != y.size()) throw std::invalid_argument("is_jointly_typical: length mismatch");
    const std::size_t n = x.size();
    const std::size_t ny = ch.output_alphabet_size();
    // counts, then |count - n q w| <= eps n q w cell by cell
    std::array<std::vector<std::size_t>, 2> counts;
    counts[0].assign(ny, 0);
    counts[1].assign(ny, 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[x.get(i)][y[i]];
    const double dn = static_cast<double>(n);
    for (int xv = 0; xv < 2; ++xv)
        for (std::size_t yv = 0; yv < ny; ++yv) {
            const double target = ch.q(xv) * ch.w(xv, yv);
            const double cnt = static_cast<double>(counts[xv][yv]);
            if (target < BinaryInputDMC::kSupportEps) {
                if (counts[xv][yv] != 0) return false;
            } else if (std::abs(cnt - dn * target) > eps * dn * target) {
                return false;
            }
        }
    return true;
}

DecoderOutput jt_decode(const BinaryInputDMC& ch, double eps, const SampledCode& code,
                        const OutputWord& y) {
    std::size_t hits = 0, last = 0;
    for (std::size_t j = 0; j < code.codewords.size(); ++j) {
        if (is_jointly_typical(ch, eps, code.codewords[j], y)) {
            ++hits;
            last = j;
        }
    }
    if (hits == 1) return {last};
    return {std::nullopt};
}

DecoderOutput ml_decode(const BinaryInputDMC& ch, const SampledCode& code,
                        const OutputWord& y) {
    constexpr double tie_tol = 1e-9;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0, best_count = 0;
    for (std::size_t j = 0; j < code.codewords.size(); ++j) {
        const double ll = ch.log_likelihood(code.codewords[j], y);
        if (ll == -std::numeric_limits<double>::infinity()) continue;
        if (best_count == 0 || ll > best + tie_tol) {
            best = ll;
            best_idx = j;
            best_count = 1;
        } else if (ll > best - tie_tol) {
            ++best_count;
        }
    }
    if (best_count == 1) return {best_idx};
    return {std::nullopt};
}

}  // namespace ppclab
