// Binary-input discrete memoryless channels with a designated input
// distribution, single-letter information quantities and the
// concentration constants derived from them.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ppclab/bitmat.hpp"
#include "ppclab/rng.hpp"

#include <json.hpp>

namespace ppclab {

using OutputWord = std::vector<std::uint8_t>;

enum class ChannelKind { Bsc, Bec, Matrix };

// betas are max/min ratios over the supports of q(x)w(y|x), q and t;
// d_i = log2(beta_qw * beta_q * beta_t), d = d_i^2.
struct ChannelConstants {
    double beta_qw = 1.0;
    double beta_q = 1.0;
    double beta_t = 1.0;
    double d_i = 0.0;
    double d = 0.0;
    double mutual_info = 0.0;
    double cond_entropy_xy = 0.0;
};

class BinaryInputDMC {
public:
    // probabilities below this are treated as outside the support
    static constexpr double kSupportEps = 1e-15;

    static BinaryInputDMC bsc(double p, double q0 = 0.5);
    // outputs ordered (0, erasure, 1)
    static BinaryInputDMC bec(double e, double q0 = 0.5);
    static BinaryInputDMC from_matrix(const std::array<std::vector<double>, 2>& w,
                                      double q0 = 0.5);

    ChannelKind kind() const { return kind_; }
    double param() const { return param_; }
    std::size_t output_alphabet_size() const { return ny_; }
    double w(int x, std::size_t y) const { return w_[x][y]; }
    double log2w(int x, std::size_t y) const { return logw_[x][y]; }
    double q(int x) const { return q_[x]; }
    double log2q(int x) const { return logq_[x]; }
    double t(std::size_t y) const { return t_[y]; }
    double log2t(std::size_t y) const { return logt_[y]; }
    bool uniform_input() const;

    // t(y) = sum_x q(x) w(y|x)
    std::vector<double> output_marginal() const;
    double mutual_information() const;        // I(X;Y), bits
    double input_entropy() const;             // H(X), bits
    double conditional_entropy_x_given_y() const;  // H(X|Y), bits
    ChannelConstants lemma2_constants() const;

    OutputWord transmit(const BitVector& x, RngStream& rng) const;
    // sum_i log2 w(y_i|x_i); -inf when some factor is zero
    double log_likelihood(const BitVector& x, const OutputWord& y) const;
    double log2_output_marginal_word(const OutputWord& y) const;  // log2 t^n(y)

    nlohmann::json to_json() const;
    static BinaryInputDMC from_json(const nlohmann::json& j);

private:
    BinaryInputDMC(ChannelKind kind, double param,
                   std::array<std::vector<double>, 2> w, double q0);

    ChannelKind kind_;
    double param_ = 0.0;
    std::size_t ny_ = 0;
    std::array<std::vector<double>, 2> w_;
    std::array<std::vector<double>, 2> logw_;
    std::array<std::vector<double>, 2> cum_;  // per-input cumulative for sampling
    std::array<double, 2> q_{};
    std::array<double, 2> logq_{};
    std::vector<double> t_;
    std::vector<double> logt_;
};

double binary_entropy(double p);  // h2, bits

}  // namespace ppclab
