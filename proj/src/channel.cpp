#include "ppclab/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppclab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_log2(double p) { return p > 0 ? std::log2(p) : -kInf; }
}  // namespace

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

BinaryInputDMC::BinaryInputDMC(ChannelKind kind, double param,
                               std::array<std::vector<double>, 2> w, double q0)
    : kind_(kind), param_(param), ny_(w[0].size()), w_(std::move(w)) {
    if (w_[0].size() != w_[1].size() || ny_ == 0)
        throw std::invalid_argument("channel: transition rows must be equal, non-empty");
    if (!(q0 >= 0.0 && q0 <= 1.0))
        throw std::invalid_argument("channel: q(0) must be in [0,1]");
    for (int x = 0; x < 2; ++x) {
        double sum = 0.0;
        for (double v : w_[x]) {
            if (v < 0.0) throw std::invalid_argument("channel: negative transition probability");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("channel: transition row does not sum to 1");
    }
    q_ = {q0, 1.0 - q0};
    for (int x = 0; x < 2; ++x) {
        logq_[x] = safe_log2(q_[x]);
        logw_[x].resize(ny_);
        cum_[x].resize(ny_);
        double c = 0.0;
        for (std::size_t y = 0; y < ny_; ++y) {
            logw_[x][y] = safe_log2(w_[x][y]);
            c += w_[x][y];
            cum_[x][y] = c;
        }
        cum_[x][ny_ - 1] = 1.0;
    }
    t_.resize(ny_);
    logt_.resize(ny_);
    for (std::size_t y = 0; y < ny_; ++y) {
        t_[y] = q_[0] * w_[0][y] + q_[1] * w_[1][y];
        logt_[y] = safe_log2(t_[y]);
    }
}

BinaryInputDMC BinaryInputDMC::bsc(double p, double q0) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("bsc: p must be in [0,1]");
    return BinaryInputDMC(ChannelKind::Bsc, p, {{{1.0 - p, p}, {p, 1.0 - p}}}, q0);
}

BinaryInputDMC BinaryInputDMC::bec(double e, double q0) {
    if (e < 0.0 || e > 1.0) throw std::invalid_argument("bec: e must be in [0,1]");
    return BinaryInputDMC(ChannelKind::Bec, e, {{{1.0 - e, e, 0.0}, {0.0, e, 1.0 - e}}}, q0);
}

BinaryInputDMC BinaryInputDMC::from_matrix(const std::array<std::vector<double>, 2>& w,
                                           double q0) {
    return BinaryInputDMC(ChannelKind::Matrix, 0.0, w, q0);
}

bool BinaryInputDMC::uniform_input() const { return std::abs(q_[0] - 0.5) < 1e-15; }

std::vector<double> BinaryInputDMC::output_marginal() const { return t_; }

double BinaryInputDMC::mutual_information() const {
    double i = 0.0;
    for (int x = 0; x < 2; ++x) {
        if (q_[x] < kSupportEps) continue;
        for (std::size_t y = 0; y < ny_; ++y) {
            const double p = q_[x] * w_[x][y];
            if (p < kSupportEps) continue;
            i += p * (logw_[x][y] - logt_[y]);
        }
    }
    return i < 0.0 ? 0.0 : i;
}

double BinaryInputDMC::input_entropy() const { return binary_entropy(q_[0]); }

double BinaryInputDMC::conditional_entropy_x_given_y() const {
    const double h = input_entropy() - mutual_information();
    return h < 0.0 ? 0.0 : h;
}

ChannelConstants BinaryInputDMC::lemma2_constants() const {
    ChannelConstants c;
    double lo_qw = kInf, hi_qw = 0.0;
    for (int x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < ny_; ++y) {
            const double p = q_[x] * w_[x][y];
            if (p < kSupportEps) continue;
            lo_qw = std::min(lo_qw, p);
            hi_qw = std::max(hi_qw, p);
        }
    double lo_q = kInf, hi_q = 0.0;
    for (int x = 0; x < 2; ++x) {
        if (q_[x] < kSupportEps) continue;
        lo_q = std::min(lo_q, q_[x]);
        hi_q = std::max(hi_q, q_[x]);
    }
    double lo_t = kInf, hi_t = 0.0;
    for (std::size_t y = 0; y < ny_; ++y) {
        if (t_[y] < kSupportEps) continue;
        lo_t = std::min(lo_t, t_[y]);
        hi_t = std::max(hi_t, t_[y]);
    }
    c.beta_qw = hi_qw / lo_qw;
    c.beta_q = hi_q / lo_q;
    c.beta_t = hi_t / lo_t;
    c.d_i = std::log2(c.beta_qw * c.beta_q * c.beta_t);
    c.d = c.d_i * c.d_i;
    c.mutual_info = mutual_information();
    c.cond_entropy_xy = conditional_entropy_x_given_y();
    return c;
}

OutputWord BinaryInputDMC::transmit(const BitVector& x, RngStream& rng) const {
    OutputWord y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& cum = cum_[x.get(i)];
        const double u = rng.uniform();
        std::size_t k = 0;
        while (k + 1 < ny_ && u >= cum[k]) ++k;
        y[i] = static_cast<std::uint8_t>(k);
    }
    return y;
}

double BinaryInputDMC::log_likelihood(const BitVector& x, const OutputWord& y) const {
    if (x.size() != y.size()) throw std::invalid_argument("log_likelihood: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double l = logw_[x.get(i)][y[i]];
        if (l == -kInf) return -kInf;
        acc += l;
    }
    return acc;
}

double BinaryInputDMC::log2_output_marginal_word(const OutputWord& y) const {
    double acc = 0.0;
    for (auto yi : y) {
        if (logt_[yi] == -kInf) return -kInf;
        acc += logt_[yi];
    }
    return acc;
}

nlohmann::json BinaryInputDMC::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case ChannelKind::Bsc: j["kind"] = "bsc"; j["param"] = param_; break;
        case ChannelKind::Bec: j["kind"] = "bec"; j["param"] = param_; break;
        case ChannelKind::Matrix:
            j["kind"] = "matrix";
            j["w"] = {w_[0], w_[1]};
            break;
    }
    j["q"] = {q_[0], q_[1]};
    return j;
}

BinaryInputDMC BinaryInputDMC::from_json(const nlohmann::json& j) {
    double q0 = 0.5;
    if (j.contains("q")) {
        const auto q = j.at("q").get<std::vector<double>>();
        if (q.size() != 2 || std::abs(q[0] + q[1] - 1.0) > 1e-12)
            throw std::invalid_argument("channel config: q must be [q0, q1] summing to 1");
        q0 = q[0];
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bsc") return bsc(j.at("param").get<double>(), q0);
    if (kind == "bec") return bec(j.at("param").get<double>(), q0);
    if (kind == "matrix") {
        const auto rows = j.at("w").get<std::vector<std::vector<double>>>();
        if (rows.size() != 2) throw std::invalid_argument("channel config: w needs two rows");
        return from_matrix({rows[0], rows[1]}, q0);
    }
    throw std::invalid_argument("channel config: unknown kind '" + kind + "'");
}

}  // namespace ppclab
