#include "ppclab/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppclab {

SymmetricConstraint parity_constraint(const BitMatrix& h) {
    SymmetricConstraint c;
    c.space_size = std::size_t{1} << h.rows();
    c.alpha.assign(c.space_size, 1.0);
    c.phi = [h](std::size_t s, const BitVector& x) {
        return h.syndrome(x).to_uint() == s;
    };
    return c;
}

SymmetricConstraint odd_even_constraint(std::size_t n) {
    SymmetricConstraint c;
    c.space_size = 2;
    c.alpha = {1.0, 1.0};
    c.phi = [n](std::size_t s, const BitVector& x) {
        if (x.size() != n) throw std::invalid_argument("odd_even_constraint: bad word length");
        return static_cast<std::size_t>(x.parity()) == s;
    };
    return c;
}

bool check_constraint_symmetry(const SymmetricConstraint& c, std::size_t n) {
    if (n > 12) throw std::invalid_argument("check_constraint_symmetry: n too large for exhaustive check");
    for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << n); ++xi) {
        const BitVector x = BitVector::from_uint(xi, n);
        double total = 0.0;
        for (std::size_t s = 0; s < c.space_size; ++s)
            if (c.phi(s, x)) total += c.alpha[s];
        if (std::abs(total - 1.0) > 1e-12) return false;
    }
    return true;
}

std::size_t codebook_size(std::size_t n, double rate) {
    const double raw = std::exp2(static_cast<double>(n) * rate);
    if (raw > static_cast<double>(std::size_t{1} << 62))
        throw std::invalid_argument("codebook_size: 2^(nR) not representable");
    const auto rounded = static_cast<std::size_t>(std::llround(raw));
    return std::max<std::size_t>(2, rounded);
}

ParityCheckEnsemble::ParityCheckEnsemble(BitMatrix h, BinaryInputDMC channel)
    : h_(std::move(h)), ch_(std::move(channel)),
      echelon_(std::make_shared<Gf2RowEchelon>(h_)),
      basis_(echelon_->nullspace_basis()) {}

BitVector ParityCheckEnsemble::coset_representative(const BitVector& s) const {
    BitVector x;
    if (!echelon_->solve(s, x))
        throw std::runtime_error("coset_representative: syndrome outside the image of H");
    return x;
}

bool ParityCheckEnsemble::syndrome_reachable(const BitVector& s) const {
    BitVector x;
    return echelon_->solve(s, x);
}

std::vector<double> ParityCheckEnsemble::syndrome_distribution() const {
    const std::size_t nn = n();
    if (nn > 20)
        throw std::invalid_argument(
            "syndrome_distribution: n > 20, exact enumeration infeasible; use sample_syndrome");
    if (r() > 26)
        throw std::invalid_argument("syndrome_distribution: 2^r table too large");
    std::vector<double> p(std::size_t{1} << r(), 0.0);
    // q^n(x) depends only on the weight of x
    std::vector<double> mass(nn + 1);
    for (std::size_t w = 0; w <= nn; ++w)
        mass[w] = std::pow(ch_.q(0), static_cast<double>(nn - w)) *
                  std::pow(ch_.q(1), static_cast<double>(w));
    // Gray walk over all x, syndrome updated one column at a time
    std::vector<std::uint64_t> colsynd(nn);
    for (std::size_t j = 0; j < nn; ++j) {
        BitVector e(nn);
        e.set(j, true);
        colsynd[j] = h_.syndrome(e).to_uint();
    }
    std::uint64_t s = 0;
    int weight = 0;
    p[0] += mass[0];
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << nn); ++k) {
        const int j = std::countr_zero(k);  // bit flipped between gray(k-1) and gray(k)
        const std::uint64_t g = k ^ (k >> 1);
        s ^= colsynd[j];
        weight += ((g >> j) & 1u) ? 1 : -1;
        p[s] += mass[static_cast<std::size_t>(weight)];
    }
    return p;
}

std::vector<std::pair<BitVector, double>>
ParityCheckEnsemble::conditional_codeword_distribution(const BitVector& s) const {
    const std::size_t k = basis_.size();
    if (k > 20)
        throw std::invalid_argument("conditional_codeword_distribution: coset too large to enumerate");
    const BitVector rep = coset_representative(s);  // throws if unreachable
    std::vector<std::pair<BitVector, double>> out;
    out.reserve(std::size_t{1} << k);
    double total = 0.0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        BitVector x = rep;
        for (std::size_t b = 0; b < k; ++b)
            if ((m >> b) & 1u) x ^= basis_[b];
        const std::size_t w = x.popcount();
        const double q = std::pow(ch_.q(0), static_cast<double>(n() - w)) *
                         std::pow(ch_.q(1), static_cast<double>(w));
        total += q;
        out.emplace_back(std::move(x), q);
    }
    if (total <= 0.0)
        throw std::runtime_error("conditional_codeword_distribution: zero-probability syndrome");
    for (auto& [x, q] : out) q /= total;
    return out;
}

BitVector ParityCheckEnsemble::sample_input_word(RngStream& rng) const {
    BitVector x(n());
    const double q1 = ch_.q(1);
    for (std::size_t i = 0; i < n(); ++i)
        if (rng.bernoulli(q1)) x.set(i, true);
    return x;
}

BitVector ParityCheckEnsemble::sample_syndrome(RngStream& rng) const {
    return h_.syndrome(sample_input_word(rng));
}

BitVector ParityCheckEnsemble::sample_coset_uniform(const BitVector& rep, RngStream& rng) const {
    BitVector x = rep;
    for (const auto& b : basis_)
        if (rng.bit()) x ^= b;
    return x;
}

BitVector ParityCheckEnsemble::sample_coset_exact(const BitVector& rep, RngStream& rng) const {
    // cumulative inversion over the enumerated coset
    const std::size_t k = basis_.size();
    std::vector<double> cum(std::size_t{1} << k);
    double total = 0.0;
    for (std::uint64_t m = 0; m < cum.size(); ++m) {
        BitVector x = rep;
        for (std::size_t b = 0; b < k; ++b)
            if ((m >> b) & 1u) x ^= basis_[b];
        const std::size_t w = x.popcount();
        total += std::pow(ch_.q(0), static_cast<double>(n() - w)) *
                 std::pow(ch_.q(1), static_cast<double>(w));
        cum[m] = total;
    }
    if (total <= 0.0) throw std::runtime_error("sample_codeword: zero-probability coset");
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::uint64_t m = static_cast<std::uint64_t>(std::distance(cum.begin(), it));
    if (m >= cum.size()) m = cum.size() - 1;
    BitVector x = rep;
    for (std::size_t b = 0; b < k; ++b)
        if ((m >> b) & 1u) x ^= basis_[b];
    return x;
}

BitVector ParityCheckEnsemble::sample_coset_rejection(const BitVector& s, RngStream& rng) const {
    const double cap = 1e9;
    const double budget = std::min(cap, 1e6 * std::exp2(static_cast<double>(r())));
    const auto max_trials = static_cast<std::uint64_t>(budget);
    for (std::uint64_t t = 0; t < max_trials; ++t) {
        BitVector x = sample_input_word(rng);
        if (h_.syndrome(x) == s) return x;
    }
    throw std::runtime_error(
        "sample_codeword: rejection sampler exhausted " + std::to_string(max_trials) +
        " trials without hitting syndrome " + s.to_string());
}

BitVector ParityCheckEnsemble::sample_codeword(const BitVector& s, RngStream& rng,
                                               SamplingMode mode) const {
    if (mode == SamplingMode::ForceRejection) return sample_coset_rejection(s, rng);
    const BitVector rep = coset_representative(s);
    if (ch_.uniform_input()) return sample_coset_uniform(rep, rng);
    if (basis_.size() <= 24) return sample_coset_exact(rep, rng);
    return sample_coset_rejection(s, rng);
}

SampledCode ParityCheckEnsemble::sample_constrained_code(double rate, RngStream& rng,
                                                         SamplingMode mode) const {
    SampledCode code;
    code.rate = rate;
    const std::size_t m = codebook_size(n(), rate);
    const BitVector x0 = sample_input_word(rng);
    code.syndrome = h_.syndrome(x0);
    code.codewords.reserve(m);
    if (mode == SamplingMode::Auto && ch_.uniform_input()) {
        // x0 is itself q_S-distributed given S; xor with uniform nullspace draws
        const std::size_t k = basis_.size();
        if (k <= 12) {
            // small coset: precompute members, draw by index
            std::vector<BitVector> members;
            members.reserve(std::size_t{1} << k);
            for (std::uint64_t mm = 0; mm < (std::uint64_t{1} << k); ++mm) {
                BitVector x = x0;
                for (std::size_t b = 0; b < k; ++b)
                    if ((mm >> b) & 1u) x ^= basis_[b];
                members.push_back(std::move(x));
            }
            for (std::size_t j = 0; j < m; ++j)
                code.codewords.push_back(members[rng.u64() & ((std::uint64_t{1} << k) - 1)]);
        } else {
            for (std::size_t j = 0; j < m; ++j)
                code.codewords.push_back(sample_coset_uniform(x0, rng));
        }
        return code;
    }
    if (mode == SamplingMode::Auto && basis_.size() <= 24) {
        // non-uniform q: enumerate the coset once, then invert the cdf per draw
        const std::size_t k = basis_.size();
        std::vector<BitVector> members;
        std::vector<double> cum(std::size_t{1} << k);
        members.reserve(cum.size());
        double total = 0.0;
        for (std::uint64_t mm = 0; mm < cum.size(); ++mm) {
            BitVector x = x0;
            for (std::size_t b = 0; b < k; ++b)
                if ((mm >> b) & 1u) x ^= basis_[b];
            const std::size_t w = x.popcount();
            total += std::pow(ch_.q(0), static_cast<double>(n() - w)) *
                     std::pow(ch_.q(1), static_cast<double>(w));
            cum[mm] = total;
            members.push_back(std::move(x));
        }
        if (total <= 0.0) throw std::runtime_error("sample_constrained_code: zero-probability coset");
        for (std::size_t j = 0; j < m; ++j) {
            const double u = rng.uniform() * total;
            auto it = std::upper_bound(cum.begin(), cum.end(), u);
            std::size_t idx = static_cast<std::size_t>(std::distance(cum.begin(), it));
            if (idx >= members.size()) idx = members.size() - 1;
            code.codewords.push_back(members[idx]);
        }
        return code;
    }
    for (std::size_t j = 0; j < m; ++j)
        code.codewords.push_back(sample_codeword(code.syndrome, rng, mode));
    return code;
}

double ParityCheckEnsemble::verify_marginal_recovery() const {
    const std::size_t nn = n();
    if (nn > 12)
        throw std::invalid_argument("verify_marginal_recovery: n > 12");
    const auto p_s = syndrome_distribution();
    // mixture sum_s p_S(s) q_s(x); p_S and the q_s normalizers are
    // accumulated independently so the distance reflects real error
    std::vector<double> mix(std::size_t{1} << nn, 0.0);
    for (std::uint64_t s = 0; s < p_s.size(); ++s) {
        if (p_s[s] <= 0.0) continue;
        for (const auto& [x, q] : conditional_codeword_distribution(BitVector::from_uint(s, r())))
            mix[x.to_uint()] += p_s[s] * q;
    }
    double tv = 0.0;
    for (std::uint64_t xi = 0; xi < mix.size(); ++xi) {
        const std::size_t w = BitVector::from_uint(xi, nn).popcount();
        const double qn = std::pow(ch_.q(0), static_cast<double>(nn - w)) *
                          std::pow(ch_.q(1), static_cast<double>(w));
        tv += std::abs(mix[xi] - qn);
    }
    return 0.5 * tv;
}

BitMatrix gallager_ldpc_matrix(std::size_t n, std::size_t row_weight,
                               std::size_t col_weight, RngStream& rng) {
    if (row_weight == 0 || col_weight == 0 || row_weight > n)
        throw std::invalid_argument("gallager_ldpc_matrix: bad weights");
    if ((n * col_weight) % row_weight != 0 || n % row_weight != 0)
        throw std::invalid_argument("gallager_ldpc_matrix: infeasible weight combination");
    const std::size_t rows_per_block = n / row_weight;
    const std::size_t r = rows_per_block * col_weight;
    BitMatrix h(r, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t b = 0; b < col_weight; ++b) {
        for (std::size_t j = 0; j < n; ++j) perm[j] = j;
        if (b > 0) rng.shuffle(perm);
        for (std::size_t i = 0; i < rows_per_block; ++i)
            for (std::size_t k = 0; k < row_weight; ++k)
                h.set(b * rows_per_block + i, perm[i * row_weight + k], true);
    }
    return h;
}

}  // namespace ppclab
