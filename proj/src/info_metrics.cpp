#include "ppclab/info_metrics.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// online log2-sum-exp accumulator
struct LogSum {
    double max_term = -kInf;
    double acc = 0.0;
    void add(double t) {
        if (t == -kInf) return;
        if (acc == 0.0) {
            max_term = t;
            acc = 1.0;
        } else if (t <= max_term) {
            acc += std::exp2(t - max_term);
        } else {
            acc = acc * std::exp2(max_term - t) + 1.0;
            max_term = t;
        }
    }
    double value() const { return acc == 0.0 ? -kInf : max_term + std::log2(acc); }
};

}  // namespace

InfoDensityEvaluator::InfoDensityEvaluator(const ParityCheckEnsemble& ens) : ens_(ens) {
    basis_support_.reserve(ens_.nullspace().size());
    for (const auto& b : ens_.nullspace()) {
        std::vector<std::size_t> supp;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b.get(i)) supp.push_back(i);
        basis_support_.push_back(std::move(supp));
    }
}

double InfoDensityEvaluator::coset_lse(const BitVector& rep,
                                       const std::vector<std::array<double, 2>>& contrib) const {
    const std::size_t k = basis_support_.size();
    if (k > 24)
        throw std::invalid_argument("info_density: coset too large to enumerate (n - rank > 24)");
    BitVector x = rep;
    double finite_sum = 0.0;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = contrib[i][x.get(i)];
        if (c == -kInf) ++violations;
        else finite_sum += c;
    }
    LogSum lse;
    if (violations == 0) lse.add(finite_sum);
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int bidx = std::countr_zero(step);
        for (const std::size_t i : basis_support_[static_cast<std::size_t>(bidx)]) {
            const bool ob = x.get(i);
            const double co = contrib[i][ob];
            const double cn = contrib[i][!ob];
            if (co == -kInf) --violations; else finite_sum -= co;
            if (cn == -kInf) ++violations; else finite_sum += cn;
            x.flip(i);
        }
        // periodic resync against drift from incremental updates
        if ((step & 0xfffu) == 0) {
            finite_sum = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double c = contrib[i][x.get(i)];
                if (c != -kInf) finite_sum += c;
            }
        }
        if (violations == 0) lse.add(finite_sum);
    }
    return lse.value();
}

double InfoDensityEvaluator::log2_joint_sy(const BitVector& s, const OutputWord& y) const {
    if (y.size() != ens_.n()) throw std::invalid_argument("log2_joint_sy: y length != n");
    if (!ens_.syndrome_reachable(s)) return -kInf;
    const BitVector rep = ens_.coset_representative(s);
    const auto& ch = ens_.channel();
    std::vector<std::array<double, 2>> contrib(ens_.n());
    for (std::size_t i = 0; i < ens_.n(); ++i)
        contrib[i] = {ch.log2q(0) + ch.log2w(0, y[i]), ch.log2q(1) + ch.log2w(1, y[i])};
    return coset_lse(rep, contrib);
}

double InfoDensityEvaluator::log2_p_s(const BitVector& s) const {
    if (!ens_.syndrome_reachable(s)) return -kInf;
    const auto& ch = ens_.channel();
    if (ch.uniform_input()) return -static_cast<double>(ens_.h_rank());
    const BitVector rep = ens_.coset_representative(s);
    std::vector<std::array<double, 2>> contrib(ens_.n(), {ch.log2q(0), ch.log2q(1)});
    return coset_lse(rep, contrib);
}

double InfoDensityEvaluator::info_density(const BitVector& s, const OutputWord& y) const {
    const double ps = log2_p_s(s);
    const double ty = ens_.channel().log2_output_marginal_word(y);
    if (ps == -kInf || ty == -kInf)
        throw std::invalid_argument("info_density: zero denominator (p_S(s) or t^n(y) vanishes)");
    return log2_joint_sy(s, y) - ps - ty;
}

namespace {

// I(S;Y^n) for an erasure channel with uniform inputs: conditioned on the
// erasure pattern E the output reveals X off E, so H(S|Y^n) = E[rank(H_E)].
double exact_leakage_bec_uniform(const ParityCheckEnsemble& ens) {
    const std::size_t n = ens.n();
    const std::size_t r = ens.r();
    if (n > 22) throw std::invalid_argument("exact_leakage: n > 22 even for the erasure-pattern path");
    const double e = ens.channel().param();
    // column masks: bit i of col_bits[j] = H(j, i)
    std::vector<std::uint32_t> cols(n, 0);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (ens.h().get(j, i)) cols[i] |= (std::uint32_t{1} << j);
    std::vector<double> pw(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        pw[k] = std::pow(e, static_cast<double>(k)) * std::pow(1.0 - e, static_cast<double>(n - k));
    double expected_rank = 0.0;
    std::vector<std::uint32_t> work;
    work.reserve(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const double p = pw[static_cast<std::size_t>(std::popcount(mask))];
        if (p == 0.0) continue;
        work.clear();
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) work.push_back(cols[i]);
        // rank over GF(2) of the erased columns
        std::size_t rank = 0;
        for (std::size_t i = 0; i < work.size(); ++i) {
            std::uint32_t v = work[i];
            for (std::size_t b = 0; b < rank; ++b)
                v = std::min(v, v ^ work[b]);
            if (v) {
                work[rank] = v;
                ++rank;
            }
        }
        expected_rank += p * static_cast<double>(rank);
    }
    return static_cast<double>(ens.h_rank()) - expected_rank;
}

double exact_leakage_general(const ParityCheckEnsemble& ens) {
    const std::size_t n = ens.n();
    const std::size_t ny = ens.channel().output_alphabet_size();
    const double work = std::exp2(static_cast<double>(n)) *
                        std::pow(static_cast<double>(ny), static_cast<double>(n));
    if (work > static_cast<double>(std::size_t{1} << 28))
        throw std::invalid_argument(
            "exact_leakage: |Y|^n * 2^n enumeration infeasible at this blocklength; "
            "estimate the penalty from sampled info densities instead");
    const auto& ch = ens.channel();
    const auto p_s = ens.syndrome_distribution();
    std::vector<double> log_ps(p_s.size(), -kInf);
    for (std::size_t s = 0; s < p_s.size(); ++s)
        if (p_s[s] > 0.0) log_ps[s] = std::log2(p_s[s]);

    std::vector<std::uint64_t> colsynd(n);
    for (std::size_t i = 0; i < n; ++i) {
        BitVector e(n);
        e.set(i, true);
        colsynd[i] = ens.h().syndrome(e).to_uint();
    }
    const std::size_t n_synd = std::size_t{1} << ens.r();
    std::vector<LogSum> buckets(n_synd);
    std::vector<std::array<double, 2>> contrib(n);
    std::vector<std::uint8_t> y(n, 0);
    double info = 0.0;
    double mass_total = 0.0;
    std::size_t ny_pow = 1;
    for (std::size_t i = 0; i < n; ++i) ny_pow *= ny;
    for (std::size_t yi = 0; yi < ny_pow; ++yi) {
        double log_tn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            contrib[i] = {ch.log2q(0) + ch.log2w(0, y[i]), ch.log2q(1) + ch.log2w(1, y[i])};
            log_tn += ch.log2t(y[i]);
        }
        for (auto& b : buckets) b = LogSum{};
        // gray walk over all x, one coordinate flip per step
        BitVector x(n);
        double finite_sum = 0.0;
        std::size_t violations = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = contrib[i][0];
            if (c == -kInf) ++violations; else finite_sum += c;
        }
        std::uint64_t s = 0;
        if (violations == 0) buckets[s].add(finite_sum);
        for (std::uint64_t step = 1; step < (std::uint64_t{1} << n); ++step) {
            const int i = std::countr_zero(step);
            const bool ob = x.get(static_cast<std::size_t>(i));
            const double co = contrib[static_cast<std::size_t>(i)][ob];
            const double cn = contrib[static_cast<std::size_t>(i)][!ob];
            if (co == -kInf) --violations; else finite_sum -= co;
            if (cn == -kInf) ++violations; else finite_sum += cn;
            x.flip(static_cast<std::size_t>(i));
            s ^= colsynd[static_cast<std::size_t>(i)];
            if (violations == 0) buckets[s].add(finite_sum);
        }
        if (log_tn != -kInf) {
            for (std::size_t sv = 0; sv < n_synd; ++sv) {
                const double lp = buckets[sv].value();
                if (lp == -kInf) continue;
                const double p = std::exp2(lp);
                mass_total += p;
                info += p * (lp - log_ps[sv] - log_tn);
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            if (++y[i] < ny) break;
            y[i] = 0;
        }
    }
    if (std::abs(mass_total - 1.0) > 1e-9)
        throw std::runtime_error("exact_leakage: joint mass failed to normalize");
    return info;
}

}  // namespace

double exact_leakage(const ParityCheckEnsemble& ens) {
    if (ens.channel().kind() == ChannelKind::Bec && ens.channel().uniform_input() &&
        ens.n() <= 22)
        return exact_leakage_bec_uniform(ens);
    return exact_leakage_general(ens);
}

PAEstimate estimate_P_A(const ParityCheckEnsemble& ens, double gamma,
                        std::uint64_t trials, RngStream& rng) {
    if (trials == 0) throw std::invalid_argument("estimate_P_A: trials must be >= 1");
    const InfoDensityEvaluator eval(ens);
    const auto& ch = ens.channel();
    const double threshold = gamma * static_cast<double>(ens.n());
    std::uint64_t exceed = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        BitVector x(ens.n());
        for (std::size_t i = 0; i < ens.n(); ++i)
            if (rng.bernoulli(ch.q(1))) x.set(i, true);
        const BitVector s = ens.h().syndrome(x);
        const OutputWord y = ch.transmit(x, rng);
        if (eval.info_density(s, y) > threshold) ++exceed;
    }
    const WilsonInterval w = wilson_interval(exceed, trials);
    return {static_cast<double>(exceed) / static_cast<double>(trials), w.half_width, exceed,
            trials};
}

double azuma_bound(std::size_t n, double eps, double d) {
    if (eps < 0.0) throw std::invalid_argument("azuma_bound: eps must be >= 0");
    if (d < 0.0) throw std::invalid_argument("azuma_bound: d must be >= 0");
    if (d == 0.0) return eps == 0.0 ? 1.0 : 0.0;
    const double v = std::exp(-2.0 * static_cast<double>(n) * eps * eps / d);
    return std::min(1.0, std::max(0.0, v));
}

std::vector<GammaProfilePoint> gamma_star_profile(
    const std::vector<ParityCheckEnsemble>& family) {
    std::vector<GammaProfilePoint> out;
    out.reserve(family.size());
    for (const auto& ens : family) {
        GammaProfilePoint p;
        p.n = ens.n();
        p.r = ens.r();
        p.exact_bits = exact_leakage(ens);
        p.penalty = p.exact_bits / static_cast<double>(ens.n());
        out.push_back(p);
    }
    return out;
}

LipschitzCheck lipschitz_check(const ParityCheckEnsemble& ens) {
    const std::size_t n = ens.n();
    if (n > 6) throw std::invalid_argument("lipschitz_check: exhaustive scan limited to n <= 6");
    const auto& ch = ens.channel();
    const std::size_t ny = ch.output_alphabet_size();
    const InfoDensityEvaluator eval(ens);

    std::size_t ny_pow = 1;
    for (std::size_t i = 0; i < n; ++i) ny_pow *= ny;
    const std::size_t n_synd = std::size_t{1} << ens.r();

    // f(x,y) depends on (s,y) only; fill the table for reachable syndromes
    std::vector<double> f(n_synd * ny_pow, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t sv = 0; sv < n_synd; ++sv) {
        const BitVector s = BitVector::from_uint(sv, ens.r());
        if (!ens.syndrome_reachable(s)) continue;
        OutputWord y(n, 0);
        for (std::size_t yi = 0; yi < ny_pow; ++yi) {
            if (ch.log2_output_marginal_word(y) != -kInf)
                f[sv * ny_pow + yi] = eval.info_density(s, y);
            for (std::size_t i = n; i-- > 0;) {
                if (++y[i] < ny) break;
                y[i] = 0;
            }
        }
    }

    std::vector<std::uint64_t> colsynd(n);
    for (std::size_t i = 0; i < n; ++i) {
        BitVector e(n);
        e.set(i, true);
        colsynd[i] = ens.h().syndrome(e).to_uint();
    }
    std::vector<std::size_t> ypow(n);
    {
        std::size_t p = 1;
        for (std::size_t i = n; i-- > 0;) {
            ypow[i] = p;
            p *= ny;
        }
    }

    LipschitzCheck out;
    out.d_i = ch.lemma2_constants().d_i;
    // enumerate positive-mass (x,y), then all feasible single-coordinate edits
    for (std::uint64_t xv = 0; xv < (std::uint64_t{1} << n); ++xv) {
        const BitVector x = BitVector::from_uint(xv, n);
        bool x_ok = true;
        for (std::size_t i = 0; i < n && x_ok; ++i)
            if (ch.q(x.get(i)) < BinaryInputDMC::kSupportEps) x_ok = false;
        if (!x_ok) continue;
        const std::uint64_t s = ens.h().syndrome(x).to_uint();
        OutputWord y(n, 0);
        for (std::size_t yi = 0; yi < ny_pow; ++yi) {
            bool y_ok = true;
            for (std::size_t i = 0; i < n && y_ok; ++i)
                if (ch.w(x.get(i), y[i]) < BinaryInputDMC::kSupportEps) y_ok = false;
            if (y_ok) {
                const double f0 = f[s * ny_pow + yi];
                for (std::size_t i = 0; i < n; ++i) {
                    for (int xb = 0; xb < 2; ++xb) {
                        if (ch.q(xb) < BinaryInputDMC::kSupportEps) continue;
                        for (std::size_t yb = 0; yb < ny; ++yb) {
                            if (xb == x.get(i) && yb == y[i]) continue;
                            if (ch.w(xb, yb) < BinaryInputDMC::kSupportEps) continue;
                            const std::uint64_t s2 =
                                xb != static_cast<int>(x.get(i)) ? (s ^ colsynd[i]) : s;
                            const auto yi2 = static_cast<std::size_t>(
                                static_cast<std::ptrdiff_t>(yi) +
                                (static_cast<std::ptrdiff_t>(yb) -
                                 static_cast<std::ptrdiff_t>(y[i])) *
                                    static_cast<std::ptrdiff_t>(ypow[i]));
                            const double f1 = f[s2 * ny_pow + yi2];
                            out.max_delta = std::max(out.max_delta, std::abs(f0 - f1));
                            ++out.pairs_checked;
                        }
                    }
                }
            }
            for (std::size_t i = n; i-- > 0;) {
                if (++y[i] < ny) break;
                y[i] = 0;
            }
        }
    }
    return out;
}

}  // namespace ppclab
