#include "ppclab/polar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ppclab {

BitMatrix polar_kernel() { return BitMatrix::from_rows({"10", "11"}); }

BitVector polar_encode(std::size_t ell, const BitVector& u) {
    const std::size_t n = std::size_t{1} << ell;
    if (u.size() != n) throw std::invalid_argument("polar_encode: u length must be 2^ell");
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = u.get(i);
    // x = ((a+b) G', b G') on halves, applied recursively
    for (std::size_t half = n >> 1; half >= 1; half >>= 1)
        for (std::size_t base = 0; base < n; base += 2 * half)
            for (std::size_t j = 0; j < half; ++j)
                v[base + j] ^= v[base + half + j];
    BitVector x(n);
    for (std::size_t i = 0; i < n; ++i) if (v[i]) x.set(i, true);
    return x;
}

std::vector<double> bec_exact_entropies(std::size_t ell, double erasure) {
    if (erasure < 0.0 || erasure > 1.0)
        throw std::invalid_argument("bec_exact_entropies: erasure must be in [0,1]");
    const std::size_t n = std::size_t{1} << ell;
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        double zi = erasure;
        for (std::size_t b = ell; b-- > 0;) {
            // index bits applied most significant first
            zi = ((i >> b) & 1u) ? zi * zi : 2.0 * zi - zi * zi;
        }
        z[i] = zi;
    }
    return z;
}

std::vector<double> exhaustive_entropies(std::size_t ell, const BinaryInputDMC& ch) {
    const std::size_t n = std::size_t{1} << ell;
    const std::size_t ny = ch.output_alphabet_size();
    double cells = std::pow(static_cast<double>(ny), static_cast<double>(n)) *
                   std::exp2(static_cast<double>(n));
    if (cells > static_cast<double>(std::size_t{1} << 28))
        throw std::invalid_argument(
            "exhaustive_entropies: blocklength too large for full enumeration; "
            "use monte_carlo_entropies");
    std::size_t ny_pow = 1;
    for (std::size_t i = 0; i < n; ++i) ny_pow *= ny;

    // joint[u * ny_pow + y], u packed with u_1 as the most significant bit
    std::vector<double> joint(( std::size_t{1} << n) * ny_pow, 0.0);
    std::vector<std::uint8_t> yword(n);
    for (std::uint64_t ui = 0; ui < (std::uint64_t{1} << n); ++ui) {
        BitVector u(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((ui >> (n - 1 - i)) & 1u) u.set(i, true);
        const BitVector x = polar_encode(ell, u);
        double px = 1.0;
        for (std::size_t i = 0; i < n; ++i) px *= ch.q(x.get(i));
        if (px == 0.0) continue;
        std::fill(yword.begin(), yword.end(), 0);
        for (std::size_t yi = 0; yi < ny_pow; ++yi) {
            double p = px;
            for (std::size_t i = 0; i < n; ++i) p *= ch.w(x.get(i), yword[i]);
            joint[ui * ny_pow + yi] = p;
            // odometer increment
            for (std::size_t i = n; i-- > 0;) {
                if (++yword[i] < ny) break;
                yword[i] = 0;
            }
        }
    }
    // fold the u dimension one bit at a time; H(U^i, Y^n) for i = n..0
    auto table_entropy = [](const std::vector<double>& t) {
        double h = 0.0;
        for (double p : t)
            if (p > 0.0) h -= p * std::log2(p);
        return h;
    };
    std::vector<double> joint_entropy(n + 1);
    joint_entropy[n] = table_entropy(joint);
    std::vector<double> cur = std::move(joint);
    for (std::size_t i = n; i-- > 0;) {
        std::vector<double> next((std::size_t{1} << i) * ny_pow);
        for (std::size_t u = 0; u < (std::size_t{1} << i); ++u)
            for (std::size_t y = 0; y < ny_pow; ++y)
                next[u * ny_pow + y] =
                    cur[(2 * u) * ny_pow + y] + cur[(2 * u + 1) * ny_pow + y];
        joint_entropy[i] = table_entropy(next);
        cur = std::move(next);
    }
    // H(U_i | Y, U^{i-1}) = H(U^i, Y) - H(U^{i-1}, Y)
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = joint_entropy[i + 1] - joint_entropy[i];
    return out;
}

namespace {

// genie-aided successive cancellation pass: evidence pairs per codeword
// position, true bits for teacher forcing; appends posterior entropies
void sc_walk(const std::vector<std::array<double, 2>>& evidence,
             const std::vector<std::uint8_t>& u_true, std::size_t offset,
             std::vector<double>& out) {
    const std::size_t m = evidence.size();
    if (m == 1) {
        const double s = evidence[0][0] + evidence[0][1];
        const double p1 = s > 0.0 ? evidence[0][1] / s : 0.5;
        out.push_back(binary_entropy(p1));
        return;
    }
    const std::size_t half = m / 2;
    std::vector<std::array<double, 2>> comb(half);
    for (std::size_t j = 0; j < half; ++j) {
        const auto& la = evidence[j];
        const auto& lb = evidence[j + half];
        double v0 = la[0] * lb[0] + la[1] * lb[1];
        double v1 = la[0] * lb[1] + la[1] * lb[0];
        const double s = v0 + v1;
        if (s > 0.0) { v0 /= s; v1 /= s; }
        comb[j] = {v0, v1};
    }
    sc_walk(comb, u_true, offset, out);
    // first half decided; re-encode it to condition the second half
    const std::size_t ell_h = static_cast<std::size_t>(std::countr_zero(half));
    BitVector a(half);
    for (std::size_t j = 0; j < half; ++j)
        if (u_true[offset + j]) a.set(j, true);
    const BitVector k = half > 1 ? polar_encode(ell_h, a) : a;
    for (std::size_t j = 0; j < half; ++j) {
        const auto& la = evidence[j];
        const auto& lb = evidence[j + half];
        double v0 = la[k.get(j)] * lb[0];
        double v1 = la[k.get(j) ^ 1] * lb[1];
        const double s = v0 + v1;
        if (s > 0.0) { v0 /= s; v1 /= s; }
        comb[j] = {v0, v1};
    }
    sc_walk(comb, u_true, offset + half, out);
}

}  // namespace

MonteCarloEntropies monte_carlo_entropies(std::size_t ell, const BinaryInputDMC& ch,
                                          std::size_t trials, RngStream& rng) {
    if (!ch.uniform_input())
        throw std::invalid_argument(
            "monte_carlo_entropies: the posterior recursion assumes uniform q; "
            "use exhaustive_entropies for shaped inputs");
    if (trials == 0) throw std::invalid_argument("monte_carlo_entropies: trials must be >= 1");
    const std::size_t n = std::size_t{1} << ell;
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0), post;
    std::vector<std::uint8_t> u(n);
    std::vector<std::array<double, 2>> evidence(n);
    for (std::size_t t = 0; t < trials; ++t) {
        BitVector ub(n);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = rng.bit();
            if (u[i]) ub.set(i, true);
        }
        const BitVector x = polar_encode(ell, ub);
        const OutputWord y = ch.transmit(x, rng);
        for (std::size_t i = 0; i < n; ++i)
            evidence[i] = {ch.w(0, y[i]), ch.w(1, y[i])};
        post.clear();
        sc_walk(evidence, u, 0, post);
        for (std::size_t i = 0; i < n; ++i) {
            sum[i] += post[i];
            sumsq[i] += post[i] * post[i];
        }
    }
    MonteCarloEntropies out;
    out.mean.resize(n);
    out.std_error.resize(n);
    const double t = static_cast<double>(trials);
    for (std::size_t i = 0; i < n; ++i) {
        out.mean[i] = sum[i] / t;
        const double var = std::max(0.0, sumsq[i] / t - out.mean[i] * out.mean[i]);
        out.std_error[i] = trials > 1 ? std::sqrt(var / t) : 0.0;
    }
    return out;
}

namespace {

PolarDesign classify(std::vector<double> entropies, double beta, double threshold) {
    PolarDesign d;
    d.n = entropies.size();
    d.ell = static_cast<std::size_t>(std::countr_zero(d.n));
    if ((std::size_t{1} << d.ell) != d.n)
        throw std::invalid_argument("polar design: entropy vector length must be a power of two");
    d.beta = beta;
    d.threshold = threshold;
    d.cond_entropies = std::move(entropies);
    for (std::size_t i = 0; i < d.n; ++i) {
        const double h = d.cond_entropies[i];
        if (h > 1.0 - threshold) d.class_h.push_back(i);
        else if (h > threshold) d.class_m.push_back(i);
        else d.class_l.push_back(i);
    }
    return d;
}

}  // namespace

PolarDesign select_frozen_set(const std::vector<double>& entropies, double beta) {
    if (!(beta > 0.0 && beta < 0.5))
        throw std::invalid_argument("select_frozen_set: beta must be in (0, 1/2)");
    const double n = static_cast<double>(entropies.size());
    const double threshold = std::exp2(-std::pow(n, beta));
    PolarDesign d = classify(entropies, beta, threshold);
    for (std::size_t i = 0; i < d.n; ++i)
        if (d.cond_entropies[i] > threshold) d.frozen.push_back(i);
    return d;
}

PolarDesign rate_targeted_design(const std::vector<double>& entropies, double rate) {
    if (!(rate > 0.0 && rate < 1.0))
        throw std::invalid_argument("rate_targeted_design: rate must be in (0,1)");
    const std::size_t n = entropies.size();
    const auto k = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
    if (k == 0 || k >= n)
        throw std::invalid_argument("rate_targeted_design: requested rate leaves no usable split");
    // freeze the n-k largest entropies; ties broken by lower index unfrozen first
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return entropies[a] < entropies[b]; });
    PolarDesign d = classify(entropies, 0.25, std::exp2(-std::pow(static_cast<double>(n), 0.25)));
    d.rate_targeted = true;
    d.frozen.assign(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
    std::sort(d.frozen.begin(), d.frozen.end());
    return d;
}

BitMatrix polar_parity_matrix(const PolarDesign& design) {
    const BitMatrix g = kron_power(polar_kernel(), design.ell);
    // G is self-inverse, so H is the transpose of the frozen columns of G
    return g.column_submatrix(design.frozen).transpose();
}

double leakage_upper_bound(const PolarDesign& design) {
    std::vector<bool> mid(design.n, false);
    for (auto i : design.class_m) mid[i] = true;
    double bound = 0.0;
    for (auto i : design.frozen)
        bound += mid[i] ? 1.0 : 1.0 - design.cond_entropies[i];
    return bound;
}

nlohmann::json PolarDesign::to_json() const {
    nlohmann::json j;
    j["ell"] = ell;
    j["n"] = n;
    j["beta"] = beta;
    j["threshold"] = threshold;
    j["method"] = method;
    j["rate_targeted"] = rate_targeted;
    j["entropies"] = cond_entropies;
    auto one_based = [](const std::vector<std::size_t>& v) {
        std::vector<std::size_t> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] + 1;
        return out;
    };
    j["frozen"] = one_based(frozen);
    j["class_m"] = one_based(class_m);
    j["class_h"] = one_based(class_h);
    j["class_l"] = one_based(class_l);
    return j;
}

PolarDesign PolarDesign::from_json(const nlohmann::json& j) {
    PolarDesign d;
    d.ell = j.at("ell").get<std::size_t>();
    d.n = j.at("n").get<std::size_t>();
    d.beta = j.at("beta").get<double>();
    d.threshold = j.at("threshold").get<double>();
    d.method = j.value("method", "");
    d.rate_targeted = j.value("rate_targeted", false);
    d.cond_entropies = j.at("entropies").get<std::vector<double>>();
    auto zero_based = [](std::vector<std::size_t> v) {
        for (auto& i : v) {
            if (i == 0) throw std::invalid_argument("polar design json: indices are 1-based");
            --i;
        }
        return v;
    };
    d.frozen = zero_based(j.at("frozen").get<std::vector<std::size_t>>());
    d.class_m = zero_based(j.at("class_m").get<std::vector<std::size_t>>());
    d.class_h = zero_based(j.at("class_h").get<std::vector<std::size_t>>());
    d.class_l = zero_based(j.at("class_l").get<std::vector<std::size_t>>());
    return d;
}

}  // namespace ppclab
