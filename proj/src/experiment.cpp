#include "ppclab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ppclab/stats.hpp"
#include "ppclab/typicality.hpp"
#include "ppclab/version.hpp"

namespace ppclab {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> design_entropies(std::size_t ell, const BinaryInputDMC& ch,
                                     std::size_t design_trials, RngStream& rng) {
    if (ch.kind() == ChannelKind::Bec && ch.uniform_input())
        return bec_exact_entropies(ell, ch.param());
    const std::size_t n = std::size_t{1} << ell;
    const double cells = std::exp2(static_cast<double>(n)) *
                         std::pow(static_cast<double>(ch.output_alphabet_size()),
                                  static_cast<double>(n));
    if (cells <= static_cast<double>(std::size_t{1} << 28))
        return exhaustive_entropies(ell, ch);
    return monte_carlo_entropies(ell, ch, design_trials, rng).mean;
}

}  // namespace

BitMatrix h_from_config(const nlohmann::json& spec, const BinaryInputDMC& channel,
                        RngStream& rng) {
    if (spec.is_string()) {
        const std::string s = spec.get<std::string>();
        try {
            return BitMatrix::parse_text(s);
        } catch (const std::invalid_argument&) {
            std::ifstream in(s);
            if (!in) throw std::invalid_argument("h config: cannot open matrix file '" + s + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            return BitMatrix::parse_text(ss.str());
        }
    }
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "identity") return BitMatrix::identity(spec.at("n").get<std::size_t>());
    if (kind == "empty") return BitMatrix(0, spec.at("n").get<std::size_t>());
    if (kind == "ldpc")
        return gallager_ldpc_matrix(spec.at("n").get<std::size_t>(),
                                    spec.at("row_weight").get<std::size_t>(),
                                    spec.at("col_weight").get<std::size_t>(), rng);
    if (kind == "polar") {
        const auto n = spec.at("n").get<std::size_t>();
        if (n == 0 || (n & (n - 1)) != 0)
            throw std::invalid_argument("h config: polar blocklength must be a power of two");
        const auto ell = static_cast<std::size_t>(std::countr_zero(n));
        const auto design_trials = spec.value("design_trials", std::size_t{100000});
        const auto ent = design_entropies(ell, channel, design_trials, rng);
        PolarDesign design = spec.contains("rate")
                                 ? rate_targeted_design(ent, spec.at("rate").get<double>())
                                 : select_frozen_set(ent, spec.value("beta", 0.25));
        return polar_parity_matrix(design);
    }
    throw std::invalid_argument("h config: unknown kind '" + kind + "'");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.channel = j.at("channel");
    if (j.contains("ensemble")) {
        c.h = j.at("ensemble").at("h");
        c.rate = j.at("ensemble").at("rate").get<double>();
    } else {
        c.h = j.at("h");
        c.rate = j.at("rate").get<double>();
    }
    if (!(c.rate > 0.0)) throw std::invalid_argument("experiment config: rate must be positive");
    c.eps_typicality = j.value("eps_typicality", 0.1);
    if (!(c.eps_typicality > 0.0))
        throw std::invalid_argument("experiment config: eps_typicality must be positive");
    c.trials = j.value("trials", std::uint64_t{1000});
    if (c.trials < 1) throw std::invalid_argument("experiment config: trials must be >= 1");
    c.master_seed = j.value("master_seed", std::uint64_t{1});
    c.workers = j.value("parallelism", 1u);
    if (c.workers == 0) c.workers = 1;
    c.randomize_message = j.value("randomize_message", false);
    c.out_dir = j.value("out", std::string{});
    return c;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["channel"] = channel;
    j["ensemble"] = {{"h", h}, {"rate", rate}};
    j["eps_typicality"] = eps_typicality;
    j["trials"] = trials;
    j["master_seed"] = master_seed;
    j["parallelism"] = workers;
    j["randomize_message"] = randomize_message;
    if (!out_dir.empty()) j["out"] = out_dir;
    return j;
}

ExperimentResult run_error_sim(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const BinaryInputDMC ch = BinaryInputDMC::from_json(cfg.channel);
    RngStream master(cfg.master_seed);
    RngStream h_stream = master.substream(0);
    const BitMatrix h = h_from_config(cfg.h, ch, h_stream);
    const ParityCheckEnsemble ens(h, ch);
    const std::size_t m = codebook_size(ens.n(), cfg.rate);
    if (m > (std::size_t{1} << 20))
        throw std::invalid_argument("run_error_sim: codebook larger than 2^20 words");

    struct Counts {
        std::uint64_t errors = 0, no_typical = 0, non_unique = 0, wrong_unique = 0;
    };
    const unsigned workers = std::max(1u, cfg.workers);
    std::vector<Counts> partial(workers);
    std::vector<std::exception_ptr> errs(workers);
    auto worker_fn = [&](unsigned w) {
        try {
            Counts c;
            for (std::uint64_t t = w; t < cfg.trials; t += workers) {
                RngStream stream = master.substream(t + 1);
                const SampledCode code = ens.sample_constrained_code(cfg.rate, stream);
                std::size_t m_true = 0;
                if (cfg.randomize_message) m_true = stream.index(code.codewords.size());
                const OutputWord y = ch.transmit(code.codewords[m_true], stream);
                std::size_t hits = 0, last = 0;
                for (std::size_t j = 0; j < code.codewords.size(); ++j) {
                    if (is_jointly_typical(ch, cfg.eps_typicality, code.codewords[j], y)) {
                        ++hits;
                        last = j;
                    }
                }
                if (hits == 1 && last == m_true) continue;
                ++c.errors;
                if (hits == 0) ++c.no_typical;
                else if (hits >= 2) ++c.non_unique;
                else ++c.wrong_unique;
            }
            partial[w] = c;
        } catch (...) {
            errs[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        worker_fn(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_fn, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);

    ExperimentResult res;
    res.config = cfg.to_json();
    res.trials = cfg.trials;
    for (const auto& c : partial) {
        res.errors += c.errors;
        res.no_typical += c.no_typical;
        res.non_unique += c.non_unique;
        res.wrong_unique += c.wrong_unique;
    }
    res.error_rate = static_cast<double>(res.errors) / static_cast<double>(res.trials);
    res.half_width = wilson_interval(res.errors, res.trials).half_width;
    res.version = kVersion;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<SweepRow> run_rate_sweep(const ExperimentConfig& base,
                                     const std::vector<double>& rates,
                                     const std::vector<std::size_t>& blocklengths) {
    std::vector<SweepRow> rows;
    for (const std::size_t n : blocklengths) {
        for (const double rate : rates) {
            ExperimentConfig cfg = base;
            cfg.rate = rate;
            if (cfg.h.is_object()) cfg.h["n"] = n;
            else if (n != 0) {
                // explicit matrices fix n; make a mismatch loud
                RngStream probe(cfg.master_seed);
                const BinaryInputDMC ch = BinaryInputDMC::from_json(cfg.channel);
                if (h_from_config(cfg.h, ch, probe).cols() != n)
                    throw std::invalid_argument("run_rate_sweep: explicit H cannot change blocklength");
            }
            rows.push_back({n, rate, run_error_sim(cfg)});
        }
    }
    return rows;
}

std::size_t min_distance_exact(const std::vector<BitVector>& codewords) {
    if (codewords.size() < 2)
        throw std::invalid_argument("min_distance_exact: need at least 2 codewords");
    if (codewords.size() > (std::size_t{1} << 16))
        throw std::invalid_argument("min_distance_exact: more than 2^16 codewords");
    std::size_t best = codewords[0].size() + 1;
    for (std::size_t i = 0; i < codewords.size(); ++i)
        for (std::size_t j = i + 1; j < codewords.size(); ++j)
            best = std::min(best, hamming_distance(codewords[i], codewords[j]));
    return best;
}

MindistStudy run_mindist_study(std::size_t ell, double rate, std::size_t samples,
                               double erasure, RngStream& rng) {
    if (samples == 0) throw std::invalid_argument("run_mindist_study: samples must be >= 1");
    const std::size_t n = std::size_t{1} << ell;
    const std::size_t m = codebook_size(n, rate);
    if (m > (std::size_t{1} << 12))
        throw std::invalid_argument("run_mindist_study: codebook larger than 2^12 words");
    const PolarDesign design = rate_targeted_design(bec_exact_entropies(ell, erasure), rate);

    // the polar code at this rate: u_F = 0, data part free
    std::vector<std::size_t> info;
    {
        std::vector<bool> frozen(n, false);
        for (auto i : design.frozen) frozen[i] = true;
        for (std::size_t i = 0; i < n; ++i)
            if (!frozen[i]) info.push_back(i);
    }
    std::vector<BitVector> polar_words;
    polar_words.reserve(std::size_t{1} << info.size());
    for (std::uint64_t msk = 0; msk < (std::uint64_t{1} << info.size()); ++msk) {
        BitVector u(n);
        for (std::size_t b = 0; b < info.size(); ++b)
            if ((msk >> b) & 1u) u.set(info[b], true);
        polar_words.push_back(polar_encode(ell, u));
    }
    MindistStudy out;
    out.polar_min = min_distance_exact(polar_words);
    // linearity cross-check: pairwise minimum equals the least nonzero weight
    std::size_t min_weight = n + 1;
    for (std::size_t i = 1; i < polar_words.size(); ++i)
        min_weight = std::min(min_weight, polar_words[i].popcount());
    if (min_weight != out.polar_min)
        throw std::runtime_error("run_mindist_study: pairwise scan disagrees with code weight");

    const ParityCheckEnsemble ens(polar_parity_matrix(design), BinaryInputDMC::bec(erasure));
    std::uint64_t total = 0;
    out.ppc_min = n + 1;
    out.samples = samples;
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<BitVector> words;
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 1000)
                throw std::runtime_error("run_mindist_study: could not draw 2 distinct codewords");
            words = ens.sample_constrained_code(rate, rng).codewords;
            std::sort(words.begin(), words.end(),
                      [](const BitVector& a, const BitVector& b) { return a.words() < b.words(); });
            words.erase(std::unique(words.begin(), words.end()), words.end());
            if (words.size() >= 2) break;
            ++out.resamples;
        }
        const std::size_t d = min_distance_exact(words);
        total += d;
        out.ppc_min = std::min(out.ppc_min, d);
        out.ppc_max = std::max(out.ppc_max, d);
    }
    out.ppc_mean = static_cast<double>(total) / static_cast<double>(samples);
    return out;
}

nlohmann::json ExperimentResult::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["config"] = config;
    j["trials"] = trials;
    j["errors"] = errors;
    j["breakdown"] = {{"no_typical", no_typical},
                      {"non_unique", non_unique},
                      {"wrong_unique", wrong_unique}};
    j["error_rate"] = error_rate;
    j["half_width"] = half_width;
    j["wall_seconds"] = wall_seconds;
    return j;
}

ExperimentResult ExperimentResult::from_json(const nlohmann::json& j) {
    ExperimentResult r;
    r.version = j.at("version").get<std::string>();
    r.config = j.at("config");
    r.trials = j.at("trials").get<std::uint64_t>();
    r.errors = j.at("errors").get<std::uint64_t>();
    r.no_typical = j.at("breakdown").at("no_typical").get<std::uint64_t>();
    r.non_unique = j.at("breakdown").at("non_unique").get<std::uint64_t>();
    r.wrong_unique = j.at("breakdown").at("wrong_unique").get<std::uint64_t>();
    r.error_rate = j.at("error_rate").get<double>();
    r.half_width = j.at("half_width").get<double>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
}

std::string ExperimentResult::csv_header() const {
    return "trials,errors,no_typical,non_unique,wrong_unique,error_rate,half_width";
}

std::string ExperimentResult::csv_row() const {
    std::ostringstream out;
    out << trials << ',' << errors << ',' << no_typical << ',' << non_unique << ','
        << wrong_unique << ',' << fmt_double(error_rate) << ',' << fmt_double(half_width);
    return out.str();
}

std::pair<std::string, std::string> emit_results(const ExperimentResult& res,
                                                 const std::string& dir,
                                                 const std::string& name) {
    std::filesystem::create_directories(dir);
    const std::string json_path = (std::filesystem::path(dir) / (name + ".json")).string();
    const std::string csv_path = (std::filesystem::path(dir) / (name + ".csv")).string();
    {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("emit_results: cannot write " + json_path);
        out << res.to_json().dump(2) << '\n';
    }
    {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("emit_results: cannot write " + csv_path);
        out << kCsvBanner << '\n' << res.csv_header() << '\n' << res.csv_row() << '\n';
    }
    return {json_path, csv_path};
}

ExperimentResult load_result(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("load_result: cannot open " + json_path);
    nlohmann::json j;
    in >> j;
    return ExperimentResult::from_json(j);
}

void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_sweep_csv: cannot write " + path);
    out << kCsvBanner << '\n';
    out << "n,rate,trials,errors,no_typical,non_unique,wrong_unique,error_rate,half_width\n";
    for (const auto& row : rows) {
        out << row.n << ',' << fmt_double(row.rate) << ',' << row.result.trials << ','
            << row.result.errors << ',' << row.result.no_typical << ','
            << row.result.non_unique << ',' << row.result.wrong_unique << ','
            << fmt_double(row.result.error_rate) << ',' << fmt_double(row.result.half_width)
            << '\n';
    }
}

}  // namespace ppclab
