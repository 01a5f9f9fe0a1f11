// ppclab: parity-check-constrained random coding toolkit.
// Subcommands: design, penalty, simulate, sweep, mindist, bound-check.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppclab/channel.hpp"
#include "ppclab/ensemble.hpp"
#include "ppclab/experiment.hpp"
#include "ppclab/info_metrics.hpp"
#include "ppclab/polar.hpp"
#include "ppclab/version.hpp"

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    in >> j;
    return j;
}

struct GlobalOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::string out_dir = ".";
};

// precedence: PPCLAB_SEED env, then --seed, then config, then 1
std::uint64_t resolve_seed(const GlobalOpts& g, const json& cfg) {
    if (const char* env = std::getenv("PPCLAB_SEED")) return std::strtoull(env, nullptr, 10);
    if (g.seed) return *g.seed;
    if (cfg.contains("master_seed")) return cfg.at("master_seed").get<std::uint64_t>();
    return 1;
}

void write_text(const std::string& path, const std::string& text) {
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string h_kind_name(const json& spec) {
    return spec.is_string() ? "matrix" : spec.at("kind").get<std::string>();
}

int cmd_design(const GlobalOpts& g) {
    json cfg = load_config(g.config_path);
    const auto ell = cfg.at("ell").get<std::size_t>();
    const std::string method = cfg.value("method", "bec-exact");
    const std::uint64_t seed = resolve_seed(g, cfg);
    ppclab::RngStream rng(seed);

    std::vector<double> entropies;
    if (method == "bec-exact") {
        double e = cfg.contains("erasure") ? cfg.at("erasure").get<double>()
                                           : cfg.at("channel").at("param").get<double>();
        entropies = ppclab::bec_exact_entropies(ell, e);
    } else if (method == "exhaustive") {
        const auto ch = ppclab::BinaryInputDMC::from_json(cfg.at("channel"));
        entropies = ppclab::exhaustive_entropies(ell, ch);
    } else if (method == "monte-carlo") {
        const auto ch = ppclab::BinaryInputDMC::from_json(cfg.at("channel"));
        const auto trials = cfg.value("trials", std::size_t{100000});
        entropies = ppclab::monte_carlo_entropies(ell, ch, trials, rng).mean;
    } else {
        throw std::runtime_error("design: unknown method '" + method + "'");
    }

    ppclab::PolarDesign design =
        cfg.contains("rate") ? ppclab::rate_targeted_design(entropies, cfg.at("rate").get<double>())
                             : ppclab::select_frozen_set(entropies, cfg.value("beta", 0.25));
    design.method = method;
    json out = design.to_json();
    out["seed"] = seed;
    const std::string path = (std::filesystem::path(g.out_dir) / "design.json").string();
    write_text(path, out.dump(2) + "\n");
    std::cout << "design: n=" << design.n << " |F|=" << design.frozen.size()
              << " threshold=" << design.threshold << " -> " << path << "\n";
    return 0;
}

int cmd_penalty(const GlobalOpts& g) {
    json cfg = load_config(g.config_path);
    const auto ch = ppclab::BinaryInputDMC::from_json(cfg.at("channel"));
    const std::uint64_t seed = resolve_seed(g, cfg);
    ppclab::RngStream master(seed);

    std::ostringstream csv;
    csv << ppclab::kCsvBanner << "\nn,r,matrix_kind,exact_i_sy,penalty\n";
    json rows = json::array();
    std::uint64_t idx = 0;
    for (const auto& spec : cfg.at("family")) {
        ppclab::RngStream sub = master.substream(idx++);
        const ppclab::BitMatrix h = ppclab::h_from_config(spec, ch, sub);
        const ppclab::ParityCheckEnsemble ens(h, ch);
        const double exact = ppclab::exact_leakage(ens);
        const double penalty = exact / static_cast<double>(ens.n());
        csv << ens.n() << ',' << ens.r() << ',' << h_kind_name(spec) << ',' << fmt(exact) << ','
            << fmt(penalty) << '\n';
        rows.push_back({{"n", ens.n()},
                        {"r", ens.r()},
                        {"matrix_kind", h_kind_name(spec)},
                        {"exact_i_sy", exact},
                        {"penalty", penalty}});
        std::cout << "n=" << ens.n() << " r=" << ens.r() << " I(S;Y^n)=" << fmt(exact)
                  << " penalty=" << fmt(penalty) << "\n";
    }
    write_text((std::filesystem::path(g.out_dir) / "penalty.csv").string(), csv.str());
    write_text((std::filesystem::path(g.out_dir) / "penalty.json").string(),
               json{{"version", ppclab::kVersion}, {"seed", seed}, {"rows", rows}}.dump(2) + "\n");
    return 0;
}

int cmd_simulate(const GlobalOpts& g) {
    json cfg = load_config(g.config_path);
    auto ec = ppclab::ExperimentConfig::from_json(cfg);
    ec.master_seed = resolve_seed(g, cfg);
    if (g.workers) ec.workers = *g.workers;
    const auto res = ppclab::run_error_sim(ec);
    const std::string dir = !g.out_dir.empty() ? g.out_dir
                            : (ec.out_dir.empty() ? "." : ec.out_dir);
    const auto [jp, cp] = ppclab::emit_results(res, dir, "experiment");
    std::cout << "error_rate=" << fmt(res.error_rate) << " +/- " << fmt(res.half_width)
              << " (errors=" << res.errors << "/" << res.trials << ")\n"
              << "wrote " << jp << " and " << cp << "\n";
    return 0;
}

int cmd_sweep(const GlobalOpts& g) {
    json cfg = load_config(g.config_path);
    auto base = ppclab::ExperimentConfig::from_json(cfg);
    base.master_seed = resolve_seed(g, cfg);
    if (g.workers) base.workers = *g.workers;
    const auto rates = cfg.at("rates").get<std::vector<double>>();
    const auto ns = cfg.at("blocklengths").get<std::vector<std::size_t>>();
    const auto rows = ppclab::run_rate_sweep(base, rates, ns);
    const std::string path = (std::filesystem::path(g.out_dir) / "sweep.csv").string();
    ppclab::emit_sweep_csv(rows, path);
    for (const auto& row : rows)
        std::cout << "n=" << row.n << " R=" << fmt(row.rate)
                  << " error_rate=" << fmt(row.result.error_rate) << "\n";
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_mindist(const GlobalOpts& g) {
    json cfg = load_config(g.config_path);
    const std::uint64_t seed = resolve_seed(g, cfg);
    ppclab::RngStream rng(seed);
    const auto study = ppclab::run_mindist_study(
        cfg.at("ell").get<std::size_t>(), cfg.at("rate").get<double>(),
        cfg.at("samples").get<std::size_t>(), cfg.value("erasure", 0.5), rng);
    json out = {{"version", ppclab::kVersion},
                {"seed", seed},
                {"polar_min_distance", study.polar_min},
                {"ppc_mean", study.ppc_mean},
                {"ppc_min", study.ppc_min},
                {"ppc_max", study.ppc_max},
                {"samples", study.samples},
                {"resamples", study.resamples}};
    const std::string path = (std::filesystem::path(g.out_dir) / "mindist.json").string();
    write_text(path, out.dump(2) + "\n");
    std::cout << "polar d_min=" << study.polar_min << "  PPC mean=" << fmt(study.ppc_mean)
              << " min=" << study.ppc_min << " max=" << study.ppc_max << "\nwrote " << path
              << "\n";
    return 0;
}

int cmd_bound_check(const GlobalOpts& g) {
    json cfg = load_config(g.config_path);
    const auto ch = ppclab::BinaryInputDMC::from_json(cfg.at("channel"));
    const std::uint64_t seed = resolve_seed(g, cfg);
    ppclab::RngStream master(seed);
    ppclab::RngStream h_rng = master.substream(0);
    const ppclab::BitMatrix h = ppclab::h_from_config(cfg.at("h"), ch, h_rng);
    const ppclab::ParityCheckEnsemble ens(h, ch);
    const auto eps_list = cfg.value("eps", std::vector<double>{0.05, 0.1, 0.2});
    const auto trials = cfg.value("trials", std::uint64_t{100000});
    const double exact = ppclab::exact_leakage(ens);
    const double penalty = exact / static_cast<double>(ens.n());
    const auto consts = ch.lemma2_constants();

    std::ostringstream csv;
    csv << ppclab::kCsvBanner
        << "\nn,r,matrix_kind,exact_i_sy,penalty,eps,gamma,p_a,half_width,bound,ok\n";
    bool all_ok = true;
    std::uint64_t eps_idx = 1;
    for (const double eps : eps_list) {
        const double gamma = penalty + eps;
        ppclab::RngStream rng = master.substream(eps_idx++);
        const auto pa = ppclab::estimate_P_A(ens, gamma, trials, rng);
        const double bound = ppclab::azuma_bound(ens.n(), eps, consts.d);
        const bool ok = pa.p_hat <= bound + 3.0 * pa.half_width;
        all_ok = all_ok && ok;
        csv << ens.n() << ',' << ens.r() << ',' << h_kind_name(cfg.at("h")) << ',' << fmt(exact)
            << ',' << fmt(penalty) << ',' << fmt(eps) << ',' << fmt(gamma) << ','
            << fmt(pa.p_hat) << ',' << fmt(pa.half_width) << ',' << fmt(bound) << ','
            << (ok ? 1 : 0) << '\n';
        std::cout << "eps=" << fmt(eps) << " gamma=" << fmt(gamma) << " P(A)=" << fmt(pa.p_hat)
                  << " bound=" << fmt(bound) << (ok ? "  ok" : "  VIOLATED") << "\n";
    }
    write_text((std::filesystem::path(g.out_dir) / "bound_check.csv").string(), csv.str());
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity-check-constrained random coding toolkit"};
    app.set_version_flag("--version", std::string("ppc-lab v") + ppclab::kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    std::uint64_t seed_val = 0;
    unsigned workers_val = 0;
    app.add_option("--config", g.config_path, "JSON config file")->required();
    auto* seed_opt = app.add_option("--seed", seed_val, "master seed (PPCLAB_SEED env wins)");
    auto* workers_opt = app.add_option("--workers", workers_val, "worker thread count");
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();

    auto* design = app.add_subcommand("design", "polar frozen-set construction");
    auto* penalty = app.add_subcommand("penalty", "exact rate-penalty profile for a matrix family");
    auto* simulate = app.add_subcommand("simulate", "joint-typicality error-rate simulation");
    auto* sweep = app.add_subcommand("sweep", "error rates over a rate x blocklength grid");
    auto* mindist = app.add_subcommand("mindist", "PPC vs polar minimum-distance study");
    auto* bound = app.add_subcommand("bound-check", "empirical P(A) against the Azuma bound");
    for (auto* sub : {design, penalty, simulate, sweep, mindist, bound}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    if (seed_opt->count()) g.seed = seed_val;
    if (workers_opt->count()) g.workers = workers_val;

    try {
        if (design->parsed()) return cmd_design(g);
        if (penalty->parsed()) return cmd_penalty(g);
        if (simulate->parsed()) return cmd_simulate(g);
        if (sweep->parsed()) return cmd_sweep(g);
        if (mindist->parsed()) return cmd_mindist(g);
        if (bound->parsed()) return cmd_bound_check(g);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
