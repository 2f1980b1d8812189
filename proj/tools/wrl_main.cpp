// wrl: wiretap coding with rate-limited randomness.
//
// Subcommands: capacity, curve, simulate, uniformize, jamming. All output is
// a deterministic function of (arguments, input files, seed); worker count
// never changes bytes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wrl/capacity.hpp"
#include "wrl/common.hpp"
#include "wrl/info.hpp"
#include "wrl/jamming.hpp"
#include "wrl/parallel.hpp"
#include "wrl/randomness.hpp"
#include "wrl/simulate.hpp"
#include "wrl/spec_io.hpp"
#include "wrl/version.hpp"

namespace {

std::string fmt9(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

std::string fmt17(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_dist(const wrl::DiscreteDistribution& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ' ';
        s += fmt9(d[i]);
    }
    return s;
}

struct Options {
    unsigned threads = 1;
    std::string channel_file;
    std::string source_file;
    std::string out_file;
    std::string budget = "inf";
    unsigned grid = 200;
    unsigned n = 8;
    std::vector<double> rates;
    std::vector<double> input;
    unsigned codebooks = 1;
    std::uint64_t seed = 1;
    std::string decoder = "ml";
    std::uint64_t trials = 10000;
    double rr = 0.25;
    std::string export_file;
    double sigma2 = 1.0;
    double hr = 1.0;
    std::string jam_simulate;
};

void write_output(const std::string& out_file, const std::string& text) {
    if (out_file.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file " + out_file);
    f << text;
}

double parse_budget(const std::string& s) {
    if (s == "inf") return wrl::kInfiniteBudget;
    std::istringstream ss(s);
    double v = 0.0;
    std::string extra;
    if (!(ss >> v) || (ss >> extra)) {
        throw std::invalid_argument("budget must be 'inf' or a nonnegative number");
    }
    if (v < 0.0) throw std::invalid_argument("budget must be nonnegative");
    return v;
}

int cmd_capacity(const Options& opt) {
    const wrl::WiretapChannel ch = wrl::parse_channel_file(opt.channel_file);
    const double budget = parse_budget(opt.budget);

    const auto verdict = wrl::is_less_capable(ch, std::min(opt.grid, 64u));
    const auto res = wrl::secrecy_capacity(ch, budget, opt.grid, opt.threads);

    std::string out;
    out += "# channel: " + (ch.name().empty() ? opt.channel_file : ch.name()) + "\n";
    out += "# budget: " + (budget == wrl::kInfiniteBudget ? std::string("inf") : fmt9(budget)) + "\n";
    out += "# grid: " + std::to_string(opt.grid) + "\n";
    if (!verdict.holds_on_grid) {
        out += "# warning: channel is not less-capable on the check grid (gap " +
               fmt9(verdict.max_gap) + " at input " + fmt_dist(verdict.witness) + ")\n";
    }
    out += "rate_bits,lambda,randomness_used_bits,constraint_active\n";
    out += fmt9(res.rate) + "," + fmt9(res.lambda) + "," + fmt9(res.randomness_used) +
           "," + (res.constraint_active ? "1" : "0") + "\n";
    out += "# p(x|u=0): " + fmt_dist(res.input0) + "\n";
    out += "# p(x|u=1): " + fmt_dist(res.input1) + "\n";
    write_output(opt.out_file, out);
    return 0;
}

int cmd_curve(const Options& opt) {
    const wrl::WiretapChannel ch = wrl::parse_channel_file(opt.channel_file);
    const auto points = wrl::rate_curve(ch, opt.grid, opt.threads);
    const wrl::ConcaveEnvelope env(points);
    std::vector<char> on_env(points.size(), 0);
    for (const auto& v : env.vertices()) on_env[v.point_index] = 1;

    std::string out = "cost_bits,gain_bits,on_envelope\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        out += fmt9(points[i].randomness_cost) + "," + fmt9(points[i].secrecy_gain) +
               "," + (on_env[i] ? "1" : "0") + "\n";
    }
    write_output(opt.out_file, out);
    return 0;
}

int cmd_simulate(const Options& opt) {
    const wrl::WiretapChannel ch = wrl::parse_channel_file(opt.channel_file);
    if (opt.rates.size() != 3) {
        throw std::invalid_argument("--rates needs R0,R,Rr");
    }
    const double r0 = opt.rates[0], r = opt.rates[1], rr = opt.rates[2];
    const std::uint64_t kr = wrl::blocks_for_rate(opt.n, rr);

    wrl::DiscreteDistribution p_ur = wrl::DiscreteDistribution::uniform(1);
    if (opt.source_file == "uniform") {
        p_ur = wrl::DiscreteDistribution::uniform(kr);
    } else {
        const wrl::SourceSpec spec = wrl::parse_source_file(opt.source_file);
        if (spec.kind == wrl::SourceSpec::Kind::biased_example) {
            if (spec.n != 0 && spec.n != opt.n) {
                throw std::invalid_argument("source n does not match --n");
            }
            p_ur = wrl::biased_example_source(opt.n, spec.alpha, spec.R);
        } else {
            p_ur = wrl::DiscreteDistribution(spec.probs);
        }
        if (p_ur.size() != kr) {
            throw std::invalid_argument(
                "randomization law has " + std::to_string(p_ur.size()) +
                " symbols but 2^ceil(n*Rr) = " + std::to_string(kr));
        }
    }

    wrl::DecoderKind decoder = wrl::DecoderKind::ml;
    double epsilon = 0.05;
    if (opt.decoder == "ml") {
        decoder = wrl::DecoderKind::ml;
    } else if (opt.decoder.rfind("typ:", 0) == 0) {
        decoder = wrl::DecoderKind::typicality;
        epsilon = std::stod(opt.decoder.substr(4));
    } else {
        throw std::invalid_argument("--decoder must be ml or typ:EPS");
    }

    const wrl::DiscreteDistribution p_u = wrl::DiscreteDistribution::point_mass(1, 0);
    std::vector<wrl::DiscreteDistribution> p_xgu;
    if (opt.input.empty()) {
        p_xgu.push_back(wrl::DiscreteDistribution::uniform(ch.nx()));
    } else {
        p_xgu.push_back(wrl::DiscreteDistribution(opt.input));
    }

    const double renyi_rate = wrl::renyi2(p_ur) / opt.n;
    const double entropy_rate = wrl::entropy(p_ur) / opt.n;

    std::vector<wrl::SimulationReport> reports(opt.codebooks);
    std::vector<std::uint64_t> book_seeds(opt.codebooks);
    wrl::parallel_for(opt.codebooks, opt.threads, [&](std::size_t c) {
        book_seeds[c] = wrl::derive_seed(opt.seed, wrl::kStreamCodebook, c);
        const auto params = wrl::CodeParams::from_rates(opt.n, r0, r, rr, book_seeds[c]);
        reports[c] = wrl::simulate_codebook(
            ch, p_u, p_xgu, params, p_ur, decoder, epsilon, opt.trials,
            wrl::derive_seed(opt.seed, wrl::kStreamTrial, c));
    });

    const std::string prefix = std::to_string(opt.n) + "," + fmt9(r0) + "," + fmt9(r) +
                               "," + fmt9(rr) + "," + fmt9(renyi_rate) + "," +
                               fmt9(entropy_rate) + ",";
    std::string out =
        "n,R0,R,Rr,renyi2_rate,entropy_rate,seed,codebooks,mean_vd,ci_halfwidth,"
        "mean_leakage_bits,pe,pe_ci\n";
    double vd_sum = 0.0, leak_sum = 0.0, pe_sum = 0.0;
    for (std::size_t c = 0; c < reports.size(); ++c) {
        const auto& rep = reports[c];
        out += prefix + std::to_string(book_seeds[c]) + "," + std::to_string(c + 1) +
               "," + fmt9(rep.vd) + "," + fmt9(0.0) + "," + fmt9(rep.leakage_bits) +
               "," + fmt9(rep.pe) + "," + fmt9(rep.pe_ci) + "\n";
        vd_sum += rep.vd;
        leak_sum += rep.leakage_bits;
        pe_sum += rep.pe;
    }
    const double c = static_cast<double>(opt.codebooks);
    double vd_var = 0.0, pe_var = 0.0;
    for (const auto& rep : reports) {
        vd_var += (rep.vd - vd_sum / c) * (rep.vd - vd_sum / c);
        pe_var += (rep.pe - pe_sum / c) * (rep.pe - pe_sum / c);
    }
    const double scale = opt.codebooks > 1 ? 1.0 / (c - 1.0) : 0.0;
    const double z = 1.959963984540054;
    out += prefix + std::to_string(opt.seed) + "," + std::to_string(opt.codebooks) +
           "," + fmt9(vd_sum / c) + "," + fmt9(z * std::sqrt(vd_var * scale / c)) + "," +
           fmt9(leak_sum / c) + "," + fmt9(pe_sum / c) + "," +
           fmt9(z * std::sqrt(pe_var * scale / c)) + "\n";
    write_output(opt.out_file, out);
    return 0;
}

int cmd_uniformize(const Options& opt) {
    const wrl::SourceSpec spec = wrl::parse_source_file(opt.source_file);
    if (spec.kind != wrl::SourceSpec::Kind::explicit_probs) {
        throw std::invalid_argument(
            "uniformize needs an explicit source (alphabet/probs)");
    }
    const wrl::RandomnessSource src{wrl::DiscreteDistribution(spec.probs)};
    const double h = src.entropy_bits();
    if (opt.rr >= h) {
        std::fprintf(stderr,
                     "warning: rr = %s >= H(R) = %s; extraction cannot approach "
                     "uniform\n",
                     fmt9(opt.rr).c_str(), fmt9(h).c_str());
    }
    const wrl::Extractor ex = wrl::build_extractor(src, opt.n, opt.rr);

    std::string out = "n=" + std::to_string(ex.n()) + " K=" +
                      std::to_string(ex.num_bins()) +
                      " distance=" + fmt17(ex.achieved_distance()) + "\n";
    out += "# H(R) = " + fmt9(h) + " bits/symbol, target rate = " + fmt9(opt.rr) +
           " bits/symbol\n";
    write_output(opt.out_file, out);

    if (!opt.export_file.empty()) {
        std::ofstream f(opt.export_file, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open export file " + opt.export_file);
        wrl::write_extractor(ex, f);
    }
    return 0;
}

int cmd_jamming(const Options& opt) {
    const double rho = wrl::max_jamming_power(opt.sigma2, opt.hr);
    const double displayed = wrl::displayed_power_bound(opt.sigma2, opt.hr);

    std::string out = "sigma2,H_R,rho_max\n";
    out += fmt9(opt.sigma2) + "," + fmt9(opt.hr) + "," + fmt9(rho) + "\n";
    const double rel = std::fabs(rho - displayed) / std::max(std::fabs(displayed), 1e-300);
    if (rel > 0.01) {
        out += "# note: rate-inversion bound sigma2*(2^(2H)-1) = " + fmt9(rho) +
               " and displayed bound sigma2*2^(2H-1) = " + fmt9(displayed) +
               " differ by more than 1%; the inversion value is reported\n";
    }

    if (!opt.jam_simulate.empty()) {
        unsigned n = 0;
        double rate = 0.0;
        unsigned long long samples = 0, seed = 0;
        if (std::sscanf(opt.jam_simulate.c_str(), "%u,%lf,%llu,%llu", &n, &rate,
                        &samples, &seed) != 4) {
            throw std::invalid_argument("--simulate needs n,rate,samples,seed");
        }
        const double ks = wrl::simulate_jamming(opt.sigma2, rho, n, rate, samples, seed);
        out += "sigma2,rho,n,code_rate,samples,seed,ks_stat\n";
        out += fmt9(opt.sigma2) + "," + fmt9(rho) + "," + std::to_string(n) + "," +
               fmt9(rate) + "," + std::to_string(samples) + "," + std::to_string(seed) +
               "," + fmt9(ks) + "\n";
    }
    write_output(opt.out_file, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"wiretap coding with rate-limited randomness"};
    app.set_version_flag("--version", std::string("wrl ") + wrl::kVersion);
    app.add_option("--threads", opt.threads, "worker thread cap")
        ->check(CLI::Range(1u, 256u));
    app.fallthrough();
    app.require_subcommand(1);

    auto* cap = app.add_subcommand("capacity", "rate-limited secrecy capacity");
    cap->add_option("--channel", opt.channel_file, "channel spec file")->required();
    cap->add_option("--budget", opt.budget, "randomness budget in bits, or inf");
    cap->add_option("--grid", opt.grid, "simplex grid resolution");
    cap->add_option("--out", opt.out_file, "write output to file");

    auto* curve = app.add_subcommand("curve", "rate curve and its concave envelope");
    curve->add_option("--channel", opt.channel_file, "channel spec file")->required();
    curve->add_option("--grid", opt.grid, "simplex grid resolution");
    curve->add_option("--out", opt.out_file, "write CSV to file");

    auto* sim = app.add_subcommand("simulate", "random-code leakage and error rate");
    sim->add_option("--channel", opt.channel_file, "channel spec file")->required();
    sim->add_option("--source", opt.source_file,
                    "randomization law: source spec file or 'uniform'")
        ->required();
    sim->add_option("--n", opt.n, "block length")->required();
    sim->add_option("--rates", opt.rates, "R0,R,Rr in bits/use")
        ->delimiter(',')
        ->expected(3);
    sim->add_option("--codebooks", opt.codebooks, "number of codebooks");
    sim->add_option("--seed", opt.seed, "master seed");
    sim->add_option("--decoder", opt.decoder, "ml or typ:EPS");
    sim->add_option("--trials", opt.trials, "Monte Carlo trials when not exact");
    sim->add_option("--input", opt.input, "input distribution p_X")->delimiter(',');
    sim->add_option("--out", opt.out_file, "write CSV to file");

    auto* uni = app.add_subcommand("uniformize", "build the extraction map");
    uni->add_option("--source", opt.source_file, "source spec file")->required();
    uni->add_option("--n", opt.n, "block length")->required();
    uni->add_option("--rr", opt.rr, "target rate in bits/symbol")->required();
    uni->add_option("--export", opt.export_file, "write the full map to file");
    uni->add_option("--out", opt.out_file, "write summary to file");

    auto* jam = app.add_subcommand("jamming", "cooperative jamming power limit");
    jam->add_option("--sigma2", opt.sigma2, "eavesdropper noise variance")->required();
    jam->add_option("--hr", opt.hr, "source entropy H(R) in bits")->required();
    jam->add_option("--simulate", opt.jam_simulate, "n,rate,samples,seed");
    jam->add_option("--out", opt.out_file, "write output to file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cap)) return cmd_capacity(opt);
        if (app.got_subcommand(curve)) return cmd_curve(opt);
        if (app.got_subcommand(sim)) return cmd_simulate(opt);
        if (app.got_subcommand(uni)) return cmd_uniformize(opt);
        if (app.got_subcommand(jam)) return cmd_jamming(opt);
    } catch (const wrl::ResourceLimitError& e) {
        std::fprintf(stderr, "resource limit: %s\n", e.what());
        return 3;
    } catch (const wrl::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
