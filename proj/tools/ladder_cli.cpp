#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "ladder/corpus.hpp"
#include "ladder/error.hpp"
#include "ladder/report.hpp"

using namespace ladder;

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kInconclusive = 3, kCap = 4, kNumeric = 5 };

struct Input {
    std::string label;
    std::string text;
};

Input load(const std::string& path) {
    const std::string prefix = "example:";
    if (path.rfind(prefix, 0) == 0) {
        auto t = corpus_text(path.substr(prefix.size()));
        if (!t) throw Error(ErrorKind::Parse, "no bundled example named '" + path.substr(prefix.size()) + "'");
        return {path, *t};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return {path, ss.str()};
}

double default_tol() {
    if (const char* env = std::getenv("LADDER_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring invalid LADDER_TOL='" << env << "'\n";
    }
    return 1e-12;
}

int exit_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::Parse: return kUsage;
    case ErrorKind::ValidationFailed:
    case ErrorKind::Decomposition:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::MissingField: return kValidation;
    case ErrorKind::Reducible:
    case ErrorKind::Inconclusive: return kInconclusive;
    case ErrorKind::CapExceeded: return kCap;
    case ErrorKind::NonConvergence:
    case ErrorKind::ZeroMassRow: return kNumeric;
    }
    return kNumeric;
}

std::pair<std::size_t, long> parse_state(const std::string& s) {
    auto comma = s.find(',');
    try {
        long i = std::stol(s.substr(0, comma));
        long l = comma == std::string::npos ? 0 : std::stol(s.substr(comma + 1));
        if (i < 1) throw std::invalid_argument("index");
        return {static_cast<std::size_t>(i - 1), l};
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "--state expects <index>[,<level>] with a 1-based index");
    }
}

void check_state(std::size_t index, const ShiftChain& chain) {
    if (index >= chain.dim())
        throw Error(ErrorKind::Parse, fmt::format("--state index {} outside 1..{}", index + 1, chain.dim()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ladder: Penner matrices, ladder lifts and their recurrence class"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string path, format = "text", state_arg, svg_out;
    double tol = default_tol();
    int window = 8, n_terms = 32;
    long trials = 200, horizon = 10000, steps = 4096;
    std::uint64_t seed = 1;
    bool no_sim = false;

    auto* analyze_cmd = app.add_subcommand("analyze", "Full pipeline report for a system file");
    analyze_cmd->add_option("path", path, "system file or example:<name>")->required();
    analyze_cmd->add_option("--tol", tol, "Perron tolerance (default from LADDER_TOL or 1e-12)");
    analyze_cmd->add_option("--window", window, "banded check half-width (>= 3)")->check(CLI::Range(3, 1 << 20));
    analyze_cmd->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    analyze_cmd->add_option("--n", n_terms, "return series length");
    analyze_cmd->add_option("--state", state_arg, "start state <index>[,<level>], 1-based index");
    analyze_cmd->add_option("--trials", trials, "simulation trials");
    analyze_cmd->add_option("--horizon", horizon, "simulation return horizon");
    analyze_cmd->add_option("--steps", steps, "simulation steps for the diffusion exponent");
    analyze_cmd->add_option("--seed", seed, "simulation seed");
    analyze_cmd->add_flag("--no-sim", no_sim, "skip the Monte Carlo section");

    auto* series_cmd = app.add_subcommand("series", "Return-count series as CSV");
    series_cmd->add_option("path", path, "system file or example:<name>")->required();
    series_cmd->add_option("--n", n_terms, "number of terms (at most 64)");
    series_cmd->add_option("--state", state_arg, "state <index>[,<level>], 1-based index");
    series_cmd->add_option("--tol", tol, "Perron tolerance");

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo return statistics");
    sim_cmd->add_option("path", path, "system file or example:<name>")->required();
    sim_cmd->add_option("--steps", steps, "steps for the diffusion exponent (>= 1000)");
    sim_cmd->add_option("--trials", trials, "independent trials");
    sim_cmd->add_option("--horizon", horizon, "censoring horizon for return times");
    sim_cmd->add_option("--seed", seed, "64-bit seed");
    sim_cmd->add_option("--svg", svg_out, "write an SVG chart here");
    sim_cmd->add_option("--state", state_arg, "start state <index>[,<level>], 1-based index");
    sim_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sim_cmd->add_option("--tol", tol, "Perron tolerance");

    auto* parity_cmd = app.add_subcommand("parity", "Commutation type of the generator word");
    parity_cmd->add_option("path", path, "system file or example:<name>")->required();

    auto* example_cmd = app.add_subcommand("example", "Bundled example files");
    example_cmd->require_subcommand(1);
    example_cmd->add_subcommand("list", "List bundled examples");
    std::string example_name;
    auto* show_cmd = example_cmd->add_subcommand("show", "Print a bundled example");
    show_cmd->add_option("name", example_name)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (example_cmd->parsed()) {
            if (show_cmd->parsed()) {
                auto t = corpus_text(example_name);
                if (!t) {
                    std::cerr << "error: no bundled example named '" << example_name << "'\n";
                    return kUsage;
                }
                std::cout << *t;
            } else {
                for (const auto& e : corpus()) std::cout << e.name << "\n";
            }
            return kOk;
        }

        const Input in = load(path);
        SystemFile sf;
        try {
            sf = parse_system(in.text);
        } catch (const ParseError& e) {
            std::cerr << in.label << ":" << e.line() << ":" << e.col() << ": error: " << e.message() << "\n";
            return kUsage;
        }

        if (parity_cmd->parsed()) {
            if (!sf.generator_word) {
                std::cerr << in.label << ": error: missing field 'generator_word'\n";
                return kValidation;
            }
            const CommutationType t = commutation_type(*sf.generator_word);
            std::cout << to_string(t) << "\n";
            if (t == CommutationType::AntiCommutes)
                std::cout << "note: the square of this word commutes with the deck transformation\n";
            return kOk;
        }

        if (sf.mode != Mode::RawChain) {
            auto rep = validate(to_curve_system(sf), to_word(sf));
            if (!rep.ok() && !analyze_cmd->parsed()) {
                for (const auto& v : rep.violations) std::cerr << in.label << ": " << to_string(v.kind) << ": " << v.message << "\n";
                return kValidation;
            }
        }

        if (analyze_cmd->parsed()) {
            AnalyzeOptions opt;
            opt.tol = tol;
            opt.window = window;
            opt.series_n = n_terms;
            if (!state_arg.empty()) opt.state = parse_state(state_arg).first;
            if (opt.state) check_state(*opt.state, chain_of(sf).lift.chain);
            opt.sim_trials = trials;
            opt.sim_horizon = horizon;
            opt.sim_steps = steps;
            opt.seed = seed;
            opt.simulate = !no_sim;
            const Analysis a = analyze(sf, sha256_hex(in.text), opt);
            if (format == "json")
                std::cout << render_report_json(a);
            else if (format == "csv")
                std::cout << render_report_csv(a);
            else
                std::cout << render_report_text(a);
            if (!a.validation.ok()) {
                for (const auto& v : a.validation.violations) std::cerr << in.label << ": " << to_string(v.kind) << ": " << v.message << "\n";
                return kValidation;
            }
            return kOk;
        }

        const ChainInput ci = chain_of(sf);
        const ShiftChain& chain = ci.lift.chain;
        PerronOptions po;
        po.tol = tol;
        const PerronData pd = perron_eigenpair(chain.base(), po);
        std::size_t index = default_state(chain.base(), pd);
        long level = 0;
        if (!state_arg.empty()) std::tie(index, level) = parse_state(state_arg);
        check_state(index, chain);

        if (series_cmd->parsed()) {
            if (n_terms < 0) throw Error(ErrorKind::Parse, "--n must be nonnegative");
            const ReturnSeries rs = return_series(chain, pd, index, level, n_terms);
            std::cout << render_series_csv(rs);
            return kOk;
        }

        if (sim_cmd->parsed()) {
            const StochasticChain sc = lift_stochastic(chain, pd);
            SimulationSummary s;
            s.seed = seed;
            s.steps = steps;
            const State start{index, level};
            s.stats = return_stats(sc, start, horizon, trials, seed);
            s.diffusion = diffusion_exponent(sc, start, steps, trials, seed);
            s.verdict = s.diffusion.exponent < 0.75 ? "diffusive" : "ballistic";
            std::cout << (format == "json" ? render_stats_json(s) : render_stats_text(s));
            if (!svg_out.empty()) {
                std::ofstream out(svg_out, std::ios::binary);
                if (!out) throw Error(ErrorKind::Parse, "cannot write '" + svg_out + "'");
                out << render_svg(s);
            }
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    }
    return kOk;
}
