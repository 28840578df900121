#include "ladder/report.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "json.hpp"
#include "ladder/graph.hpp"

namespace ladder {

using ojson = nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    std::string out;
    for (unsigned i = 0; i < len; ++i) out += fmt::format("{:02x}", md[i]);
    return out;
}

ChainInput chain_of(const SystemFile& sf) {
    ChainInput ci;
    if (sf.mode == Mode::RawChain) {
        ci.lift.chain = to_raw_chain(sf);
        ci.base = ci.lift.chain.base();
        ci.lift.band = ci.lift.chain.laurent().band();
        ci.lift.degenerate = ci.lift.chain.minus.is_zero() && ci.lift.chain.plus.is_zero();
        ci.lift.group = 1;
        ci.lift.block_dim = ci.lift.chain.dim();
        ci.lift.eval_at_one_matches = true;
        return ci;
    }
    const LiftedCurveSystem ls = to_lifted(sf);
    const TwistWord w = to_word(sf);
    ci.base = penner_matrix(ls.base, w);
    const LaurentBlockMatrix M = lift_penner_matrix(ls, w);
    ci.lift.band = M.band();
    ci.lift.degenerate = M.band() == 0;
    ci.lift.eval_at_one_matches = laurent_eval_one(M) == ci.base;
    ci.lift.chain = reblock(M);
    ci.lift.group = ci.lift.chain.dim() / M.dim();
    ci.lift.block_dim = ci.lift.chain.dim();
    return ci;
}

std::size_t default_state(const IntMatrix& base, const PerronData& pd) {
    ParryData p = parry(base, pd);
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.p.size(); ++i)
        if (p.p[i] > p.p[best] * (1 + 1e-12)) best = i;
    return best;
}

Analysis analyze(const SystemFile& sf, const std::string& digest, const AnalyzeOptions& opt) {
    Analysis a;
    a.name = sf.name;
    a.mode = sf.mode;
    a.digest = digest;
    a.tol = opt.tol;
    if (sf.mode != Mode::RawChain) {
        a.validation = validate(to_curve_system(sf), to_word(sf));
        if (!a.validation.ok()) return a;
    }
    ChainInput ci = chain_of(sf);
    a.base = ci.base;
    a.lift = ci.lift;
    PerronOptions po;
    po.tol = opt.tol;
    a.perron = perron_eigenpair(a.base, po);
    a.base_period = period(a.base);

    const ShiftChain& chain = a.lift.chain;
    // Perron data of the reblocked base; same lambda, vectors repeated across the group.
    const PerronData cp = a.lift.group == 1 ? a.perron : perron_eigenpair(chain.base(), po);
    a.classification = classify_drift(chain, cp, opt.drift_tol, opt.window);
    const std::size_t state = opt.state ? *opt.state : default_state(chain.base(), cp);
    a.series = return_series(chain, cp, state, 0, opt.series_n);
    a.series_verdict = series_verdict(a.series);

    const Verdict v = a.classification.verdict;
    if (v != Verdict::Reducible) {
        const bool null_like = a.series_verdict.tends_to_one;
        if (null_like != (v == Verdict::NullRecurrent))
            a.discrepancies.push_back(fmt::format("drift verdict {} but return series {} (plateau {:.6f})", to_string(v),
                                                  null_like ? "tends to 1" : "plateaus below 0.95", a.series_verdict.plateau));
    }
    if (opt.simulate) {
        SimulationSummary s;
        s.seed = opt.seed;
        s.steps = opt.sim_steps;
        const StochasticChain sc = lift_stochastic(chain, cp);
        const State start{state, 0};
        s.stats = return_stats(sc, start, opt.sim_horizon, opt.sim_trials, opt.seed);
        s.diffusion = diffusion_exponent(sc, start, opt.sim_steps, opt.sim_trials, opt.seed);
        s.verdict = s.diffusion.exponent < 0.75 ? "diffusive" : "ballistic";
        if (v == Verdict::NullRecurrent && s.verdict != "diffusive")
            a.discrepancies.push_back(fmt::format("NullRecurrent but diffusion exponent {:.3f}", s.diffusion.exponent));
        if (v == Verdict::Transient && s.verdict != "ballistic")
            a.discrepancies.push_back(fmt::format("Transient but diffusion exponent {:.3f}", s.diffusion.exponent));
        a.simulation = s;
    }
    return a;
}

namespace {

ojson grid(const IntMatrix& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

ojson measured(double value, double tol) { return {{"value", value}, {"tolerance", tol}}; }

ojson optional_number(const std::optional<double>& x) { return x ? ojson(*x) : ojson(nullptr); }

ojson stats_json(const SimulationSummary& s) {
    ojson j;
    j["seed"] = std::to_string(s.seed);
    j["estimate"] = "monte-carlo";
    j["trials"] = s.stats.trials;
    j["horizon"] = s.stats.horizon;
    j["returned_fraction"] = s.stats.returned_fraction;
    j["censored_count"] = s.stats.censored_count;
    j["return_time_quantiles"] = ojson::array();
    for (const auto& q : s.stats.return_time_quantiles)
        j["return_time_quantiles"].push_back({{"q", q.q}, {"value", q.value ? ojson(*q.value) : ojson(nullptr)}});
    j["mean_return_time_censored"] = s.stats.mean_return_time_censored;
    j["tail_exponent_estimate"] = optional_number(s.stats.tail_exponent_estimate);
    j["steps"] = s.steps;
    j["diffusion_exponent"] = s.diffusion.exponent;
    j["empirical_verdict"] = s.verdict;
    return j;
}

std::string num(double x) { return fmt::format("{:.12g}", x); }

}  // namespace

std::string render_report_json(const Analysis& a) {
    ojson j;
    j["report_version"] = kReportVersion;
    j["tool_version"] = kToolVersion;
    j["input"] = {{"name", a.name}, {"mode", to_string(a.mode)}, {"sha256", a.digest}};
    ojson viol = ojson::array();
    for (const auto& v : a.validation.violations) viol.push_back({{"kind", to_string(v.kind)}, {"message", v.message}});
    j["validation"] = {{"ok", a.validation.ok()}, {"violations", viol}};
    if (!a.validation.ok()) {
        j["status"] = "validation-failed";
        return j.dump(2) + "\n";
    }
    j["status"] = a.discrepancies.empty() ? "CONSISTENT" : "DISCREPANCY";
    j["base"] = {{"matrix", grid(a.base)},
                 {"exact", true},
                 {"lambda", measured(a.perron.lambda, a.tol)},
                 {"entropy", measured(entropy(a.perron), a.tol / a.perron.lambda)},
                 {"perron_residual", a.perron.residual},
                 {"irreducible", true},
                 {"period", a.base_period}};
    const auto& c = a.classification;
    j["lift"] = {{"degenerate", a.lift.degenerate},
                 {"band", a.lift.band},
                 {"group_size", a.lift.group},
                 {"block_dim", a.lift.block_dim},
                 {"eval_at_one_matches", a.lift.eval_at_one_matches},
                 {"blocks", {{"minus", grid(a.lift.chain.minus)}, {"zero", grid(a.lift.chain.zero)}, {"plus", grid(a.lift.chain.plus)}}},
                 {"banded_irreducible", to_string(c.banded.verdict)},
                 {"window", c.banded.window},
                 {"period", c.banded.verdict == Tri::True ? ojson(c.banded.period) : ojson(nullptr)}};
    j["classification"] = {{"verdict", to_string(c.verdict)},
                           {"drift_left", measured(c.drift_left, c.tolerance)},
                           {"drift_right", measured(c.drift_right, c.tolerance)},
                           {"exact_symmetric", c.exact_symmetric},
                           {"period", c.verdict == Verdict::Reducible ? ojson(nullptr) : ojson(c.period)},
                           {"note", kPositiveRecurrentNote}};
    ojson rows = ojson::array();
    for (std::size_t n = 0; n < a.series.a.size(); ++n)
        rows.push_back({{"n", n + 1}, {"a", a.series.a[n].get_str()}, {"f", a.series.f[n].get_str()}, {"partial_sum", a.series.partial_sums[n]}});
    j["return_series"] = {{"state", {{"index", a.series.index + 1}, {"level", a.series.level}}},
                          {"n", a.series.a.size()},
                          {"period", a.series.period},
                          {"rows", rows},
                          {"plateau", a.series_verdict.plateau},
                          {"ratio", a.series_verdict.ratio},
                          {"tends_to_one", a.series_verdict.tends_to_one}};
    j["simulation"] = a.simulation ? stats_json(*a.simulation) : ojson(nullptr);
    j["discrepancies"] = a.discrepancies;
    return j.dump(2) + "\n";
}

std::string render_report_text(const Analysis& a) {
    std::ostringstream os;
    os << "ladder report " << kReportVersion << " (tool " << kToolVersion << ")\n";
    os << "input: " << a.name << " [" << to_string(a.mode) << "] sha256 " << a.digest << "\n";
    if (!a.validation.ok()) {
        os << "validation: FAILED\n";
        for (const auto& v : a.validation.violations) os << "  " << to_string(v.kind) << ": " << v.message << "\n";
        return os.str();
    }
    os << "validation: ok\n";
    os << "M_F (exact): " << a.base.str() << "\n";
    os << "lambda: " << num(a.perron.lambda) << " (tol " << a.tol << ", residual " << fmt::format("{:.3g}", a.perron.residual) << ")\n";
    os << "entropy: " << num(entropy(a.perron)) << "\n";
    os << "base: irreducible, period " << a.base_period << "\n";
    const auto& c = a.classification;
    os << "lift: band " << a.lift.band << ", group " << a.lift.group << ", block dim " << a.lift.block_dim
       << (a.lift.degenerate ? ", DEGENERATE (no cross-level blocks)" : "") << "\n";
    os << "eval at t=1 matches M_F: " << (a.lift.eval_at_one_matches ? "yes" : "NO") << "\n";
    os << "banded irreducible: " << to_string(c.banded.verdict) << " (windows " << c.banded.window << ", "
       << c.banded.window + 1 << ")";
    if (c.banded.verdict == Tri::True) os << ", period " << c.banded.period;
    os << "\n";
    os << "drift_left:  " << num(c.drift_left) << "\n";
    os << "drift_right: " << num(c.drift_right) << " (relative tol " << c.tolerance << ")\n";
    os << "verdict (exact): " << to_string(c.verdict) << (c.exact_symmetric ? " [symmetric blocks]" : "") << "\n";
    os << "note: " << kPositiveRecurrentNote << "\n";
    os << "return series at state (" << a.series.index + 1 << ", " << a.series.level << "), N=" << a.series.a.size()
       << ", period " << a.series.period << "\n";
    os << "  n, a_n, f_n, partial_sum\n";
    for (std::size_t n = 0; n < a.series.a.size(); ++n)
        os << "  " << n + 1 << ", " << a.series.a[n].get_str() << ", " << a.series.f[n].get_str() << ", "
           << num(a.series.partial_sums[n]) << "\n";
    os << "series plateau estimate: " << fmt::format("{:.6f}", a.series_verdict.plateau)
       << (a.series_verdict.tends_to_one ? " (tends to 1)" : " (below 0.95)") << "\n";
    if (a.simulation) {
        os << "empirical:\n" << render_stats_text(*a.simulation);
    }
    if (a.discrepancies.empty()) {
        os << "status: CONSISTENT\n";
    } else {
        for (const auto& d : a.discrepancies) os << "DISCREPANCY: " << d << "\n";
    }
    return os.str();
}

std::string render_report_csv(const Analysis& a) {
    std::ostringstream os;
    os << "section,key,value\n";
    os << "input,name," << a.name << "\n";
    os << "input,mode," << to_string(a.mode) << "\n";
    os << "input,sha256," << a.digest << "\n";
    os << "validation,ok," << (a.validation.ok() ? "true" : "false") << "\n";
    for (const auto& v : a.validation.violations) os << "validation," << to_string(v.kind) << ",\"" << v.message << "\"\n";
    if (!a.validation.ok()) return os.str();
    os << "base,lambda," << num(a.perron.lambda) << "\n";
    os << "base,entropy," << num(entropy(a.perron)) << "\n";
    os << "base,period," << a.base_period << "\n";
    os << "lift,degenerate," << (a.lift.degenerate ? "true" : "false") << "\n";
    os << "lift,band," << a.lift.band << "\n";
    os << "lift,group_size," << a.lift.group << "\n";
    os << "lift,banded_irreducible," << to_string(a.classification.banded.verdict) << "\n";
    os << "classification,verdict," << to_string(a.classification.verdict) << "\n";
    os << "classification,drift_left," << num(a.classification.drift_left) << "\n";
    os << "classification,drift_right," << num(a.classification.drift_right) << "\n";
    os << "return_series,plateau," << num(a.series_verdict.plateau) << "\n";
    if (a.simulation) {
        os << "simulation,returned_fraction," << num(a.simulation->stats.returned_fraction) << "\n";
        os << "simulation,diffusion_exponent," << num(a.simulation->diffusion.exponent) << "\n";
    }
    os << "status,," << (a.discrepancies.empty() ? "CONSISTENT" : "DISCREPANCY") << "\n";
    return os.str();
}

std::string render_series_csv(const ReturnSeries& rs) {
    std::ostringstream os;
    os << "n,a_n,f_n,partial_sum\n";
    for (std::size_t n = 0; n < rs.a.size(); ++n)
        os << n + 1 << "," << rs.a[n].get_str() << "," << rs.f[n].get_str() << "," << fmt::format("{:.15g}", rs.partial_sums[n]) << "\n";
    return os.str();
}

std::string render_stats_text(const SimulationSummary& s) {
    std::ostringstream os;
    const auto& st = s.stats;
    os << "  seed: " << s.seed << "\n";
    os << "  trials: " << st.trials << ", horizon: " << st.horizon << "\n";
    os << "  returned_fraction: " << num(st.returned_fraction) << " (censored " << st.censored_count << ")\n";
    os << "  return time quantiles:";
    for (const auto& q : st.return_time_quantiles)
        os << " q" << q.q << "=" << (q.value ? std::to_string(*q.value) : std::string("censored"));
    os << "\n";
    os << "  mean return time (censored at horizon): " << num(st.mean_return_time_censored) << "\n";
    os << "  tail exponent: " << (st.tail_exponent_estimate ? num(*st.tail_exponent_estimate) : std::string("n/a")) << "\n";
    os << "  diffusion exponent (" << s.steps << " steps): " << num(s.diffusion.exponent) << " [" << s.verdict << "]\n";
    return os.str();
}

std::string render_stats_json(const SimulationSummary& s) { return stats_json(s).dump(2) + "\n"; }

namespace {

struct Panel {
    double x0, y0, w, h;
};

void polyline(std::ostringstream& os, const Panel& p, const std::vector<std::pair<double, double>>& pts, double xmin,
              double xmax, double ymin, double ymax, const char* colour) {
    if (pts.empty()) return;
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) {
        const double px = p.x0 + (xmax > xmin ? (x - xmin) / (xmax - xmin) : 0.5) * p.w;
        const double py = p.y0 + p.h - (ymax > ymin ? (y - ymin) / (ymax - ymin) : 0.5) * p.h;
        os << fmt::format("{:.2f},{:.2f} ", px, py);
    }
    os << "\"/>\n";
}

void frame(std::ostringstream& os, const Panel& p, const std::string& title, const std::string& xl, const std::string& yl) {
    os << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n", p.x0, p.y0, p.w, p.h);
    os << fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"13\">{}</text>\n", p.x0, p.y0 - 8, title);
    os << fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n", p.x0 + p.w / 2 - 20, p.y0 + p.h + 18, xl);
    os << fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n", p.x0 - 5, p.y0 + p.h + 32, yl);
}

}  // namespace

std::string render_svg(const SimulationSummary& s) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"340\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    Panel left{50, 40, 300, 240}, right{430, 40, 300, 240};

    std::vector<std::pair<double, double>> diff;
    for (const auto& [n, m] : s.diffusion.mean_abs_level)
        if (m > 0) diff.push_back({std::log(static_cast<double>(n)), std::log(m)});
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!diff.empty()) {
        xmin = diff.front().first;
        xmax = diff.back().first;
        ymin = ymax = diff.front().second;
        for (const auto& pt : diff) {
            ymin = std::min(ymin, pt.second);
            ymax = std::max(ymax, pt.second);
        }
    }
    frame(os, left, fmt::format("log E|level| vs log n (slope {:.3f})", s.diffusion.exponent), "log n", "");
    polyline(os, left, diff, xmin, xmax, ymin, ymax, "#1f77b4");

    std::vector<std::pair<double, double>> cdf;
    for (const auto& [t, f] : s.stats.cdf) cdf.push_back({std::log(static_cast<double>(t)), f});
    const double cx = cdf.empty() ? 1 : cdf.back().first;
    frame(os, right, fmt::format("return-time CDF (returned {:.4f})", s.stats.returned_fraction), "log t", "");
    polyline(os, right, cdf, 0, cx, 0, 1, "#d62728");
    os << "</svg>\n";
    return os.str();
}

}  // namespace ladder
