#include "ladder/penner.hpp"

#include <algorithm>
#include <fmt/format.h>

#include "ladder/error.hpp"
#include "ladder/graph.hpp"

namespace ladder {

std::size_t CurveSystem::n() const { return static_cast<std::size_t>(std::count(family.begin(), family.end(), Family::C)); }
std::size_t CurveSystem::m() const { return size() - n(); }

std::optional<std::size_t> CurveSystem::index_of(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::IndexRange: return "index-range";
    case ViolationKind::Dimension: return "dimension";
    case ViolationKind::Sign: return "sign";
    case ViolationKind::Coverage: return "coverage";
    case ViolationKind::Symmetry: return "symmetry";
    case ViolationKind::FamilyBlock: return "family-block";
    case ViolationKind::Connectivity: return "connectivity";
    case ViolationKind::FillingUnset: return "filling-unset";
    }
    return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate(const CurveSystem& s, const TwistWord& word) {
    ValidationReport rep;
    auto add = [&](ViolationKind k, std::string msg) { rep.violations.push_back({k, std::move(msg)}); };
    const std::size_t N = s.size();
    if (s.family.size() != N || s.sigma.rows() != N || s.sigma.cols() != N) {
        add(ViolationKind::Dimension, fmt::format("sigma is {}x{} for {} curves", s.sigma.rows(), s.sigma.cols(), N));
        return rep;
    }
    auto name = [&](std::size_t i) { return s.labels[i]; };

    std::vector<bool> seen(N, false);
    for (std::size_t k = 0; k < word.size(); ++k) {
        const auto& l = word[k];
        if (l.curve >= N) {
            add(ViolationKind::IndexRange, fmt::format("letter {} refers to curve index {}", k + 1, l.curve));
            continue;
        }
        seen[l.curve] = true;
        const bool is_c = s.family[l.curve] == Family::C;
        if (l.exponent == 0 || (is_c && l.exponent < 0) || (!is_c && l.exponent > 0))
            add(ViolationKind::Sign, fmt::format("letter {} ({}^{}): {}-curves need {} exponents", k + 1, name(l.curve),
                                                 l.exponent, is_c ? "C" : "D", is_c ? "positive" : "negative"));
    }
    for (std::size_t i = 0; i < N; ++i)
        if (!seen[i]) add(ViolationKind::Coverage, fmt::format("curve {} does not appear in the word", name(i)));

    for (std::size_t i = 0; i < N; ++i) {
        if (sgn(s.sigma(i, i)) != 0) add(ViolationKind::Symmetry, fmt::format("sigma[{}][{}] is nonzero", name(i), name(i)));
        for (std::size_t j = i + 1; j < N; ++j) {
            if (s.sigma(i, j) != s.sigma(j, i))
                add(ViolationKind::Symmetry, fmt::format("sigma[{}][{}] != sigma[{}][{}]", name(i), name(j), name(j), name(i)));
            if (s.family[i] == s.family[j] && (sgn(s.sigma(i, j)) != 0 || sgn(s.sigma(j, i)) != 0))
                add(ViolationKind::FamilyBlock, fmt::format("{} and {} are both in {} but intersect", name(i), name(j),
                                                            s.family[i] == Family::C ? "C" : "D"));
        }
    }
    // intersection graph, symmetrized
    IntMatrix adj(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j && (sgn(s.sigma(i, j)) > 0 || sgn(s.sigma(j, i)) > 0)) adj.at(i, j) = 1;
    if (N > 1 && !strongly_connected(adj))
        add(ViolationKind::Connectivity, "intersection graph is disconnected, so the curves cannot fill");
    if (!s.filling_asserted) add(ViolationKind::FillingUnset, "filling_asserted is not set");
    return rep;
}

IntMatrix penner_matrix_unchecked(const IntMatrix& sigma, const TwistWord& word) {
    if (!sigma.square()) throw Error(ErrorKind::DimensionMismatch, "sigma must be square");
    const std::size_t N = sigma.rows();
    IntMatrix M = IntMatrix::identity(N);
    for (const auto& l : word) {
        if (l.curve >= N) throw Error(ErrorKind::ValidationFailed, "twist letter index out of range");
        // B_k = I + E_k sigma: identity with row k of sigma added
        IntMatrix B = IntMatrix::identity(N);
        for (std::size_t j = 0; j < N; ++j) B.at(l.curve, j) += sigma(l.curve, j);
        const unsigned e = static_cast<unsigned>(l.exponent < 0 ? -l.exponent : l.exponent);
        M = mat_mul(M, mat_pow(B, e));
    }
    return M;
}

IntMatrix penner_matrix(const CurveSystem& system, const TwistWord& word) {
    auto rep = validate(system, word);
    if (!rep.ok()) throw Error(ErrorKind::ValidationFailed, rep.violations.front().message);
    return penner_matrix_unchecked(system.sigma, word);
}

PerronData stretch_factor(const CurveSystem& system, const TwistWord& word, const PerronOptions& opt) {
    return perron_eigenpair(penner_matrix(system, word), opt);
}

const char* to_string(CommutationType t) { return t == CommutationType::Commutes ? "Commutes" : "AntiCommutes"; }

CommutationType commutation_type(const GeneratorWord& word) {
    std::size_t inv = std::count_if(word.begin(), word.end(),
                                    [](const Generator& g) { return g.kind == GeneratorKind::Involution; });
    return inv % 2 == 0 ? CommutationType::Commutes : CommutationType::AntiCommutes;
}

CommutationType combine(CommutationType a, CommutationType b) {
    return a == b ? CommutationType::Commutes : CommutationType::AntiCommutes;
}

ExampleFamily preset_example_family(int g, const std::vector<std::string>& beta_subset,
                                    const std::map<std::string, std::vector<long>>& beta_rows) {
    if (g < 3) throw Error(ErrorKind::ValidationFailed, "example family needs genus >= 3");
    CurveSystem s;
    for (int i = 1; i <= g - 1; ++i) s.labels.push_back(fmt::format("c{}", i));
    s.labels.push_back(fmt::format("a{}", g));
    for (const auto& b : beta_subset) s.labels.push_back(b);
    const std::size_t nc = s.labels.size();
    if (beta_subset.empty()) s.labels.push_back("a1");
    for (int i = 2; i <= g; ++i) s.labels.push_back(fmt::format("b{}", i));
    const std::size_t N = s.labels.size();
    s.family.assign(N, Family::D);
    std::fill(s.family.begin(), s.family.begin() + static_cast<long>(nc), Family::C);
    s.filling_asserted = true;

    IntMatrix sig(N, N);
    auto idx = [&](const std::string& l) { return *s.index_of(l); };
    auto meet = [&](const std::string& x, const std::string& y) {
        sig.at(idx(x), idx(y)) = 1;
        sig.at(idx(y), idx(x)) = 1;
    };
    for (int i = 1; i <= g - 1; ++i) {
        if (i >= 2) meet(fmt::format("c{}", i), fmt::format("b{}", i));
        meet(fmt::format("c{}", i), fmt::format("b{}", i + 1));
    }
    meet(fmt::format("a{}", g), fmt::format("b{}", g));
    if (beta_subset.empty()) meet("a1", "c1");

    for (const auto& b : beta_subset) {
        auto it = beta_rows.find(b);
        if (it == beta_rows.end()) throw Error(ErrorKind::ValidationFailed, "missing intersection row for " + b);
        if (it->second.size() != N)
            throw Error(ErrorKind::DimensionMismatch, fmt::format("row for {} has {} entries, expected {}", b, it->second.size(), N));
        const std::size_t r = idx(b);
        for (std::size_t j = 0; j < N; ++j) {
            if (it->second[j] < 0) throw Error(ErrorKind::ValidationFailed, "negative intersection number for " + b);
            const bool other_beta = std::find(beta_subset.begin(), beta_subset.end(), s.labels[j]) != beta_subset.end();
            if (other_beta) {
                auto jt = beta_rows.find(s.labels[j]);
                if (jt != beta_rows.end() && jt->second.size() == N && jt->second[r] != it->second[j])
                    throw Error(ErrorKind::ValidationFailed,
                                fmt::format("asymmetric extension between {} and {}", b, s.labels[j]));
            }
            sig.at(r, j) = it->second[j];
            sig.at(j, r) = it->second[j];
        }
    }
    s.sigma = sig;

    ExampleFamily ex{s, {}};
    for (std::size_t i = nc; i < N; ++i) ex.word.push_back({i, -1});
    for (std::size_t i = 0; i < nc; ++i) ex.word.push_back({i, +1});
    return ex;
}

}  // namespace ladder
