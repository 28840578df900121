#include "ladder/system_file.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

namespace ladder {

const char* to_string(Mode m) {
    switch (m) {
    case Mode::Penner: return "penner";
    case Mode::LiftedPenner: return "lifted-penner";
    case Mode::RawChain: return "raw-chain";
    }
    return "?";
}

ParseError::ParseError(std::size_t line, std::size_t col, const std::string& msg)
    : Error(ErrorKind::Parse, fmt::format("{}:{}: {}", line, col, msg)), line_(line), col_(col), msg_(msg) {}

std::string render_generator(const Generator& g) {
    switch (g.kind) {
    case GeneratorKind::DehnTwist: return "twist:" + g.label;
    case GeneratorKind::BoundingPair: return "bp:" + g.label;
    case GeneratorKind::Involution: return "involution";
    }
    return "?";
}

namespace {

struct Pos {
    std::size_t line = 1, col = 1;
};

const std::set<std::string> kKeys = {"format", "name", "mode", "curves", "sigma", "sigma_within", "sigma_cross", "word",
                                     "filling_asserted", "dim", "a_minus", "a_zero", "a_plus", "generator_word"};
const std::set<std::string> kGridKeys = {"sigma", "sigma_within", "sigma_cross", "a_minus", "a_zero", "a_plus"};

bool valid_label(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool parse_long(const std::string& s, long& out) {
    if (s.empty() || s.size() > 18) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    out = std::stol(s);
    return true;
}

Generator parse_generator(const std::string& tok, Pos p) {
    if (tok == "involution") return {GeneratorKind::Involution, ""};
    auto colon = tok.find(':');
    if (colon != std::string::npos) {
        std::string kind = tok.substr(0, colon), label = tok.substr(colon + 1);
        if (!valid_label(label)) throw ParseError(p.line, p.col + colon + 1, "invalid generator label '" + label + "'");
        if (kind == "twist") return {GeneratorKind::DehnTwist, label};
        if (kind == "bp") return {GeneratorKind::BoundingPair, label};
    }
    throw ParseError(p.line, p.col, "generator must be twist:<label>, bp:<label> or involution, got '" + tok + "'");
}

// Raw field values shared by the text and json readers.
struct Fields {
    std::map<std::string, Pos> where;
    std::string format, name, mode;
    std::vector<std::pair<std::string, Pos>> curves;  // "label:F"
    std::map<std::string, std::vector<std::vector<std::pair<std::string, Pos>>>> grids;
    std::vector<std::pair<std::string, Pos>> word;
    std::string filling, dim;
    std::vector<std::pair<std::string, Pos>> generators;
};

IntMatrix build_grid(const Fields& f, const std::string& key, std::size_t n) {
    const auto& rows = f.grids.at(key);
    const Pos kp = f.where.at(key);
    if (rows.size() != n)
        throw ParseError(kp.line, kp.col, fmt::format("{} has {} rows, expected {}", key, rows.size(), n));
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            Pos p = rows[i].empty() ? kp : rows[i].front().second;
            throw ParseError(p.line, p.col, fmt::format("{} row {} has {} entries, expected {}", key, i + 1, rows[i].size(), n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const auto& [tok, p] = rows[i][j];
            if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw ParseError(p.line, p.col, "expected a nonnegative integer, got '" + tok + "'");
            m.at(i, j) = BigInt(tok);
        }
    }
    return m;
}

SystemFile assemble(const Fields& f) {
    auto pos = [&](const std::string& k) { return f.where.count(k) ? f.where.at(k) : Pos{1, 1}; };
    auto require = [&](const std::string& k) {
        if (!f.where.count(k)) throw ParseError(1, 1, "missing required field '" + k + "'");
    };
    require("format");
    if (f.format != "ladder-system 1")
        throw ParseError(pos("format").line, pos("format").col, "unsupported format '" + f.format + "', expected 'ladder-system 1'");
    require("name");
    if (f.name.empty()) throw ParseError(pos("name").line, pos("name").col, "name must not be empty");
    require("mode");
    SystemFile sf;
    sf.name = f.name;
    if (f.mode == "penner")
        sf.mode = Mode::Penner;
    else if (f.mode == "lifted-penner")
        sf.mode = Mode::LiftedPenner;
    else if (f.mode == "raw-chain")
        sf.mode = Mode::RawChain;
    else
        throw ParseError(pos("mode").line, pos("mode").col, "mode must be penner, lifted-penner or raw-chain");

    std::set<std::string> allowed = {"format", "name", "mode", "generator_word"};
    std::vector<std::string> required;
    if (sf.mode == Mode::RawChain) {
        required = {"dim", "a_minus", "a_zero", "a_plus"};
    } else {
        required = {"curves", "sigma", "word"};
        allowed.insert("filling_asserted");
        if (sf.mode == Mode::LiftedPenner) {
            required.push_back("sigma_within");
            required.push_back("sigma_cross");
        }
    }
    allowed.insert(required.begin(), required.end());
    for (const auto& [k, p] : f.where)
        if (!allowed.count(k))
            throw ParseError(p.line, p.col, fmt::format("field '{}' is not allowed in {} mode", k, f.mode));
    for (const auto& k : required) require(k);

    if (sf.mode == Mode::RawChain) {
        long d = 0;
        if (!parse_long(f.dim, d) || d < 1) throw ParseError(pos("dim").line, pos("dim").col, "dim must be a positive integer");
        sf.dim = static_cast<std::size_t>(d);
        sf.a_minus = build_grid(f, "a_minus", *sf.dim);
        sf.a_zero = build_grid(f, "a_zero", *sf.dim);
        sf.a_plus = build_grid(f, "a_plus", *sf.dim);
    } else {
        for (const auto& [tok, p] : f.curves) {
            auto colon = tok.rfind(':');
            if (colon == std::string::npos) throw ParseError(p.line, p.col, "curve must be <label>:C or <label>:D");
            std::string label = tok.substr(0, colon), fam = tok.substr(colon + 1);
            if (!valid_label(label)) throw ParseError(p.line, p.col, "invalid curve label '" + label + "'");
            if (fam != "C" && fam != "D") throw ParseError(p.line, p.col + colon + 1, "family must be C or D");
            if (std::find(sf.labels.begin(), sf.labels.end(), label) != sf.labels.end())
                throw ParseError(p.line, p.col, "curve '" + label + "' declared twice");
            sf.labels.push_back(label);
            sf.families.push_back(fam == "C" ? Family::C : Family::D);
        }
        if (sf.labels.empty()) throw ParseError(pos("curves").line, pos("curves").col, "at least one curve is required");
        const std::size_t n = sf.labels.size();
        sf.sigma = build_grid(f, "sigma", n);
        if (sf.mode == Mode::LiftedPenner) {
            sf.sigma_within = build_grid(f, "sigma_within", n);
            sf.sigma_cross = build_grid(f, "sigma_cross", n);
        }
        for (const auto& [tok, p] : f.word) {
            auto caret = tok.find('^');
            if (caret == std::string::npos) throw ParseError(p.line, p.col, "word letter must be <label>^<exponent>");
            std::string label = tok.substr(0, caret);
            long e = 0;
            if (!parse_long(tok.substr(caret + 1), e) || e == 0)
                throw ParseError(p.line, p.col + caret + 1, "exponent must be a nonzero integer");
            if (std::find(sf.labels.begin(), sf.labels.end(), label) == sf.labels.end())
                throw ParseError(p.line, p.col, "word uses undeclared curve '" + label + "'");
            sf.word.push_back({label, e});
        }
        if (sf.word.empty()) throw ParseError(pos("word").line, pos("word").col, "word must not be empty");
        if (f.where.count("filling_asserted")) {
            if (f.filling != "true" && f.filling != "false")
                throw ParseError(pos("filling_asserted").line, pos("filling_asserted").col, "filling_asserted must be true or false");
            sf.filling_asserted = f.filling == "true";
        }
    }
    if (f.where.count("generator_word")) {
        GeneratorWord gw;
        for (const auto& [tok, p] : f.generators) gw.push_back(parse_generator(tok, p));
        sf.generator_word = gw;
    }
    return sf;
}

std::vector<std::pair<std::string, Pos>> tokens(const std::string& s, std::size_t line, std::size_t col0) {
    std::vector<std::pair<std::string, Pos>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ' || s[i] == '\t') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        out.push_back({s.substr(i, j - i), Pos{line, col0 + i}});
        i = j;
    }
    return out;
}

}  // namespace

SystemFile parse_system_text(const std::string& text) {
    Fields f;
    std::string grid;  // active grid key
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#') continue;
        if (first > 0) {
            if (grid.empty()) throw ParseError(lineno, first + 1, "indented line outside a grid");
            f.grids[grid].push_back(tokens(raw, lineno, 1));
            continue;
        }
        grid.clear();
        auto colon = raw.find(':');
        if (colon == std::string::npos) throw ParseError(lineno, 1, "expected '<key>:'");
        std::string key = raw.substr(0, colon);
        if (!kKeys.count(key)) throw ParseError(lineno, 1, "unknown field '" + key + "'");
        if (f.where.count(key)) throw ParseError(lineno, 1, "field '" + key + "' given twice");
        f.where[key] = Pos{lineno, 1};
        std::string value = raw.substr(colon + 1);
        const auto vstart = value.find_first_not_of(" \t");
        const std::size_t vcol = colon + 2 + (vstart == std::string::npos ? 0 : vstart);
        value = vstart == std::string::npos ? "" : value.substr(vstart);
        while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
        if (kGridKeys.count(key)) {
            if (!value.empty()) throw ParseError(lineno, vcol, "grid values go on the following indented lines");
            grid = key;
            f.grids[key];
        } else if (key == "format") {
            f.format = value;
        } else if (key == "name") {
            f.name = value;
        } else if (key == "mode") {
            f.mode = value;
        } else if (key == "curves") {
            f.curves = tokens(value, lineno, vcol);
        } else if (key == "word") {
            f.word = tokens(value, lineno, vcol);
        } else if (key == "filling_asserted") {
            f.filling = value;
        } else if (key == "dim") {
            f.dim = value;
        } else if (key == "generator_word") {
            f.generators = tokens(value, lineno, vcol);
        }
    }
    return assemble(f);
}

SystemFile parse_system_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(line, col, "invalid json");
    }
    if (!j.is_object()) throw ParseError(1, 1, "json system file must be an object");
    Fields f;
    auto str = [&](const std::string& k) -> std::string {
        if (!j.at(k).is_string()) throw ParseError(1, 1, "field '" + k + "' must be a string");
        return j.at(k).get<std::string>();
    };
    auto strings = [&](const std::string& k) {
        std::vector<std::pair<std::string, Pos>> out;
        if (!j.at(k).is_array()) throw ParseError(1, 1, "field '" + k + "' must be an array");
        for (const auto& x : j.at(k)) {
            if (!x.is_string()) throw ParseError(1, 1, "field '" + k + "' must hold strings");
            out.push_back({x.get<std::string>(), Pos{}});
        }
        return out;
    };
    for (const auto& [k, v] : j.items()) {
        if (k == "version") continue;
        if (!kKeys.count(k)) throw ParseError(1, 1, "unknown field '" + k + "'");
        f.where[k] = Pos{};
    }
    if (j.contains("format")) {
        if (!j.contains("version") || !j.at("version").is_number_integer())
            throw ParseError(1, 1, "json system file needs an integer 'version'");
        f.format = str("format") + " " + std::to_string(j.at("version").get<long>());
    }
    if (j.contains("name")) f.name = str("name");
    if (j.contains("mode")) f.mode = str("mode");
    if (j.contains("curves")) {
        if (!j.at("curves").is_array()) throw ParseError(1, 1, "field 'curves' must be an array");
        for (const auto& c : j.at("curves")) {
            if (!c.is_object() || !c.contains("label") || !c.contains("family") || c.size() != 2 ||
                !c.at("label").is_string() || !c.at("family").is_string())
                throw ParseError(1, 1, "curves entries must be {\"label\", \"family\"}");
            f.curves.push_back({c.at("label").get<std::string>() + ":" + c.at("family").get<std::string>(), Pos{}});
        }
    }
    if (j.contains("word")) {
        if (!j.at("word").is_array()) throw ParseError(1, 1, "field 'word' must be an array");
        for (const auto& l : j.at("word")) {
            if (!l.is_object() || !l.contains("curve") || !l.contains("exponent") || l.size() != 2 ||
                !l.at("curve").is_string() || !l.at("exponent").is_number_integer())
                throw ParseError(1, 1, "word entries must be {\"curve\", \"exponent\"}");
            f.word.push_back({l.at("curve").get<std::string>() + "^" + std::to_string(l.at("exponent").get<long>()), Pos{}});
        }
    }
    if (j.contains("filling_asserted")) {
        if (!j.at("filling_asserted").is_boolean()) throw ParseError(1, 1, "filling_asserted must be a boolean");
        f.filling = j.at("filling_asserted").get<bool>() ? "true" : "false";
    }
    if (j.contains("dim")) {
        if (!j.at("dim").is_number_integer()) throw ParseError(1, 1, "dim must be an integer");
        f.dim = std::to_string(j.at("dim").get<long>());
    }
    if (j.contains("generator_word")) f.generators = strings("generator_word");
    for (const auto& k : kGridKeys) {
        if (!j.contains(k)) continue;
        if (!j.at(k).is_array()) throw ParseError(1, 1, "grid '" + k + "' must be an array of rows");
        auto& rows = f.grids[k];
        for (const auto& row : j.at(k)) {
            if (!row.is_array()) throw ParseError(1, 1, "grid '" + k + "' must be an array of rows");
            rows.emplace_back();
            for (const auto& x : row) {
                if (x.is_number_unsigned() || (x.is_number_integer() && x.get<long>() >= 0))
                    rows.back().push_back({std::to_string(x.get<unsigned long>()), Pos{}});
                else if (x.is_string())
                    rows.back().push_back({x.get<std::string>(), Pos{}});
                else
                    throw ParseError(1, 1, "grid '" + k + "' entries must be nonnegative integers");
            }
        }
    }
    return assemble(f);
}

SystemFile parse_system(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_system_json(text);
    return parse_system_text(text);
}

namespace {

void grid_text(std::ostringstream& os, const std::string& key, const IntMatrix& m) {
    os << key << ":\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << " ";
        for (std::size_t j = 0; j < m.cols(); ++j) os << ' ' << m(i, j).get_str();
        os << '\n';
    }
}

nlohmann::json grid_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).fits_slong_p())
                row.push_back(m(i, j).get_si());
            else
                row.push_back(m(i, j).get_str());
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::string render_text(const SystemFile& sf) {
    std::ostringstream os;
    os << "format: ladder-system 1\n";
    os << "name: " << sf.name << '\n';
    os << "mode: " << to_string(sf.mode) << '\n';
    if (sf.mode != Mode::RawChain) {
        os << "curves:";
        for (std::size_t i = 0; i < sf.labels.size(); ++i)
            os << ' ' << sf.labels[i] << ':' << (sf.families[i] == Family::C ? 'C' : 'D');
        os << '\n';
        grid_text(os, "sigma", *sf.sigma);
        if (sf.mode == Mode::LiftedPenner) {
            grid_text(os, "sigma_within", *sf.sigma_within);
            grid_text(os, "sigma_cross", *sf.sigma_cross);
        }
        os << "word:";
        for (const auto& [l, e] : sf.word) os << ' ' << l << '^' << e;
        os << '\n';
        os << "filling_asserted: " << (sf.filling_asserted ? "true" : "false") << '\n';
    } else {
        os << "dim: " << *sf.dim << '\n';
        grid_text(os, "a_minus", *sf.a_minus);
        grid_text(os, "a_zero", *sf.a_zero);
        grid_text(os, "a_plus", *sf.a_plus);
    }
    if (sf.generator_word) {
        os << "generator_word:";
        for (const auto& g : *sf.generator_word) os << ' ' << render_generator(g);
        os << '\n';
    }
    return os.str();
}

std::string render_json(const SystemFile& sf) {
    nlohmann::ordered_json j;
    j["format"] = "ladder-system";
    j["version"] = 1;
    j["name"] = sf.name;
    j["mode"] = to_string(sf.mode);
    if (sf.mode != Mode::RawChain) {
        j["curves"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < sf.labels.size(); ++i)
            j["curves"].push_back({{"label", sf.labels[i]}, {"family", sf.families[i] == Family::C ? "C" : "D"}});
        j["sigma"] = grid_json(*sf.sigma);
        if (sf.mode == Mode::LiftedPenner) {
            j["sigma_within"] = grid_json(*sf.sigma_within);
            j["sigma_cross"] = grid_json(*sf.sigma_cross);
        }
        j["word"] = nlohmann::ordered_json::array();
        for (const auto& [l, e] : sf.word) j["word"].push_back({{"curve", l}, {"exponent", e}});
        j["filling_asserted"] = sf.filling_asserted;
    } else {
        j["dim"] = *sf.dim;
        j["a_minus"] = grid_json(*sf.a_minus);
        j["a_zero"] = grid_json(*sf.a_zero);
        j["a_plus"] = grid_json(*sf.a_plus);
    }
    if (sf.generator_word) {
        j["generator_word"] = nlohmann::ordered_json::array();
        for (const auto& g : *sf.generator_word) j["generator_word"].push_back(render_generator(g));
    }
    return j.dump(2) + "\n";
}

CurveSystem to_curve_system(const SystemFile& sf) {
    if (sf.mode == Mode::RawChain) throw Error(ErrorKind::ValidationFailed, "raw-chain files have no curve system");
    return {sf.labels, sf.families, *sf.sigma, sf.filling_asserted};
}

TwistWord to_word(const SystemFile& sf) {
    TwistWord w;
    for (const auto& [l, e] : sf.word) {
        auto it = std::find(sf.labels.begin(), sf.labels.end(), l);
        w.push_back({static_cast<std::size_t>(it - sf.labels.begin()), e});
    }
    return w;
}

LiftedCurveSystem to_lifted(const SystemFile& sf) {
    CurveSystem base = to_curve_system(sf);
    if (sf.mode == Mode::LiftedPenner) return {base, *sf.sigma_within, *sf.sigma_cross};
    // plain penner files lift with every intersection at level 0
    return {base, *sf.sigma, IntMatrix(base.size(), base.size())};
}

ShiftChain to_raw_chain(const SystemFile& sf) {
    if (sf.mode != Mode::RawChain) throw Error(ErrorKind::ValidationFailed, "not a raw-chain file");
    return {*sf.a_minus, *sf.a_zero, *sf.a_plus};
}

}  // namespace ladder
