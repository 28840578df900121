#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ladder/error.hpp"
#include "ladder/lifting.hpp"
#include "ladder/penner.hpp"

namespace ladder {

enum class Mode { Penner, LiftedPenner, RawChain };
const char* to_string(Mode m);

struct SystemFile {
    std::string name;
    Mode mode = Mode::Penner;
    std::vector<std::string> labels;
    std::vector<Family> families;
    std::optional<IntMatrix> sigma, sigma_within, sigma_cross;
    std::vector<std::pair<std::string, long>> word;
    bool filling_asserted = false;
    std::optional<std::size_t> dim;
    std::optional<IntMatrix> a_minus, a_zero, a_plus;
    std::optional<GeneratorWord> generator_word;

    bool operator==(const SystemFile&) const = default;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg);
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }
    const std::string& message() const { return msg_; }

private:
    std::size_t line_, col_;
    std::string msg_;
};

// Dispatches on the first non-blank character: '{' means json, anything else the text form.
SystemFile parse_system(const std::string& text);
SystemFile parse_system_text(const std::string& text);
SystemFile parse_system_json(const std::string& text);
std::string render_text(const SystemFile& sf);
std::string render_json(const SystemFile& sf);

CurveSystem to_curve_system(const SystemFile& sf);
TwistWord to_word(const SystemFile& sf);
LiftedCurveSystem to_lifted(const SystemFile& sf);
ShiftChain to_raw_chain(const SystemFile& sf);

std::string render_generator(const Generator& g);

}  // namespace ladder
