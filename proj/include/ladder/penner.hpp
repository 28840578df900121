#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ladder/int_matrix.hpp"
#include "ladder/perron.hpp"

namespace ladder {

enum class Family { C, D };

struct CurveSystem {
    std::vector<std::string> labels;
    std::vector<Family> family;
    IntMatrix sigma;
    bool filling_asserted = false;

    std::size_t size() const { return labels.size(); }
    std::size_t n() const;  // |C|
    std::size_t m() const;  // |D|
    std::optional<std::size_t> index_of(const std::string& label) const;
};

struct TwistLetter {
    std::size_t curve;
    long exponent;
    bool operator==(const TwistLetter&) const = default;
};

using TwistWord = std::vector<TwistLetter>;

enum class GeneratorKind { DehnTwist, BoundingPair, Involution };

struct Generator {
    GeneratorKind kind;
    std::string label;  // empty for the involution
    bool operator==(const Generator&) const = default;
};

using GeneratorWord = std::vector<Generator>;

enum class ViolationKind { IndexRange, Dimension, Sign, Coverage, Symmetry, FamilyBlock, Connectivity, FillingUnset };

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
};

ValidationReport validate(const CurveSystem& system, const TwistWord& word);

// Throws ValidationFailed unless validate() is clean.
IntMatrix penner_matrix(const CurveSystem& system, const TwistWord& word);
// No hypothesis check; only shapes and index range.
IntMatrix penner_matrix_unchecked(const IntMatrix& sigma, const TwistWord& word);

PerronData stretch_factor(const CurveSystem& system, const TwistWord& word, const PerronOptions& opt = {});

enum class CommutationType { Commutes, AntiCommutes };

const char* to_string(CommutationType t);
CommutationType commutation_type(const GeneratorWord& word);
CommutationType combine(CommutationType a, CommutationType b);

struct ExampleFamily {
    CurveSystem system;
    TwistWord word;
};

// Chain curves c_1..c_{g-1}, a_g in C and b_2..b_g in D. With no beta curves a_1 joins D
// (meeting c_1) so the system still fills. Each beta row lists intersections with the
// final label order: C chain, betas (in the given order), then D.
ExampleFamily preset_example_family(int g, const std::vector<std::string>& beta_subset,
                                    const std::map<std::string, std::vector<long>>& beta_rows);

}  // namespace ladder
