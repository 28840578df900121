#include "ladder/corpus.hpp"

namespace ladder {

std::optional<std::string> corpus_text(const std::string& name) {
    for (const auto& e : corpus())
        if (name == e.name) return std::string(e.text);
    return std::nullopt;
}

}  // namespace ladder
