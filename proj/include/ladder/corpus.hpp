#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ladder {

struct CorpusEntry {
    const char* name;
    const char* text;
};

// Files under corpus/, embedded at build time and sorted by name.
const std::vector<CorpusEntry>& corpus();
std::optional<std::string> corpus_text(const std::string& name);

}  // namespace ladder
