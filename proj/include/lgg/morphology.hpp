#ifndef LGG_MORPHOLOGY_HPP
#define LGG_MORPHOLOGY_HPP

#include <set>
#include <string>
#include <vector>

#include "lgg/utf8.hpp"

namespace lgg {

enum class LabelKind { Literal, SubgraphCall, Epsilon, Stem, Ending };

struct TransitionLabel {
    LabelKind kind = LabelKind::Epsilon;
    std::string surface;    // Literal/Stem/Ending text
    std::string target;     // SubgraphCall only
    std::string conj_class; // Stem only
    bool attach = false;    // Stem only: fuse to the preceding unit with no space

    bool operator==(const TransitionLabel&) const = default;
};

struct MorphError : Error {
    using Error::Error;
};

struct ConjugationRule {
    std::string cls;
    std::string stem_suffix;
    std::string ending_prefix;
    std::string joined;

    bool operator==(const ConjugationRule&) const = default;
};

// Rule table mapping (class, stem suffix, ending prefix) to a joined form.
// Classes may be declared without rules; a declared class with no matching
// rule falls back to plain concatenation.
struct ConjugationTable {
    std::vector<ConjugationRule> rules;
    std::set<std::string> declared_classes;

    bool empty() const { return rules.empty() && declared_classes.empty(); }

    bool knows_class(const std::string& cls) const {
        if (declared_classes.count(cls)) return true;
        for (const auto& r : rules)
            if (r.cls == cls) return true;
        return false;
    }

    bool operator==(const ConjugationTable&) const = default;
};

// Joins stem + ending using the longest-match rule for `cls` (ending prefix
// length breaks ties before stem suffix length). Matching runs on the
// conjoining-jamo decomposition so a rule prefix like 어 also matches 었다.
// With no matching rule the result is plain concatenation. Throws MorphError
// for a class the (non-empty) table has never heard of.
std::string conjugate(const std::string& stem, const std::string& cls,
                      const std::string& ending, const ConjugationTable& table);

struct RealizedUnit {
    size_t token_first = 0; // pattern token range this unit realizes
    size_t token_last = 0;
    size_t start_char = 0; // Unicode-scalar offsets into text, end exclusive
    size_t end_char = 0;

    bool operator==(const RealizedUnit&) const = default;
};

struct RealizedText {
    std::string text;
    std::vector<RealizedUnit> token_char_spans;
};

// Realizes a token sequence: Stem+Ending pairs fuse via conjugate() into one
// unit, literals emit verbatim, units join with single spaces except where a
// stem's attach flag glues it to the preceding unit. Throws MorphError
// (DanglingStem/DanglingEnding) when stems and endings are not adjacent.
RealizedText realize(const std::vector<TransitionLabel>& tokens, const ConjugationTable& table);

} // namespace lgg

#endif
