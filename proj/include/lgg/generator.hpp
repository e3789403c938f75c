#ifndef LGG_GENERATOR_HPP
#define LGG_GENERATOR_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lgg/compiler.hpp"

namespace lgg {

struct PatternSpan {
    std::string entity_type;
    size_t first_token = 0; // inclusive token range
    size_t last_token = 0;
    size_t depth = 0; // nesting depth at open time; smaller = outer

    bool operator==(const PatternSpan&) const = default;
};

// Honorific/sentence/request view merged across the discourse-marker graphs
// a path traversed (later non-empty values win, so a discontinuous marker's
// two halves combine).
struct TagView {
    std::optional<Honorific> honorific;
    std::optional<SentenceType> sentence_type;
    std::optional<RequestType> request_type;

    bool operator==(const TagView&) const = default;
};

struct UtterancePattern {
    std::vector<TransitionLabel> tokens; // Literal/Stem/Ending
    std::vector<std::pair<std::string, std::string>> annotations; // last-writer-wins, first-write order
    std::vector<PatternSpan> spans;
    std::vector<std::string> modules; // graphs traversed, first-entry order
    std::string dm_graph;             // last DISCOURSE_MARKER graph, empty on ellipsis paths
    int dm_syllables = 0;             // syl_n: Hangul syllables inside DM regions
    bool has_event = false;
    TagView tags;
    uint64_t index = 0; // canonical enumeration ordinal

    const std::string* annotation(const std::string& key) const;
};

enum class GenMode { TopWeight, ExhaustiveAll };

struct GenerationConfig {
    uint64_t target_size = 1;
    std::set<Honorific> honorific_filter;       // empty = all
    std::set<SentenceType> sentence_filter;     // empty = all
    std::set<RequestType> request_filter;       // empty = all
    std::vector<std::string> module_include;    // keep paths touching any closure
    std::vector<std::string> module_exclude;    // drop paths touching any closure
    GenMode mode = GenMode::TopWeight;
};

// Hangul syllable blocks (U+AC00..U+D7A3); everything else counts zero.
size_t syllable_count(std::string_view text);

struct WeightContext {
    int syl_max = 1;
};

// Eq-style expression weight: log2(1 + (syl_max - syl_n)). Strictly
// decreasing in syl_n; zero exactly at syl_n == syl_max. Throws Error when
// syl_n exceeds syl_max (a miscomputed context).
double dm_weight(int syl_n, const WeightContext& ctx);

inline double pattern_weight(const UtterancePattern& p, const WeightContext& ctx) {
    return dm_weight(p.dm_syllables, ctx);
}

// Depth-first enumeration of every start->final path surviving the filters,
// in declaration order. Pattern.index numbers the yielded stream.
void enumerate_patterns(const FlatGraph& flat, const GenerationConfig& config,
                        const std::function<void(UtterancePattern&&)>& yield);

std::vector<UtterancePattern> enumerate_all(const FlatGraph& flat, const GenerationConfig& config);

// syl_max over the filtered enumeration's discourse-marker expressions;
// degenerate floor 1 when none survive.
WeightContext compute_syl_max(const FlatGraph& flat, const GenerationConfig& config);

// Indices of the min(target, total) best patterns: weight descending, then
// realized character length (char_len) ascending, then canonical order.
// Equals the prefix of the fully sorted sequence.
std::vector<size_t> select_top(const std::vector<UtterancePattern>& patterns,
                               const WeightContext& ctx, uint64_t target_size,
                               const std::function<size_t(size_t)>& char_len);

} // namespace lgg

#endif
