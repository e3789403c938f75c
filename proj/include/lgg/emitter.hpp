#ifndef LGG_EMITTER_HPP
#define LGG_EMITTER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "lgg/generator.hpp"
#include "lgg/morphology.hpp"

namespace lgg {

struct IntentError : Error {
    using Error::Error;
};

struct EntitySpan {
    size_t start = 0; // Unicode-scalar offsets, end exclusive
    size_t end = 0;
    std::string entity_type;
    std::string value;

    bool operator==(const EntitySpan&) const = default;
};

struct ExampleTags {
    std::string honorific;
    std::string sentence_type;
    std::string request_type;
    std::vector<std::string> modules;
    std::vector<std::string> dropped_spans; // nested inner spans, "type=value"

    bool operator==(const ExampleTags&) const = default;
};

struct AnnotatedExample {
    std::string text;
    std::string intent;
    std::vector<EntitySpan> entities; // sorted by start, non-overlapping
    ExampleTags tags;
    double weight = 0.0;

    bool operator==(const AnnotatedExample&) const = default;
};

struct Dataset {
    std::vector<AnnotatedExample> examples;
    std::string bundle_hash;
    std::string config_echo;
    std::string tool_version;
};

// Explicit `intent` annotation wins; otherwise composes event_cat.req_type
// with the two ellipsis defaults: no discourse marker -> "<event>.request_action",
// no event -> "request_information.<req>". Throws IntentError when no rule
// produces a complete intent.
std::string resolve_intent(const UtterancePattern& pattern);

// Maps the pattern's token-range spans through the realization's unit table
// to character offsets. Nested spans keep the outermost; inner ones land in
// tags.dropped_spans.
AnnotatedExample build_example(const UtterancePattern& pattern, const RealizedText& realized,
                               double weight);

// Keeps the first occurrence of each (text, intent) pair, stable order.
void deduplicate(std::vector<AnnotatedExample>& examples);

// One JSON object per line, fixed key order
// text, intent, entities[{start,end,entity,value}], tags, weight.
// Returns bytes written.
size_t emit_jsonl(const Dataset& dataset, std::ostream& sink);

// Dialogue-framework style training file: version header, then per-intent
// blocks with inline [value](type) markup. Returns bytes written.
size_t emit_yaml(const Dataset& dataset, std::ostream& sink);

// Round-trip support (also used by the verification suites).
Dataset parse_jsonl(std::istream& in);
std::string markup_escape(const std::string& text);
std::string markup_unescape(const std::string& text);
std::string markup_line(const AnnotatedExample& ex);
// Inverse of markup_line: plain text plus entity spans in scalar offsets.
std::pair<std::string, std::vector<EntitySpan>> parse_markup_line(const std::string& line);

} // namespace lgg

#endif
