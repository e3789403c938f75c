#ifndef LGG_GRAMMAR_HPP
#define LGG_GRAMMAR_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lgg/morphology.hpp"

namespace lgg {

enum class AnnScope { Span, Utterance };

// entity marks the text a transition produces as a typed span; every other
// key is utterance-level metadata.
inline AnnScope scope_for_key(const std::string& key) {
    return key == "entity" ? AnnScope::Span : AnnScope::Utterance;
}

struct Annotation {
    std::string key;
    std::string value;
    AnnScope scope = AnnScope::Utterance;

    bool operator==(const Annotation&) const = default;
};

enum class Part { TopicEntity, TopicFeature, Event, DiscourseMarker, Link };
enum class Honorific { Raising, Lowering, Polite, Basic };
enum class SentenceType { Declarative, Imperative, Interrogative, Suggestive };
enum class RequestType {
    Person, Product, Method, Reason, Location, Time,
    AgeCondition, CostQuantity, Dissatisfaction, ServiceError, Demand
};

const char* to_string(Part p);
const char* to_string(Honorific h);
const char* to_string(SentenceType s);
const char* to_string(RequestType r);
std::optional<Part> parse_part(const std::string& s);
std::optional<Honorific> parse_honorific(const std::string& s);
std::optional<SentenceType> parse_sentence_type(const std::string& s);
std::optional<RequestType> parse_request_type(const std::string& s);

struct ModuleTag {
    Part part = Part::Link;
    std::string category;
    std::optional<Honorific> honorific;
    std::optional<SentenceType> sentence_type;
    std::optional<RequestType> request_type;
    std::string parent; // optional submodule parent graph

    bool operator==(const ModuleTag&) const = default;
};

struct Transition {
    std::string from;
    std::string to;
    TransitionLabel label;
    std::vector<Annotation> annotations;

    bool operator==(const Transition&) const = default;
};

struct GrammarGraph {
    std::string name;
    std::set<std::string> states;
    std::string start;
    std::set<std::string> finals;
    std::vector<Transition> transitions;
    ModuleTag tags;

    bool operator==(const GrammarGraph&) const = default;
};

struct GrammarBundle {
    std::map<std::string, GrammarGraph> graphs;
    std::string main; // linking graph
    ConjugationTable conjugation;
};

struct Diagnostic {
    std::string code;   // e.g. UnresolvedSubgraph
    std::string graph;  // graph name, empty for bundle-level findings
    std::string detail; // human-readable location/description

    std::string to_string() const;
    bool operator==(const Diagnostic&) const = default;
};

// Structural validation: type invariants, subgraph resolution, final-state
// reachability, tag placement, parent forest acyclicity. Pure; returns one
// diagnostic per violation.
std::vector<Diagnostic> validate_bundle(const GrammarBundle& bundle);

// The module plus every graph whose parent chain reaches it.
// Throws Error on an unknown module name.
std::set<std::string> submodule_closure(const GrammarBundle& bundle, const std::string& module);

} // namespace lgg

#endif
