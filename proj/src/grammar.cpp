#include "lgg/grammar.hpp"

#include <algorithm>
#include <deque>

namespace lgg {

const char* to_string(Part p) {
    switch (p) {
        case Part::TopicEntity: return "TOPIC_ENTITY";
        case Part::TopicFeature: return "TOPIC_FEATURE";
        case Part::Event: return "EVENT";
        case Part::DiscourseMarker: return "DISCOURSE_MARKER";
        case Part::Link: return "LINK";
    }
    return "?";
}

const char* to_string(Honorific h) {
    switch (h) {
        case Honorific::Raising: return "Raising";
        case Honorific::Lowering: return "Lowering";
        case Honorific::Polite: return "Polite";
        case Honorific::Basic: return "Basic";
    }
    return "?";
}

const char* to_string(SentenceType s) {
    switch (s) {
        case SentenceType::Declarative: return "Declarative";
        case SentenceType::Imperative: return "Imperative";
        case SentenceType::Interrogative: return "Interrogative";
        case SentenceType::Suggestive: return "Suggestive";
    }
    return "?";
}

const char* to_string(RequestType r) {
    switch (r) {
        case RequestType::Person: return "Person";
        case RequestType::Product: return "Product";
        case RequestType::Method: return "Method";
        case RequestType::Reason: return "Reason";
        case RequestType::Location: return "Location";
        case RequestType::Time: return "Time";
        case RequestType::AgeCondition: return "AgeCondition";
        case RequestType::CostQuantity: return "CostQuantity";
        case RequestType::Dissatisfaction: return "Dissatisfaction";
        case RequestType::ServiceError: return "ServiceError";
        case RequestType::Demand: return "Demand";
    }
    return "?";
}

namespace {

template <typename E>
std::optional<E> parse_enum(const std::string& s, std::initializer_list<E> values) {
    for (E v : values)
        if (s == to_string(v)) return v;
    return std::nullopt;
}

} // namespace

std::optional<Part> parse_part(const std::string& s) {
    return parse_enum(s, {Part::TopicEntity, Part::TopicFeature, Part::Event,
                          Part::DiscourseMarker, Part::Link});
}

std::optional<Honorific> parse_honorific(const std::string& s) {
    return parse_enum(s, {Honorific::Raising, Honorific::Lowering, Honorific::Polite,
                          Honorific::Basic});
}

std::optional<SentenceType> parse_sentence_type(const std::string& s) {
    return parse_enum(s, {SentenceType::Declarative, SentenceType::Imperative,
                          SentenceType::Interrogative, SentenceType::Suggestive});
}

std::optional<RequestType> parse_request_type(const std::string& s) {
    return parse_enum(s, {RequestType::Person, RequestType::Product, RequestType::Method,
                          RequestType::Reason, RequestType::Location, RequestType::Time,
                          RequestType::AgeCondition, RequestType::CostQuantity,
                          RequestType::Dissatisfaction, RequestType::ServiceError,
                          RequestType::Demand});
}

std::string Diagnostic::to_string() const {
    std::string s = code;
    if (!graph.empty()) s += " [" + graph + "]";
    if (!detail.empty()) s += ": " + detail;
    return s;
}

namespace {

void validate_graph(const GrammarGraph& g, const GrammarBundle& bundle,
                    std::vector<Diagnostic>& out) {
    if (g.states.find(g.start) == g.states.end())
        out.push_back({"StartNotInStates", g.name, "start state " + g.start});
    if (g.finals.empty())
        out.push_back({"NoFinalStates", g.name, ""});
    for (const auto& f : g.finals)
        if (g.states.find(f) == g.states.end())
            out.push_back({"FinalNotInStates", g.name, "final state " + f});

    for (size_t i = 0; i < g.transitions.size(); ++i) {
        const Transition& t = g.transitions[i];
        const std::string where = "transition #" + std::to_string(i + 1);
        if (g.states.find(t.from) == g.states.end())
            out.push_back({"EndpointNotInStates", g.name, where + " from " + t.from});
        if (g.states.find(t.to) == g.states.end())
            out.push_back({"EndpointNotInStates", g.name, where + " to " + t.to});

        const TransitionLabel& l = t.label;
        switch (l.kind) {
            case LabelKind::Literal:
            case LabelKind::Stem:
            case LabelKind::Ending:
                if (l.surface.empty())
                    out.push_back({"EmptySurface", g.name, where});
                break;
            case LabelKind::Epsilon:
                if (!l.surface.empty())
                    out.push_back({"EpsilonWithSurface", g.name, where});
                break;
            case LabelKind::SubgraphCall:
                if (l.target.empty())
                    out.push_back({"EmptyCallTarget", g.name, where});
                else if (bundle.graphs.find(l.target) == bundle.graphs.end())
                    out.push_back({"UnresolvedSubgraph", g.name, l.target + " (" + where + ")"});
                break;
        }
        if (l.kind == LabelKind::Stem && l.conj_class.empty())
            out.push_back({"StemWithoutClass", g.name, where});

        for (const Annotation& a : t.annotations) {
            if (a.scope == AnnScope::Span &&
                l.kind != LabelKind::SubgraphCall && l.kind != LabelKind::Literal)
                out.push_back({"SpanAnnotationPlacement", g.name,
                               where + " key " + a.key + " on non-producing label"});
        }
    }

    if (g.tags.part != Part::DiscourseMarker &&
        (g.tags.honorific || g.tags.sentence_type || g.tags.request_type))
        out.push_back({"TagMisuse", g.name,
                       "honorific/sentence/request tags require part=DISCOURSE_MARKER"});

    // every final must be reachable from start
    std::set<std::string> reached;
    std::deque<std::string> queue{g.start};
    reached.insert(g.start);
    while (!queue.empty()) {
        std::string s = queue.front();
        queue.pop_front();
        for (const Transition& t : g.transitions)
            if (t.from == s && reached.insert(t.to).second) queue.push_back(t.to);
    }
    for (const auto& f : g.finals)
        if (g.states.count(f) && !reached.count(f))
            out.push_back({"UnreachableFinal", g.name, "final state " + f});
}

} // namespace

std::vector<Diagnostic> validate_bundle(const GrammarBundle& bundle) {
    std::vector<Diagnostic> out;

    auto main_it = bundle.graphs.find(bundle.main);
    if (main_it == bundle.graphs.end())
        out.push_back({"MissingMain", "", "main graph " + bundle.main + " not in bundle"});
    else if (main_it->second.tags.part != Part::Link)
        out.push_back({"MainNotLink", bundle.main, "main graph must have part=LINK"});

    for (const auto& [name, g] : bundle.graphs) {
        if (g.name != name)
            out.push_back({"NameMismatch", name, "graph declares name " + g.name});
        validate_graph(g, bundle, out);

        if (!g.tags.parent.empty() &&
            bundle.graphs.find(g.tags.parent) == bundle.graphs.end())
            out.push_back({"UnknownParent", name, g.tags.parent});
    }

    // parent chains must form a forest
    for (const auto& [name, g] : bundle.graphs) {
        std::set<std::string> seen{name};
        std::string cur = g.tags.parent;
        while (!cur.empty()) {
            if (!seen.insert(cur).second) {
                out.push_back({"ParentCycle", name, "via " + cur});
                break;
            }
            auto it = bundle.graphs.find(cur);
            if (it == bundle.graphs.end()) break;
            cur = it->second.tags.parent;
        }
    }

    return out;
}

std::set<std::string> submodule_closure(const GrammarBundle& bundle, const std::string& module) {
    if (bundle.graphs.find(module) == bundle.graphs.end())
        throw Error("unknown module: " + module);
    std::set<std::string> closure{module};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [name, g] : bundle.graphs)
            if (!closure.count(name) && closure.count(g.tags.parent))
                grew = closure.insert(name).second || grew;
    }
    return closure;
}

} // namespace lgg
