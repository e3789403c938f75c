#include "lgg/emitter.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace lgg {

std::string resolve_intent(const UtterancePattern& pattern) {
    if (const std::string* explicit_intent = pattern.annotation("intent"))
        return *explicit_intent;

    const std::string* event_cat = pattern.annotation("event_cat");
    const bool has_dm = !pattern.dm_graph.empty();

    std::string req;
    if (const std::string* r = pattern.annotation("req_type")) req = *r;
    else if (pattern.tags.request_type) req = to_string(*pattern.tags.request_type);

    if (event_cat && has_dm) {
        if (req.empty())
            throw IntentError("MissingIntentComponents: discourse marker without request type");
        return *event_cat + "." + req;
    }
    if (event_cat && !has_dm) return *event_cat + ".request_action";
    if (!event_cat && has_dm) {
        if (req.empty())
            throw IntentError("MissingIntentComponents: no event and no request type");
        return "request_information." + req;
    }
    throw IntentError("MissingIntentComponents: neither explicit intent nor composable parts");
}

namespace {

struct CharRange {
    size_t start, end;
};

// Maps a token range through the realization's unit table.
bool map_span(const RealizedText& realized, size_t first, size_t last, CharRange& out) {
    bool found = false;
    for (const auto& u : realized.token_char_spans) {
        if (u.token_last < first || u.token_first > last) continue;
        if (!found) {
            out = {u.start_char, u.end_char};
            found = true;
        } else {
            out.start = std::min(out.start, u.start_char);
            out.end = std::max(out.end, u.end_char);
        }
    }
    return found;
}

} // namespace

AnnotatedExample build_example(const UtterancePattern& pattern, const RealizedText& realized,
                               double weight) {
    AnnotatedExample ex;
    ex.text = realized.text;
    ex.intent = resolve_intent(pattern);
    ex.weight = weight;

    if (pattern.tags.honorific) ex.tags.honorific = to_string(*pattern.tags.honorific);
    if (pattern.tags.sentence_type) ex.tags.sentence_type = to_string(*pattern.tags.sentence_type);
    if (pattern.tags.request_type) ex.tags.request_type = to_string(*pattern.tags.request_type);
    ex.tags.modules = pattern.modules;

    // outermost spans become entities; nested inner spans are kept as metadata
    for (size_t i = 0; i < pattern.spans.size(); ++i) {
        const PatternSpan& s = pattern.spans[i];
        bool nested = false;
        for (size_t j = 0; j < pattern.spans.size(); ++j) {
            if (i == j) continue;
            const PatternSpan& o = pattern.spans[j];
            if (o.first_token <= s.first_token && o.last_token >= s.last_token &&
                (o.depth < s.depth ||
                 (o.depth == s.depth &&
                  (o.first_token < s.first_token || o.last_token > s.last_token)))) {
                nested = true;
                break;
            }
        }
        CharRange range{};
        if (!map_span(realized, s.first_token, s.last_token, range)) continue;
        std::string value = utf8::scalar_substr(realized.text, range.start, range.end);
        if (nested) {
            ex.tags.dropped_spans.push_back(s.entity_type + "=" + value);
            continue;
        }
        ex.entities.push_back({range.start, range.end, s.entity_type, value});
    }

    std::sort(ex.entities.begin(), ex.entities.end(),
              [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
    // overlap after mapping can only come from a shared fused unit; keep the first
    for (size_t i = 1; i < ex.entities.size();) {
        if (ex.entities[i].start < ex.entities[i - 1].end) {
            ex.tags.dropped_spans.push_back(ex.entities[i].entity_type + "=" +
                                            ex.entities[i].value);
            ex.entities.erase(ex.entities.begin() + static_cast<long>(i));
        } else {
            ++i;
        }
    }
    return ex;
}

void deduplicate(std::vector<AnnotatedExample>& examples) {
    std::unordered_set<std::string> seen;
    std::vector<AnnotatedExample> kept;
    kept.reserve(examples.size());
    for (auto& ex : examples)
        if (seen.insert(ex.text + "\x1f" + ex.intent).second) kept.push_back(std::move(ex));
    examples = std::move(kept);
}

namespace {

nlohmann::ordered_json example_to_json(const AnnotatedExample& ex) {
    nlohmann::ordered_json j;
    j["text"] = ex.text;
    j["intent"] = ex.intent;
    nlohmann::ordered_json entities = nlohmann::ordered_json::array();
    for (const auto& e : ex.entities) {
        nlohmann::ordered_json je;
        je["start"] = e.start;
        je["end"] = e.end;
        je["entity"] = e.entity_type;
        je["value"] = e.value;
        entities.push_back(std::move(je));
    }
    j["entities"] = std::move(entities);
    nlohmann::ordered_json tags = nlohmann::ordered_json::object();
    if (!ex.tags.honorific.empty()) tags["honorific"] = ex.tags.honorific;
    if (!ex.tags.sentence_type.empty()) tags["sentence_type"] = ex.tags.sentence_type;
    if (!ex.tags.request_type.empty()) tags["request_type"] = ex.tags.request_type;
    tags["modules"] = ex.tags.modules;
    if (!ex.tags.dropped_spans.empty()) tags["dropped_spans"] = ex.tags.dropped_spans;
    j["tags"] = std::move(tags);
    j["weight"] = ex.weight;
    return j;
}

} // namespace

size_t emit_jsonl(const Dataset& dataset, std::ostream& sink) {
    size_t bytes = 0;
    for (const auto& ex : dataset.examples) {
        std::string line = example_to_json(ex).dump();
        line += "\n";
        sink.write(line.data(), static_cast<long>(line.size()));
        if (!sink) throw Error("emit_jsonl: write failure");
        bytes += line.size();
    }
    return bytes;
}

Dataset parse_jsonl(std::istream& in) {
    Dataset ds;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        AnnotatedExample ex;
        ex.text = j.at("text").get<std::string>();
        ex.intent = j.at("intent").get<std::string>();
        for (const auto& e : j.at("entities")) {
            EntitySpan span;
            span.start = e.at("start").get<size_t>();
            span.end = e.at("end").get<size_t>();
            span.entity_type = e.at("entity").get<std::string>();
            span.value = e.at("value").get<std::string>();
            ex.entities.push_back(std::move(span));
        }
        const auto& tags = j.at("tags");
        ex.tags.honorific = tags.value("honorific", "");
        ex.tags.sentence_type = tags.value("sentence_type", "");
        ex.tags.request_type = tags.value("request_type", "");
        if (tags.contains("modules"))
            ex.tags.modules = tags.at("modules").get<std::vector<std::string>>();
        if (tags.contains("dropped_spans"))
            ex.tags.dropped_spans = tags.at("dropped_spans").get<std::vector<std::string>>();
        ex.weight = j.at("weight").get<double>();
        ds.examples.push_back(std::move(ex));
    }
    return ds;
}

std::string markup_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '[' || c == ']' || c == '(' || c == ')' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string markup_unescape(const std::string& text) {
    std::string out;
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        out.push_back(text[i]);
    }
    return out;
}

std::string markup_line(const AnnotatedExample& ex) {
    std::string out;
    size_t cursor = 0; // scalar offset
    for (const auto& e : ex.entities) {
        out += markup_escape(utf8::scalar_substr(ex.text, cursor, e.start));
        out += "[" + markup_escape(e.value) + "](" + e.entity_type + ")";
        cursor = e.end;
    }
    out += markup_escape(utf8::scalar_substr(ex.text, cursor, utf8::scalar_count(ex.text)));
    return out;
}

std::pair<std::string, std::vector<EntitySpan>> parse_markup_line(const std::string& line) {
    std::string text;
    std::vector<EntitySpan> entities;
    size_t chars = 0;
    const std::u32string cps = utf8::decode(line);

    auto append_cp = [&](char32_t cp) {
        utf8::append(text, cp);
        ++chars;
    };

    for (size_t i = 0; i < cps.size(); ++i) {
        char32_t c = cps[i];
        if (c == U'\\' && i + 1 < cps.size()) {
            append_cp(cps[++i]);
            continue;
        }
        if (c != U'[') {
            append_cp(c);
            continue;
        }
        EntitySpan span;
        span.start = chars;
        ++i;
        while (i < cps.size() && cps[i] != U']') {
            if (cps[i] == U'\\' && i + 1 < cps.size()) ++i;
            utf8::append(span.value, cps[i]);
            append_cp(cps[i]);
            ++i;
        }
        span.end = chars;
        if (i + 1 >= cps.size() || cps[i] != U']' || cps[i + 1] != U'(')
            throw Error("malformed entity markup");
        i += 2;
        while (i < cps.size() && cps[i] != U')') utf8::append(span.entity_type, cps[i++]);
        if (i >= cps.size()) throw Error("malformed entity markup");
        entities.push_back(std::move(span));
    }
    return {std::move(text), std::move(entities)};
}

size_t emit_yaml(const Dataset& dataset, std::ostream& sink) {
    std::vector<std::string> intent_order;
    std::map<std::string, std::vector<const AnnotatedExample*>> groups;
    for (const auto& ex : dataset.examples) {
        auto [it, fresh] = groups.try_emplace(ex.intent);
        if (fresh) intent_order.push_back(ex.intent);
        it->second.push_back(&ex);
    }

    std::ostringstream out;
    out << "version: \"1.0\"\n";
    out << "nlu:\n";
    for (const auto& intent : intent_order) {
        out << "- intent: " << intent << "\n";
        out << "  examples: |\n";
        for (const AnnotatedExample* ex : groups[intent])
            out << "    - " << markup_line(*ex) << "\n";
    }

    std::string data = out.str();
    sink.write(data.data(), static_cast<long>(data.size()));
    if (!sink) throw Error("emit_yaml: write failure");
    return data.size();
}

} // namespace lgg
