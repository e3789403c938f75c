#include "lgg/compiler.hpp"

#include <algorithm>
#include <deque>

namespace lgg {

namespace {

std::string chain_text(const std::vector<std::string>& chain) {
    std::string s;
    for (const auto& g : chain) {
        if (!s.empty()) s += " -> ";
        s += g;
    }
    return s;
}

} // namespace

CycleError::CycleError(const std::string& msg, std::vector<std::string> chain_)
    : Error(msg + " [" + chain_text(chain_) + "]"), chain(std::move(chain_)) {}

void FlatGraph::build_adjacency() {
    out.assign(num_states, {});
    for (uint32_t i = 0; i < transitions.size(); ++i)
        out[transitions[i].from].push_back(i);
}

bool FlatGraph::is_final(uint32_t s) const {
    return std::find(finals.begin(), finals.end(), s) != finals.end();
}

namespace {

// Detects a cycle inside one graph's own transitions (calls are opaque edges).
void check_graph_acyclic(const GrammarGraph& g, const std::vector<std::string>& chain) {
    std::map<std::string, std::vector<const Transition*>> adj;
    for (const auto& t : g.transitions) adj[t.from].push_back(&t);

    std::map<std::string, int> color; // 0 white, 1 grey, 2 black
    std::vector<std::pair<std::string, size_t>> stack;
    for (const auto& s : g.states) {
        if (color[s] != 0) continue;
        stack.push_back({s, 0});
        color[s] = 1;
        while (!stack.empty()) {
            auto& [cur, idx] = stack.back();
            auto& edges = adj[cur];
            if (idx >= edges.size()) {
                color[cur] = 2;
                stack.pop_back();
                continue;
            }
            const std::string& next = edges[idx++]->to;
            if (color[next] == 1) {
                auto cyc = chain;
                cyc.push_back(g.name);
                throw CycleError("cyclic graph " + g.name + " (state " + next + ")", cyc);
            }
            if (color[next] == 0) {
                color[next] = 1;
                stack.push_back({next, 0});
            }
        }
    }
}

class Expander {
public:
    Expander(const GrammarBundle& bundle, const ExpansionConfig& config)
        : bundle_(bundle), config_(config) {}

    FlatGraph run(const std::string& root) {
        const GrammarGraph& g = graph(root, {});
        chain_.push_back(root);
        check_graph_acyclic(g, chain_);
        auto [entry, exits] = inline_graph(g);
        chain_.pop_back();

        flat_.start = entry;
        flat_.finals = std::move(exits);
        flat_.num_states = next_state_;
        flat_.build_adjacency();
        return std::move(flat_);
    }

private:
    const GrammarGraph& graph(const std::string& name, const std::vector<std::string>& at) {
        auto it = bundle_.graphs.find(name);
        if (it == bundle_.graphs.end()) {
            auto chain = at;
            chain.push_back(name);
            throw CycleError("unresolved subgraph " + name, chain);
        }
        return it->second;
    }

    uint32_t fresh() { return next_state_++; }

    std::pair<uint32_t, std::vector<uint32_t>> inline_graph(const GrammarGraph& g) {
        flat_.tags.emplace(g.name, g.tags);
        std::map<std::string, uint32_t> local;
        auto map_state = [&](const std::string& s) {
            auto it = local.find(s);
            if (it != local.end()) return it->second;
            uint32_t id = fresh();
            local.emplace(s, id);
            return id;
        };

        for (const auto& t : g.transitions) {
            uint32_t from = map_state(t.from);
            uint32_t to = map_state(t.to);
            if (t.label.kind == LabelKind::SubgraphCall) {
                inline_call(g, t, from, to);
            } else {
                FlatTransition ft;
                ft.from = from;
                ft.to = to;
                ft.label = t.label;
                ft.origin = g.name;
                for (const auto& a : t.annotations) {
                    if (a.scope == AnnScope::Span && t.label.kind == LabelKind::Literal) {
                        // span over exactly this token
                        if (ft.span_open.empty()) {
                            ft.span_open = a.value;
                            ft.span_close = a.value;
                        }
                    } else {
                        ft.annotations.push_back(a);
                    }
                }
                flat_.transitions.push_back(std::move(ft));
            }
        }

        std::vector<uint32_t> exits;
        for (const auto& f : g.finals) exits.push_back(map_state(f));
        return {map_state(g.start), exits};
    }

    void inline_call(const GrammarGraph& caller, const Transition& t, uint32_t from, uint32_t to) {
        const std::string& target = t.label.target;
        if (std::find(chain_.begin(), chain_.end(), target) != chain_.end()) {
            auto chain = chain_;
            chain.push_back(target);
            throw CycleError("recursive subgraph call " + target, chain);
        }
        if (static_cast<int>(chain_.size()) >= config_.depth_limit) {
            auto chain = chain_;
            chain.push_back(target);
            throw CycleError("subgraph call chain exceeds depth limit " +
                                 std::to_string(config_.depth_limit),
                             chain);
        }

        const GrammarGraph& callee = graph(target, chain_);
        chain_.push_back(target);
        check_graph_acyclic(callee, chain_);
        auto [entry, exits] = inline_graph(callee); // fresh copy per call site
        chain_.pop_back();

        std::string span_type;
        FlatTransition open;
        open.from = from;
        open.to = entry;
        open.origin = caller.name;
        open.module_open = target;
        for (const auto& a : t.annotations) {
            if (a.scope == AnnScope::Span) {
                if (span_type.empty()) span_type = a.value;
            } else {
                open.annotations.push_back(a);
            }
        }
        open.span_open = span_type;
        flat_.transitions.push_back(std::move(open));

        for (uint32_t exit : exits) {
            FlatTransition close;
            close.from = exit;
            close.to = to;
            close.origin = caller.name;
            close.module_close = target;
            close.span_close = span_type;
            flat_.transitions.push_back(std::move(close));
        }
    }

    const GrammarBundle& bundle_;
    const ExpansionConfig& config_;
    FlatGraph flat_;
    uint32_t next_state_ = 0;
    std::vector<std::string> chain_;
};

} // namespace

FlatGraph expand(const GrammarBundle& bundle, const ExpansionConfig& config,
                 const std::string& root) {
    if (config.depth_limit < 1) throw Error("depth_limit must be >= 1");
    Expander ex(bundle, config);
    return ex.run(root.empty() ? bundle.main : root);
}

std::vector<uint32_t> topological_order(const FlatGraph& flat) {
    std::vector<uint32_t> indegree(flat.num_states, 0);
    for (const auto& t : flat.transitions) ++indegree[t.to];

    std::deque<uint32_t> ready;
    for (uint32_t s = 0; s < flat.num_states; ++s)
        if (indegree[s] == 0) ready.push_back(s);

    std::vector<uint32_t> order;
    order.reserve(flat.num_states);
    while (!ready.empty()) {
        uint32_t s = ready.front();
        ready.pop_front();
        order.push_back(s);
        for (uint32_t ti : flat.out[s])
            if (--indegree[flat.transitions[ti].to] == 0) ready.push_back(flat.transitions[ti].to);
    }
    if (order.size() != flat.num_states)
        throw CycleError("flat graph is cyclic", {});
    return order;
}

BigUint count_paths(const FlatGraph& flat) {
    if (flat.num_states == 0) return BigUint(0);
    const auto order = topological_order(flat); // rejects cyclic input

    std::vector<BigUint> dp(flat.num_states);
    dp[flat.start] = BigUint(1);
    BigUint total(0);
    for (uint32_t s : order) {
        if (dp[s].is_zero()) continue;
        if (flat.is_final(s)) total += dp[s];
        for (uint32_t ti : flat.out[s]) dp[flat.transitions[ti].to] += dp[s];
    }
    return total;
}

BigUint count_module(const GrammarBundle& bundle, const std::string& module,
                     const ExpansionConfig& config) {
    if (bundle.graphs.find(module) == bundle.graphs.end())
        throw Error("unknown module: " + module);
    return count_paths(expand(bundle, config, module));
}

nlohmann::ordered_json flat_to_json(const FlatGraph& flat, const std::string& bundle_hash) {
    nlohmann::ordered_json j;
    j["format"] = "lgg-flatgraph";
    j["version"] = 1;
    j["bundle_hash"] = bundle_hash;
    j["num_states"] = flat.num_states;
    j["start"] = flat.start;
    j["finals"] = flat.finals;

    nlohmann::ordered_json tags = nlohmann::ordered_json::object();
    for (const auto& [name, tag] : flat.tags) {
        nlohmann::ordered_json t;
        t["part"] = to_string(tag.part);
        t["category"] = tag.category;
        t["honorific"] = tag.honorific ? to_string(*tag.honorific) : "";
        t["sentence"] = tag.sentence_type ? to_string(*tag.sentence_type) : "";
        t["request"] = tag.request_type ? to_string(*tag.request_type) : "";
        t["parent"] = tag.parent;
        tags[name] = std::move(t);
    }
    j["tags"] = std::move(tags);

    nlohmann::ordered_json trans = nlohmann::ordered_json::array();
    for (const auto& t : flat.transitions) {
        nlohmann::ordered_json e;
        e["from"] = t.from;
        e["to"] = t.to;
        int kind = static_cast<int>(t.label.kind);
        e["kind"] = kind;
        e["surface"] = t.label.surface;
        e["class"] = t.label.conj_class;
        e["attach"] = t.label.attach;
        e["origin"] = t.origin;
        e["span_open"] = t.span_open;
        e["span_close"] = t.span_close;
        e["module_open"] = t.module_open;
        e["module_close"] = t.module_close;
        nlohmann::ordered_json anns = nlohmann::ordered_json::array();
        for (const auto& a : t.annotations) anns.push_back({a.key, a.value});
        e["annotations"] = std::move(anns);
        trans.push_back(std::move(e));
    }
    j["transitions"] = std::move(trans);
    return j;
}

FlatGraph flat_from_json(const nlohmann::json& j, std::string* bundle_hash_out) {
    if (j.value("format", "") != "lgg-flatgraph" || j.value("version", 0) != 1)
        throw Error("not a flat-graph cache file");
    if (bundle_hash_out) *bundle_hash_out = j.value("bundle_hash", "");

    FlatGraph flat;
    flat.num_states = j.at("num_states").get<uint32_t>();
    flat.start = j.at("start").get<uint32_t>();
    flat.finals = j.at("finals").get<std::vector<uint32_t>>();

    for (const auto& [name, t] : j.at("tags").items()) {
        ModuleTag tag;
        auto part = parse_part(t.at("part").get<std::string>());
        if (!part) throw Error("bad part in cache");
        tag.part = *part;
        tag.category = t.at("category").get<std::string>();
        std::string h = t.at("honorific").get<std::string>();
        if (!h.empty()) tag.honorific = parse_honorific(h);
        std::string s = t.at("sentence").get<std::string>();
        if (!s.empty()) tag.sentence_type = parse_sentence_type(s);
        std::string r = t.at("request").get<std::string>();
        if (!r.empty()) tag.request_type = parse_request_type(r);
        tag.parent = t.at("parent").get<std::string>();
        flat.tags.emplace(name, std::move(tag));
    }

    for (const auto& e : j.at("transitions")) {
        FlatTransition t;
        t.from = e.at("from").get<uint32_t>();
        t.to = e.at("to").get<uint32_t>();
        t.label.kind = static_cast<LabelKind>(e.at("kind").get<int>());
        t.label.surface = e.at("surface").get<std::string>();
        t.label.conj_class = e.at("class").get<std::string>();
        t.label.attach = e.at("attach").get<bool>();
        t.origin = e.at("origin").get<std::string>();
        t.span_open = e.at("span_open").get<std::string>();
        t.span_close = e.at("span_close").get<std::string>();
        t.module_open = e.at("module_open").get<std::string>();
        t.module_close = e.at("module_close").get<std::string>();
        for (const auto& a : e.at("annotations")) {
            Annotation ann;
            ann.key = a.at(0).get<std::string>();
            ann.value = a.at(1).get<std::string>();
            ann.scope = scope_for_key(ann.key);
            t.annotations.push_back(std::move(ann));
        }
        flat.transitions.push_back(std::move(t));
    }
    flat.build_adjacency();
    return flat;
}

} // namespace lgg
