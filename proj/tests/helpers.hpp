#ifndef TESTS_HELPERS_HPP
#define TESTS_HELPERS_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lgg/compiler.hpp"
#include "lgg/dsl.hpp"
#include "lgg/generator.hpp"

namespace testutil {

// Bundle-level path counting that never touches the expander: a subgraph call
// contributes the callee's own count multiplicatively. Independent oracle for
// the flattened DP.
inline uint64_t oracle_count(const lgg::GrammarBundle& bundle, const std::string& name,
                             std::map<std::string, uint64_t>& memo) {
    if (auto it = memo.find(name); it != memo.end()) return it->second;
    const lgg::GrammarGraph& g = bundle.graphs.at(name);

    std::map<std::string, std::vector<const lgg::Transition*>> out;
    for (const auto& t : g.transitions) out[t.from].push_back(&t);

    std::map<std::string, uint64_t> state_memo;
    auto walk = [&](auto&& self, const std::string& state) -> uint64_t {
        if (auto it = state_memo.find(state); it != state_memo.end()) return it->second;
        uint64_t n = g.finals.count(state) ? 1 : 0;
        for (const lgg::Transition* t : out[state]) {
            uint64_t w = 1;
            if (t->label.kind == lgg::LabelKind::SubgraphCall)
                w = oracle_count(bundle, t->label.target, memo);
            n += w * self(self, t->to);
        }
        state_memo[state] = n;
        return n;
    };
    uint64_t total = walk(walk, g.start);
    memo[name] = total;
    return total;
}

inline uint64_t oracle_count(const lgg::GrammarBundle& bundle) {
    std::map<std::string, uint64_t> memo;
    return oracle_count(bundle, bundle.main, memo);
}

// Saturating variant so pathological rolls cannot overflow while we bound
// the generator below.
inline uint64_t oracle_count_capped(const lgg::GrammarBundle& bundle, const std::string& name,
                                    std::map<std::string, uint64_t>& memo, uint64_t cap) {
    if (auto it = memo.find(name); it != memo.end()) return it->second;
    const lgg::GrammarGraph& g = bundle.graphs.at(name);
    std::map<std::string, std::vector<const lgg::Transition*>> out;
    for (const auto& t : g.transitions) out[t.from].push_back(&t);
    std::map<std::string, uint64_t> state_memo;
    auto walk = [&](auto&& self, const std::string& state) -> uint64_t {
        if (auto it = state_memo.find(state); it != state_memo.end()) return it->second;
        unsigned __int128 n = g.finals.count(state) ? 1 : 0;
        for (const lgg::Transition* t : out[state]) {
            unsigned __int128 w = 1;
            if (t->label.kind == lgg::LabelKind::SubgraphCall)
                w = oracle_count_capped(bundle, t->label.target, memo, cap);
            n += w * self(self, t->to);
            if (n > cap) n = cap + 1;
        }
        uint64_t v = static_cast<uint64_t>(n);
        state_memo[state] = v;
        return v;
    };
    uint64_t total = walk(walk, g.start);
    memo[name] = total;
    return total;
}

inline lgg::GrammarBundle detail_random_acyclic_bundle(std::mt19937& rng);

// Random acyclic bundle: graphs arranged in levels, calls only go one level
// down, and transitions only go from lower- to higher-numbered states. Keeps
// every generated bundle trivially cycle-free with nesting depth <= 3 and a
// path count small enough to enumerate.
inline lgg::GrammarBundle random_acyclic_bundle(std::mt19937& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        lgg::GrammarBundle b = detail_random_acyclic_bundle(rng);
        std::map<std::string, uint64_t> memo;
        uint64_t n = oracle_count_capped(b, b.main, memo, 20000);
        if (n >= 1 && n <= 20000) return b;
    }
    throw lgg::Error("random_acyclic_bundle: could not hit the size window");
}

inline lgg::GrammarBundle detail_random_acyclic_bundle(std::mt19937& rng) {
    static const std::vector<std::string> words = {"계좌", "이체", "확인", "카드", "은행",
                                                   "앱",   "지금", "빨리", "좀",   "그거"};
    std::uniform_int_distribution<int> levels_dist(0, 2);
    std::uniform_int_distribution<int> fanout_dist(1, 3);
    std::uniform_int_distribution<int> states_dist(2, 12);
    std::uniform_int_distribution<int> word_dist(0, static_cast<int>(words.size()) - 1);
    std::uniform_int_distribution<int> pct(0, 99);

    lgg::GrammarBundle bundle;
    const int levels = levels_dist(rng);
    std::vector<std::vector<std::string>> by_level(static_cast<size_t>(levels) + 1);
    for (int lv = 0; lv <= levels; ++lv) {
        const int graphs = lv == 0 ? 1 : fanout_dist(rng);
        for (int gi = 0; gi < graphs; ++gi)
            by_level[lv].push_back("G" + std::to_string(lv) + "_" + std::to_string(gi));
    }

    static const lgg::Part parts[] = {lgg::Part::TopicEntity, lgg::Part::TopicFeature,
                                      lgg::Part::Event, lgg::Part::DiscourseMarker};
    for (int lv = 0; lv <= levels; ++lv) {
        for (const std::string& name : by_level[lv]) {
            lgg::GrammarGraph g;
            g.name = name;
            g.tags.part = lv == 0 ? lgg::Part::Link : parts[pct(rng) % 4];
            const int n = states_dist(rng);
            for (int i = 0; i < n; ++i) g.states.insert("s" + std::to_string(i));
            g.start = "s0";
            g.finals.insert("s" + std::to_string(n - 1));

            auto add = [&](int from, int to) {
                lgg::Transition t;
                t.from = "s" + std::to_string(from);
                t.to = "s" + std::to_string(to);
                const int roll = pct(rng);
                if (roll < 55 || lv == levels) {
                    if (roll < 15) {
                        t.label.kind = lgg::LabelKind::Epsilon;
                    } else {
                        t.label.kind = lgg::LabelKind::Literal;
                        t.label.surface = words[static_cast<size_t>(word_dist(rng))];
                        if (pct(rng) < 20)
                            t.annotations.push_back(
                                {"entity", "Thing", lgg::AnnScope::Span});
                    }
                } else {
                    t.label.kind = lgg::LabelKind::SubgraphCall;
                    const auto& next = by_level[static_cast<size_t>(lv) + 1];
                    t.label.target = next[static_cast<size_t>(pct(rng)) % next.size()];
                    if (pct(rng) < 25)
                        t.annotations.push_back({"entity", "Thing", lgg::AnnScope::Span});
                }
                if (t.label.kind != lgg::LabelKind::Epsilon && pct(rng) < 15)
                    t.annotations.push_back(
                        {"note", "v" + std::to_string(pct(rng)), lgg::AnnScope::Utterance});
                g.transitions.push_back(std::move(t));
            };

            for (int i = 0; i + 1 < n; ++i) add(i, i + 1); // spine keeps finals reachable
            const int extra = pct(rng) % (n + 1);
            for (int e = 0; e < extra; ++e) {
                int from = pct(rng) % n;
                int to = pct(rng) % n;
                if (from >= to) continue; // forward edges only
                add(from, to);
            }
            bundle.graphs.emplace(name, std::move(g));
        }
    }
    bundle.main = by_level[0][0];
    return bundle;
}

// Random single graph exercising every label kind, both annotation scopes and
// all the optional header tags; used for serializer round-trips.
inline lgg::GrammarGraph random_graph(std::mt19937& rng) {
    static const std::vector<std::string> literals = {
        "계좌", "이체 좀", "quo\"te", "back\\slash", "hash # inside", "26주 적금"};
    std::uniform_int_distribution<int> pct(0, 99);
    std::uniform_int_distribution<int> states_dist(2, 10);

    lgg::GrammarGraph g;
    g.name = "R" + std::to_string(pct(rng));
    static const lgg::Part parts[] = {lgg::Part::TopicEntity, lgg::Part::TopicFeature,
                                      lgg::Part::Event, lgg::Part::DiscourseMarker,
                                      lgg::Part::Link};
    g.tags.part = parts[pct(rng) % 5];
    if (pct(rng) < 60) g.tags.category = "Cat" + std::to_string(pct(rng));
    if (pct(rng) < 40) g.tags.honorific = static_cast<lgg::Honorific>(pct(rng) % 4);
    if (pct(rng) < 40) g.tags.sentence_type = static_cast<lgg::SentenceType>(pct(rng) % 4);
    if (pct(rng) < 40) g.tags.request_type = static_cast<lgg::RequestType>(pct(rng) % 11);
    if (pct(rng) < 30) g.tags.parent = "Parent" + std::to_string(pct(rng));

    const int n = states_dist(rng);
    for (int i = 0; i < n; ++i) g.states.insert("s" + std::to_string(i));
    if (pct(rng) < 30) g.states.insert("iso"); // isolated state, needs a state: line
    g.start = "s0";
    g.finals.insert("s" + std::to_string(n - 1));
    if (pct(rng) < 30) g.finals.insert("s" + std::to_string(1 + pct(rng) % (n - 1)));

    for (int i = 0; i + 1 < n; ++i) {
        lgg::Transition t;
        t.from = "s" + std::to_string(i);
        t.to = "s" + std::to_string(i + 1);
        switch (pct(rng) % 5) {
        case 0:
            t.label.kind = lgg::LabelKind::Epsilon;
            break;
        case 1:
            t.label.kind = lgg::LabelKind::SubgraphCall;
            t.label.target = "Callee" + std::to_string(pct(rng));
            break;
        case 2:
            t.label.kind = lgg::LabelKind::Stem;
            t.label.surface = "하";
            t.label.conj_class = "C" + std::to_string(pct(rng) % 3);
            t.label.attach = pct(rng) < 50;
            break;
        case 3:
            t.label.kind = lgg::LabelKind::Ending;
            t.label.surface = "어 줘";
            break;
        default:
            t.label.kind = lgg::LabelKind::Literal;
            t.label.surface = literals[static_cast<size_t>(pct(rng)) % literals.size()];
            break;
        }
        if (t.label.kind != lgg::LabelKind::Epsilon) {
            if (pct(rng) < 40)
                t.annotations.push_back({"entity", "E" + std::to_string(pct(rng) % 5),
                                         lgg::AnnScope::Span});
            if (pct(rng) < 40)
                t.annotations.push_back({"event_cat", "Ev" + std::to_string(pct(rng) % 5),
                                         lgg::AnnScope::Utterance});
        }
        g.transitions.push_back(std::move(t));
    }
    return g;
}

} // namespace testutil

#endif
