// End-to-end verification suite. Each criterion prints exactly one
// pass/fail line; the process exits non-zero if any of them fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "conjugation_goldens.hpp"
#include "helpers.hpp"
#include "lgg/cli.hpp"
#include "lgg/compiler.hpp"
#include "lgg/dsl.hpp"
#include "lgg/emitter.hpp"
#include "lgg/generator.hpp"
#include "lgg/morphology.hpp"

using namespace lgg;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& note = "") {
    std::cout << "criterion " << n << " (" << what << "): " << (ok ? "PASS" : "FAIL");
    if (!note.empty()) std::cout << " [" << note << "]";
    std::cout << "\n";
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const GrammarBundle& pack() {
    static GrammarBundle b = load_bundle(LGG_SAMPLE_PACK);
    return b;
}

const FlatGraph& pack_flat() {
    static FlatGraph f = expand(pack());
    return f;
}

// ---------------------------------------------------------------------------

void criterion_1_weight_exactness() {
    auto t0 = Clock::now();
    bool ok = true;
    const struct { int syl_max, syl_n; double expected; } cases[] = {
        {10, 10, 0.0}, {10, 9, 1.0}, {10, 3, 3.0}, {5, 2, 2.0}};
    for (const auto& c : cases)
        ok &= std::fabs(dm_weight(c.syl_n, WeightContext{c.syl_max}) - c.expected) < 1e-12;

    for (int syl_max = 1; syl_max <= 64 && ok; ++syl_max) {
        WeightContext ctx{syl_max};
        double prev = dm_weight(0, ctx);
        for (int n = 1; n <= syl_max; ++n) {
            double w = dm_weight(n, ctx);
            ok &= w < prev;
            prev = w;
        }
        ok &= dm_weight(syl_max, ctx) == 0.0;
    }
    double elapsed = seconds_since(t0);
    ok &= elapsed < 1.0;
    std::ostringstream note;
    note << "pinned values exact to 1e-12, monotone for syl_max 1..64, " << elapsed << "s < 1s";
    report(1, "expression weight exactness", ok, note.str());
}

void criterion_2_path_count_oracle() {
    auto t0 = Clock::now();
    std::mt19937 rng(20240824);
    bool ok = true;
    const int bundles = 150;
    for (int i = 0; i < bundles && ok; ++i) {
        GrammarBundle b = testutil::random_acyclic_bundle(rng);
        FlatGraph flat = expand(b);
        uint64_t oracle = testutil::oracle_count(b);
        ok &= count_paths(flat).to_u64_saturating() == oracle;
        ok &= enumerate_all(flat, GenerationConfig{}).size() == oracle;
    }
    double elapsed = seconds_since(t0);
    ok &= elapsed < 30.0;
    std::ostringstream note;
    note << bundles << " random bundles, DP == oracle == enumeration, " << elapsed << "s < 30s";
    report(2, "path counts agree on random bundles", ok, note.str());
}

void criterion_3_path_shapes() {
    // (text, intent) pairs, one per linking-graph path shape
    const std::vector<std::pair<std::string, std::string>> targets = {
        {"카카오 뱅크 계좌 개설해 줘", "AccountCreate.Demand"},          // topic+event+marker
        {"카카오 뱅크 계좌 개설해 줘", "AccountCreate.request_action"},  // marker ellipsis
        {"어떻게 계좌 개설하는지 알려 줘", "AccountCreate.Method"},      // discontinuous marker
        {"계좌 어디서 확인할 수 있어?", "request_information.Location"}, // event-less
    };
    std::set<std::pair<std::string, std::string>> seen;
    bool rules_ok = true;
    enumerate_patterns(pack_flat(), GenerationConfig{}, [&](UtterancePattern&& p) {
        std::string text = realize(p.tokens, pack().conjugation).text;
        std::string intent = resolve_intent(p);
        if (p.dm_graph.empty())
            rules_ok &= intent.size() > 15 &&
                        intent.compare(intent.size() - 15, 15, ".request_action") == 0;
        if (!p.has_event) rules_ok &= intent.rfind("request_information.", 0) == 0;
        for (const auto& t : targets)
            if (t.first == text && t.second == intent) seen.insert(t);
    });
    bool ok = rules_ok && seen.size() == targets.size();
    std::ostringstream note;
    note << seen.size() << "/4 expected utterances found, ellipsis and event-less "
         << (rules_ok ? "defaults hold" : "defaults VIOLATED");
    report(3, "linking path shapes", ok, note.str());
}

void criterion_4_volume_and_spans() {
    GenerationConfig cfg;
    cfg.target_size = 12000;
    cli::PipelineResult r = cli::run_pipeline(pack(), cfg, ExpansionConfig{});

    std::set<std::pair<std::string, std::string>> distinct;
    size_t valid_spans = 0, total_spans = 0;
    for (const auto& ex : r.dataset.examples) {
        distinct.insert({ex.text, ex.intent});
        size_t len = utf8::scalar_count(ex.text);
        for (const auto& e : ex.entities) {
            ++total_spans;
            if (e.start < e.end && e.end <= len &&
                utf8::scalar_substr(ex.text, e.start, e.end) == e.value)
                ++valid_spans;
        }
    }
    bool ok = distinct.size() >= 10000 && distinct.size() == r.dataset.examples.size() &&
              valid_spans == total_spans && total_spans > 0;
    std::ostringstream note;
    note << distinct.size() << " distinct examples, " << valid_spans << "/" << total_spans
         << " spans valid";
    report(4, "generation volume and span validity", ok, note.str());
}

void criterion_5_filter_purity() {
    bool ok = true;
    size_t checked = 0;
    for (int h = 0; h < 4; ++h) {
        GenerationConfig cfg;
        cfg.honorific_filter = {static_cast<Honorific>(h)};
        for (const auto& p : enumerate_all(pack_flat(), cfg)) {
            ok &= p.tags.honorific == static_cast<Honorific>(h);
            ++checked;
        }
    }
    for (int s = 0; s < 4; ++s) {
        GenerationConfig cfg;
        cfg.sentence_filter = {static_cast<SentenceType>(s)};
        for (const auto& p : enumerate_all(pack_flat(), cfg)) {
            ok &= p.tags.sentence_type == static_cast<SentenceType>(s);
            ++checked;
        }
    }
    for (int q = 0; q < 11; ++q) {
        GenerationConfig cfg;
        cfg.request_filter = {static_cast<RequestType>(q)};
        for (const auto& p : enumerate_all(pack_flat(), cfg)) {
            ok &= p.tags.request_type == static_cast<RequestType>(q);
            ++checked;
        }
    }
    ok &= checked > 0;
    std::ostringstream note;
    note << checked << " filtered patterns, every one carries the requested tag";
    report(5, "speech-style filter purity", ok, note.str());
}

void criterion_6_selection_prefix() {
    GenerationConfig all;
    auto patterns = enumerate_all(pack_flat(), all);
    WeightContext ctx = compute_syl_max(pack_flat(), all);
    std::vector<size_t> lengths(patterns.size());
    for (size_t i = 0; i < patterns.size(); ++i)
        lengths[i] = utf8::scalar_count(realize(patterns[i].tokens, pack().conjugation).text);

    std::vector<size_t> brute(patterns.size());
    for (size_t i = 0; i < brute.size(); ++i) brute[i] = i;
    std::sort(brute.begin(), brute.end(), [&](size_t a, size_t b) {
        double wa = pattern_weight(patterns[a], ctx), wb = pattern_weight(patterns[b], ctx);
        if (wa != wb) return wa > wb;
        if (lengths[a] != lengths[b]) return lengths[a] < lengths[b];
        return patterns[a].index < patterns[b].index;
    });

    bool ok = true;
    std::vector<size_t> prev;
    for (uint64_t k : {uint64_t{1}, uint64_t{10}, uint64_t{100}, uint64_t{1000}}) {
        auto picked = select_top(patterns, ctx, k, [&](size_t i) { return lengths[i]; });
        ok &= picked.size() == std::min<size_t>(k, patterns.size());
        for (size_t i = 0; i < picked.size() && ok; ++i) ok &= picked[i] == brute[i];
        for (size_t i = 0; i < prev.size() && ok; ++i) ok &= picked[i] == prev[i];
        prev = picked;
    }
    report(6, "top-weight selection equals full-sort prefix", ok,
           "k in {1,10,100,1000}, prefixes stable");
}

void criterion_7_round_trips() {
    bool dsl_ok = true;
    std::mt19937 rng(777);
    for (int i = 0; i < 100; ++i) {
        GrammarGraph g = testutil::random_graph(rng);
        GrammarGraph back = parse_grammar_file(SourceFile{"<rt>", serialize_grammar(g)});
        dsl_ok &= back == g;
    }

    GenerationConfig cfg;
    cfg.target_size = 2000;
    cli::PipelineResult r = cli::run_pipeline(pack(), cfg, ExpansionConfig{});

    std::ostringstream jsonl;
    emit_jsonl(r.dataset, jsonl);
    std::istringstream in(jsonl.str());
    Dataset back = parse_jsonl(in);
    bool jsonl_ok = back.examples.size() == r.dataset.examples.size();
    for (size_t i = 0; i < back.examples.size() && jsonl_ok; ++i)
        jsonl_ok &= back.examples[i] == r.dataset.examples[i];

    bool yaml_ok = true;
    for (const auto& ex : r.dataset.examples) {
        auto [text, entities] = parse_markup_line(markup_line(ex));
        yaml_ok &= text == ex.text && entities.size() == ex.entities.size();
        for (size_t i = 0; i < entities.size() && yaml_ok; ++i)
            yaml_ok &= entities[i].start == ex.entities[i].start &&
                       entities[i].end == ex.entities[i].end &&
                       entities[i].entity_type == ex.entities[i].entity_type &&
                       entities[i].value == ex.entities[i].value;
    }

    bool ok = dsl_ok && jsonl_ok && yaml_ok;
    std::ostringstream note;
    note << "100 random graphs " << (dsl_ok ? "round-trip" : "FAIL") << ", jsonl "
         << (jsonl_ok ? "parses back" : "FAIL") << ", markup " << (yaml_ok ? "reconstructs" : "FAIL");
    report(7, "serialization round-trips", ok, note.str());
}

void criterion_8_conjugation_goldens() {
    bool ok = true;
    size_t n = 0;
    for (const auto& c : testutil::conjugation_goldens()) {
        std::string got = conjugate(c.stem, c.cls, c.ending, pack().conjugation);
        if (got != c.expected) {
            ok = false;
            std::cerr << "  golden miss: " << c.stem << "+" << c.ending << " -> " << got
                      << " expected " << c.expected << "\n";
        }
        ++n;
    }
    ConjugationTable empty;
    ok &= conjugate("먹", "REG", "어", empty) == "먹어";
    ok &= conjugate("하", "ANYTHING", "다", empty) == "하다";
    std::ostringstream note;
    note << n << " goldens plus empty-table identity";
    report(8, "conjugation goldens", ok, note.str());
}

void criterion_9_determinism() {
    GenerationConfig cfg;
    cfg.target_size = 100000;

    auto run_once = [&](double* elapsed) {
        auto t0 = Clock::now();
        cli::PipelineResult r = cli::run_pipeline(pack(), cfg, ExpansionConfig{});
        std::ostringstream out;
        emit_jsonl(r.dataset, out);
        *elapsed = seconds_since(t0);
        return out.str();
    };
    double t1 = 0, t2 = 0;
    std::string a = run_once(&t1);
    std::string b = run_once(&t2);
    bool ok = a == b && !a.empty() && t1 < 10.0 && t2 < 10.0;
    std::ostringstream note;
    note << "size 100000 twice, byte-identical, " << t1 << "s / " << t2 << "s (< 10s each)";
    report(9, "repeat-run determinism", ok, note.str());
}

void criterion_10_large_counts() {
    // 17 chained calls into a six-alternative leaf: 6^17 paths
    GrammarBundle b;
    GrammarGraph main;
    main.name = "Main";
    main.tags.part = Part::Link;
    main.start = "s0";
    for (int i = 0; i <= 17; ++i) main.states.insert("s" + std::to_string(i));
    main.finals = {"s17"};
    for (int i = 0; i < 17; ++i) {
        Transition t;
        t.from = "s" + std::to_string(i);
        t.to = "s" + std::to_string(i + 1);
        t.label.kind = LabelKind::SubgraphCall;
        t.label.target = "Leaf";
        main.transitions.push_back(std::move(t));
    }
    b.graphs.emplace("Main", std::move(main));

    GrammarGraph leaf;
    leaf.name = "Leaf";
    leaf.tags.part = Part::Event;
    leaf.states = {"s0", "s1"};
    leaf.start = "s0";
    leaf.finals = {"s1"};
    for (int i = 0; i < 6; ++i) {
        Transition t;
        t.from = "s0";
        t.to = "s1";
        t.label.kind = LabelKind::Literal;
        t.label.surface = "w" + std::to_string(i);
        leaf.transitions.push_back(std::move(t));
    }
    b.graphs.emplace("Leaf", std::move(leaf));
    b.main = "Main";

    BigUint n = count_paths(expand(b, ExpansionConfig{32}));
    BigUint threshold = 1;
    for (int i = 0; i < 13; ++i) threshold.mul_small(10);
    bool ok = n.to_string() == "16926659444736" && threshold < n;
    report(10, "exact counting beyond 10^13", ok, "6^17 = " + n.to_string());
}

} // namespace

int main() {
    try {
        criterion_1_weight_exactness();
        criterion_2_path_count_oracle();
        criterion_3_path_shapes();
        criterion_4_volume_and_spans();
        criterion_5_filter_purity();
        criterion_6_selection_prefix();
        criterion_7_round_trips();
        criterion_8_conjugation_goldens();
        criterion_9_determinism();
        criterion_10_large_counts();
    } catch (const std::exception& e) {
        std::cerr << "unexpected exception: " << e.what() << "\n";
        return 1;
    }
    if (failures != 0) {
        std::cerr << failures << " criteria failed\n";
        return 1;
    }
    return 0;
}
