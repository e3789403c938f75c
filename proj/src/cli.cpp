#include "lgg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "lgg/compiler.hpp"
#include "lgg/dsl.hpp"

#include "json.hpp"

namespace lgg::cli {

std::string bundle_hash(const GrammarBundle& bundle) {
    uint64_t h = 1469598103934665603ULL; // FNV-1a 64
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= 0x1f;
        h *= 1099511628211ULL;
    };
    for (const auto& [name, g] : bundle.graphs) mix(serialize_grammar(g));
    mix(serialize_conjugation(bundle.conjugation));

    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

namespace {

std::string config_echo(const GenerationConfig& c) {
    std::ostringstream out;
    out << "size=" << c.target_size;
    auto join = [&](const char* key, auto&& items, auto&& name) {
        if (items.empty()) return;
        out << ";" << key << "=";
        bool first = true;
        for (const auto& v : items) {
            if (!first) out << ",";
            out << name(v);
            first = false;
        }
    };
    join("honorific", c.honorific_filter, [](Honorific h) { return to_string(h); });
    join("sentence", c.sentence_filter, [](SentenceType s) { return to_string(s); });
    join("request", c.request_filter, [](RequestType r) { return to_string(r); });
    join("include", c.module_include, [](const std::string& s) { return s.c_str(); });
    join("exclude", c.module_exclude, [](const std::string& s) { return s.c_str(); });
    out << ";mode=" << (c.mode == GenMode::ExhaustiveAll ? "all" : "top-weight");
    return out.str();
}

GenerationConfig make_config(const Options& opt, std::string* bad_value) {
    GenerationConfig c;
    c.target_size = opt.size;
    c.mode = opt.exhaustive ? GenMode::ExhaustiveAll : GenMode::TopWeight;
    c.module_include = opt.include_module;
    c.module_exclude = opt.exclude_module;
    for (const auto& s : opt.honorific) {
        auto v = parse_honorific(s);
        if (!v) { *bad_value = "honorific " + s; return c; }
        c.honorific_filter.insert(*v);
    }
    for (const auto& s : opt.sentence) {
        auto v = parse_sentence_type(s);
        if (!v) { *bad_value = "sentence type " + s; return c; }
        c.sentence_filter.insert(*v);
    }
    for (const auto& s : opt.request) {
        auto v = parse_request_type(s);
        if (!v) { *bad_value = "request type " + s; return c; }
        c.request_filter.insert(*v);
    }
    return c;
}

} // namespace

PipelineResult run_pipeline(const GrammarBundle& bundle, const GenerationConfig& config,
                            const ExpansionConfig& expansion, bool sample_uniform, uint64_t seed,
                            const FlatGraph* precompiled) {
    PipelineResult result;
    FlatGraph expanded;
    const FlatGraph* flat = precompiled;
    if (!flat) {
        expanded = expand(bundle, expansion);
        flat = &expanded;
    }

    std::vector<UtterancePattern> patterns = enumerate_all(*flat, config);
    result.enumerated = patterns.size();

    std::vector<RealizedText> realized;
    realized.reserve(patterns.size());
    std::vector<size_t> lengths;
    lengths.reserve(patterns.size());
    int syl_max = 0;
    for (const auto& p : patterns) {
        realized.push_back(realize(p.tokens, bundle.conjugation));
        lengths.push_back(utf8::scalar_count(realized.back().text));
        syl_max = std::max(syl_max, p.dm_syllables);
    }
    result.ctx.syl_max = std::max(syl_max, 1);

    std::vector<size_t> picked;
    if (config.mode == GenMode::ExhaustiveAll) {
        picked.resize(patterns.size());
        std::iota(picked.begin(), picked.end(), size_t{0});
    } else if (sample_uniform) {
        picked.resize(patterns.size());
        std::iota(picked.begin(), picked.end(), size_t{0});
        std::mt19937_64 rng(seed);
        std::shuffle(picked.begin(), picked.end(), rng);
        picked.resize(std::min<uint64_t>(config.target_size, picked.size()));
        std::sort(picked.begin(), picked.end()); // canonical order within the sample
    } else {
        picked = select_top(patterns, result.ctx, config.target_size,
                            [&](size_t i) { return lengths[i]; });
    }
    result.selected = picked.size();

    result.dataset.bundle_hash = bundle_hash(bundle);
    result.dataset.config_echo = config_echo(config);
    result.dataset.tool_version = kToolVersion;
    result.dataset.examples.reserve(picked.size());
    for (size_t i : picked)
        result.dataset.examples.push_back(
            build_example(patterns[i], realized[i], pattern_weight(patterns[i], result.ctx)));
    deduplicate(result.dataset.examples);
    return result;
}

namespace {

// Loads and validates; on failure prints and fills *exit_code.
std::optional<GrammarBundle> load_checked(const Options& opt, std::ostream& out,
                                          std::ostream& err, int* exit_code) {
    GrammarBundle bundle;
    try {
        bundle = load_bundle(opt.grammar_dir);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        *exit_code = kExitEnv;
        return std::nullopt;
    } catch (const Error& e) {
        err << e.what() << "\n";
        *exit_code = kExitEnv;
        return std::nullopt;
    }
    auto diagnostics = validate_bundle(bundle);
    if (!diagnostics.empty()) {
        for (const auto& d : diagnostics) out << d.to_string() << "\n";
        out << diagnostics.size() << " diagnostics\n";
        *exit_code = kExitDomain;
        return std::nullopt;
    }
    return bundle;
}

} // namespace

int run_validate(const Options& opt, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    auto bundle = load_checked(opt, out, err, &code);
    if (!bundle) return code;
    try {
        expand(*bundle, ExpansionConfig{opt.depth_limit}); // cycle detection
    } catch (const CycleError& e) {
        out << "CycleError: " << e.what() << "\n";
        out << "1 diagnostics\n";
        return kExitDomain;
    }
    out << "0 diagnostics\n";
    return kExitOk;
}

int run_count(const Options& opt, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    auto bundle = load_checked(opt, out, err, &code);
    if (!bundle) return code;

    std::set<std::string> wanted;
    if (!opt.module.empty()) {
        try {
            wanted = submodule_closure(*bundle, opt.module);
        } catch (const Error& e) {
            err << e.what() << "\n";
            return kExitDomain;
        }
    }

    ExpansionConfig expansion{opt.depth_limit};
    try {
        nlohmann::ordered_json report = nlohmann::ordered_json::array();
        for (const auto& [name, g] : bundle->graphs) {
            if (!wanted.empty() && !wanted.count(name)) continue;
            BigUint n = count_module(*bundle, name, expansion);
            if (opt.report == ReportFormat::Json) {
                nlohmann::ordered_json row;
                row["module"] = name;
                row["part"] = to_string(g.tags.part);
                row["parent"] = g.tags.parent;
                row["patterns"] = n.to_string();
                report.push_back(std::move(row));
            } else {
                out << name << "\t" << to_string(g.tags.part) << "\t"
                    << (g.tags.parent.empty() ? "-" : g.tags.parent) << "\t" << n.to_string()
                    << "\n";
            }
        }
        BigUint total = count_module(*bundle, bundle->main, expansion);
        if (opt.report == ReportFormat::Json) {
            nlohmann::ordered_json j;
            j["modules"] = std::move(report);
            j["total"] = total.to_string();
            out << j.dump(2) << "\n";
        } else {
            out << "total\t" << total.to_string() << "\n";
        }
    } catch (const CycleError& e) {
        err << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}

int run_generate(const Options& opt, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    auto bundle = load_checked(opt, out, err, &code);
    if (!bundle) return code;

    std::string bad;
    GenerationConfig config = make_config(opt, &bad);
    if (!bad.empty()) {
        err << "unknown " << bad << "\n";
        return kExitEnv;
    }

    // optional compile-cache reuse; stale caches are regenerated
    FlatGraph cached;
    const FlatGraph* precompiled = nullptr;
    if (!opt.cache.empty()) {
        std::ifstream in(opt.cache, std::ios::binary);
        if (in) {
            try {
                std::string hash;
                cached = flat_from_json(nlohmann::json::parse(in), &hash);
                if (hash == bundle_hash(*bundle)) precompiled = &cached;
                else err << "warning: stale cache " << opt.cache << ", regenerating\n";
            } catch (const std::exception& e) {
                err << "warning: unreadable cache " << opt.cache << " (" << e.what()
                    << "), regenerating\n";
            }
        }
    }

    PipelineResult result;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        result = run_pipeline(*bundle, config, ExpansionConfig{opt.depth_limit},
                              opt.sample_uniform, opt.seed, precompiled);
    } catch (const CycleError& e) {
        err << e.what() << "\n";
        return kExitDomain;
    } catch (const IntentError& e) {
        err << e.what() << "\n";
        return kExitDomain;
    } catch (const MorphError& e) {
        err << e.what() << "\n";
        return kExitDomain;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);

    try {
        auto emit = [&](std::ostream& sink) {
            return opt.format == OutputFormat::Yaml ? emit_yaml(result.dataset, sink)
                                                    : emit_jsonl(result.dataset, sink);
        };
        if (opt.out.empty()) {
            emit(out);
        } else {
            std::ofstream sink(opt.out, std::ios::binary);
            if (!sink) throw Error("cannot write " + opt.out);
            emit(sink);
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitEnv;
    }

    std::ostream& summary = opt.out.empty() ? err : out;
    summary << "requested " << opt.size << ", enumerated " << result.enumerated << ", emitted "
            << result.dataset.examples.size() << " after dedup, syl_max " << result.ctx.syl_max
            << ", elapsed " << elapsed.count() << " ms\n";
    if (result.dataset.examples.size() < result.selected)
        summary << "warning: deduplication removed "
                << result.selected - result.dataset.examples.size() << " examples\n";
    return kExitOk;
}

int run_compile(const Options& opt, std::ostream& out, std::ostream& err) {
    int code = kExitOk;
    auto bundle = load_checked(opt, out, err, &code);
    if (!bundle) return code;

    std::string path = !opt.cache.empty() ? opt.cache : (!opt.out.empty() ? opt.out : "flatgraph.json");
    try {
        FlatGraph flat = expand(*bundle, ExpansionConfig{opt.depth_limit});
        BigUint paths = count_paths(flat);

        std::ofstream sink(path, std::ios::binary);
        if (!sink) {
            err << "cannot write " << path << "\n";
            return kExitEnv;
        }
        sink << flat_to_json(flat, bundle_hash(*bundle)).dump() << "\n";
        if (!sink) {
            err << "write failure on " << path << "\n";
            return kExitEnv;
        }

        out << "states\t" << flat.num_states << "\n";
        out << "transitions\t" << flat.transitions.size() << "\n";
        out << "paths\t" << paths.to_string() << "\n";
        out << "cache\t" << path << "\n";
    } catch (const CycleError& e) {
        err << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}

} // namespace lgg::cli
