#ifndef LGG_COMPILER_HPP
#define LGG_COMPILER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lgg/bigint.hpp"
#include "lgg/grammar.hpp"

#include "json.hpp"

namespace lgg {

struct CycleError : Error {
    std::vector<std::string> chain; // subgraph call chain, outermost first

    CycleError(const std::string& msg, std::vector<std::string> chain_);
};

struct ExpansionConfig {
    int depth_limit = 16; // maximum subgraph call nesting
};

struct FlatTransition {
    uint32_t from = 0;
    uint32_t to = 0;
    TransitionLabel label; // Literal/Epsilon/Stem/Ending only
    std::vector<Annotation> annotations;
    std::string origin;       // graph the transition was copied from
    std::string span_open;    // entity type opened before this transition's token
    std::string span_close;   // entity type closed after it
    std::string module_open;  // inlined graph entered here
    std::string module_close; // inlined graph left here

    bool operator==(const FlatTransition&) const = default;
};

// A single acyclic token graph with all subgraph calls inlined. Entity spans
// and module boundaries survive as balanced open/close markers.
struct FlatGraph {
    uint32_t num_states = 0;
    uint32_t start = 0;
    std::vector<uint32_t> finals;
    std::vector<FlatTransition> transitions;
    std::map<std::string, ModuleTag> tags; // graph name -> tags, for downstream filters

    // adjacency: transition indices leaving each state, in declaration order
    std::vector<std::vector<uint32_t>> out;
    void build_adjacency();

    bool is_final(uint32_t s) const;
};

// Replaces every SubgraphCall with a fresh copy of the callee, recursively.
// A call carrying an entity annotation wraps the copy in span markers.
// Throws CycleError on recursive grammars, internal cycles, or call chains
// deeper than config.depth_limit. Root defaults to bundle.main.
FlatGraph expand(const GrammarBundle& bundle, const ExpansionConfig& config = {},
                 const std::string& root = "");

// Topological order of states; throws CycleError if none exists.
std::vector<uint32_t> topological_order(const FlatGraph& flat);

// Exact number of distinct start->final transition sequences, by dynamic
// programming over a topological order.
BigUint count_paths(const FlatGraph& flat);

// Path count of a single module's own expansion.
BigUint count_module(const GrammarBundle& bundle, const std::string& module,
                     const ExpansionConfig& config = {});

// Textual (JSON) dump used by the compile cache.
nlohmann::ordered_json flat_to_json(const FlatGraph& flat, const std::string& bundle_hash);
FlatGraph flat_from_json(const nlohmann::json& j, std::string* bundle_hash_out = nullptr);

} // namespace lgg

#endif
