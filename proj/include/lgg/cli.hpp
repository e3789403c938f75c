#ifndef LGG_CLI_HPP
#define LGG_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lgg/emitter.hpp"

namespace lgg::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 domain error (diagnostics, cycles, intent/morph
// failures), 2 environment error (I/O, unparseable input).
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitEnv = 2;

enum class OutputFormat { Jsonl, Yaml };
enum class ReportFormat { Text, Json };

struct Options {
    std::string grammar_dir;
    std::string out;              // empty = stdout
    OutputFormat format = OutputFormat::Jsonl;
    ReportFormat report = ReportFormat::Text;
    uint64_t size = 1;
    std::vector<std::string> honorific;
    std::vector<std::string> sentence;
    std::vector<std::string> request;
    std::vector<std::string> include_module;
    std::vector<std::string> exclude_module;
    std::string module; // count: restrict to this module's closure
    int depth_limit = 16;
    bool exhaustive = false;
    bool sample_uniform = false;
    uint64_t seed = 0;
    std::string cache; // compile output / generate reuse path
};

// FNV-1a over the canonical serialization of every graph plus the
// conjugation table; stable across load order.
std::string bundle_hash(const GrammarBundle& bundle);

// Shared generate pipeline: expand -> enumerate -> weight -> select ->
// realize -> annotate -> deduplicate.
struct PipelineResult {
    Dataset dataset;
    uint64_t enumerated = 0; // patterns surviving the filters
    uint64_t selected = 0;   // before deduplication
    WeightContext ctx;
};

PipelineResult run_pipeline(const GrammarBundle& bundle, const GenerationConfig& config,
                            const ExpansionConfig& expansion, bool sample_uniform = false,
                            uint64_t seed = 0, const FlatGraph* precompiled = nullptr);

int run_validate(const Options& opt, std::ostream& out, std::ostream& err);
int run_count(const Options& opt, std::ostream& out, std::ostream& err);
int run_generate(const Options& opt, std::ostream& out, std::ostream& err);
int run_compile(const Options& opt, std::ostream& out, std::ostream& err);

} // namespace lgg::cli

#endif
