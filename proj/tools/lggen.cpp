// lggen: grammar-driven NLU training data generator.
#include <iostream>

#include "CLI11.hpp"

#include "lgg/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Grammar-graph NLU training data generator"};
    app.require_subcommand(1);

    lgg::cli::Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("grammar_dir", opt.grammar_dir, "Directory scanned recursively for *.lgg and *.conj")
            ->required();
        cmd->add_option("--depth-limit", opt.depth_limit, "Maximum subgraph nesting depth")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* validate = app.add_subcommand("validate", "Check bundle invariants and cycles");
    add_common(validate);

    CLI::App* count = app.add_subcommand("count", "Per-module exact pattern counts");
    add_common(count);
    count->add_option("--module", opt.module, "Restrict to this module's submodule closure");
    std::string report = "text";
    count->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "json"}));

    CLI::App* generate = app.add_subcommand("generate", "Generate annotated training data");
    add_common(generate);
    generate->add_option("--size", opt.size, "Target number of utterances")
        ->check(CLI::PositiveNumber);
    std::string format = "jsonl";
    generate->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"jsonl", "yaml"}));
    generate->add_option("--out", opt.out, "Output file (default stdout)");
    generate->add_option("--honorific", opt.honorific,
                         "Keep these honorific levels (union within the flag, "
                         "intersection with other filter dimensions)");
    generate->add_option("--sentence", opt.sentence, "Keep these sentence types");
    generate->add_option("--request", opt.request, "Keep these request types");
    generate->add_option("--include-module", opt.include_module,
                         "Keep only paths touching these modules (submodule closure)");
    generate->add_option("--exclude-module", opt.exclude_module,
                         "Drop paths touching these modules (submodule closure)");
    generate->add_flag("--all", opt.exhaustive, "Emit every surviving pattern, ignoring --size");
    generate->add_flag("--sample-uniform", opt.sample_uniform,
                       "Uniform random sample instead of top-weight selection");
    generate->add_option("--seed", opt.seed, "Random seed for --sample-uniform");
    generate->add_option("--cache", opt.cache, "Reuse a compile cache when its bundle hash matches");

    CLI::App* compile = app.add_subcommand("compile", "Expand the bundle and write a cache file");
    add_common(compile);
    compile->add_option("--out", opt.cache, "Cache file path (default flatgraph.json)");

    CLI11_PARSE(app, argc, argv);

    opt.report = report == "json" ? lgg::cli::ReportFormat::Json : lgg::cli::ReportFormat::Text;
    opt.format = format == "yaml" ? lgg::cli::OutputFormat::Yaml : lgg::cli::OutputFormat::Jsonl;

    if (validate->parsed()) return lgg::cli::run_validate(opt, std::cout, std::cerr);
    if (count->parsed()) return lgg::cli::run_count(opt, std::cout, std::cerr);
    if (generate->parsed()) return lgg::cli::run_generate(opt, std::cout, std::cerr);
    if (compile->parsed()) return lgg::cli::run_compile(opt, std::cout, std::cerr);
    return lgg::cli::kExitEnv;
}
