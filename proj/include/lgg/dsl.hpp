#ifndef LGG_DSL_HPP
#define LGG_DSL_HPP

#include <filesystem>
#include <string>

#include "lgg/grammar.hpp"

namespace lgg {

struct SourceFile {
    std::string path;
    std::string content;

    static SourceFile from_file(const std::filesystem::path& p);
};

struct ParseError : Error {
    std::string path;
    int line = 0; // 1-based
    int col = 0;  // 1-based
    std::string message;

    ParseError(std::string path_, int line_, int col_, std::string message_);
};

// .lgg text -> graph. One graph per file:
//   graph NAME part=EVENT [category=C] [honorific=H] [sentence=S] [request=R] [parent=P]
//   start: s0
//   final: s1,s2
//   [state: s3]
//   s0 -> s1 "literal" | :Subgraph | EPS | STEM(surface,CLASS[,attach]) | END(surface)
//       with optional {key=value} annotation blocks; # starts a comment.
GrammarGraph parse_grammar_file(const SourceFile& source);

// .conj text -> rule table. One rule per line: `CLASS: X + Y -> Z`;
// `class NAME` declares a class with no rules.
ConjugationTable parse_conjugation_table(const SourceFile& source);

// Deterministic textual form; parse_grammar_file(serialize_grammar(g)) == g.
std::string serialize_grammar(const GrammarGraph& graph);

std::string serialize_conjugation(const ConjugationTable& table);

// Scans `dir` recursively for *.lgg and *.conj, parses everything, and picks
// the unique LINK-part graph as main. Throws ParseError/Error on failure.
GrammarBundle load_bundle(const std::filesystem::path& dir);

} // namespace lgg

#endif
