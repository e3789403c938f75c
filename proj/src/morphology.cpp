#include "lgg/morphology.hpp"

namespace lgg {

std::string conjugate(const std::string& stem, const std::string& cls,
                      const std::string& ending, const ConjugationTable& table) {
    if (stem.empty() || ending.empty()) throw MorphError("conjugate: empty stem or ending");
    if (!table.empty() && !table.knows_class(cls))
        throw MorphError("unknown conjugation class " + cls);

    const std::u32string stem_j = jamo::decompose(stem);
    const std::u32string end_j = jamo::decompose(ending);

    const ConjugationRule* best = nullptr;
    size_t best_end = 0, best_stem = 0;
    for (const auto& r : table.rules) {
        if (r.cls != cls) continue;
        const std::u32string sj = jamo::decompose(r.stem_suffix);
        const std::u32string ej = jamo::decompose(r.ending_prefix);
        if (!jamo::has_suffix(stem_j, sj) || !jamo::has_prefix(end_j, ej)) continue;
        // longest ending prefix wins, stem suffix breaks ties
        if (!best || ej.size() > best_end || (ej.size() == best_end && sj.size() > best_stem)) {
            best = &r;
            best_end = ej.size();
            best_stem = sj.size();
        }
    }
    if (!best) return stem + ending;

    std::u32string joined = stem_j.substr(0, stem_j.size() - best_stem);
    joined += jamo::decompose(best->joined);
    joined += end_j.substr(best_end);
    return jamo::compose(joined);
}

RealizedText realize(const std::vector<TransitionLabel>& tokens, const ConjugationTable& table) {
    RealizedText out;
    size_t chars = 0;

    auto emit_unit = [&](size_t first, size_t last, const std::string& text, bool attach) {
        if (!out.text.empty() && !attach) {
            out.text += " ";
            ++chars;
        }
        RealizedUnit unit;
        unit.token_first = first;
        unit.token_last = last;
        unit.start_char = chars;
        out.text += text;
        chars += utf8::scalar_count(text);
        unit.end_char = chars;
        out.token_char_spans.push_back(unit);
    };

    for (size_t i = 0; i < tokens.size(); ++i) {
        const TransitionLabel& t = tokens[i];
        switch (t.kind) {
            case LabelKind::Literal:
                emit_unit(i, i, t.surface, false);
                break;
            case LabelKind::Stem: {
                if (i + 1 >= tokens.size() || tokens[i + 1].kind != LabelKind::Ending)
                    throw MorphError("DanglingStem: stem '" + t.surface +
                                     "' has no adjacent ending");
                std::string fused = conjugate(t.surface, t.conj_class, tokens[i + 1].surface, table);
                emit_unit(i, i + 1, fused, t.attach && !out.text.empty());
                ++i; // ending consumed
                break;
            }
            case LabelKind::Ending:
                throw MorphError("DanglingEnding: ending '" + t.surface +
                                 "' has no adjacent stem");
            case LabelKind::Epsilon:
            case LabelKind::SubgraphCall:
                throw MorphError("realize: non-surface token in pattern");
        }
    }
    return out;
}

} // namespace lgg
