#include "lgg/dsl.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lgg/utf8.hpp"

namespace lgg {

SourceFile SourceFile::from_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return SourceFile{p.string(), buf.str()};
}

ParseError::ParseError(std::string path_, int line_, int col_, std::string message_)
    : Error(path_ + ":" + std::to_string(line_) + ":" + std::to_string(col_) + ": " + message_),
      path(std::move(path_)), line(line_), col(col_), message(std::move(message_)) {}

namespace {

std::vector<std::string> split_lines(const std::string& content) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : content) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    lines.push_back(std::move(cur));
    return lines;
}

bool is_ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

// Line scanner with scalar-accurate error columns.
class LineScanner {
public:
    LineScanner(const SourceFile& src, int line_no, std::string line)
        : src_(src), line_no_(line_no), line_(std::move(line)) {}

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(size_t byte_pos, const std::string& msg) const {
        size_t col = utf8::scalar_count(std::string_view(line_).substr(0, byte_pos)) + 1;
        throw ParseError(src_.path, line_no_, static_cast<int>(col), msg);
    }

    void skip_ws() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= line_.size();
    }

    char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }
    size_t pos() const { return pos_; }

    bool consume(char c) {
        skip_ws();
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    bool consume_word(std::string_view w) {
        skip_ws();
        if (line_.compare(pos_, w.size(), w) == 0) {
            size_t after = pos_ + w.size();
            if (after >= line_.size() || !is_ident_char(line_[after])) {
                pos_ = after;
                return true;
            }
        }
        return false;
    }

    std::string ident(const std::string& what) {
        skip_ws();
        if (pos_ >= line_.size() || !is_ident_start(line_[pos_])) fail("expected " + what);
        size_t begin = pos_;
        while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
        return line_.substr(begin, pos_ - begin);
    }

    std::string quoted() { // leading '"' already consumed
        std::string out;
        while (pos_ < line_.size()) {
            char c = line_[pos_++];
            if (c == '"') return out;
            if (c == '\\') {
                if (pos_ >= line_.size()) fail("unterminated escape");
                char e = line_[pos_++];
                if (e != '"' && e != '\\') fail("unknown escape \\" + std::string(1, e));
                out.push_back(e);
            } else {
                out.push_back(c);
            }
        }
        fail("unterminated string literal");
    }

    std::string until(char stop, const std::string& what) {
        size_t begin = pos_;
        while (pos_ < line_.size() && line_[pos_] != stop) ++pos_;
        if (pos_ >= line_.size()) fail_at(begin, "missing '" + std::string(1, stop) + "' in " + what);
        return line_.substr(begin, pos_++ - begin);
    }

private:
    const SourceFile& src_;
    int line_no_;
    std::string line_;
    size_t pos_ = 0;
};

// Strips a trailing comment; '#' inside a quoted literal does not count.
std::string strip_comment(const std::string& line) {
    bool in_quote = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '\\' && in_quote) { ++i; continue; }
        if (c == '"') in_quote = !in_quote;
        else if (c == '#' && !in_quote) return line.substr(0, i);
    }
    return line;
}

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t") == std::string::npos;
}

void check_utf8(const SourceFile& src) {
    if (utf8::valid(src.content)) return;
    // locate the first bad byte for the report
    size_t pos = 0;
    char32_t cp;
    while (pos < src.content.size() && utf8::decode_one(src.content, pos, cp)) {}
    int line = 1;
    size_t line_start = 0;
    for (size_t i = 0; i < pos; ++i)
        if (src.content[i] == '\n') { ++line; line_start = i + 1; }
    size_t col = 1;
    try {
        col = utf8::scalar_count(std::string_view(src.content).substr(line_start, pos - line_start)) + 1;
    } catch (const Error&) {
        col = pos - line_start + 1;
    }
    throw ParseError(src.path, line, static_cast<int>(col), "invalid UTF-8");
}

Annotation parse_annotation(LineScanner& sc) {
    Annotation a;
    a.key = sc.ident("annotation key");
    if (!sc.consume('=')) sc.fail("expected '=' in annotation");
    std::string value = sc.until('}', "annotation");
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
    size_t begin = value.find_first_not_of(" \t");
    a.value = begin == std::string::npos ? "" : value.substr(begin);
    if (a.value.empty()) sc.fail("empty annotation value");
    a.scope = scope_for_key(a.key);
    return a;
}

void parse_header(LineScanner& sc, GrammarGraph& g) {
    if (!sc.consume_word("graph")) sc.fail("expected 'graph' header");
    g.name = sc.ident("graph name");
    bool have_part = false;
    while (!sc.at_end()) {
        size_t key_pos = sc.pos();
        std::string key = sc.ident("header key");
        if (!sc.consume('=')) sc.fail("expected '=' after header key " + key);
        std::string value = sc.ident("header value");
        if (key == "part") {
            auto p = parse_part(value);
            if (!p) sc.fail_at(key_pos, "unknown part " + value);
            g.tags.part = *p;
            have_part = true;
        } else if (key == "category") {
            g.tags.category = value;
        } else if (key == "honorific") {
            auto h = parse_honorific(value);
            if (!h) sc.fail_at(key_pos, "unknown honorific " + value);
            g.tags.honorific = h;
        } else if (key == "sentence") {
            auto s = parse_sentence_type(value);
            if (!s) sc.fail_at(key_pos, "unknown sentence type " + value);
            g.tags.sentence_type = s;
        } else if (key == "request") {
            auto r = parse_request_type(value);
            if (!r) sc.fail_at(key_pos, "unknown request type " + value);
            g.tags.request_type = r;
        } else if (key == "parent") {
            g.tags.parent = value;
        } else {
            sc.fail_at(key_pos, "unknown header key " + key);
        }
    }
    if (!have_part) sc.fail("header is missing part=");
}

TransitionLabel parse_label(LineScanner& sc) {
    TransitionLabel l;
    sc.skip_ws();
    if (sc.consume('"')) {
        l.kind = LabelKind::Literal;
        l.surface = sc.quoted();
        if (l.surface.empty()) sc.fail("empty literal");
        return l;
    }
    if (sc.consume(':')) {
        l.kind = LabelKind::SubgraphCall;
        l.target = sc.ident("subgraph name");
        return l;
    }
    if (sc.consume_word("EPS")) {
        l.kind = LabelKind::Epsilon;
        return l;
    }
    if (sc.consume_word("STEM")) {
        if (!sc.consume('(')) sc.fail("expected '(' after STEM");
        std::string body = sc.until(')', "STEM label");
        std::vector<std::string> parts;
        size_t start = 0;
        while (true) {
            size_t comma = body.find(',', start);
            parts.push_back(body.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (parts.size() < 2 || parts.size() > 3) sc.fail("STEM expects (surface,CLASS[,attach])");
        l.kind = LabelKind::Stem;
        l.surface = parts[0];
        l.conj_class = parts[1];
        if (parts.size() == 3) {
            if (parts[2] != "attach") sc.fail("unknown STEM flag " + parts[2]);
            l.attach = true;
        }
        if (l.surface.empty()) sc.fail("empty stem surface");
        if (l.conj_class.empty()) sc.fail("empty conjugation class");
        return l;
    }
    if (sc.consume_word("END")) {
        if (!sc.consume('(')) sc.fail("expected '(' after END");
        l.kind = LabelKind::Ending;
        l.surface = sc.until(')', "END label");
        if (l.surface.empty()) sc.fail("empty ending surface");
        return l;
    }
    sc.fail("unknown label kind");
}

} // namespace

GrammarGraph parse_grammar_file(const SourceFile& source) {
    check_utf8(source);
    GrammarGraph g;
    bool have_header = false, have_start = false, have_final = false;
    std::set<std::string> declared;

    const auto lines = split_lines(source.content);
    int line_no = 0;
    for (const auto& raw : lines) {
        ++line_no;
        std::string line = strip_comment(raw);
        if (blank(line)) continue;
        LineScanner sc(source, line_no, line);

        if (!have_header) {
            parse_header(sc, g);
            have_header = true;
            continue;
        }
        if (sc.consume_word("start")) {
            if (!sc.consume(':')) sc.fail("expected ':' after start");
            if (have_start) sc.fail("duplicate start declaration");
            g.start = sc.ident("state id");
            have_start = true;
            if (!sc.at_end()) sc.fail("trailing input after start declaration");
            continue;
        }
        if (sc.consume_word("final")) {
            if (!sc.consume(':')) sc.fail("expected ':' after final");
            if (have_final) sc.fail("duplicate final declaration");
            do {
                g.finals.insert(sc.ident("state id"));
            } while (sc.consume(','));
            have_final = true;
            if (!sc.at_end()) sc.fail("trailing input after final declaration");
            continue;
        }
        if (sc.consume_word("state")) {
            if (!sc.consume(':')) sc.fail("expected ':' after state");
            std::string id = sc.ident("state id");
            if (!declared.insert(id).second) sc.fail("duplicate state declaration " + id);
            g.states.insert(id);
            if (!sc.at_end()) sc.fail("trailing input after state declaration");
            continue;
        }

        // transition: sFROM -> sTO LABEL with {key=value} blocks on either side
        Transition t;
        t.from = sc.ident("state id");
        if (!sc.consume('-') || !sc.consume('>')) sc.fail("expected '->'");
        t.to = sc.ident("state id");
        bool have_label = false;
        while (!sc.at_end()) {
            if (sc.consume('{')) {
                t.annotations.push_back(parse_annotation(sc));
            } else {
                if (have_label) sc.fail("more than one label on a transition");
                t.label = parse_label(sc);
                have_label = true;
            }
        }
        if (!have_label) sc.fail("transition is missing a label");
        if (t.label.kind == LabelKind::Epsilon && !t.annotations.empty())
            sc.fail("annotation on an epsilon transition");
        g.transitions.push_back(std::move(t));
    }

    if (!have_header)
        throw ParseError(source.path, line_no, 1, "missing graph header");
    if (!have_start)
        throw ParseError(source.path, line_no, 1, "missing start declaration");
    if (!have_final)
        throw ParseError(source.path, line_no, 1, "missing final declaration");

    g.states.insert(g.start);
    for (const auto& f : g.finals) g.states.insert(f);
    for (const auto& t : g.transitions) {
        g.states.insert(t.from);
        g.states.insert(t.to);
    }
    return g;
}

ConjugationTable parse_conjugation_table(const SourceFile& source) {
    check_utf8(source);
    ConjugationTable table;
    std::set<std::string> keys;

    const auto lines = split_lines(source.content);
    int line_no = 0;
    for (const auto& raw : lines) {
        ++line_no;
        std::string line = strip_comment(raw);
        if (blank(line)) continue;
        size_t begin = line.find_first_not_of(" \t");
        size_t end = line.find_last_not_of(" \t");
        line = line.substr(begin, end - begin + 1);

        if (line.rfind("class ", 0) == 0) {
            std::string name = line.substr(6);
            if (name.empty() || name.find(' ') != std::string::npos)
                throw ParseError(source.path, line_no, 1, "malformed class declaration");
            table.declared_classes.insert(name);
            continue;
        }

        size_t colon = line.find(": ");
        if (colon == std::string::npos)
            throw ParseError(source.path, line_no, 1, "expected 'CLASS: X + Y -> Z'");
        ConjugationRule rule;
        rule.cls = line.substr(0, colon);
        std::string rest = line.substr(colon + 2);
        size_t plus = rest.find(" + ");
        if (plus == std::string::npos)
            throw ParseError(source.path, line_no, 1, "missing ' + ' in rule");
        rule.stem_suffix = rest.substr(0, plus);
        rest = rest.substr(plus + 3);
        size_t arrow = rest.find(" -> ");
        if (arrow == std::string::npos)
            throw ParseError(source.path, line_no, 1, "missing ' -> ' in rule");
        rule.ending_prefix = rest.substr(0, arrow);
        rule.joined = rest.substr(arrow + 4);
        if (rule.cls.empty() || rule.stem_suffix.empty() || rule.ending_prefix.empty() ||
            rule.joined.empty())
            throw ParseError(source.path, line_no, 1, "empty rule component");
        std::string key = rule.cls + "\x1f" + rule.stem_suffix + "\x1f" + rule.ending_prefix;
        if (!keys.insert(key).second)
            throw ParseError(source.path, line_no, 1,
                             "duplicate rule key " + rule.cls + ": " + rule.stem_suffix + " + " +
                                 rule.ending_prefix);
        table.rules.push_back(std::move(rule));
    }
    return table;
}

namespace {

std::string quote_literal(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string label_text(const TransitionLabel& l) {
    switch (l.kind) {
        case LabelKind::Literal: return quote_literal(l.surface);
        case LabelKind::SubgraphCall: return ":" + l.target;
        case LabelKind::Epsilon: return "EPS";
        case LabelKind::Stem:
            return "STEM(" + l.surface + "," + l.conj_class + (l.attach ? ",attach" : "") + ")";
        case LabelKind::Ending: return "END(" + l.surface + ")";
    }
    return "EPS";
}

} // namespace

std::string serialize_grammar(const GrammarGraph& g) {
    std::ostringstream out;
    out << "graph " << g.name << " part=" << to_string(g.tags.part);
    if (!g.tags.category.empty()) out << " category=" << g.tags.category;
    if (g.tags.honorific) out << " honorific=" << to_string(*g.tags.honorific);
    if (g.tags.sentence_type) out << " sentence=" << to_string(*g.tags.sentence_type);
    if (g.tags.request_type) out << " request=" << to_string(*g.tags.request_type);
    if (!g.tags.parent.empty()) out << " parent=" << g.tags.parent;
    out << "\n";

    out << "start: " << g.start << "\n";
    out << "final: ";
    bool first = true;
    for (const auto& f : g.finals) {
        if (!first) out << ",";
        out << f;
        first = false;
    }
    out << "\n";

    // states not implied by start/final/transitions need explicit lines
    std::set<std::string> implied{g.start};
    implied.insert(g.finals.begin(), g.finals.end());
    for (const auto& t : g.transitions) {
        implied.insert(t.from);
        implied.insert(t.to);
    }
    for (const auto& s : g.states)
        if (!implied.count(s)) out << "state: " << s << "\n";

    for (const auto& t : g.transitions) {
        out << t.from << " -> " << t.to << " " << label_text(t.label);
        for (const auto& a : t.annotations) out << " {" << a.key << "=" << a.value << "}";
        out << "\n";
    }
    return out.str();
}

std::string serialize_conjugation(const ConjugationTable& table) {
    std::ostringstream out;
    for (const auto& c : table.declared_classes) out << "class " << c << "\n";
    for (const auto& r : table.rules)
        out << r.cls << ": " << r.stem_suffix << " + " << r.ending_prefix << " -> " << r.joined
            << "\n";
    return out.str();
}

GrammarBundle load_bundle(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        throw Error("not a readable directory: " + dir.string());

    std::vector<std::filesystem::path> lgg_files, conj_files;
    for (auto it = std::filesystem::recursive_directory_iterator(dir, ec);
         it != std::filesystem::recursive_directory_iterator(); ++it) {
        if (ec) throw Error("cannot scan " + dir.string() + ": " + ec.message());
        if (!it->is_regular_file()) continue;
        auto ext = it->path().extension();
        if (ext == ".lgg") lgg_files.push_back(it->path());
        else if (ext == ".conj") conj_files.push_back(it->path());
    }
    std::sort(lgg_files.begin(), lgg_files.end());
    std::sort(conj_files.begin(), conj_files.end());
    if (lgg_files.empty()) throw Error("no .lgg files under " + dir.string());

    GrammarBundle bundle;
    for (const auto& p : lgg_files) {
        GrammarGraph g = parse_grammar_file(SourceFile::from_file(p));
        if (!bundle.graphs.emplace(g.name, g).second)
            throw Error("duplicate graph name " + g.name + " (in " + p.string() + ")");
    }

    std::set<std::string> rule_keys;
    for (const auto& p : conj_files) {
        ConjugationTable t = parse_conjugation_table(SourceFile::from_file(p));
        for (auto& c : t.declared_classes) bundle.conjugation.declared_classes.insert(c);
        for (auto& r : t.rules) {
            std::string key = r.cls + "\x1f" + r.stem_suffix + "\x1f" + r.ending_prefix;
            if (!rule_keys.insert(key).second)
                throw Error("duplicate conjugation rule across files: " + key);
            bundle.conjugation.rules.push_back(std::move(r));
        }
    }

    std::vector<std::string> links;
    for (const auto& [name, g] : bundle.graphs)
        if (g.tags.part == Part::Link) links.push_back(name);
    if (links.size() != 1)
        throw Error("bundle needs exactly one LINK graph, found " + std::to_string(links.size()));
    bundle.main = links.front();
    return bundle;
}

} // namespace lgg
