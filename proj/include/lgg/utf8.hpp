#ifndef LGG_UTF8_HPP
#define LGG_UTF8_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace utf8 {

// Decodes one scalar starting at `pos`; advances `pos` past it.
// Returns false on malformed input (pos is left unchanged).
inline bool decode_one(std::string_view s, size_t& pos, char32_t& out) {
    if (pos >= s.size()) return false;
    const auto b0 = static_cast<unsigned char>(s[pos]);
    size_t len;
    char32_t cp;
    if (b0 < 0x80) { len = 1; cp = b0; }
    else if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; }
    else return false;
    if (pos + len > s.size()) return false;
    for (size_t i = 1; i < len; ++i) {
        const auto b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80) return false;
        cp = (cp << 6) | (b & 0x3F);
    }
    // reject overlong forms and surrogates
    if (len == 2 && cp < 0x80) return false;
    if (len == 3 && cp < 0x800) return false;
    if (len == 4 && cp < 0x10000) return false;
    if (cp >= 0xD800 && cp <= 0xDFFF) return false;
    if (cp > 0x10FFFF) return false;
    pos += len;
    out = cp;
    return true;
}

inline bool valid(std::string_view s) {
    size_t pos = 0;
    char32_t cp;
    while (pos < s.size())
        if (!decode_one(s, pos, cp)) return false;
    return true;
}

inline std::u32string decode(std::string_view s) {
    std::u32string out;
    size_t pos = 0;
    char32_t cp;
    while (pos < s.size()) {
        if (!decode_one(s, pos, cp)) throw Error("invalid UTF-8 at byte offset " + std::to_string(pos));
        out.push_back(cp);
    }
    return out;
}

inline void append(std::string& s, char32_t cp) {
    if (cp < 0x80) {
        s.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        s.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        s.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        s.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        s.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode(const std::u32string& cps) {
    std::string out;
    for (char32_t cp : cps) append(out, cp);
    return out;
}

inline size_t scalar_count(std::string_view s) {
    size_t n = 0, pos = 0;
    char32_t cp;
    while (pos < s.size()) {
        if (!decode_one(s, pos, cp)) throw Error("invalid UTF-8");
        ++n;
    }
    return n;
}

// Number of precomposed Hangul syllable blocks (U+AC00..U+D7A3).
inline size_t hangul_syllable_count(std::string_view s) {
    size_t n = 0, pos = 0;
    char32_t cp;
    while (pos < s.size()) {
        if (!decode_one(s, pos, cp)) throw Error("invalid UTF-8");
        if (cp >= 0xAC00 && cp <= 0xD7A3) ++n;
    }
    return n;
}

// Substring by scalar offsets [start, end).
inline std::string scalar_substr(std::string_view s, size_t start, size_t end) {
    std::string out;
    size_t n = 0, pos = 0;
    char32_t cp;
    while (pos < s.size() && n < end) {
        size_t before = pos;
        if (!decode_one(s, pos, cp)) throw Error("invalid UTF-8");
        if (n >= start) out.append(s.substr(before, pos - before));
        ++n;
    }
    return out;
}

} // namespace utf8

// Conjoining-jamo view of Hangul text. Precomposed syllables decompose to
// leading/vowel/(trailing) jamo; everything else passes through untouched.
// The decomposed code ranges keep the jamo roles distinct, so greedy
// recomposition is unambiguous.
namespace jamo {

constexpr char32_t SBase = 0xAC00;
constexpr char32_t LBase = 0x1100, VBase = 0x1161, TBase = 0x11A7;
constexpr int LCount = 19, VCount = 21, TCount = 28;

inline std::u32string decompose(std::string_view s) {
    std::u32string out;
    for (char32_t cp : utf8::decode(s)) {
        if (cp >= SBase && cp < SBase + LCount * VCount * TCount) {
            const char32_t idx = cp - SBase;
            out.push_back(LBase + idx / (VCount * TCount));
            out.push_back(VBase + (idx % (VCount * TCount)) / TCount);
            const char32_t t = idx % TCount;
            if (t != 0) out.push_back(TBase + t);
        } else {
            out.push_back(cp);
        }
    }
    return out;
}

inline bool is_l(char32_t c) { return c >= LBase && c < LBase + LCount; }
inline bool is_v(char32_t c) { return c >= VBase && c < VBase + VCount; }
inline bool is_t(char32_t c) { return c > TBase && c < TBase + TCount; }

inline std::string compose(const std::u32string& cps) {
    std::u32string out;
    size_t i = 0;
    while (i < cps.size()) {
        if (is_l(cps[i]) && i + 1 < cps.size() && is_v(cps[i + 1])) {
            char32_t syl = SBase + ((cps[i] - LBase) * VCount + (cps[i + 1] - VBase)) * TCount;
            i += 2;
            if (i < cps.size() && is_t(cps[i])) {
                syl += cps[i] - TBase;
                ++i;
            }
            out.push_back(syl);
        } else {
            out.push_back(cps[i++]);
        }
    }
    return utf8::encode(out);
}

inline bool has_prefix(const std::u32string& s, const std::u32string& p) {
    return s.size() >= p.size() && s.compare(0, p.size(), p) == 0;
}

inline bool has_suffix(const std::u32string& s, const std::u32string& p) {
    return s.size() >= p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0;
}

} // namespace jamo
} // namespace lgg

#endif
