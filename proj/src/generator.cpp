#include "lgg/generator.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace lgg {

const std::string* UtterancePattern::annotation(const std::string& key) const {
    for (const auto& [k, v] : annotations)
        if (k == key) return &v;
    return nullptr;
}

size_t syllable_count(std::string_view text) {
    return utf8::hangul_syllable_count(text);
}

double dm_weight(int syl_n, const WeightContext& ctx) {
    if (syl_n < 0) throw Error("dm_weight: negative syllable count");
    if (syl_n > ctx.syl_max)
        throw Error("dm_weight: syl_n " + std::to_string(syl_n) + " exceeds syl_max " +
                    std::to_string(ctx.syl_max));
    return std::log2(1.0 + static_cast<double>(ctx.syl_max - syl_n));
}

namespace {

// Closure-expanded module name lists for include/exclude filtering.
std::set<std::string> closure_of_list(const FlatGraph& flat,
                                      const std::vector<std::string>& modules) {
    std::set<std::string> out(modules.begin(), modules.end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [name, tag] : flat.tags)
            if (!out.count(name) && out.count(tag.parent)) grew = out.insert(name).second || grew;
    }
    return out;
}

class Enumerator {
public:
    Enumerator(const FlatGraph& flat, const GenerationConfig& config,
               const std::function<void(UtterancePattern&&)>& yield)
        : flat_(flat), config_(config), yield_(yield) {
        intern_modules();
        precompute_meta();
        auto mask_of = [&](const std::set<std::string>& names) {
            std::vector<char> mask(module_names_.size(), 0);
            bool any = false;
            for (const auto& n : names) {
                any = true;
                auto it = module_ids_.find(n);
                if (it != module_ids_.end()) mask[it->second] = 1;
            }
            return std::pair(mask, any);
        };
        std::tie(include_mask_, has_include_) =
            mask_of(closure_of_list(flat, config.module_include));
        std::tie(exclude_mask_, has_exclude_) =
            mask_of(closure_of_list(flat, config.module_exclude));
        module_count_.assign(module_names_.size(), 0);
    }

    void run() {
        if (flat_.num_states == 0) return;
        walk(flat_.start);
    }

private:
    // per-transition facts the hot loop would otherwise look up repeatedly
    struct Meta {
        int origin_id = -1;
        int open_id = -1;
        int close_id = -1;
        bool open_dm = false, open_ev = false;
        bool close_dm = false, close_ev = false;
        int syllables = 0;
    };

    void intern_modules() {
        auto intern = [&](const std::string& name) {
            if (name.empty()) return -1;
            auto [it, fresh] = module_ids_.try_emplace(name, static_cast<int>(module_names_.size()));
            if (fresh) module_names_.push_back(name);
            return it->second;
        };
        for (const auto& [name, tag] : flat_.tags) intern(name);
        for (const auto& t : flat_.transitions) {
            intern(t.origin);
            intern(t.module_open);
            intern(t.module_close);
        }
        module_tags_.assign(module_names_.size(), nullptr);
        for (const auto& [name, tag] : flat_.tags) module_tags_[module_ids_.at(name)] = &tag;
    }

    void precompute_meta() {
        meta_.reserve(flat_.transitions.size());
        for (const auto& t : flat_.transitions) {
            Meta m;
            if (!t.origin.empty()) m.origin_id = module_ids_.at(t.origin);
            if (!t.module_open.empty()) {
                m.open_id = module_ids_.at(t.module_open);
                if (const ModuleTag* tag = module_tags_[m.open_id]) {
                    m.open_dm = tag->part == Part::DiscourseMarker;
                    m.open_ev = tag->part == Part::Event;
                }
            }
            if (!t.module_close.empty()) {
                m.close_id = module_ids_.at(t.module_close);
                if (const ModuleTag* tag = module_tags_[m.close_id]) {
                    m.close_dm = tag->part == Part::DiscourseMarker;
                    m.close_ev = tag->part == Part::Event;
                }
            }
            if (t.label.kind != LabelKind::Epsilon)
                m.syllables = static_cast<int>(syllable_count(t.label.surface));
            meta_.push_back(m);
        }
    }

    void walk(uint32_t state) {
        if (flat_.is_final(state)) emit();
        for (uint32_t ti : flat_.out[state]) {
            const FlatTransition& t = flat_.transitions[ti];
            apply(t, meta_[ti]);
            walk(t.to);
            undo(t, meta_[ti]);
        }
    }

    void apply(const FlatTransition& t, const Meta& m) {
        trail_.push_back(&t);
        touch_module(m.origin_id);

        if (m.open_id >= 0) {
            touch_module(m.open_id);
            if (m.open_dm) {
                ++dm_depth_;
                dm_entries_.push_back(m.open_id);
            }
            if (m.open_ev) ++event_depth_;
        }
        if (!t.span_open.empty())
            open_spans_.push_back({t.span_open, tokens_.size(), tokens_.size(), open_spans_.size()});

        for (const auto& a : t.annotations) set_annotation(a.key, a.value);

        if (t.label.kind != LabelKind::Epsilon) {
            tokens_.push_back(t.label);
            if (dm_depth_ > 0) dm_syllables_ += m.syllables;
        }

        if (!t.span_close.empty()) close_span();
        if (m.close_id >= 0) {
            if (m.close_dm) --dm_depth_;
            if (m.close_ev) --event_depth_;
        }
    }

    void undo(const FlatTransition& t, const Meta& m) {
        if (m.close_id >= 0) {
            if (m.close_dm) ++dm_depth_;
            if (m.close_ev) ++event_depth_;
        }
        if (!t.span_close.empty()) reopen_span();

        if (t.label.kind != LabelKind::Epsilon) {
            if (dm_depth_ > 0) dm_syllables_ -= m.syllables;
            tokens_.pop_back();
        }

        for (auto it = t.annotations.rbegin(); it != t.annotations.rend(); ++it)
            unset_annotation();

        if (!t.span_open.empty()) open_spans_.pop_back();
        if (m.open_id >= 0) {
            if (m.open_dm) {
                --dm_depth_;
                dm_entries_.pop_back();
            }
            if (m.open_ev) --event_depth_;
            untouch_module(m.open_id);
        }
        untouch_module(m.origin_id);
        trail_.pop_back();
    }

    void touch_module(int id) {
        if (id < 0) return;
        if (++module_count_[static_cast<size_t>(id)] == 1) module_order_.push_back(id);
    }

    void untouch_module(int id) {
        if (id < 0) return;
        if (--module_count_[static_cast<size_t>(id)] == 0)
            module_order_.pop_back(); // strict nesting keeps LIFO order
    }

    // annotations are a journal so undo restores the previous value exactly
    void set_annotation(const std::string& key, const std::string& value) {
        for (auto& [k, v] : annotations_) {
            if (k == key) {
                ann_journal_.push_back({key, v, false});
                v = value;
                return;
            }
        }
        ann_journal_.push_back({key, "", true});
        annotations_.push_back({key, value});
    }

    void unset_annotation() {
        auto [key, old, fresh] = ann_journal_.back();
        ann_journal_.pop_back();
        if (fresh) {
            annotations_.pop_back();
        } else {
            for (auto& [k, v] : annotations_)
                if (k == key) { v = old; break; }
        }
    }

    void close_span() {
        PatternSpan s = open_spans_.back();
        open_spans_.pop_back();
        if (tokens_.size() > s.first_token) { // empty spans vanish
            s.last_token = tokens_.size() - 1;
            s.depth = open_spans_.size();
            closed_spans_.push_back(s);
        } else {
            closed_spans_.push_back({"", 0, 0, 0}); // placeholder for exact undo
        }
    }

    void reopen_span() {
        PatternSpan s = closed_spans_.back();
        closed_spans_.pop_back();
        if (s.entity_type.empty()) {
            // placeholder: the span was empty; recover its type from the trail
            const FlatTransition& t = *trail_.back();
            open_spans_.push_back({t.span_close, tokens_.size(), tokens_.size(), open_spans_.size()});
        } else {
            open_spans_.push_back({s.entity_type, s.first_token, s.first_token, open_spans_.size()});
        }
    }

    TagView merged_tags() const {
        TagView view;
        for (int g : dm_entries_) {
            const ModuleTag* tag = module_tags_[static_cast<size_t>(g)];
            if (!tag) continue;
            if (tag->honorific) view.honorific = tag->honorific;
            if (tag->sentence_type) view.sentence_type = tag->sentence_type;
            if (tag->request_type) view.request_type = tag->request_type;
        }
        return view;
    }

    bool passes_filters(const TagView& tags) const {
        if (!config_.honorific_filter.empty() &&
            (!tags.honorific || !config_.honorific_filter.count(*tags.honorific)))
            return false;
        if (!config_.sentence_filter.empty() &&
            (!tags.sentence_type || !config_.sentence_filter.count(*tags.sentence_type)))
            return false;
        if (!config_.request_filter.empty() &&
            (!tags.request_type || !config_.request_filter.count(*tags.request_type)))
            return false;
        if (has_include_) {
            bool hit = false;
            for (int m : module_order_)
                if (include_mask_[static_cast<size_t>(m)]) { hit = true; break; }
            if (!hit) return false;
        }
        if (has_exclude_)
            for (int m : module_order_)
                if (exclude_mask_[static_cast<size_t>(m)]) return false;
        return true;
    }

    void emit() {
        TagView tags = merged_tags();
        if (!passes_filters(tags)) return;

        UtterancePattern p;
        p.tokens = tokens_;
        p.annotations = annotations_;
        for (const auto& s : closed_spans_)
            if (!s.entity_type.empty()) p.spans.push_back(s);
        std::sort(p.spans.begin(), p.spans.end(), [](const PatternSpan& a, const PatternSpan& b) {
            if (a.first_token != b.first_token) return a.first_token < b.first_token;
            if (a.last_token != b.last_token) return a.last_token > b.last_token; // outer first
            return a.depth < b.depth;
        });
        p.modules.reserve(module_order_.size());
        for (int m : module_order_) p.modules.push_back(module_names_[static_cast<size_t>(m)]);
        p.dm_graph = dm_entries_.empty() ? "" : module_names_[static_cast<size_t>(dm_entries_.back())];
        p.dm_syllables = dm_entries_.empty() ? 0 : dm_syllables_;
        p.has_event = false;
        for (int m : module_order_) {
            const ModuleTag* tag = module_tags_[static_cast<size_t>(m)];
            if (tag && tag->part == Part::Event) { p.has_event = true; break; }
        }
        p.tags = tags;
        p.index = next_index_++;
        yield_(std::move(p));
    }

    const FlatGraph& flat_;
    const GenerationConfig& config_;
    const std::function<void(UtterancePattern&&)>& yield_;
    std::map<std::string, int> module_ids_;
    std::vector<std::string> module_names_;
    std::vector<const ModuleTag*> module_tags_;
    std::vector<Meta> meta_;
    std::vector<char> include_mask_, exclude_mask_;
    bool has_include_ = false, has_exclude_ = false;

    std::vector<TransitionLabel> tokens_;
    std::vector<std::pair<std::string, std::string>> annotations_;
    struct AnnUndo { std::string key; std::string old; bool fresh; };
    std::vector<AnnUndo> ann_journal_;
    std::vector<PatternSpan> open_spans_;
    std::vector<PatternSpan> closed_spans_;
    std::vector<const FlatTransition*> trail_;
    std::vector<int> module_count_;
    std::vector<int> module_order_;
    std::vector<int> dm_entries_; // DM graphs in open order
    int dm_depth_ = 0;
    int event_depth_ = 0;
    int dm_syllables_ = 0;
    uint64_t next_index_ = 0;
};

} // namespace

void enumerate_patterns(const FlatGraph& flat, const GenerationConfig& config,
                        const std::function<void(UtterancePattern&&)>& yield) {
    Enumerator e(flat, config, yield);
    e.run();
}

std::vector<UtterancePattern> enumerate_all(const FlatGraph& flat, const GenerationConfig& config) {
    std::vector<UtterancePattern> out;
    enumerate_patterns(flat, config, [&](UtterancePattern&& p) { out.push_back(std::move(p)); });
    return out;
}

WeightContext compute_syl_max(const FlatGraph& flat, const GenerationConfig& config) {
    int syl_max = 0;
    enumerate_patterns(flat, config, [&](UtterancePattern&& p) {
        syl_max = std::max(syl_max, p.dm_syllables);
    });
    return WeightContext{std::max(syl_max, 1)};
}

std::vector<size_t> select_top(const std::vector<UtterancePattern>& patterns,
                               const WeightContext& ctx, uint64_t target_size,
                               const std::function<size_t(size_t)>& char_len) {
    std::vector<size_t> order(patterns.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<double> weights(patterns.size());
    for (size_t i = 0; i < patterns.size(); ++i) weights[i] = pattern_weight(patterns[i], ctx);

    auto better = [&](size_t a, size_t b) {
        double wa = weights[a];
        double wb = weights[b];
        if (wa != wb) return wa > wb;
        size_t la = char_len(a), lb = char_len(b);
        if (la != lb) return la < lb;
        return patterns[a].index < patterns[b].index;
    };

    size_t keep = std::min<uint64_t>(target_size, order.size());
    std::partial_sort(order.begin(), order.begin() + keep, order.end(), better);
    order.resize(keep);
    return order;
}

} // namespace lgg
