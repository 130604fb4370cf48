#include "ibex/records.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace ibex {

std::vector<MarkedId> mark_ids(const FrameNode& tree, IdKind t) {
    std::vector<MarkedId> marked;
    std::vector<TextFrame> frames = text_frames(tree);
    for (size_t i = 0; i < frames.size(); ++i) {
        if (auto id = validate_id(t, frames[i].text()))
            marked.push_back(MarkedId{static_cast<int>(i), std::move(*id)});
    }
    return marked;
}

namespace {

struct SubtreeInfo {
    int first_leaf = 0;
    int leaf_count = 0;
    int id_count = 0;
    int single_id_leaf = -1; // leaf index of the id when id_count == 1
};

struct RecordSpan {
    Record record;
    int first_leaf = 0;
    int leaf_count = 0;
};

class RecordFinder {
public:
    RecordFinder(const FrameNode& tree, const std::vector<MarkedId>& marked) : tree_(tree) {
        for (const MarkedId& m : marked)
            id_at_leaf_.emplace(m.frame_index, &m.id);
    }

    std::vector<RecordSpan> find() {
        int next_leaf = 0;
        compute(tree_, next_leaf);
        const SubtreeInfo& root = info_.at(&tree_);
        std::vector<RecordSpan> out;
        if (root.id_count == 0)
            return out;
        if (root.id_count == 1) {
            RecordSpan span;
            span.record.kind = RecordKind::Detail;
            span.record.id = *id_at_leaf_.at(root.single_id_leaf);
            span.record.root = &tree_;
            span.record.id_frame_index = root.single_id_leaf - root.first_leaf;
            span.first_leaf = root.first_leaf;
            span.leaf_count = root.leaf_count;
            out.push_back(std::move(span));
            return out;
        }
        emit(tree_, out);
        return out;
    }

private:
    const SubtreeInfo& compute(const FrameNode& node, int& next_leaf) {
        SubtreeInfo info;
        info.first_leaf = next_leaf;
        if (node.is_text()) {
            info.leaf_count = 1;
            auto it = id_at_leaf_.find(next_leaf);
            if (it != id_at_leaf_.end()) {
                info.id_count = 1;
                info.single_id_leaf = next_leaf;
            }
            ++next_leaf;
        } else {
            for (const FrameNode& child : node.children) {
                const SubtreeInfo& c = compute(child, next_leaf);
                info.leaf_count += c.leaf_count;
                info.id_count += c.id_count;
                if (c.id_count == 1 && c.single_id_leaf >= 0)
                    info.single_id_leaf = c.single_id_leaf;
            }
            if (info.id_count != 1)
                info.single_id_leaf = -1;
        }
        return info_.emplace(&node, info).first->second;
    }

    // Depth-first search: the shallowest subframe holding exactly one id
    // becomes a record.
    void emit(const FrameNode& node, std::vector<RecordSpan>& out) {
        for (const FrameNode& child : node.children) {
            const SubtreeInfo& c = info_.at(&child);
            if (c.id_count == 0)
                continue;
            if (c.id_count == 1) {
                RecordSpan span;
                span.record.kind = RecordKind::Free;
                span.record.id = *id_at_leaf_.at(c.single_id_leaf);
                span.record.root = &child;
                span.record.id_frame_index = c.single_id_leaf - c.first_leaf;
                span.first_leaf = c.first_leaf;
                span.leaf_count = c.leaf_count;
                out.push_back(std::move(span));
            } else {
                emit(child, out);
            }
        }
    }

    const FrameNode& tree_;
    std::unordered_map<int, const ValidatedId*> id_at_leaf_;
    std::unordered_map<const FrameNode*, SubtreeInfo> info_;
};

std::vector<RecordSpan> record_spans(const FrameNode& tree, const std::vector<MarkedId>& marked) {
    RecordFinder finder(tree, marked);
    return finder.find();
}

} // namespace

std::vector<Record> extract_records(const FrameNode& tree, IdKind t) {
    std::vector<MarkedId> marked = mark_ids(tree, t);
    std::vector<Record> records;
    for (RecordSpan& span : record_spans(tree, marked))
        records.push_back(std::move(span.record));
    return records;
}

int style_of(const std::vector<const Tag*>& path) {
    bool hiding = false, highlight = false;
    for (const Tag* tag : path) {
        if (tag->is_synthetic)
            continue;
        const std::string& n = tag->name;
        if (n.size() == 2 && n[0] == 'h' && n[1] >= '1' && n[1] <= '6')
            return 4;
        if (n == "small" || n == "strike" || n == "s" || n == "del")
            hiding = true;
        else if (n == "b" || n == "strong" || n == "i" || n == "em" || n == "u")
            highlight = true;
    }
    if (hiding)
        return 1;
    if (highlight)
        return 3;
    return 2;
}

std::vector<ScoredCandidate> score_detail(const Record& record,
                                          const std::vector<RecordCandidate>& candidates,
                                          const std::optional<std::string>& title,
                                          const IdTypeConfig& cfg) {
    std::string title_norm;
    bool has_title = false;
    if (title) {
        title_norm = normalize_name(*title, cfg);
        has_title = !title_norm.empty();
    }
    std::vector<ScoredCandidate> kept;
    for (const RecordCandidate& c : candidates) {
        if (c.name.record_offset >= record.id_frame_index)
            continue; // the name must precede the id
        if (c.style != 4)
            continue;
        if (has_title && title_norm.find(normalize_name(c.name.raw, cfg)) == std::string::npos)
            continue;
        kept.push_back(ScoredCandidate{c.name, 0.0, c.style});
    }
    // distance: number of surviving candidates between the candidate and
    // the id, negated; the adjacent candidate scores 0
    for (size_t i = 0; i < kept.size(); ++i) {
        double between = static_cast<double>(kept.size() - 1 - i);
        kept[i].score = between == 0.0 ? 0.0 : -between;
    }
    return kept;
}

std::vector<ScoredCandidate> score_free(const Record& record,
                                        const std::vector<RecordCandidate>& candidates) {
    (void)record;
    std::vector<ScoredCandidate> kept;
    for (const RecordCandidate& c : candidates) {
        if (c.name.record_offset > 2)
            continue; // first three text frames only, id frame included
        kept.push_back(ScoredCandidate{c.name, static_cast<double>(c.style), c.style});
    }
    return kept;
}

namespace {

std::vector<RecordCandidate> find_candidates(const std::vector<TextFrame>& frames,
                                             const RecordSpan& span, IdKind t,
                                             const ValidatedId& id,
                                             const FirstNameDictionary& dict) {
    std::vector<RecordCandidate> out;
    for (int offset = 0; offset < span.leaf_count; ++offset) {
        const TextFrame& frame = frames[static_cast<size_t>(span.first_leaf + offset)];
        const std::string& text = frame.text();
        int style = style_of(frame.path);
        switch (t) {
        case IdKind::Gtin:
            if (accept_name_gtin(text, id, dict))
                out.push_back(RecordCandidate{NameCandidate{text, offset}, style});
            break;
        case IdKind::Cas:
            if (accept_name_cas(text))
                out.push_back(RecordCandidate{NameCandidate{text, offset}, style});
            break;
        case IdKind::Doi:
            for (NameCandidate& c : find_names_doi(text, dict)) {
                c.record_offset = offset;
                out.push_back(RecordCandidate{std::move(c), style});
            }
            break;
        case IdKind::Email:
            for (NameCandidate& c : find_names_email(text, id, dict)) {
                c.record_offset = offset;
                out.push_back(RecordCandidate{std::move(c), style});
            }
            break;
        }
    }
    return out;
}

} // namespace

std::vector<CandidateRow> extract_r1_from_tree(const FrameNode& tree, const std::string& url,
                                               IdKind t, const FirstNameDictionary& dict,
                                               PageExtractStats* stats) {
    const IdTypeConfig& cfg = id_type(t).config;
    std::vector<MarkedId> marked = mark_ids(tree, t);
    if (stats)
        stats->ids += marked.size();
    if (marked.empty())
        return {};
    std::vector<TextFrame> frames = text_frames(tree);
    std::optional<std::string> title = page_title(tree);

    std::vector<RecordSpan> spans = record_spans(tree, marked);
    if (stats)
        stats->records += spans.size();
    std::vector<CandidateRow> rows;
    for (const RecordSpan& span : spans) {
        std::vector<RecordCandidate> candidates =
            find_candidates(frames, span, t, span.record.id, dict);
        std::vector<ScoredCandidate> scored =
            span.record.kind == RecordKind::Detail
                ? score_detail(span.record, candidates, title, cfg)
                : score_free(span.record, candidates);
        for (ScoredCandidate& sc : scored) {
            CandidateRow row;
            row.id = span.record.id;
            row.name_norm = normalize_name(sc.name.raw, cfg);
            if (row.name_norm.empty())
                continue; // nothing left to aggregate on
            row.name_raw = std::move(sc.name.raw);
            row.score = sc.score;
            row.url = url;
            row.record_kind = span.record.kind;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<CandidateRow> extract_r1(std::string_view page_bytes, const std::string& url, IdKind t,
                                     const FirstNameDictionary& dict, PageExtractStats* stats) {
    FrameNode tree = parse_page(page_bytes);
    return extract_r1_from_tree(tree, url, t, dict, stats);
}

} // namespace ibex
