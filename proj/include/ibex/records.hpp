#ifndef IBEX_RECORDS_HPP
#define IBEX_RECORDS_HPP

#include <string>
#include <vector>

#include "ibex/aggregate.hpp"
#include "ibex/frametree.hpp"
#include "ibex/idspec.hpp"
#include "ibex/nerfind.hpp"

namespace ibex {

// A frame subtree containing exactly one validated id. A page with a
// single id yields one Detail record spanning the whole page; a page
// with several yields a Free record per shallowest one-id subframe.
struct Record {
    RecordKind kind = RecordKind::Free;
    ValidatedId id;
    const FrameNode* root = nullptr;
    int id_frame_index = 0; // position of the id frame among the record's text frames
};

struct MarkedId {
    int frame_index = 0; // index into text_frames(tree)
    ValidatedId id;
};

/// Text frames whose whole trimmed content validates as an id of type t.
/// Frames with surrounding text never match.
std::vector<MarkedId> mark_ids(const FrameNode& tree, IdKind t);

std::vector<Record> extract_records(const FrameNode& tree, IdKind t);

/// Markup weight of a text frame: 4 under a header, 1 under hiding tags,
/// 3 under highlighting tags, 2 otherwise.
int style_of(const std::vector<const Tag*>& path);

struct RecordCandidate {
    NameCandidate name;
    int style = 2;
};

struct ScoredCandidate {
    NameCandidate name;
    double score = 0.0;
    int style = 2;
};

/// Detail-record scoring: keeps candidates before the id, with style 4,
/// whose normalized form occurs in the normalized page title (absent or
/// empty titles pass everything); score is minus the number of surviving
/// candidates between the candidate and the id.
std::vector<ScoredCandidate> score_detail(const Record& record,
                                          const std::vector<RecordCandidate>& candidates,
                                          const std::optional<std::string>& title,
                                          const IdTypeConfig& cfg);

/// Free-record scoring: keeps candidates from the record's first three
/// text frames (the id frame counts); score is the style.
std::vector<ScoredCandidate> score_free(const Record& record,
                                        const std::vector<RecordCandidate>& candidates);

struct PageExtractStats {
    uint64_t records = 0;
    uint64_t ids = 0;
};

/// Full Phase 1 for one page: parse, split into records, find and score
/// name candidates, and emit one row per surviving (id, candidate) pair.
/// Candidates whose normalized name is empty are dropped.
std::vector<CandidateRow> extract_r1(std::string_view page_bytes, const std::string& url, IdKind t,
                                     const FirstNameDictionary& dict,
                                     PageExtractStats* stats = nullptr);

/// Same, over an already parsed tree (one parse can serve several types).
std::vector<CandidateRow> extract_r1_from_tree(const FrameNode& tree, const std::string& url,
                                               IdKind t, const FirstNameDictionary& dict,
                                               PageExtractStats* stats = nullptr);

} // namespace ibex

#endif
