#ifndef IBEX_AGGREGATE_HPP
#define IBEX_AGGREGATE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ibex/idspec.hpp"

namespace ibex {

enum class RecordKind { Detail, Free };

std::string_view record_kind_name(RecordKind kind);
std::optional<RecordKind> record_kind_from_name(std::string_view name);

// One Phase-1 output row: an id, a name candidate for it, the candidate's
// score, and the page it came from.
struct CandidateRow {
    ValidatedId id;
    std::string name_raw;
    std::string name_norm;
    double score = 0.0;
    std::string url;
    RecordKind record_kind = RecordKind::Free;
};

// Per-name frequency of co-occurrence with each id.
struct FreqDistribution {
    std::string name_norm;
    std::map<std::string, uint64_t> counts; // id canonical -> count
    uint64_t total = 0;
};

struct OutlierParams {
    int i = 3;
    double p = 0.30;
};

// Final database row: one resolved name per id.
struct EntityRow {
    ValidatedId id;
    std::string name_raw;
    std::vector<std::string> urls; // distinct, sorted
};

/// Groups rows by normalized name and counts occurrences per id. Every
/// row counts, including duplicates from the same page.
std::map<std::string, FreqDistribution> build_distributions(const std::vector<CandidateRow>& rows);

/// The id owning the distribution, if any: a lone id always qualifies;
/// otherwise the top id must take more than p of all occurrences and more
/// than i times the runner-up. Ties on counts resolve to the
/// lexicographically smallest id.
std::optional<std::string> detect_outlier(const FreqDistribution& d, const OutlierParams& params);

struct Phase2Options {
    OutlierParams outlier;
    bool dedup_counting = false; // count unique (id, name, url) triples instead of rows
};

/// Phase 2: keeps exactly the rows whose (name, id) pair is a detected
/// outlier pair; types with skip_phase2 pass through unchanged. Rows with
/// an empty normalized name are dropped. Output preserves input order.
std::vector<CandidateRow> phase2_filter(const std::vector<CandidateRow>& rows,
                                        const Phase2Options& options, const IdTypeConfig& cfg);

/// Phase 3: per id, the most frequent name wins; frequency ties go to the
/// highest score, remaining ties to the lexicographically smaller
/// normalized then raw name. Urls come from the winning rows.
std::vector<EntityRow> phase3_resolve(const std::vector<CandidateRow>& rows);

struct EvalResult {
    double accuracy = 0.0;
    double recall = 0.0;
    uint64_t gold_size = 0;
    uint64_t assigned_on_gold = 0;
    uint64_t correct = 0;
    bool no_assignments = false;
};

using NameMatcher = std::function<bool(const std::string& assigned, const std::string& gold)>;

/// Accuracy = correct / assignments made for gold ids; recall = correct /
/// |gold|. Throws std::invalid_argument on empty gold.
EvalResult evaluate(const std::map<std::string, std::string>& assigned,
                    const std::map<std::string, std::string>& gold, const NameMatcher& matcher);

/// Wilson score interval for `successes` out of `n` at critical value z.
std::pair<double, double> wilson_interval(uint64_t successes, uint64_t n, double z = 1.96);

struct CoverageSimConfig {
    std::vector<std::vector<int>> entities_of_page; // page -> entity ids
    double alpha = 0.5;
    int trials = 10000;
};

struct CoverageResult {
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// Monte-Carlo estimate of the expected fraction of entities seen when
/// drawing floor(alpha * pages) pages uniformly without replacement.
CoverageResult coverage_simulation(const CoverageSimConfig& cfg, uint64_t seed);

} // namespace ibex

#endif
