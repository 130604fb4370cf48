#include "ibex/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace ibex {

std::string_view record_kind_name(RecordKind kind) {
    return kind == RecordKind::Detail ? "detail" : "free";
}

std::optional<RecordKind> record_kind_from_name(std::string_view name) {
    if (name == "detail")
        return RecordKind::Detail;
    if (name == "free")
        return RecordKind::Free;
    return std::nullopt;
}

std::map<std::string, FreqDistribution> build_distributions(const std::vector<CandidateRow>& rows) {
    std::map<std::string, FreqDistribution> dists;
    for (const CandidateRow& row : rows) {
        FreqDistribution& d = dists[row.name_norm];
        if (d.name_norm.empty())
            d.name_norm = row.name_norm;
        ++d.counts[row.id.canonical];
        ++d.total;
    }
    return dists;
}

std::optional<std::string> detect_outlier(const FreqDistribution& d, const OutlierParams& params) {
    if (d.counts.empty())
        return std::nullopt;
    if (d.counts.size() == 1)
        return d.counts.begin()->first;
    // std::map iterates ids in lexicographic order, so the first maximum
    // seen is the deterministic tie-break winner.
    uint64_t f1 = 0, f2 = 0;
    const std::string* top = nullptr;
    for (const auto& [id, count] : d.counts) {
        if (count > f1) {
            f2 = f1;
            f1 = count;
            top = &id;
        } else if (count > f2) {
            f2 = count;
        }
    }
    double total = static_cast<double>(d.total);
    if (static_cast<double>(f1) > params.p * total &&
        static_cast<double>(f1) > static_cast<double>(params.i) * static_cast<double>(f2))
        return *top;
    return std::nullopt;
}

std::vector<CandidateRow> phase2_filter(const std::vector<CandidateRow>& rows,
                                        const Phase2Options& options, const IdTypeConfig& cfg) {
    if (cfg.skip_phase2)
        return rows;

    std::vector<CandidateRow> counted;
    counted.reserve(rows.size());
    if (options.dedup_counting) {
        std::set<std::tuple<std::string, std::string, std::string>> seen;
        for (const CandidateRow& row : rows) {
            if (row.name_norm.empty())
                continue;
            if (seen.emplace(row.id.canonical, row.name_norm, row.url).second)
                counted.push_back(row);
        }
    } else {
        for (const CandidateRow& row : rows) {
            if (!row.name_norm.empty())
                counted.push_back(row);
        }
    }

    std::map<std::string, std::string> outlier_of; // name_norm -> id canonical
    for (const auto& [name, dist] : build_distributions(counted)) {
        if (auto id = detect_outlier(dist, options.outlier))
            outlier_of.emplace(name, *id);
    }

    std::vector<CandidateRow> kept;
    for (const CandidateRow& row : rows) {
        if (row.name_norm.empty())
            continue;
        auto it = outlier_of.find(row.name_norm);
        if (it != outlier_of.end() && it->second == row.id.canonical)
            kept.push_back(row);
    }
    return kept;
}

std::vector<EntityRow> phase3_resolve(const std::vector<CandidateRow>& rows) {
    std::map<std::string, std::vector<const CandidateRow*>> by_id;
    for (const CandidateRow& row : rows)
        by_id[row.id.canonical].push_back(&row);

    std::vector<EntityRow> out;
    out.reserve(by_id.size());
    for (const auto& [id, group] : by_id) {
        std::map<std::string, uint64_t> freq;
        for (const CandidateRow* row : group)
            ++freq[row->name_norm];
        uint64_t max_freq = 0;
        for (const auto& [name, count] : freq)
            max_freq = std::max(max_freq, count);

        // Among rows of the most frequent names, the highest score decides;
        // remaining ties go to the lexicographically smaller name.
        double max_score = -std::numeric_limits<double>::infinity();
        for (const CandidateRow* row : group)
            if (freq[row->name_norm] == max_freq)
                max_score = std::max(max_score, row->score);

        const CandidateRow* winner = nullptr;
        for (const CandidateRow* row : group) {
            if (freq[row->name_norm] != max_freq || row->score != max_score)
                continue;
            if (!winner || row->name_norm < winner->name_norm ||
                (row->name_norm == winner->name_norm && row->name_raw < winner->name_raw))
                winner = row;
        }

        EntityRow entity;
        entity.id = group.front()->id;
        entity.name_raw = winner->name_raw;
        std::set<std::string> urls;
        for (const CandidateRow* row : group)
            if (row->name_norm == winner->name_norm && row->score == max_score)
                urls.insert(row->url);
        entity.urls.assign(urls.begin(), urls.end());
        out.push_back(std::move(entity));
    }
    return out;
}

EvalResult evaluate(const std::map<std::string, std::string>& assigned,
                    const std::map<std::string, std::string>& gold, const NameMatcher& matcher) {
    if (gold.empty())
        throw std::invalid_argument("empty gold standard");
    EvalResult r;
    r.gold_size = gold.size();
    for (const auto& [id, gold_name] : gold) {
        auto it = assigned.find(id);
        if (it == assigned.end())
            continue;
        ++r.assigned_on_gold;
        if (matcher(it->second, gold_name))
            ++r.correct;
    }
    if (r.assigned_on_gold == 0) {
        r.no_assignments = true;
        r.accuracy = 0.0;
    } else {
        r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.assigned_on_gold);
    }
    r.recall = static_cast<double>(r.correct) / static_cast<double>(r.gold_size);
    return r;
}

std::pair<double, double> wilson_interval(uint64_t successes, uint64_t n, double z) {
    if (n == 0)
        throw std::invalid_argument("wilson_interval needs n >= 1");
    if (successes > n)
        throw std::invalid_argument("successes exceed n");
    if (z <= 0)
        throw std::invalid_argument("z must be positive");
    double nn = static_cast<double>(n);
    double phat = static_cast<double>(successes) / nn;
    double z2 = z * z;
    double denom = 1.0 + z2 / nn;
    double center = (phat + z2 / (2.0 * nn)) / denom;
    double half = z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
    return {center - half, center + half};
}

CoverageResult coverage_simulation(const CoverageSimConfig& cfg, uint64_t seed) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0,1)");
    if (cfg.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (cfg.entities_of_page.empty())
        throw std::invalid_argument("no pages");
    int max_entity = -1;
    for (const auto& page : cfg.entities_of_page) {
        if (page.empty())
            throw std::invalid_argument("every page must mention an entity");
        for (int e : page)
            max_entity = std::max(max_entity, e);
    }
    size_t num_pages = cfg.entities_of_page.size();
    size_t num_entities = static_cast<size_t>(max_entity) + 1;
    size_t draws = static_cast<size_t>(cfg.alpha * static_cast<double>(num_pages));
    draws = std::min(draws, num_pages);

    std::mt19937_64 rng(seed);
    std::vector<size_t> pages(num_pages);
    std::iota(pages.begin(), pages.end(), 0);
    std::vector<char> seen(num_entities);

    double sum = 0.0, sum_sq = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        // partial Fisher-Yates: the first `draws` slots become the sample
        for (size_t k = 0; k < draws; ++k) {
            std::uniform_int_distribution<size_t> pick(k, num_pages - 1);
            std::swap(pages[k], pages[pick(rng)]);
        }
        std::fill(seen.begin(), seen.end(), 0);
        size_t covered = 0;
        for (size_t k = 0; k < draws; ++k) {
            for (int e : cfg.entities_of_page[pages[k]]) {
                if (!seen[static_cast<size_t>(e)]) {
                    seen[static_cast<size_t>(e)] = 1;
                    ++covered;
                }
            }
        }
        double coverage = static_cast<double>(covered) / static_cast<double>(num_entities);
        sum += coverage;
        sum_sq += coverage * coverage;
    }
    double trials = static_cast<double>(cfg.trials);
    CoverageResult result;
    result.mean = sum / trials;
    double variance = std::max(0.0, (sum_sq - sum * sum / trials) / std::max(1.0, trials - 1.0));
    result.stderr_ = std::sqrt(variance / trials);
    return result;
}

} // namespace ibex
