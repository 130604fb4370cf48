// Test-only reference implementations: direct quadratic transcriptions of
// the phase definitions, kept independent of the streaming code they
// check.
#ifndef IBEX_TESTS_ORACLE_HPP
#define IBEX_TESTS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ibex/aggregate.hpp"

namespace oracle {

using ibex::CandidateRow;

// freq_n(id): how often name n appears with id in the table.
inline size_t freq(const std::vector<CandidateRow>& rows, const std::string& name_norm,
                   const std::string& id) {
    size_t n = 0;
    for (const CandidateRow& r : rows)
        if (r.name_norm == name_norm && r.id.canonical == id)
            ++n;
    return n;
}

inline std::vector<CandidateRow> phase2(const std::vector<CandidateRow>& all, int i, double p) {
    std::vector<CandidateRow> rows;
    for (const CandidateRow& r : all)
        if (!r.name_norm.empty())
            rows.push_back(r);

    std::vector<CandidateRow> out;
    for (const CandidateRow& r : rows) {
        std::vector<std::string> ids;
        for (const CandidateRow& q : rows) {
            if (q.name_norm != r.name_norm)
                continue;
            if (std::find(ids.begin(), ids.end(), q.id.canonical) == ids.end())
                ids.push_back(q.id.canonical);
        }
        std::sort(ids.begin(), ids.end());
        size_t total = 0;
        for (const std::string& id : ids)
            total += freq(rows, r.name_norm, id);
        std::string top = ids.front();
        size_t f1 = freq(rows, r.name_norm, top);
        for (const std::string& id : ids) {
            size_t f = freq(rows, r.name_norm, id);
            if (f > f1) {
                f1 = f;
                top = id;
            }
        }
        size_t f2 = 0;
        for (const std::string& id : ids)
            if (id != top)
                f2 = std::max(f2, freq(rows, r.name_norm, id));
        bool outlier = ids.size() == 1 || (static_cast<double>(f1) > p * static_cast<double>(total) &&
                                           static_cast<double>(f1) >
                                               static_cast<double>(i) * static_cast<double>(f2));
        if (outlier && r.id.canonical == top)
            out.push_back(r);
    }
    return out;
}

struct Entity {
    std::string id;
    std::string name_raw;
    std::vector<std::string> urls;
};

inline std::vector<Entity> phase3(const std::vector<CandidateRow>& r2) {
    std::vector<std::string> ids;
    for (const CandidateRow& r : r2)
        if (std::find(ids.begin(), ids.end(), r.id.canonical) == ids.end())
            ids.push_back(r.id.canonical);
    std::sort(ids.begin(), ids.end());

    std::vector<Entity> out;
    for (const std::string& id : ids) {
        std::vector<CandidateRow> group;
        for (const CandidateRow& r : r2)
            if (r.id.canonical == id)
                group.push_back(r);

        size_t max_freq = 0;
        for (const CandidateRow& r : group)
            max_freq = std::max(max_freq, freq(group, r.name_norm, id));

        double max_score = -1e300;
        for (const CandidateRow& r : group)
            if (freq(group, r.name_norm, id) == max_freq)
                max_score = std::max(max_score, r.score);

        std::string winner_norm;
        for (const CandidateRow& r : group)
            if (freq(group, r.name_norm, id) == max_freq && r.score == max_score &&
                (winner_norm.empty() || r.name_norm < winner_norm))
                winner_norm = r.name_norm;

        Entity e;
        e.id = id;
        for (const CandidateRow& r : group) {
            if (r.name_norm != winner_norm || r.score != max_score)
                continue;
            if (e.name_raw.empty() || r.name_raw < e.name_raw)
                e.name_raw = r.name_raw;
            if (std::find(e.urls.begin(), e.urls.end(), r.url) == e.urls.end())
                e.urls.push_back(r.url);
        }
        std::sort(e.urls.begin(), e.urls.end());
        out.push_back(std::move(e));
    }
    return out;
}

// Random R1 fixtures with heavy key collisions so ties actually happen.
inline std::vector<CandidateRow> random_rows(std::mt19937_64& rng, size_t max_rows) {
    static const char* raw_names[] = {"Plastic",   "plastic",  "PLASTIC",    "Amphetamine",
                                      "Propionate", "Widget X", "Widget   x", "Gadget"};
    static const char* urls[] = {"http://a/1", "http://b/2", "http://c/3"};
    std::uniform_int_distribution<size_t> count(1, max_rows);
    std::uniform_int_distribution<int> id_pick(0, 5);
    std::uniform_int_distribution<size_t> name_pick(0, std::size(raw_names) - 1);
    std::uniform_int_distribution<size_t> url_pick(0, std::size(urls) - 1);
    std::uniform_int_distribution<int> score_pick(-3, 4);
    std::uniform_int_distribution<int> kind_pick(0, 1);

    ibex::IdTypeConfig cfg{false, ibex::Normalization::LettersOnly, false};
    std::vector<CandidateRow> rows;
    size_t n = count(rng);
    for (size_t k = 0; k < n; ++k) {
        CandidateRow row;
        row.id = ibex::ValidatedId{ibex::IdKind::Gtin, "ID" + std::to_string(id_pick(rng))};
        row.name_raw = raw_names[name_pick(rng)];
        row.name_norm = ibex::normalize_name(row.name_raw, cfg);
        row.score = score_pick(rng);
        row.url = urls[url_pick(rng)];
        row.record_kind = kind_pick(rng) ? ibex::RecordKind::Free : ibex::RecordKind::Detail;
        rows.push_back(std::move(row));
    }
    return rows;
}

// Wilson interval endpoints by bisection on the defining equation
// n (phat - p)^2 = z^2 p (1 - p), independent of the closed form.
inline std::pair<double, double> wilson_by_bisection(uint64_t successes, uint64_t n, double z) {
    double nn = static_cast<double>(n);
    double phat = static_cast<double>(successes) / nn;
    auto g = [&](double p) { return nn * (phat - p) * (phat - p) - z * z * p * (1.0 - p); };
    auto bisect = [&](double lo, double hi) {
        // g(lo) and g(hi) must bracket the root
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if ((g(lo) <= 0) == (g(mid) <= 0))
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    // g(phat) <= 0, g at -inf/+inf sides > 0; roots bracket phat
    double lo_bound = -1.0, hi_bound = 2.0;
    double low = bisect(lo_bound, phat);
    double high = bisect(hi_bound, phat);
    return {low, high};
}

} // namespace oracle

#endif
