#include "ibex/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "ibex/corpus.hpp"
#include "ibex/records.hpp"
#include "ibex/stats.hpp"
#include "ibex/tsv.hpp"

namespace fs = std::filesystem;

namespace ibex {

namespace {

class BoundedQueue {
public:
    explicit BoundedQueue(size_t cap) : cap_(cap) {}

    void push(PageItem&& item) {
        std::unique_lock lock(mu_);
        not_full_.wait(lock, [&] { return items_.size() < cap_; });
        items_.push_back(std::move(item));
        not_empty_.notify_one();
    }

    bool pop(PageItem& out) {
        std::unique_lock lock(mu_);
        not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
        if (items_.empty())
            return false;
        out = std::move(items_.front());
        items_.erase(items_.begin());
        not_full_.notify_one();
        return true;
    }

    void close() {
        std::lock_guard lock(mu_);
        closed_ = true;
        not_empty_.notify_all();
    }

private:
    std::mutex mu_;
    std::condition_variable not_full_, not_empty_;
    std::vector<PageItem> items_;
    size_t cap_;
    bool closed_ = false;
};

struct SpillSet {
    // spill_paths[worker][kind index]
    std::vector<std::vector<std::string>> paths;
};

// Phase 1 shared by run_extract and run_all: one corpus pass, one parse
// per page, rows spilled per worker and kind, then merged by sorting.
ExtractCounters extract_to_files(const std::vector<std::string>& inputs,
                                 const std::vector<IdKind>& kinds,
                                 const std::vector<std::string>& out_paths,
                                 const PipelineConfig& cfg) {
    FirstNameDictionary dict = FirstNameDictionary::load(cfg.dictionary_path);

    // open all inputs up front so bad paths fail before any work
    std::optional<std::string> manifest;
    if (!cfg.manifest_path.empty())
        manifest = cfg.manifest_path;
    std::vector<std::unique_ptr<PageReader>> readers;
    for (const std::string& input : inputs)
        readers.push_back(open_corpus_input(input, cfg.page_size_cap, manifest));

    int workers = std::max(1, cfg.worker_count);
    BoundedQueue queue(256);
    std::atomic<uint64_t> pages{0}, records{0}, ids{0}, candidates{0}, skips{0};

    fs::path spill_dir = fs::path(out_paths.front()).parent_path();
    if (spill_dir.empty())
        spill_dir = ".";
    fs::create_directories(spill_dir);
    SpillSet spills;
    spills.paths.resize(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        for (size_t k = 0; k < kinds.size(); ++k)
            spills.paths[static_cast<size_t>(w)].push_back(
                (spill_dir / (".spill-" + std::to_string(w) + "-" + std::to_string(k) + ".tmp"))
                    .string());

    std::vector<std::thread> producer_threads;
    producer_threads.reserve(readers.size());
    std::atomic<size_t> producers_left{readers.size()};
    for (auto& reader : readers) {
        producer_threads.emplace_back([&queue, &producers_left, &skips, reader = reader.get()] {
            PageItem item;
            while (reader->next(item))
                queue.push(std::move(item));
            skips += reader->skipped() + reader->truncated();
            if (--producers_left == 0)
                queue.close();
        });
    }

    std::atomic<bool> spill_error{false};
    std::vector<std::thread> worker_threads;
    for (int w = 0; w < workers; ++w) {
        worker_threads.emplace_back([&, w] {
            std::vector<std::ofstream> outs;
            for (const std::string& p : spills.paths[static_cast<size_t>(w)])
                outs.emplace_back(p, std::ios::binary);
            PageItem item;
            while (queue.pop(item)) {
                try {
                    FrameNode tree = parse_page(item.body);
                    for (size_t k = 0; k < kinds.size(); ++k) {
                        PageExtractStats stats;
                        std::vector<CandidateRow> rows =
                            extract_r1_from_tree(tree, item.url, kinds[k], dict, &stats);
                        records += stats.records;
                        ids += stats.ids;
                        candidates += rows.size();
                        for (const CandidateRow& row : rows)
                            outs[k] << r1_row_string(row) << '\n';
                    }
                    ++pages;
                } catch (const std::exception&) {
                    ++skips; // a broken page never stops the run
                }
            }
            for (std::ofstream& out : outs)
                if (!out)
                    spill_error = true;
        });
    }
    for (auto& t : producer_threads)
        t.join();
    for (auto& t : worker_threads)
        t.join();
    if (spill_error)
        throw std::runtime_error("failed writing extraction spill files");

    // deterministic merge: sort all spill rows per kind
    for (size_t k = 0; k < kinds.size(); ++k) {
        std::vector<std::string> lines;
        for (int w = 0; w < workers; ++w) {
            const std::string& spill = spills.paths[static_cast<size_t>(w)][k];
            std::ifstream in(spill, std::ios::binary);
            std::string line;
            while (std::getline(in, line))
                lines.push_back(line);
            in.close();
            fs::remove(spill);
        }
        std::sort(lines.begin(), lines.end());
        std::ofstream out(out_paths[k], std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write: " + out_paths[k]);
        out << kR1Header << '\n';
        for (const std::string& line : lines)
            out << line << '\n';
        if (!out)
            throw std::runtime_error("write failed: " + out_paths[k]);
    }

    ExtractCounters counters;
    counters.pages = pages;
    counters.records = records;
    counters.ids = ids;
    counters.candidates = candidates;
    counters.skips = skips;
    return counters;
}

} // namespace

ExtractCounters run_extract(const std::vector<std::string>& inputs, IdKind kind,
                            const std::string& out_path, const PipelineConfig& cfg) {
    return extract_to_files(inputs, {kind}, {out_path}, cfg);
}

FilterCounters run_filter(const std::string& r1_path, IdKind kind, const std::string& out_path,
                          const PipelineConfig& cfg) {
    TsvReadStats read_stats;
    std::vector<CandidateRow> rows = read_r1_file(r1_path, kind, &read_stats);

    Phase2Options options;
    options.outlier = cfg.outlier;
    options.dedup_counting = cfg.phase2_dedup;
    std::vector<CandidateRow> kept = phase2_filter(rows, options, id_type(kind).config);

    std::set<std::string> names_in, names_out;
    for (const CandidateRow& row : rows)
        if (!row.name_norm.empty())
            names_in.insert(row.name_norm);
    for (const CandidateRow& row : kept)
        names_out.insert(row.name_norm);

    write_r1_file(out_path, kept);

    FilterCounters counters;
    counters.rows_in = rows.size();
    counters.rows_out = kept.size();
    counters.names_in = names_in.size();
    counters.names_kept = names_out.size();
    counters.malformed = read_stats.malformed;
    return counters;
}

ResolveCounters run_resolve(const std::string& r2_path, IdKind kind, const std::string& out_path) {
    TsvReadStats read_stats;
    std::vector<CandidateRow> rows = read_r1_file(r2_path, kind, &read_stats);
    std::vector<EntityRow> entities = phase3_resolve(rows);
    write_r3_file(out_path, entities);

    ResolveCounters counters;
    counters.rows_in = rows.size();
    counters.entities = entities.size();
    counters.malformed = read_stats.malformed;
    return counters;
}

RunOutputs run_all(const std::vector<std::string>& inputs, const std::string& outdir,
                   const PipelineConfig& cfg) {
    fs::create_directories(outdir);
    std::vector<std::string> r1_paths;
    for (IdKind kind : cfg.id_types)
        r1_paths.push_back((fs::path(outdir) / ("r1_" + id_type(kind).canonical_name + ".tsv")).string());

    RunOutputs outputs;
    outputs.extract = extract_to_files(inputs, cfg.id_types, r1_paths, cfg);

    for (size_t k = 0; k < cfg.id_types.size(); ++k) {
        IdKind kind = cfg.id_types[k];
        const std::string& name = id_type(kind).canonical_name;
        std::string r2 = (fs::path(outdir) / ("r2_" + name + ".tsv")).string();
        std::string r3 = (fs::path(outdir) / ("r3_" + name + ".tsv")).string();
        run_filter(r1_paths[k], kind, r2, cfg);
        run_resolve(r2, kind, r3);
        outputs.files.push_back(r1_paths[k]);
        outputs.files.push_back(r2);
        outputs.files.push_back(r3);
    }
    return outputs;
}

EvalOutput run_eval(const std::string& phase_file, const std::string& gold_path, IdKind kind,
                    uint64_t seed) {
    std::ifstream probe(phase_file, std::ios::binary);
    if (!probe)
        throw std::runtime_error("cannot read: " + phase_file);
    std::string header;
    std::getline(probe, header);
    probe.close();

    std::map<std::string, std::string> assigned;
    if (header.rfind("#id\tname_raw", 0) == 0) {
        // candidate file: simulate a guess with one random pick per id
        std::vector<CandidateRow> rows = read_r1_file(phase_file, kind, nullptr);
        std::map<std::string, std::vector<const CandidateRow*>> by_id;
        for (const CandidateRow& row : rows)
            by_id[row.id.canonical].push_back(&row);
        std::mt19937_64 rng(seed);
        for (const auto& [id, group] : by_id) {
            std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
            assigned[id] = group[pick(rng)]->name_raw;
        }
    } else {
        for (const EntityRow& row : read_r3_file(phase_file, kind, nullptr))
            assigned[row.id.canonical] = row.name_raw;
    }

    std::map<std::string, std::string> gold = read_gold_file(gold_path);
    const IdTypeConfig& cfg = id_type(kind).config;
    NameMatcher matcher = [&cfg](const std::string& a, const std::string& b) {
        return normalize_name(a, cfg) == normalize_name(b, cfg);
    };

    EvalOutput out;
    out.result = evaluate(assigned, gold, matcher);
    if (out.result.assigned_on_gold > 0) {
        auto [low, high] = wilson_interval(out.result.correct, out.result.assigned_on_gold, 1.96);
        out.wilson_low = low;
        out.wilson_high = high;
    }
    return out;
}

void run_stats(const std::string& r3_path, IdKind kind, const std::string& report, size_t top_k,
               const PipelineConfig& cfg, std::ostream& out) {
    std::vector<EntityRow> rows = read_r3_file(r3_path, kind, nullptr);

    auto write_ranked = [&out](const auto& list, auto&& key_of, auto&& count_of) {
        out << "#rank\tkey\tcount\n";
        size_t rank = 1;
        for (const auto& item : list)
            out << rank++ << '\t' << key_of(item) << '\t' << count_of(item) << '\n';
    };

    if (report == "sources") {
        write_ranked(top_sources(rows, top_k), [](const DomainCount& d) { return d.domain; },
                     [](const DomainCount& d) { return d.entity_count; });
    } else if (report == "email-domains") {
        write_ranked(top_email_domains(rows, top_k), [](const DomainCount& d) { return d.domain; },
                     [](const DomainCount& d) { return d.entity_count; });
    } else if (report == "names") {
        PersonNameStats stats = common_person_names(rows);
        auto emit = [&](const char* section, const std::vector<std::pair<std::string, uint64_t>>& list) {
            out << "#" << section << "\trank\tkey\tcount\n";
            size_t rank = 1;
            for (const auto& [name, count] : list) {
                if (rank > top_k)
                    break;
                out << section << '\t' << rank++ << '\t' << name << '\t' << count << '\n';
            }
        };
        emit("given", stats.given);
        emit("family", stats.family);
        emit("full", stats.full);
    } else if (report == "countries") {
        Gs1PrefixTable table = Gs1PrefixTable::load(cfg.prefix_table_path);
        std::vector<CountryCount> list = products_by_country(rows, table);
        if (list.size() > top_k)
            list.resize(top_k);
        write_ranked(list,
                     [](const CountryCount& c) { return c.prefix + " " + c.label; },
                     [](const CountryCount& c) { return c.count; });
    } else if (report == "companies") {
        std::vector<CompanyLabel> labels = company_labels(rows, cfg.company_prefix_len);
        std::sort(labels.begin(), labels.end(), [](const CompanyLabel& a, const CompanyLabel& b) {
            if (a.products != b.products)
                return a.products > b.products;
            return a.prefix < b.prefix;
        });
        if (labels.size() > top_k)
            labels.resize(top_k);
        write_ranked(labels, [](const CompanyLabel& l) { return l.prefix + " " + l.term; },
                     [](const CompanyLabel& l) { return l.products; });
    } else {
        throw std::runtime_error("unknown report: " + report);
    }
}

} // namespace ibex
