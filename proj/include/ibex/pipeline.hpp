#ifndef IBEX_PIPELINE_HPP
#define IBEX_PIPELINE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ibex/aggregate.hpp"
#include "ibex/config.hpp"
#include "ibex/nerfind.hpp"

namespace ibex {

struct ExtractCounters {
    uint64_t pages = 0;
    uint64_t records = 0;
    uint64_t ids = 0;
    uint64_t candidates = 0;
    uint64_t skips = 0; // unreadable/corrupt/truncated pages
};

/// Phase 1 over a corpus: parses every page with `worker_count` workers,
/// extracts candidate rows for `kind`, and writes them sorted to
/// `out_path`. Per-page failures are counted, never fatal; unreadable
/// inputs throw std::runtime_error.
ExtractCounters run_extract(const std::vector<std::string>& inputs, IdKind kind,
                            const std::string& out_path, const PipelineConfig& cfg);

struct FilterCounters {
    uint64_t rows_in = 0;
    uint64_t rows_out = 0;
    uint64_t names_in = 0;   // distinct normalized names
    uint64_t names_kept = 0;
    uint64_t malformed = 0;
};

FilterCounters run_filter(const std::string& r1_path, IdKind kind, const std::string& out_path,
                          const PipelineConfig& cfg);

struct ResolveCounters {
    uint64_t rows_in = 0;
    uint64_t entities = 0;
    uint64_t malformed = 0;
};

ResolveCounters run_resolve(const std::string& r2_path, IdKind kind, const std::string& out_path);

struct RunOutputs {
    std::vector<std::string> files; // r1/r2/r3 per type, in order
    ExtractCounters extract;
};

/// All phases for every enabled type; output files land in outdir as
/// r1_<type>.tsv, r2_<type>.tsv, r3_<type>.tsv. One corpus pass serves
/// all types. Deterministic across runs and worker counts.
RunOutputs run_all(const std::vector<std::string>& inputs, const std::string& outdir,
                   const PipelineConfig& cfg);

struct EvalOutput {
    EvalResult result;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

/// Compares a phase file against a gold TSV. R3 files contribute their
/// resolved name per id; R1/R2 files contribute one candidate per id
/// picked at random (seeded) to simulate a guess. Names are compared
/// after normalization.
EvalOutput run_eval(const std::string& phase_file, const std::string& gold_path, IdKind kind,
                    uint64_t seed);

/// Stats reports over an R3 file: "sources", "email-domains", "names",
/// "countries", "companies". Writes ranked TSV rows to `out`.
void run_stats(const std::string& r3_path, IdKind kind, const std::string& report, size_t top_k,
               const PipelineConfig& cfg, std::ostream& out);

} // namespace ibex

#endif
