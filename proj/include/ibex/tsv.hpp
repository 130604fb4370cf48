#ifndef IBEX_TSV_HPP
#define IBEX_TSV_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ibex/aggregate.hpp"

namespace ibex {

// Phase files are plain TSV: one '#'-prefixed header line, UTF-8, literal
// tabs in fields replaced by spaces at write time.

inline constexpr const char* kR1Header = "#id\tname_raw\tname_norm\tscore\trecord_kind\turl";
inline constexpr const char* kR3Header = "#id\tname\turls";

/// Replaces tabs, newlines and carriage returns with single spaces.
std::string sanitize_field(std::string_view s);

std::string format_score(double score);

void write_r1_row(std::ostream& out, const CandidateRow& row);
std::string r1_row_string(const CandidateRow& row);

/// Writes header plus rows. Throws std::runtime_error on I/O failure.
void write_r1_file(const std::string& path, const std::vector<CandidateRow>& rows);

struct TsvReadStats {
    uint64_t rows = 0;
    uint64_t malformed = 0;
};

/// Reads an R1/R2 file; malformed rows are counted and skipped.
std::vector<CandidateRow> read_r1_file(const std::string& path, IdKind kind, TsvReadStats* stats = nullptr);

/// R3: id TAB name TAB semicolon-joined sorted urls, sorted by id.
void write_r3_file(const std::string& path, const std::vector<EntityRow>& rows);

std::vector<EntityRow> read_r3_file(const std::string& path, IdKind kind, TsvReadStats* stats = nullptr);

/// Gold standard: id TAB name per line, '#' comments allowed.
std::map<std::string, std::string> read_gold_file(const std::string& path);

} // namespace ibex

#endif
