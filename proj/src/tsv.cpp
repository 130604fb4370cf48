#include "ibex/tsv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ibex {

std::string sanitize_field(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c == '\t' || c == '\n' || c == '\r')
            c = ' ';
    return out;
}

std::string format_score(double score) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", score);
    return buf;
}

std::string r1_row_string(const CandidateRow& row) {
    std::string out;
    out += sanitize_field(row.id.canonical);
    out += '\t';
    out += sanitize_field(row.name_raw);
    out += '\t';
    out += sanitize_field(row.name_norm);
    out += '\t';
    out += format_score(row.score);
    out += '\t';
    out += record_kind_name(row.record_kind);
    out += '\t';
    out += sanitize_field(row.url);
    return out;
}

void write_r1_row(std::ostream& out, const CandidateRow& row) {
    out << r1_row_string(row) << '\n';
}

void write_r1_file(const std::string& path, const std::vector<CandidateRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write: " + path);
    out << kR1Header << '\n';
    for (const CandidateRow& row : rows)
        write_r1_row(out, row);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

} // namespace

std::vector<CandidateRow> read_r1_file(const std::string& path, IdKind kind, TsvReadStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read: " + path);
    std::vector<CandidateRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> f = split_tabs(line);
        double score = 0.0;
        std::optional<RecordKind> rk;
        bool ok = f.size() == 6;
        if (ok) {
            try {
                score = std::stod(f[3]);
            } catch (...) {
                ok = false;
            }
            rk = record_kind_from_name(f[4]);
            ok = ok && rk.has_value() && !f[0].empty();
        }
        if (!ok) {
            if (stats)
                ++stats->malformed;
            continue;
        }
        CandidateRow row;
        row.id = ValidatedId{kind, f[0]};
        row.name_raw = f[1];
        row.name_norm = f[2];
        row.score = score;
        row.url = f[5];
        row.record_kind = *rk;
        rows.push_back(std::move(row));
        if (stats)
            ++stats->rows;
    }
    return rows;
}

void write_r3_file(const std::string& path, const std::vector<EntityRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write: " + path);
    out << kR3Header << '\n';
    for (const EntityRow& row : rows) {
        out << sanitize_field(row.id.canonical) << '\t' << sanitize_field(row.name_raw) << '\t';
        for (size_t i = 0; i < row.urls.size(); ++i) {
            if (i)
                out << ';';
            out << sanitize_field(row.urls[i]);
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::vector<EntityRow> read_r3_file(const std::string& path, IdKind kind, TsvReadStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read: " + path);
    std::vector<EntityRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> f = split_tabs(line);
        if (f.size() != 3 || f[0].empty()) {
            if (stats)
                ++stats->malformed;
            continue;
        }
        EntityRow row;
        row.id = ValidatedId{kind, f[0]};
        row.name_raw = f[1];
        size_t start = 0;
        while (start <= f[2].size() && !f[2].empty()) {
            size_t semi = f[2].find(';', start);
            std::string url = semi == std::string::npos ? f[2].substr(start)
                                                        : f[2].substr(start, semi - start);
            if (!url.empty())
                row.urls.push_back(std::move(url));
            if (semi == std::string::npos)
                break;
            start = semi + 1;
        }
        rows.push_back(std::move(row));
        if (stats)
            ++stats->rows;
    }
    return rows;
}

std::map<std::string, std::string> read_gold_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read: " + path);
    std::map<std::string, std::string> gold;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            continue;
        gold[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return gold;
}

} // namespace ibex
