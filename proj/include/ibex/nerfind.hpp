#ifndef IBEX_NERFIND_HPP
#define IBEX_NERFIND_HPP

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ibex/idspec.hpp"

namespace ibex {

// One name candidate extracted from a record text frame.
struct NameCandidate {
    std::string raw;
    int record_offset = 0; // index of the source text frame within its record
};

/// Dictionary of given names, lookups case-insensitive.
class FirstNameDictionary {
public:
    // File format: UTF-8, one name per line, '#' starts a comment.
    // Throws std::runtime_error if the file is unreadable or empty.
    static FirstNameDictionary load(const std::string& path);
    static FirstNameDictionary from_names(const std::vector<std::string>& names);

    bool contains(std::string_view token) const;
    size_t size() const { return names_.size(); }

private:
    std::unordered_set<std::string> names_; // lowercased
};

/// The 118 IUPAC element symbols, matched case-sensitively.
class PeriodicTable {
public:
    static const PeriodicTable& instance();
    bool has_symbol(std::string_view symbol) const;

private:
    PeriodicTable();
    std::unordered_set<std::string> symbols_;
};

/// True for strings that look like an author name or a list of author
/// names: a dictionary given name as a standalone token, a single-letter
/// abbreviation, or a token stream that is more than one third commas.
bool looks_like_author_list(std::string_view s, const FirstNameDictionary& dict);

bool accept_name_gtin(std::string_view s, const ValidatedId& id, const FirstNameDictionary& dict);

bool accept_name_cas(std::string_view s, const PeriodicTable& pt = PeriodicTable::instance());

std::vector<NameCandidate> find_names_email(std::string_view s, const ValidatedId& id,
                                            const FirstNameDictionary& dict);

std::vector<NameCandidate> find_names_doi(std::string_view s, const FirstNameDictionary& dict);

/// Whitespace-delimited tokens of s that fully decompose into chemical
/// element symbols with optional counts and bracketed subgroups, at least
/// two units long ("H2O", "Cd5Cl(PO4)3").
std::vector<std::string> find_formula(std::string_view s,
                                      const PeriodicTable& pt = PeriodicTable::instance());

} // namespace ibex

#endif
