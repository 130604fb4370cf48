#include "ibex/nerfind.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace ibex {

namespace {

std::string lower_copy(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_space(unsigned char c) {
    return std::isspace(c) != 0;
}

// A whitespace-delimited token, with leading/trailing punctuation split
// off so that "Widom," exposes the core "Widom".
struct WordToken {
    size_t core_begin = 0; // offsets into the source string
    size_t core_end = 0;
    std::string_view core;
    std::string_view trailing;
    bool has_leading = false; // punctuation before the core ("(John")
    bool is_comma = false;    // a bare "," token (commas are their own tokens)
};

// Splits on whitespace; commas terminate tokens and are emitted as tokens
// of their own.
std::vector<WordToken> word_tokens(std::string_view s, bool split_commas) {
    std::vector<WordToken> tokens;
    size_t i = 0;
    while (i < s.size()) {
        if (is_space(s[i])) {
            ++i;
            continue;
        }
        if (split_commas && s[i] == ',') {
            WordToken t;
            t.core_begin = t.core_end = i;
            t.is_comma = true;
            tokens.push_back(t);
            ++i;
            continue;
        }
        size_t start = i;
        while (i < s.size() && !is_space(s[i]) && !(split_commas && s[i] == ','))
            ++i;
        std::string_view raw = s.substr(start, i - start);
        size_t b = 0;
        while (b < raw.size() && !std::isalnum(static_cast<unsigned char>(raw[b])))
            ++b;
        size_t e = raw.size();
        while (e > b && !std::isalnum(static_cast<unsigned char>(raw[e - 1])))
            --e;
        WordToken t;
        t.core_begin = start + b;
        t.core_end = start + e;
        t.core = raw.substr(b, e - b);
        t.trailing = raw.substr(e);
        t.has_leading = b > 0;
        tokens.push_back(t);
    }
    return tokens;
}

bool has_long_word(std::string_view s, size_t min_len) {
    size_t run = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && !is_space(s[i])) {
            ++run;
        } else {
            if (run >= min_len)
                return true;
            run = 0;
        }
    }
    return false;
}

size_t count_words(std::string_view s) {
    size_t n = 0;
    bool in_word = false;
    for (char c : s) {
        bool ws = is_space(static_cast<unsigned char>(c));
        if (!ws && !in_word)
            ++n;
        in_word = !ws;
    }
    return n;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

} // namespace

FirstNameDictionary FirstNameDictionary::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open first-name dictionary: " + path);
    FirstNameDictionary dict;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::string_view name = trim(line);
        if (!name.empty())
            dict.names_.insert(lower_copy(name));
    }
    if (dict.names_.empty())
        throw std::runtime_error("first-name dictionary is empty: " + path);
    return dict;
}

FirstNameDictionary FirstNameDictionary::from_names(const std::vector<std::string>& names) {
    FirstNameDictionary dict;
    for (const std::string& n : names)
        dict.names_.insert(lower_copy(n));
    if (dict.names_.empty())
        throw std::runtime_error("first-name dictionary is empty");
    return dict;
}

bool FirstNameDictionary::contains(std::string_view token) const {
    return names_.count(lower_copy(token)) > 0;
}

PeriodicTable::PeriodicTable() {
    static const char* const kSymbols[] = {
        "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si",
        "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni",
        "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo",
        "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba",
        "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb",
        "Lu", "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po",
        "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf",
        "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn",
        "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};
    for (const char* s : kSymbols)
        symbols_.insert(s);
}

const PeriodicTable& PeriodicTable::instance() {
    static const PeriodicTable table;
    return table;
}

bool PeriodicTable::has_symbol(std::string_view symbol) const {
    return symbols_.count(std::string(symbol)) > 0;
}

bool looks_like_author_list(std::string_view s, const FirstNameDictionary& dict) {
    std::vector<WordToken> tokens = word_tokens(s, /*split_commas=*/true);
    if (tokens.empty())
        return false;
    size_t commas = 0;
    for (const WordToken& t : tokens) {
        if (t.is_comma) {
            ++commas;
            continue;
        }
        if (t.core.empty())
            continue;
        if (t.core.size() == 1 && std::isalpha(static_cast<unsigned char>(t.core[0]))) {
            // Single-letter abbreviations signal initials, with or without
            // a period. Bare "A" and "I" are ordinary English words and
            // must not kill titles ("A Simple Method for ...").
            char c = static_cast<char>(std::tolower(static_cast<unsigned char>(t.core[0])));
            bool has_period = !t.trailing.empty() && t.trailing[0] == '.';
            if (has_period || (c != 'a' && c != 'i'))
                return true;
        }
        if (dict.contains(t.core))
            return true;
    }
    return 3 * commas > tokens.size();
}

bool accept_name_gtin(std::string_view s, const ValidatedId& id, const FirstNameDictionary& dict) {
    if (s.empty() || s.size() > 250)
        return false;
    if (!std::isalnum(static_cast<unsigned char>(s[0])))
        return false;
    if (!has_long_word(s, 4))
        return false;
    if (is_isbn(id) && looks_like_author_list(s, dict))
        return false;
    return true;
}

bool accept_name_cas(std::string_view s, const PeriodicTable& pt) {
    if (s.empty() || s.size() > 250)
        return false;
    if (!has_long_word(s, 4))
        return false;
    for (unsigned char c : s) {
        if (std::isalnum(c) || std::isspace(c))
            continue;
        switch (c) {
        case '(':
        case ')':
        case '[':
        case ']':
        case '{':
        case '}':
        case '\'':
        case '"':
        case ',':
        case '.':
        case '-':
            continue;
        default:
            return false;
        }
    }
    return find_formula(s, pt).empty();
}

namespace {

bool is_cap_word(std::string_view core) {
    if (core.size() < 2)
        return false;
    if (!std::isupper(static_cast<unsigned char>(core[0])))
        return false;
    for (size_t i = 1; i < core.size(); ++i) {
        unsigned char c = core[i];
        if (!std::isalpha(c) && c != '-')
            return false;
    }
    return core.back() != '-';
}

bool is_initial(const WordToken& t) {
    return t.core.size() == 1 && std::isupper(static_cast<unsigned char>(t.core[0])) &&
           (t.trailing.empty() || t.trailing[0] == '.');
}

bool is_clean(const WordToken& t) {
    return t.trailing.empty();
}

bool is_given(const WordToken& t, const FirstNameDictionary& dict) {
    return is_cap_word(t.core) && dict.contains(t.core);
}

struct NameMatch {
    size_t first_token = 0;
    size_t token_count = 0;
    size_t raw_begin = 0;
    size_t raw_end = 0;
};

// "first middle last": one or two dictionary given names, an optional
// capitalized word or initial, then a capitalized last name.
bool match_forward(const std::vector<WordToken>& toks, size_t i, const FirstNameDictionary& dict,
                   NameMatch& out) {
    if (!is_given(toks[i], dict) || !is_clean(toks[i]))
        return false;
    size_t givens_max = i + 1 < toks.size() && is_given(toks[i + 1], dict) && is_clean(toks[i + 1]) &&
                                !toks[i + 1].has_leading
                            ? 2
                            : 1;
    for (size_t givens = givens_max; givens >= 1; --givens) {
        for (int middle = 1; middle >= 0; --middle) {
            size_t last_idx = i + givens + static_cast<size_t>(middle);
            if (last_idx >= toks.size())
                continue;
            if (middle) {
                const WordToken& m = toks[i + givens];
                if (m.has_leading)
                    continue;
                bool word = is_cap_word(m.core) && is_clean(m);
                if (!word && !is_initial(m))
                    continue;
            }
            const WordToken& last = toks[last_idx];
            if (last.is_comma || last.has_leading || !is_cap_word(last.core))
                continue;
            out.first_token = i;
            out.token_count = last_idx - i + 1;
            out.raw_begin = toks[i].core_begin;
            out.raw_end = last.core_end;
            return true;
        }
    }
    return false;
}

// "last, first middle".
bool match_inverted(const std::vector<WordToken>& toks, size_t i, const FirstNameDictionary& dict,
                    NameMatch& out) {
    const WordToken& last = toks[i];
    if (!is_cap_word(last.core) || !is_clean(last))
        return false;
    size_t next = i + 1;
    if (next >= toks.size() || !toks[next].is_comma)
        return false;
    ++next;
    if (next >= toks.size() || !is_given(toks[next], dict) || toks[next].has_leading)
        return false;
    size_t end = next; // last consumed token
    if (end + 1 < toks.size() && is_given(toks[end + 1], dict) && !toks[end + 1].has_leading &&
        is_clean(toks[end]))
        ++end;
    if (end + 1 < toks.size() && is_clean(toks[end]) && !toks[end + 1].has_leading &&
        ((is_cap_word(toks[end + 1].core) && !is_given(toks[end + 1], dict)) ||
         is_initial(toks[end + 1])))
        ++end;
    out.first_token = i;
    out.token_count = end - i + 1;
    out.raw_begin = last.core_begin;
    out.raw_end = toks[end].core_end;
    return true;
}

} // namespace

std::vector<NameCandidate> find_names_email(std::string_view s, const ValidatedId& id,
                                            const FirstNameDictionary& dict) {
    std::vector<NameCandidate> found;
    std::string_view local;
    size_t at = id.canonical.find('@');
    if (at != std::string::npos)
        local = std::string_view(id.canonical).substr(0, at);

    std::vector<WordToken> toks = word_tokens(s, /*split_commas=*/true);
    size_t i = 0;
    while (i < toks.size()) {
        if (toks[i].is_comma || toks[i].core.empty()) {
            ++i;
            continue;
        }
        NameMatch m;
        bool matched = match_inverted(toks, i, dict, m) || match_forward(toks, i, dict, m);
        if (!matched) {
            ++i;
            continue;
        }
        // Keep only names that overlap the address: some token of length
        // >= 3 occurs in the local part.
        bool overlaps = false;
        for (size_t k = m.first_token; k < m.first_token + m.token_count; ++k) {
            const WordToken& t = toks[k];
            if (t.is_comma || t.core.size() < 3)
                continue;
            if (local.find(lower_copy(t.core)) != std::string_view::npos) {
                overlaps = true;
                break;
            }
        }
        if (overlaps) {
            std::string raw(s.substr(m.raw_begin, m.raw_end - m.raw_begin));
            if (!raw.empty() && raw.size() <= 250)
                found.push_back(NameCandidate{std::move(raw), 0});
        }
        i = m.first_token + m.token_count;
    }
    return found;
}

std::vector<NameCandidate> find_names_doi(std::string_view s, const FirstNameDictionary& dict) {
    static const std::string_view separators = ".;\"?!";
    std::vector<NameCandidate> found;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && separators.find(s[i]) == std::string_view::npos)
            continue;
        std::string_view segment = trim(s.substr(start, i - start));
        start = i + 1;
        if (segment.empty() || segment.size() > 250)
            continue;
        if (count_words(segment) < 4)
            continue;
        if (looks_like_author_list(segment, dict))
            continue;
        found.push_back(NameCandidate{std::string(segment), 0});
    }
    return found;
}

namespace {

// Parses a run of units at `pos`: element symbols with optional counts or
// bracketed subgroups. Returns the unit count, or -1 if the text cannot
// be decomposed. Longest element symbol wins at each step.
int parse_formula_units(std::string_view s, size_t& pos, const PeriodicTable& pt, char closer) {
    int units = 0;
    while (pos < s.size()) {
        char c = s[pos];
        if (c == closer)
            return units;
        if (c == '(' || c == '[') {
            char want = c == '(' ? ')' : ']';
            ++pos;
            int inner = parse_formula_units(s, pos, pt, want);
            if (inner < 1 || pos >= s.size() || s[pos] != want)
                return -1;
            ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            ++units;
            continue;
        }
        if (std::isupper(static_cast<unsigned char>(c))) {
            size_t len = 0;
            if (pos + 1 < s.size() && std::islower(static_cast<unsigned char>(s[pos + 1])) &&
                pt.has_symbol(s.substr(pos, 2)))
                len = 2;
            else if (pt.has_symbol(s.substr(pos, 1)))
                len = 1;
            if (len == 0)
                return -1;
            pos += len;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                ++pos;
            ++units;
            continue;
        }
        return -1;
    }
    return units;
}

} // namespace

std::vector<std::string> find_formula(std::string_view s, const PeriodicTable& pt) {
    std::vector<std::string> formulas;
    size_t i = 0;
    while (i < s.size()) {
        if (is_space(s[i])) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < s.size() && !is_space(s[i]))
            ++i;
        std::string_view token = s.substr(start, i - start);
        size_t pos = 0;
        int units = parse_formula_units(token, pos, pt, '\0');
        if (units >= 2 && pos == token.size())
            formulas.emplace_back(token);
    }
    return formulas;
}

} // namespace ibex
