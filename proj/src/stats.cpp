#include "ibex/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace ibex {

namespace {

std::string lower_copy(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<DomainCount> rank_counts(std::map<std::string, uint64_t>& counts, size_t k) {
    std::vector<DomainCount> out;
    out.reserve(counts.size());
    for (auto& [domain, count] : counts)
        out.push_back(DomainCount{domain, count});
    std::sort(out.begin(), out.end(), [](const DomainCount& a, const DomainCount& b) {
        if (a.entity_count != b.entity_count)
            return a.entity_count > b.entity_count;
        return a.domain < b.domain;
    });
    if (out.size() > k)
        out.resize(k);
    return out;
}

} // namespace

std::string url_host(std::string_view url) {
    size_t scheme = url.find("://");
    std::string_view rest = scheme == std::string_view::npos ? url : url.substr(scheme + 3);
    if (scheme == std::string_view::npos && url.find('/') == 0)
        return ""; // plain file path
    size_t end = rest.find_first_of("/?#");
    std::string_view authority = end == std::string_view::npos ? rest : rest.substr(0, end);
    size_t at = authority.rfind('@');
    if (at != std::string_view::npos)
        authority = authority.substr(at + 1);
    size_t colon = authority.find(':');
    if (colon != std::string_view::npos)
        authority = authority.substr(0, colon);
    if (scheme == std::string_view::npos && authority.find('.') == std::string_view::npos)
        return ""; // not url-shaped
    return lower_copy(authority);
}

std::vector<DomainCount> top_sources(const std::vector<EntityRow>& rows, size_t k) {
    std::map<std::string, uint64_t> counts;
    for (const EntityRow& row : rows) {
        std::set<std::string> hosts;
        for (const std::string& url : row.urls) {
            std::string host = url_host(url);
            if (!host.empty())
                hosts.insert(std::move(host));
        }
        for (const std::string& host : hosts)
            ++counts[host]; // one per distinct id per domain
    }
    return rank_counts(counts, k);
}

std::vector<DomainCount> top_email_domains(const std::vector<EntityRow>& rows, size_t k) {
    std::map<std::string, uint64_t> counts;
    for (const EntityRow& row : rows) {
        size_t at = row.id.canonical.find('@');
        if (at == std::string::npos)
            continue;
        ++counts[row.id.canonical.substr(at + 1)];
    }
    return rank_counts(counts, k);
}

namespace {

std::vector<std::string> whitespace_tokens(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        if (i > start)
            out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

// "Smith, John M" -> "John M Smith"
std::string reorder_inverted_name(const std::string& name) {
    size_t comma = name.find(',');
    if (comma == std::string::npos)
        return name;
    std::string last(name.substr(0, comma));
    std::string first(name.substr(comma + 1));
    while (!first.empty() && std::isspace(static_cast<unsigned char>(first.front())))
        first.erase(first.begin());
    while (!last.empty() && std::isspace(static_cast<unsigned char>(last.back())))
        last.pop_back();
    if (first.empty() || last.empty())
        return name;
    return first + " " + last;
}

std::vector<std::pair<std::string, uint64_t>> ranked(std::map<std::string, uint64_t>& tally) {
    std::vector<std::pair<std::string, uint64_t>> out(tally.begin(), tally.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

} // namespace

PersonNameStats common_person_names(const std::vector<EntityRow>& rows) {
    std::map<std::string, uint64_t> given, family, full;
    for (const EntityRow& row : rows) {
        std::string name = reorder_inverted_name(row.name_raw);
        std::vector<std::string> tokens = whitespace_tokens(name);
        if (tokens.empty())
            continue;
        ++given[tokens.front()];
        if (tokens.size() >= 2) {
            ++family[tokens.back()];
            std::string joined = tokens.front();
            for (size_t i = 1; i < tokens.size(); ++i)
                joined += " " + tokens[i];
            ++full[joined];
        }
    }
    PersonNameStats stats;
    stats.given = ranked(given);
    stats.family = ranked(family);
    stats.full = ranked(full);
    return stats;
}

Gs1PrefixTable Gs1PrefixTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open GS1 prefix table: " + path);
    Gs1PrefixTable table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        size_t t1 = line.find('\t');
        size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            continue;
        try {
            Range r;
            r.start = std::stoi(line.substr(0, t1));
            r.end = std::stoi(line.substr(t1 + 1, t2 - t1 - 1));
            r.label = line.substr(t2 + 1);
            table.ranges_.push_back(std::move(r));
        } catch (...) {
            continue;
        }
    }
    return table;
}

std::string Gs1PrefixTable::label_for(const std::string& prefix3) const {
    int value;
    try {
        value = std::stoi(prefix3);
    } catch (...) {
        return "unassigned";
    }
    for (const Range& r : ranges_)
        if (value >= r.start && value <= r.end)
            return r.label;
    return "unassigned";
}

std::vector<CountryCount> products_by_country(const std::vector<EntityRow>& rows,
                                              const Gs1PrefixTable& table) {
    std::map<std::string, uint64_t> counts;
    for (const EntityRow& row : rows) {
        auto prefix = gtin_country_prefix(row.id);
        if (prefix)
            ++counts[*prefix];
    }
    std::vector<CountryCount> out;
    out.reserve(counts.size());
    for (const auto& [prefix, count] : counts)
        out.push_back(CountryCount{prefix, table.label_for(prefix), count});
    std::sort(out.begin(), out.end(), [](const CountryCount& a, const CountryCount& b) {
        if (a.count != b.count)
            return a.count > b.count;
        return a.prefix < b.prefix;
    });
    return out;
}

namespace {

// uppercased alphanumeric tokens of a product title
std::set<std::string> title_tokens(const std::string& name) {
    std::set<std::string> tokens;
    std::string current;
    for (unsigned char c : name) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::toupper(c)));
        } else if (!current.empty()) {
            tokens.insert(current);
            current.clear();
        }
    }
    if (!current.empty())
        tokens.insert(current);
    return tokens;
}

} // namespace

std::vector<CompanyLabel> company_labels(const std::vector<EntityRow>& rows, int prefix_len) {
    if (prefix_len < 4 || prefix_len > 7)
        throw std::invalid_argument("company prefix length must be 4..7");

    // prefix group -> per-token product counts
    std::map<std::string, std::map<std::string, uint64_t>> group_tokens;
    std::map<std::string, uint64_t> group_sizes;
    for (const EntityRow& row : rows) {
        auto prefix = gtin_company_prefix(row.id, prefix_len);
        if (!prefix)
            continue;
        ++group_sizes[*prefix];
        for (const std::string& token : title_tokens(row.name_raw))
            ++group_tokens[*prefix][token];
    }

    std::map<std::string, uint64_t> groups_with_token;
    for (const auto& [prefix, tokens] : group_tokens)
        for (const auto& [token, count] : tokens)
            ++groups_with_token[token];

    double total_groups = static_cast<double>(group_sizes.size());
    std::vector<CompanyLabel> out;
    for (const auto& [prefix, tokens] : group_tokens) {
        if (group_sizes[prefix] < 2)
            continue;
        std::string best;
        double best_weight = 0.0;
        for (const auto& [token, count] : tokens) {
            uint64_t spread = groups_with_token[token];
            if (2 * spread > group_sizes.size())
                continue; // shared vocabulary, not a company marker
            double weight =
                static_cast<double>(count) * std::log(total_groups / static_cast<double>(spread));
            // ascending token order makes the first maximum the
            // lexicographic tie winner
            if (weight > best_weight) {
                best_weight = weight;
                best = token;
            }
        }
        if (!best.empty())
            out.push_back(CompanyLabel{prefix, best, group_sizes[prefix]});
    }
    return out;
}

} // namespace ibex
