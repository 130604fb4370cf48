#ifndef IBEX_STATS_HPP
#define IBEX_STATS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ibex/aggregate.hpp"

namespace ibex {

struct DomainCount {
    std::string domain;
    uint64_t entity_count = 0; // distinct ids, not mentions
};

/// Host portion of a url, lowercased: scheme, userinfo, port and path
/// stripped. Empty when there is no host (file paths).
std::string url_host(std::string_view url);

/// Domains ranked by how many distinct entities their pages mention.
std::vector<DomainCount> top_sources(const std::vector<EntityRow>& rows, size_t k);

/// Email providers ranked by distinct addresses (the address's own domain
/// part, not the page host).
std::vector<DomainCount> top_email_domains(const std::vector<EntityRow>& rows, size_t k);

struct PersonNameStats {
    std::vector<std::pair<std::string, uint64_t>> given;
    std::vector<std::pair<std::string, uint64_t>> family;
    std::vector<std::pair<std::string, uint64_t>> full;
};

/// Tallies given / family / full names over resolved email entities.
/// "Last, First" forms are reordered to "First Last" before counting.
PersonNameStats common_person_names(const std::vector<EntityRow>& rows);

/// GS1 prefix ranges mapped to country labels. File rows: start TAB end
/// TAB label. Unknown prefixes map to "unassigned".
class Gs1PrefixTable {
public:
    static Gs1PrefixTable load(const std::string& path);
    std::string label_for(const std::string& prefix3) const;

private:
    struct Range {
        int start;
        int end;
        std::string label;
    };
    std::vector<Range> ranges_;
};

struct CountryCount {
    std::string prefix; // 3-digit GS1 prefix
    std::string label;
    uint64_t count = 0;
};

/// Distinct GTINs grouped by country prefix, descending. Ids without a
/// decodable prefix (GTIN-8 origin) are not counted.
std::vector<CountryCount> products_by_country(const std::vector<EntityRow>& rows,
                                              const Gs1PrefixTable& table);

struct CompanyLabel {
    std::string prefix;
    std::string term;
    uint64_t products = 0;
};

/// Per company-prefix group, the name token that is frequent inside the
/// group but rare in others (frequency times log inverse group
/// frequency). Groups with fewer than two products get no label; a token
/// present in more than half of all groups is never chosen.
std::vector<CompanyLabel> company_labels(const std::vector<EntityRow>& rows, int prefix_len);

} // namespace ibex

#endif
