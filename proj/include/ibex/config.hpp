#ifndef IBEX_CONFIG_HPP
#define IBEX_CONFIG_HPP

#include <string>
#include <vector>

#include "ibex/aggregate.hpp"
#include "ibex/corpus.hpp"
#include "ibex/idspec.hpp"

namespace ibex {

#ifndef IBEX_DATA_DIR
#define IBEX_DATA_DIR ""
#endif

struct PipelineConfig {
    std::vector<IdKind> id_types = {IdKind::Gtin, IdKind::Cas, IdKind::Doi, IdKind::Email};
    OutlierParams outlier;                  // i = 3, p = 0.30
    bool phase2_dedup = false;              // count unique (id,name,url) triples
    int company_prefix_len = 4;
    size_t page_size_cap = kDefaultPageCap; // 4 MiB
    int worker_count = 1;
    std::string dictionary_path = std::string(IBEX_DATA_DIR) + "/first_names.txt";
    std::string prefix_table_path = std::string(IBEX_DATA_DIR) + "/gs1_prefixes.tsv";
    std::string manifest_path; // optional url manifest for directory inputs
    uint64_t eval_seed = 42; // random-candidate pick for R1/R2 evaluation
};

/// Applies a flat key=value file ('#' comments) on top of the defaults.
/// Unknown keys raise std::runtime_error.
void load_config_file(const std::string& path, PipelineConfig& cfg);

/// Parses a comma-separated type list ("gtin,cas"); throws on unknown
/// names.
std::vector<IdKind> parse_type_list(const std::string& spec);

} // namespace ibex

#endif
