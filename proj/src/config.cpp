#include "ibex/config.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace ibex {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

} // namespace

void load_config_file(const std::string& path, PipelineConfig& cfg) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "types")
                cfg.id_types = parse_type_list(value);
            else if (key == "outlier_i")
                cfg.outlier.i = std::stoi(value);
            else if (key == "outlier_p")
                cfg.outlier.p = std::stod(value);
            else if (key == "phase2_dedup")
                cfg.phase2_dedup = value == "1" || value == "true" || value == "yes";
            else if (key == "company_prefix_len")
                cfg.company_prefix_len = std::stoi(value);
            else if (key == "page_size_cap")
                cfg.page_size_cap = static_cast<size_t>(std::stoull(value));
            else if (key == "workers")
                cfg.worker_count = std::stoi(value);
            else if (key == "dictionary_path")
                cfg.dictionary_path = value;
            else if (key == "prefix_table_path")
                cfg.prefix_table_path = value;
            else if (key == "manifest_path")
                cfg.manifest_path = value;
            else if (key == "eval_seed")
                cfg.eval_seed = std::stoull(value);
            else
                throw std::runtime_error("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad value for " + key);
        }
        if (cfg.worker_count < 1)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": workers must be >= 1");
    }
}

std::vector<IdKind> parse_type_list(const std::string& spec) {
    std::vector<IdKind> kinds;
    size_t start = 0;
    while (start <= spec.size()) {
        size_t comma = spec.find(',', start);
        std::string name =
            trim(comma == std::string::npos ? spec.substr(start) : spec.substr(start, comma - start));
        if (!name.empty()) {
            auto kind = id_kind_from_name(name);
            if (!kind)
                throw std::runtime_error("unknown id type: " + name);
            kinds.push_back(*kind);
        }
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (kinds.empty())
        throw std::runtime_error("empty id type list");
    return kinds;
}

} // namespace ibex
