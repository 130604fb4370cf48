#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ibex/config.hpp"
#include "ibex/idspec.hpp"
#include "ibex/pipeline.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    int workers = 0; // 0 = keep config value
    double outlier_p = -1.0;
    int outlier_i = -1;
    int prefix_len = 0;
    std::string dictionary_path;
    std::string prefix_table_path;
    std::string manifest_path;
};

ibex::PipelineConfig build_config(const CommonFlags& flags) {
    ibex::PipelineConfig cfg;
    std::string path = flags.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("IBEX_CONFIG"))
            path = env;
    }
    if (!path.empty())
        ibex::load_config_file(path, cfg);
    if (flags.workers > 0)
        cfg.worker_count = flags.workers;
    if (flags.outlier_p >= 0.0)
        cfg.outlier.p = flags.outlier_p;
    if (flags.outlier_i >= 0)
        cfg.outlier.i = flags.outlier_i;
    if (flags.prefix_len > 0)
        cfg.company_prefix_len = flags.prefix_len;
    if (!flags.dictionary_path.empty())
        cfg.dictionary_path = flags.dictionary_path;
    if (!flags.prefix_table_path.empty())
        cfg.prefix_table_path = flags.prefix_table_path;
    if (!flags.manifest_path.empty())
        cfg.manifest_path = flags.manifest_path;
    return cfg;
}

ibex::IdKind kind_or_throw(const std::string& name) {
    auto kind = ibex::id_kind_from_name(name);
    if (!kind)
        throw CLI::ValidationError("--type", "unknown id type: " + name);
    return *kind;
}

std::string type_check(const std::string& name) {
    return ibex::id_kind_from_name(name) ? std::string() : "unknown id type: " + name;
}

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "key=value config file (default: $IBEX_CONFIG)");
    cmd->add_option("--workers", flags.workers, "phase-1 worker count");
    cmd->add_option("--outlier-i", flags.outlier_i, "outlier multiplier i");
    cmd->add_option("--outlier-p", flags.outlier_p, "outlier fraction p");
    cmd->add_option("--dict", flags.dictionary_path, "first-name dictionary path");
    cmd->add_option("--prefix-table", flags.prefix_table_path, "GS1 prefix table path");
    cmd->add_option("--manifest", flags.manifest_path,
                    "TSV manifest mapping directory files to urls");
}

void print_extract_counters(const ibex::ExtractCounters& c) {
    std::cerr << "pages=" << c.pages << " records=" << c.records << " ids=" << c.ids
              << " candidates=" << c.candidates << " skips=" << c.skips << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ibex - harvest uniquely identified entities from HTML corpora"};
    app.require_subcommand(1);

    CommonFlags flags;

    // validate
    auto* validate = app.add_subcommand("validate", "check one id string");
    std::string v_type, v_id;
    validate->add_option("type", v_type, "id type (gtin|cas|doi|email)")
        ->required()
        ->check(type_check);
    validate->add_option("id", v_id, "id string")->required();

    // extract
    auto* extract = app.add_subcommand("extract", "phase 1: corpus -> R1 candidates");
    std::string e_type, e_out;
    std::vector<std::string> e_inputs;
    extract->add_option("--type", e_type, "id type")->required()->check(type_check);
    extract->add_option("--out", e_out, "output R1 TSV")->required();
    extract->add_option("inputs", e_inputs, "WARC files, directories, or HTML files")->required();
    add_common(extract, flags);

    // filter
    auto* filter = app.add_subcommand("filter", "phase 2: R1 -> R2 outlier filter");
    std::string f_type, f_out, f_in;
    filter->add_option("--type", f_type, "id type")->required()->check(type_check);
    filter->add_option("--out", f_out, "output R2 TSV")->required();
    filter->add_option("r1", f_in, "input R1 TSV")->required();
    add_common(filter, flags);

    // resolve
    auto* resolve = app.add_subcommand("resolve", "phase 3: R2 -> R3 entity database");
    std::string r_type, r_out, r_in;
    resolve->add_option("--type", r_type, "id type")->required()->check(type_check);
    resolve->add_option("--out", r_out, "output R3 TSV")->required();
    resolve->add_option("r2", r_in, "input R2 TSV")->required();
    add_common(resolve, flags);

    // run
    auto* run = app.add_subcommand("run", "all phases for every enabled type");
    std::string run_types = "gtin,cas,doi,email", run_outdir;
    std::vector<std::string> run_inputs;
    run->add_option("--types", run_types, "comma-separated id types");
    run->add_option("--outdir", run_outdir, "output directory")->required();
    run->add_option("inputs", run_inputs, "WARC files, directories, or HTML files")->required();
    add_common(run, flags);

    // eval
    auto* eval = app.add_subcommand("eval", "compare a phase file against a gold standard");
    std::string ev_type, ev_phase, ev_gold;
    uint64_t ev_seed = 42;
    eval->add_option("--type", ev_type, "id type")->required()->check(type_check);
    eval->add_option("phase_file", ev_phase, "R1/R2/R3 TSV")->required();
    eval->add_option("gold", ev_gold, "gold TSV: id TAB name")->required();
    eval->add_option("--seed", ev_seed, "seed for the random candidate pick");
    add_common(eval, flags);

    // stats
    auto* stats = app.add_subcommand("stats", "analytics over an R3 file");
    std::string s_type, s_report, s_in, s_out;
    size_t s_top = 20;
    stats->add_option("--type", s_type, "id type")->required()->check(type_check);
    stats
        ->add_option("--report", s_report,
                     "sources|email-domains|names|countries|companies")
        ->required();
    stats->add_option("--top", s_top, "rows per ranking");
    stats->add_option("--out", s_out, "output file (default: stdout)");
    stats->add_option("r3", s_in, "input R3 TSV")->required();
    add_common(stats, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate) {
            std::string reason;
            auto id = ibex::validate_id(kind_or_throw(v_type), v_id, &reason);
            if (id)
                std::cout << "valid " << id->canonical << "\n";
            else
                std::cout << "invalid " << reason << "\n";
            return 0;
        }
        ibex::PipelineConfig cfg = build_config(flags);
        if (*extract) {
            auto counters = ibex::run_extract(e_inputs, kind_or_throw(e_type), e_out, cfg);
            print_extract_counters(counters);
        } else if (*filter) {
            auto c = ibex::run_filter(f_in, kind_or_throw(f_type), f_out, cfg);
            std::cerr << "rows_in=" << c.rows_in << " rows_out=" << c.rows_out
                      << " names_in=" << c.names_in << " names_kept=" << c.names_kept
                      << " names_dropped=" << c.names_in - c.names_kept
                      << " malformed=" << c.malformed << "\n";
        } else if (*resolve) {
            auto c = ibex::run_resolve(r_in, kind_or_throw(r_type), r_out);
            std::cerr << "rows_in=" << c.rows_in << " entities=" << c.entities
                      << " malformed=" << c.malformed << "\n";
        } else if (*run) {
            cfg.id_types = ibex::parse_type_list(run_types);
            auto outputs = ibex::run_all(run_inputs, run_outdir, cfg);
            print_extract_counters(outputs.extract);
            for (const std::string& f : outputs.files)
                std::cerr << "wrote " << f << "\n";
        } else if (*eval) {
            auto out = ibex::run_eval(ev_phase, ev_gold, kind_or_throw(ev_type), ev_seed);
            std::cout << "accuracy " << out.result.accuracy << " wilson95 [" << out.wilson_low
                      << ", " << out.wilson_high << "] recall " << out.result.recall << " (gold "
                      << out.result.gold_size << ", assigned " << out.result.assigned_on_gold
                      << ", correct " << out.result.correct << ")"
                      << (out.result.no_assignments ? " [no assignments]" : "") << "\n";
        } else if (*stats) {
            if (s_out.empty()) {
                ibex::run_stats(s_in, kind_or_throw(s_type), s_report, s_top, cfg, std::cout);
            } else {
                std::ofstream out(s_out, std::ios::binary);
                if (!out)
                    throw std::runtime_error("cannot write: " + s_out);
                ibex::run_stats(s_in, kind_or_throw(s_type), s_report, s_top, cfg, out);
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
