#include "krboot/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "krboot/engine.hpp"
#include "krboot/errors.hpp"
#include "krboot/extremal_search.hpp"
#include "krboot/families.hpp"
#include "krboot/graph_io.hpp"
#include "krboot/random_model.hpp"
#include "krboot/source_analysis.hpp"

namespace krboot::cli {

namespace {

constexpr const char* kVersion =
    "krboot 1.0.0 (formats: trace/1 layout/1 sources/1 audit/1 search/1 "
    "threshold/1)";

// --graph accepts a file path, "-" for stdin, or the edge-list text itself.
Graph load_graph(const std::string& source) {
    if (source == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return graph_from_text(buf.str());
    }
    std::error_code ec;
    if (std::filesystem::exists(source, ec)) {
        return read_graph_file(source);
    }
    return graph_from_text(source);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text,
                  std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw InputError("cannot write file: " + path);
    }
    f << text;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
        } else {
            out.push_back(c);
        }
    }
    return out;
}

int print_verification(const VerificationReport& report, bool json,
                       std::ostream& out) {
    if (json) {
        std::ostringstream buf;
        buf << "{\n  \"ok\": " << (report.ok ? "true" : "false")
            << ",\n  \"violations\": [";
        for (std::size_t i = 0; i < report.violations.size(); ++i) {
            if (i) buf << ",";
            buf << "\n    {\"where\": \""
                << json_escape(report.violations[i].where)
                << "\", \"detail\": \""
                << json_escape(report.violations[i].detail) << "\"}";
        }
        if (!report.violations.empty()) buf << "\n  ";
        buf << "]\n}\n";
        out << buf.str();
    } else if (report.ok) {
        out << "ok\n";
    } else {
        out << "violations " << report.violations.size() << "\n";
        for (const Violation& v : report.violations) {
            out << "  " << v.where << ": " << v.detail << "\n";
        }
    }
    return report.ok ? 0 : 1;
}

struct CommonSearch {
    int n = 0;
    int r = 0;
    SearchOptions options;
};

void add_search_flags(CLI::App* cmd, const std::shared_ptr<CommonSearch>& s) {
    cmd->add_option("--n", s->n, "number of vertices")->required();
    cmd->add_option("--r", s->r, "clique order of the process")->required();
    cmd->add_option("--budget", s->options.budget,
                    "largest n the scan may enumerate (default 7, max 8)");
    cmd->add_option("--shards", s->options.shards,
                    "split the enumeration into this many slices");
    cmd->add_option("--shard-index", s->options.shard_index,
                    "which slice to scan");
    cmd->add_option("--workers", s->options.workers,
                    "worker threads (0 = hardware)");
    cmd->add_flag("--dedup", s->options.dedup,
                  "scan one representative per isomorphism class");
    cmd->add_option("--witness-cap", s->options.witness_cap,
                    "extremal graphs kept alongside the value");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{
        "exact engine and extremal laboratory for clique bootstrap "
        "percolation"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    int exit_code = 0;

    // close / tau ---------------------------------------------------------
    struct CloseArgs {
        int r = 0;
        std::string graph;
        bool json = false;
    };
    auto close_args = std::make_shared<CloseArgs>();
    CLI::App* close_cmd =
        app.add_subcommand("close", "run the process to its fixed point");
    close_cmd->add_option("--r", close_args->r, "clique order")->required();
    close_cmd->add_option("--graph", close_args->graph,
                          "edge list: path, '-' for stdin, or inline text")
        ->required();
    close_cmd->add_flag("--json", close_args->json, "emit the trace as JSON");
    close_cmd->callback([close_args, &out]() {
        Graph g = load_graph(close_args->graph);
        InfectionTrace trace = close(g, ProcessParams{close_args->r});
        if (close_args->json) {
            out << trace_to_json(trace);
        } else {
            out << "n " << trace.n << "\n"
                << "r " << trace.r << "\n"
                << "tau " << trace.tau << "\n"
                << "percolates " << (trace.percolates ? "true" : "false")
                << "\n"
                << "edges_added " << trace.events.size() << "\n"
                << "closure_edges " << trace.closure.edge_count() << "\n";
        }
    });

    auto tau_args = std::make_shared<CloseArgs>();
    CLI::App* tau_cmd =
        app.add_subcommand("tau", "print the saturation time only");
    tau_cmd->add_option("--r", tau_args->r, "clique order")->required();
    tau_cmd->add_option("--graph", tau_args->graph,
                        "edge list: path, '-' for stdin, or inline text")
        ->required();
    tau_cmd->callback([tau_args, &out]() {
        Graph g = load_graph(tau_args->graph);
        out << saturation_time(g, ProcessParams{tau_args->r}) << "\n";
    });

    // gen -----------------------------------------------------------------
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a named graph");
    gen_cmd->require_subcommand(1);

    struct GenArgs {
        int r = 0;
        int t = 0;
        int h = 0;
        long long m = 0;
        std::string out_path;
        std::string layout_path;
    };

    auto krm_args = std::make_shared<GenArgs>();
    CLI::App* krm_cmd = gen_cmd->add_subcommand(
        "krminuse", "complete graph on r vertices minus one edge");
    krm_cmd->add_option("--r", krm_args->r, "clique order")->required();
    krm_cmd->add_option("--out", krm_args->out_path, "output path (default stdout)");
    krm_cmd->callback([krm_args, &out]() {
        write_output(krm_args->out_path,
                     graph_to_text(build_kr_minus_e(krm_args->r)), out);
    });

    auto path_args = std::make_shared<GenArgs>();
    CLI::App* path_cmd =
        gen_cmd->add_subcommand("path", "path with m edges");
    path_cmd->add_option("--m", path_args->m, "edge count")->required();
    path_cmd->add_option("--out", path_args->out_path,
                         "output path (default stdout)");
    path_cmd->callback([path_args, &out]() {
        write_output(path_args->out_path,
                     graph_to_text(build_path(path_args->m)), out);
    });

    auto ht_args = std::make_shared<GenArgs>();
    CLI::App* ht_cmd = gen_cmd->add_subcommand(
        "ht", "clique plus chain attaining the largest saturation time");
    ht_cmd->add_option("--r", ht_args->r, "clique order")->required();
    ht_cmd->add_option("--t", ht_args->t, "target saturation time")
        ->required();
    ht_cmd->add_option("--out", ht_args->out_path,
                       "output path (default stdout)");
    ht_cmd->add_option("--layout", ht_args->layout_path,
                       "also write the layout JSON here");
    ht_cmd->callback([ht_args, &out]() {
        auto [g, layout] = build_ht(ht_args->r, ht_args->t);
        write_output(ht_args->out_path, graph_to_text(g), out);
        if (!ht_args->layout_path.empty()) {
            write_output(ht_args->layout_path, ht_layout_to_json(layout), out);
        }
    });

    auto lh_args = std::make_shared<GenArgs>();
    CLI::App* lh_cmd = gen_cmd->add_subcommand(
        "lh", "layered block construction with long saturation time");
    lh_cmd->set_help_flag("--help", "print help");  // frees -h for --h below
    lh_cmd->add_option("--r", lh_args->r, "clique order (at least 5)")
        ->required();
    lh_cmd->add_option("--h", lh_args->h, "layer count (prime, at most r-2)")
        ->required();
    lh_cmd->add_option("--out", lh_args->out_path,
                       "output path (default stdout)");
    lh_cmd->add_option("--layout", lh_args->layout_path,
                       "also write the layout JSON here");
    lh_cmd->callback([lh_args, &out]() {
        auto [g, layout] = build_lh(lh_args->r, lh_args->h);
        write_output(lh_args->out_path, graph_to_text(g), out);
        if (!lh_args->layout_path.empty()) {
            write_output(lh_args->layout_path, lh_layout_to_json(layout), out);
        }
    });

    // verify ----------------------------------------------------------------
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "check a graph against a layout");
    verify_cmd->require_subcommand(1);

    struct VerifyArgs {
        std::string graph;
        std::string layout;
        bool json = false;
    };
    auto vht_args = std::make_shared<VerifyArgs>();
    CLI::App* vht_cmd = verify_cmd->add_subcommand(
        "ht", "verify the clique-plus-chain conditions");
    vht_cmd->add_option("--graph", vht_args->graph, "edge list")->required();
    vht_cmd->add_option("--layout", vht_args->layout, "layout JSON path")
        ->required();
    vht_cmd->add_flag("--json", vht_args->json, "emit the report as JSON");
    vht_cmd->callback([vht_args, &out, &exit_code]() {
        Graph g = load_graph(vht_args->graph);
        HtLayout layout = ht_layout_from_json(slurp(vht_args->layout));
        exit_code =
            print_verification(verify_ht(g, layout), vht_args->json, out);
    });

    auto vlh_args = std::make_shared<VerifyArgs>();
    CLI::App* vlh_cmd = verify_cmd->add_subcommand(
        "lh", "verify the layered block construction");
    vlh_cmd->add_option("--graph", vlh_args->graph, "edge list")->required();
    vlh_cmd->add_option("--layout", vlh_args->layout, "layout JSON path")
        ->required();
    vlh_cmd->add_flag("--json", vlh_args->json, "emit the report as JSON");
    vlh_cmd->callback([vlh_args, &out, &exit_code]() {
        Graph g = load_graph(vlh_args->graph);
        LhLayout layout = lh_layout_from_json(slurp(vlh_args->layout));
        exit_code =
            print_verification(verify_lh(g, layout), vlh_args->json, out);
    });

    // sources / audit -------------------------------------------------------
    struct SourceArgs {
        int r = 0;
        std::string graph;
        bool json = false;
        std::uint64_t max_cliques = 200000;
    };
    auto src_args = std::make_shared<SourceArgs>();
    CLI::App* src_cmd = app.add_subcommand(
        "sources", "list the infection seeds of a graph");
    src_cmd->add_option("--r", src_args->r, "clique order")->required();
    src_cmd->add_option("--graph", src_args->graph, "edge list")->required();
    src_cmd->add_flag("--json", src_args->json, "emit JSON");
    src_cmd->add_option("--max-cliques", src_args->max_cliques,
                        "clique enumeration budget");
    src_cmd->callback([src_args, &out]() {
        Graph g = load_graph(src_args->graph);
        auto sources = find_zero_sources(g, ProcessParams{src_args->r},
                                         src_args->max_cliques);
        if (src_args->json) {
            std::ostringstream buf;
            buf << "{\n  \"n\": " << g.n() << ",\n  \"r\": " << src_args->r
                << ",\n  \"sources\": [";
            for (std::size_t i = 0; i < sources.size(); ++i) {
                if (i) buf << ",";
                buf << "\n    [";
                std::vector<int> mem = sources[i].members();
                for (std::size_t k = 0; k < mem.size(); ++k) {
                    if (k) buf << ", ";
                    buf << mem[k];
                }
                buf << "]";
            }
            if (!sources.empty()) buf << "\n  ";
            buf << "]\n}\n";
            out << buf.str();
        } else {
            out << sources.size() << " sources\n";
            for (const VertexSet& s : sources) {
                std::vector<int> mem = s.members();
                for (std::size_t k = 0; k < mem.size(); ++k) {
                    out << (k ? " " : "") << mem[k];
                }
                out << "\n";
            }
        }
    });

    auto audit_args = std::make_shared<SourceArgs>();
    CLI::App* audit_cmd = app.add_subcommand(
        "audit", "track sources and check the saturation bounds");
    audit_cmd->add_option("--r", audit_args->r, "clique order")->required();
    audit_cmd->add_option("--graph", audit_args->graph, "edge list")
        ->required();
    audit_cmd->add_flag("--json", audit_args->json, "emit JSON");
    audit_cmd->add_option("--max-cliques", audit_args->max_cliques,
                          "clique enumeration budget");
    audit_cmd->callback([audit_args, &out]() {
        Graph g = load_graph(audit_args->graph);
        AuditReport report = audit_bounds(g, ProcessParams{audit_args->r},
                                          audit_args->max_cliques);
        if (audit_args->json) {
            out << audit_to_json(report);
        } else {
            out << "n " << report.n << " r " << report.r << " tau "
                << report.tau << " edges " << report.edge_total << "\n";
            out << "sources " << report.analysis.records.size() << " mergers "
                << report.analysis.mergers.size() << " trees "
                << report.analysis.trees.size() << "\n";
            for (const BoundCheck& b : report.bounds) {
                out << b.name << ": ";
                if (!b.applicable) {
                    out << "n/a";
                } else {
                    out << (b.holds ? "holds" : "violated") << " (lhs "
                        << b.lhs << ", rhs " << b.rhs << ")";
                }
                out << "\n";
            }
        }
    });

    // search ----------------------------------------------------------------
    CLI::App* search_cmd =
        app.add_subcommand("search", "exhaustive extremal scans");
    search_cmd->require_subcommand(1);

    auto taumax_args = std::make_shared<CommonSearch>();
    CLI::App* taumax_cmd = search_cmd->add_subcommand(
        "taumax", "largest saturation time over all graphs on n vertices");
    add_search_flags(taumax_cmd, taumax_args);
    taumax_cmd->callback([taumax_args, &out]() {
        out << search_result_to_json(
            tau_max(taumax_args->n, taumax_args->r, taumax_args->options));
    });

    auto minsat_args = std::make_shared<CommonSearch>();
    CLI::App* minsat_cmd = search_cmd->add_subcommand(
        "minsat", "fewest edges of a percolating graph on n vertices");
    add_search_flags(minsat_cmd, minsat_args);
    minsat_cmd->callback([minsat_args, &out]() {
        out << search_result_to_json(min_percolating_edges(
            minsat_args->n, minsat_args->r, minsat_args->options));
    });

    auto minedges_args = std::make_shared<CommonSearch>();
    int minedges_t = 0;
    CLI::App* minedges_cmd = search_cmd->add_subcommand(
        "minedges", "fewest edges with saturation time exactly t");
    add_search_flags(minedges_cmd, minedges_args);
    minedges_cmd->add_option("--t", minedges_t, "target saturation time")
        ->required();
    minedges_cmd->callback([minedges_args, &minedges_t, &out]() {
        out << search_result_to_json(
            min_edges_given_tau(minedges_args->n, minedges_args->r,
                                minedges_t, minedges_args->options));
    });

    // threshold ---------------------------------------------------------------
    struct ThresholdArgs {
        int n = 0;
        int r = 0;
        int trials = 1000;
        std::uint64_t seed = 1;
        int workers = 1;
        bool csv = false;
    };
    auto th_args = std::make_shared<ThresholdArgs>();
    CLI::App* th_cmd = app.add_subcommand(
        "threshold", "sample the percolation threshold of the random graph");
    th_cmd->add_option("--n", th_args->n, "number of vertices")->required();
    th_cmd->add_option("--r", th_args->r, "clique order")->required();
    th_cmd->add_option("--trials", th_args->trials, "number of trials");
    th_cmd->add_option("--seed", th_args->seed, "master seed");
    th_cmd->add_option("--workers", th_args->workers,
                       "worker threads (0 = hardware)");
    th_cmd->add_flag("--csv", th_args->csv, "emit quantiles as CSV");
    th_cmd->callback([th_args, &out]() {
        ThresholdEstimate est =
            estimate_threshold(th_args->n, ProcessParams{th_args->r},
                               th_args->trials, th_args->seed,
                               th_args->workers);
        out << (th_args->csv ? estimate_to_csv(est) : estimate_to_json(est));
    });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("krboot");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const BudgetError& e) {
        err << "refused: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace krboot::cli
