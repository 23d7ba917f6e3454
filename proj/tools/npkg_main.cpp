// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

// npkg command-line front end.
//
//   npkg build          assemble a graph snapshot from flat files
//   npkg stats          graph statistics (optionally vs. a baseline)
//   npkg path           direct edges and shortest path between two nodes
//   npkg metapath       meta-path template discovery for an NP/drug pair
//   npkg evaluate       classify ground-truth assertions against the graph
//   npkg contradictions audit semantically contradictory edge pairs
//   npkg closure-report inferred-edge counts by relation
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "npkg/closure.hpp"
#include "npkg/errors.hpp"
#include "npkg/eval.hpp"
#include "npkg/graph.hpp"
#include "npkg/ingest.hpp"
#include "npkg/json_report.hpp"
#include "npkg/query.hpp"
#include "npkg/relations.hpp"
#include "npkg/snapshot.hpp"

namespace fs = std::filesystem;
using npkg::Json;

namespace {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Resolved run configuration; file paths come from --config and are
// interpreted relative to the config file's directory.
struct RunConfig {
    std::optional<std::string> node_file;
    std::optional<std::string> edge_file;
    std::optional<std::string> predication_file;
    std::optional<std::string> relation_map;
    std::optional<std::string> entity_map;
    std::optional<std::string> excluded_relations;
    std::optional<std::string> excluded_semtypes;
    std::optional<std::string> excluded_generics;
    std::optional<std::string> closure_config;
    std::optional<std::string> targets_file;
    std::optional<std::string> ground_truth_file;
    std::optional<std::string> polarity_file;
    bool directed = true;
    bool strict_endpoints = false;
    std::string closure_scope = "literature";  // literature | merged | off
    std::optional<int> year_cutoff;
    std::optional<double> min_confidence;
    std::optional<std::string> out_dir;
    std::uint64_t config_hash = 0;

    static RunConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            throw npkg::IoError(path, "cannot open config file");
        }
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw npkg::ParseError(path, 1, "config must be a JSON object");
        }
        const fs::path base = fs::path(path).parent_path();
        RunConfig cfg;
        cfg.config_hash = fnv1a64(text);
        auto path_field = [&](const char* key) -> std::optional<std::string> {
            if (!j.contains(key) || j[key].is_null()) {
                return std::nullopt;
            }
            if (!j[key].is_string()) {
                throw npkg::ParseError(path, 1, std::string(key) + " must be a string");
            }
            return (base / j[key].get<std::string>()).string();
        };
        cfg.node_file = path_field("node_file");
        cfg.edge_file = path_field("edge_file");
        cfg.predication_file = path_field("predication_file");
        cfg.relation_map = path_field("relation_map");
        cfg.entity_map = path_field("entity_map");
        cfg.excluded_relations = path_field("excluded_relations");
        cfg.excluded_semtypes = path_field("excluded_semtypes");
        cfg.excluded_generics = path_field("excluded_generics");
        cfg.closure_config = path_field("closure_config");
        cfg.targets_file = path_field("targets_file");
        cfg.ground_truth_file = path_field("ground_truth_file");
        cfg.polarity_file = path_field("polarity_file");
        cfg.directed = j.value("directed", true);
        cfg.strict_endpoints = j.value("strict_endpoints", false);
        cfg.closure_scope = j.value("closure_scope", std::string("literature"));
        if (j.contains("year_cutoff") && !j["year_cutoff"].is_null()) {
            cfg.year_cutoff = j["year_cutoff"].get<int>();
        }
        if (j.contains("min_confidence") && !j["min_confidence"].is_null()) {
            cfg.min_confidence = j["min_confidence"].get<double>();
        }
        if (j.contains("out_dir") && !j["out_dir"].is_null()) {
            cfg.out_dir = (base / j["out_dir"].get<std::string>()).string();
        }
        return cfg;
    }
};

// Shared command-line state; subcommand flags override config values.
struct CliState {
    std::string config_path;
    std::string out_dir;
    std::string snapshot_dir;
    bool undirected = false;
    int year_cutoff = INT32_MIN;  // sentinel: unset
    RunConfig config;

    void finalize() {
        if (!config_path.empty()) {
            config = RunConfig::load(config_path);
        }
        if (undirected) {
            config.directed = false;
        }
        if (year_cutoff != INT32_MIN) {
            config.year_cutoff = year_cutoff;
        }
        if (!out_dir.empty()) {
            config.out_dir = out_dir;
        }
    }

    npkg::QueryOptions query_options() const {
        return {config.directed, config.year_cutoff};
    }
};

void emit_report(const CliState& state, const std::string& name, const Json& report) {
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (state.config.out_dir) {
        fs::create_directories(*state.config.out_dir);
        const fs::path path = fs::path(*state.config.out_dir) / (name + ".json");
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw npkg::IoError(path.string(), "cannot open file for writing");
        }
        out << text;
    }
}

npkg::KnowledgeGraph load_snapshot_or_fail(const CliState& state) {
    if (state.snapshot_dir.empty()) {
        throw npkg::Error("--snapshot <dir> is required");
    }
    return npkg::load_snapshot(state.snapshot_dir);
}

// Applies the --year-cutoff flag to subcommands that operate on a whole
// graph rather than a single traversal.
npkg::KnowledgeGraph maybe_slice(npkg::KnowledgeGraph g, const CliState& state) {
    if (state.config.year_cutoff) {
        return npkg::time_slice(g, *state.config.year_cutoff);
    }
    return g;
}

npkg::PolarityTable polarity_for(const CliState& state) {
    if (state.config.polarity_file) {
        return npkg::PolarityTable::load(*state.config.polarity_file);
    }
    return npkg::PolarityTable::defaults();
}

int cmd_build(CliState& state) {
    const RunConfig& cfg = state.config;

    npkg::RelationMap rel_map =
        cfg.relation_map ? npkg::RelationMap::load(*cfg.relation_map) : npkg::RelationMap::builtin();
    npkg::RelationRegistry registry = npkg::RelationRegistry::builtin();
    rel_map.register_relations(registry);
    auto shared_registry = std::make_shared<const npkg::RelationRegistry>(std::move(registry));

    npkg::FilterConfig filter = npkg::FilterConfig::builtin();
    if (cfg.excluded_relations) {
        filter.excluded_relations = npkg::FilterConfig::load_list(*cfg.excluded_relations);
    }
    if (cfg.excluded_semtypes) {
        filter.excluded_semtypes = npkg::FilterConfig::load_list(*cfg.excluded_semtypes);
    }
    if (cfg.excluded_generics) {
        filter.excluded_generics = npkg::FilterConfig::load_list(*cfg.excluded_generics, true);
    }
    filter.min_confidence = cfg.min_confidence;

    npkg::GraphOptions options{.strict_endpoints = cfg.strict_endpoints};

    // Ontology-grounded side
    npkg::KnowledgeGraph grounded(shared_registry, options);
    if (cfg.node_file) {
        for (auto& node : npkg::parse_node_file(*cfg.node_file)) {
            grounded.add_node(std::move(node));
        }
    }
    if (cfg.edge_file) {
        for (auto& edge : npkg::parse_edge_file(*cfg.edge_file, *shared_registry)) {
            grounded.add_edge(std::move(edge));
        }
    }
    grounded.seal();

    // Literature side
    npkg::IngestReport report;
    npkg::EntityMap entities =
        cfg.entity_map ? npkg::EntityMap::load(*cfg.entity_map) : npkg::EntityMap{};
    std::vector<npkg::Predication> predications;
    if (cfg.predication_file) {
        predications = npkg::parse_predication_file(*cfg.predication_file);
    }
    npkg::KnowledgeGraph literature = npkg::build_literature_graph(
        predications, rel_map, entities, filter, shared_registry, &report, options);

    npkg::ClosureConfig closure_cfg = cfg.closure_config
                                          ? npkg::ClosureConfig::load(*cfg.closure_config)
                                          : npkg::ClosureConfig::defaults();

    npkg::KnowledgeGraph graph = [&] {
        if (cfg.closure_scope == "literature") {
            return npkg::merge_graphs(std::move(grounded),
                                      npkg::apply_closure(std::move(literature), closure_cfg));
        }
        if (cfg.closure_scope == "merged") {
            return npkg::apply_closure(
                npkg::merge_graphs(std::move(grounded), literature), closure_cfg);
        }
        if (cfg.closure_scope == "off") {
            return npkg::merge_graphs(std::move(grounded), literature);
        }
        throw npkg::Error("closure_scope must be literature, merged or off: " + cfg.closure_scope);
    }();

    const std::string out = cfg.out_dir.value_or("npkg-out");
    npkg::save_snapshot(graph, fs::path(out) / "snapshot", cfg.config_hash);
    {
        std::ofstream report_out(fs::path(out) / "ingest_report.json", std::ios::binary);
        if (!report_out) {
            throw npkg::IoError(out, "cannot write ingest report");
        }
        report_out << npkg::ingest_report_to_json(report).dump(2) << "\n";
    }

    Json summary;
    summary["snapshot"] = (fs::path(out) / "snapshot").string();
    summary["stats"] = npkg::stats_to_json(npkg::compute_stats(graph));
    summary["negated_edge_count"] = graph.negated_edge_count();
    summary["inferred_edge_count"] = npkg::count_inferred(graph);
    summary["ingest"] = npkg::ingest_report_to_json(report);
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_stats(CliState& state, std::int64_t node_count, std::int64_t edge_count,
              const std::string& baseline_dir) {
    std::optional<npkg::GraphStats> stats;
    if (node_count >= 0 && edge_count >= 0) {
        stats = npkg::compute_stats(static_cast<std::size_t>(node_count),
                                    static_cast<std::size_t>(edge_count));
    } else {
        stats = npkg::compute_stats(maybe_slice(load_snapshot_or_fail(state), state));
    }
    std::optional<npkg::GraphStats> baseline;
    if (!baseline_dir.empty()) {
        baseline = npkg::compute_stats(npkg::load_snapshot(baseline_dir));
    }
    emit_report(state, "stats", npkg::stats_report(*stats, baseline));
    return 0;
}

int cmd_path(CliState& state, const std::string& src, const std::string& dst) {
    const npkg::KnowledgeGraph g = load_snapshot_or_fail(state);
    const npkg::QueryOptions opts = state.query_options();
    Json report = npkg::path_report(g, src, dst, npkg::shortest_path(g, src, dst, opts), opts);
    report["direct_edges"] =
        npkg::edges_to_json(g, npkg::direct_edges(g, src, dst, opts.directed));
    emit_report(state, "path", report);
    return 0;
}

int cmd_metapath(CliState& state, const std::vector<std::string>& np_nodes,
                 const std::string& drug, const std::string& targets_path) {
    const npkg::KnowledgeGraph g = maybe_slice(load_snapshot_or_fail(state), state);
    const std::string targets_file =
        !targets_path.empty() ? targets_path : state.config.targets_file.value_or(std::string{});
    if (targets_file.empty()) {
        throw npkg::Error("--targets <file> is required");
    }
    const npkg::TargetSet targets = npkg::TargetSet::load(targets_file);
    std::set<std::string, std::less<>> np_set(np_nodes.begin(), np_nodes.end());
    const npkg::MetaPathResult result = npkg::find_metapaths(
        g, np_set, drug, npkg::MetaPathTemplate::defaults(), targets, state.config.directed);
    emit_report(state, "metapath", npkg::metapath_report(g, result));
    return 0;
}

int cmd_evaluate(CliState& state, const std::string& ground_truth_path) {
    const npkg::KnowledgeGraph g = maybe_slice(load_snapshot_or_fail(state), state);
    const std::string gt_file = !ground_truth_path.empty()
                                    ? ground_truth_path
                                    : state.config.ground_truth_file.value_or(std::string{});
    if (gt_file.empty()) {
        throw npkg::Error("--ground-truth <file> is required");
    }
    const npkg::PolarityTable polarity = polarity_for(state);
    std::vector<npkg::CongruenceVerdict> verdicts;
    for (const auto& assertion : npkg::parse_ground_truth(gt_file)) {
        verdicts.push_back(
            npkg::classify_assertion(g, assertion, polarity, state.config.directed));
    }
    emit_report(state, "evaluation", npkg::evaluation_report(g, verdicts));
    return 0;
}

int cmd_contradictions(CliState& state) {
    const npkg::KnowledgeGraph g = maybe_slice(load_snapshot_or_fail(state), state);
    const npkg::PolarityTable polarity = polarity_for(state);
    emit_report(state, "contradictions",
                npkg::contradictions_report(g, npkg::find_contradictory_edge_pairs(g, polarity)));
    return 0;
}

int cmd_closure_report(CliState& state) {
    const npkg::KnowledgeGraph g = load_snapshot_or_fail(state);
    emit_report(state, "closure_report", npkg::closure_report(g));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"natural-product knowledge graph engine"};
    app.require_subcommand(1);

    CliState state;
    bool directed_flag = false;
    app.add_option("--config", state.config_path, "run configuration JSON file")
        ->check(CLI::ExistingFile);
    app.add_option("--out", state.out_dir, "directory for report output");
    app.add_flag("--undirected", state.undirected, "treat edges as traversable both ways");
    app.add_flag("--directed", directed_flag, "follow edge direction (the default)");
    app.add_option("--year-cutoff", state.year_cutoff,
                   "only consider evidence dated at or before this year");
    app.fallthrough();

    auto* build = app.add_subcommand("build", "assemble a graph snapshot from input files");
    std::string closure_scope;
    bool strict = false;
    build->add_option("--closure", closure_scope, "closure scope: literature, merged or off");
    build->add_flag("--strict", strict, "reject edges with endpoints missing from the node file");

    auto* stats = app.add_subcommand("stats", "graph statistics");
    std::int64_t node_count = -1;
    std::int64_t edge_count = -1;
    std::string baseline_dir;
    stats->add_option("--snapshot", state.snapshot_dir, "snapshot directory");
    stats->add_option("--node-count", node_count, "compute metrics from explicit counts");
    stats->add_option("--edge-count", edge_count, "compute metrics from explicit counts");
    stats->add_option("--baseline", baseline_dir, "baseline snapshot for percent change");

    auto* path = app.add_subcommand("path", "direct edges and shortest path");
    std::string src, dst;
    path->add_option("--snapshot", state.snapshot_dir, "snapshot directory");
    path->add_option("--src", src, "source node id")->required();
    path->add_option("--dst", dst, "destination node id")->required();

    auto* metapath = app.add_subcommand("metapath", "meta-path discovery for an NP/drug pair");
    std::vector<std::string> np_nodes;
    std::string drug, targets_path;
    metapath->add_option("--snapshot", state.snapshot_dir, "snapshot directory");
    metapath->add_option("--np", np_nodes, "natural product node ids (comma separated)")
        ->required()
        ->delimiter(',');
    metapath->add_option("--drug", drug, "drug node id")->required();
    metapath->add_option("--targets", targets_path, "target-set TSV (node_id, kind)");

    auto* evaluate = app.add_subcommand("evaluate", "classify ground-truth assertions");
    std::string ground_truth_path, polarity_path;
    evaluate->add_option("--snapshot", state.snapshot_dir, "snapshot directory");
    evaluate->add_option("--ground-truth", ground_truth_path, "ground-truth TSV");
    evaluate->add_option("--polarity", polarity_path, "polarity table TSV");

    auto* contradictions =
        app.add_subcommand("contradictions", "audit contradictory edge pairs");
    contradictions->add_option("--snapshot", state.snapshot_dir, "snapshot directory");
    contradictions->add_option("--polarity", polarity_path, "polarity table TSV");

    auto* closure_report = app.add_subcommand("closure-report", "inferred-edge summary");
    closure_report->add_option("--snapshot", state.snapshot_dir, "snapshot directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (directed_flag && state.undirected) {
            std::cerr << "error: --directed and --undirected are mutually exclusive\n";
            return 1;
        }
        state.finalize();
        if (directed_flag) {
            state.config.directed = true;
        }
        if (!polarity_path.empty()) {
            state.config.polarity_file = polarity_path;
        }
        if (!closure_scope.empty()) {
            state.config.closure_scope = closure_scope;
        }
        if (strict) {
            state.config.strict_endpoints = true;
        }
        if (build->parsed()) {
            return cmd_build(state);
        }
        if (stats->parsed()) {
            return cmd_stats(state, node_count, edge_count, baseline_dir);
        }
        if (path->parsed()) {
            return cmd_path(state, src, dst);
        }
        if (metapath->parsed()) {
            return cmd_metapath(state, np_nodes, drug, targets_path);
        }
        if (evaluate->parsed()) {
            return cmd_evaluate(state, ground_truth_path);
        }
        if (contradictions->parsed()) {
            return cmd_contradictions(state);
        }
        if (closure_report->parsed()) {
            return cmd_closure_report(state);
        }
    } catch (const npkg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
