// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// Graph snapshots: a documented TSV pair (nodes + edge evidence rows) plus a
// JSON manifest carrying the relation registry and content hashes. The edge
// table reuses the edge-file layout with two extra columns (inferred,
// negated); one row is written per evidence record and rows merge back into
// edges on load. Inferred rows carry their derivation note in the sentence
// column, which is otherwise unused for inferred evidence.
//
// Rows are emitted in canonical order, so two snapshots of equal graphs are
// byte-identical regardless of build order.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "npkg/errors.hpp"
#include "npkg/graph.hpp"
#include "npkg/ingest.hpp"
#include "npkg/tsv.hpp"

namespace npkg {

inline constexpr int kSnapshotFormatVersion = 1;

namespace detail {

inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw Error("cannot format floating-point value");
    }
    return std::string(buf, ptr);
}

inline std::vector<std::uint32_t> canonical_edge_order(const std::vector<EdgeRecord>& edges) {
    std::vector<std::uint32_t> order(edges.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const EdgeRecord& x = edges[a];
        const EdgeRecord& y = edges[b];
        return std::tie(x.subject, x.relation.id, x.object) <
               std::tie(y.subject, y.relation.id, y.object);
    });
    return order;
}

inline void write_edge_rows(std::ostream& out, const EdgeRecord& edge) {
    for (const auto& ev : edge.evidence) {
        const bool inferred_ev = ev.source == EvidenceSource::Inferred;
        std::vector<std::string> fields = {
            edge.subject,
            edge.relation.id,
            edge.relation.label,
            edge.object,
            ev.source_name,
            ev.pmid.value_or(""),
            ev.year ? std::to_string(*ev.year) : "",
            ev.confidence ? format_double(*ev.confidence) : "",
            inferred_ev ? ev.derived_from : ev.sentence.value_or(""),
            edge.inferred ? "1" : "0",
            edge.negated ? "1" : "0",
        };
        write_tsv_row(out, fields);
    }
}

}  // namespace detail

inline void save_nodes_tsv(const KnowledgeGraph& g, std::ostream& out) {
    out << "id\tlabel\tnamespace\tcategory\n";
    std::vector<const NodeRecord*> sorted;
    sorted.reserve(g.node_count());
    for (const auto& node : g.nodes()) {
        sorted.push_back(&node);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const NodeRecord* a, const NodeRecord* b) { return a->id < b->id; });
    for (const auto* node : sorted) {
        std::vector<std::string> fields = {node->id, node->label, node->ns,
                                           std::string(to_string(node->category))};
        write_tsv_row(out, fields);
    }
}

inline void save_edges_tsv(const KnowledgeGraph& g, std::ostream& out) {
    out << "subject\trelation_id\trelation_label\tobject\tsource_name\tpmid\tyear\tconfidence"
           "\tsentence\tinferred\tnegated\n";
    for (std::uint32_t i : detail::canonical_edge_order(g.edges())) {
        detail::write_edge_rows(out, g.edges()[i]);
    }
    for (std::uint32_t i : detail::canonical_edge_order(g.negated_edges())) {
        detail::write_edge_rows(out, g.negated_edges()[i]);
    }
}

inline nlohmann::ordered_json snapshot_manifest(const KnowledgeGraph& g,
                                                std::optional<std::uint64_t> config_hash = {}) {
    nlohmann::ordered_json manifest;
    manifest["format_version"] = kSnapshotFormatVersion;
    manifest["node_count"] = g.node_count();
    manifest["edge_count"] = g.edge_count();
    manifest["negated_edge_count"] = g.negated_edge_count();
    char hash_buf[32];
    std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                  static_cast<unsigned long long>(g.registry().content_hash()));
    manifest["registry_hash"] = hash_buf;
    if (config_hash) {
        std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                      static_cast<unsigned long long>(*config_hash));
        manifest["config_hash"] = hash_buf;
    }
    manifest["strict_endpoints"] = g.options().strict_endpoints;
    auto& registry = manifest["registry"] = nlohmann::ordered_json::array();
    std::vector<RelationId> relations = g.registry().relations();
    std::sort(relations.begin(), relations.end());
    for (const auto& rel : relations) {
        registry.push_back({{"id", rel.id}, {"label", rel.label}});
    }
    return manifest;
}

// The canonical text form of a graph (node and edge tables); equal graphs
// produce equal strings regardless of how they were assembled.
inline std::string snapshot_digest(const KnowledgeGraph& g) {
    std::ostringstream out;
    save_nodes_tsv(g, out);
    save_edges_tsv(g, out);
    return out.str();
}

inline void save_snapshot(const KnowledgeGraph& g, const std::filesystem::path& dir,
                          std::optional<std::uint64_t> config_hash = {}) {
    std::filesystem::create_directories(dir);
    auto open = [](const std::filesystem::path& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw IoError(path.string(), "cannot open file for writing");
        }
        return out;
    };
    {
        auto out = open(dir / "nodes.tsv");
        save_nodes_tsv(g, out);
    }
    {
        auto out = open(dir / "edges.tsv");
        save_edges_tsv(g, out);
    }
    {
        auto out = open(dir / "manifest.json");
        out << snapshot_manifest(g, config_hash).dump(2) << '\n';
    }
}

inline KnowledgeGraph load_snapshot(const std::filesystem::path& dir) {
    const auto manifest_path = dir / "manifest.json";
    std::ifstream manifest_in(manifest_path);
    if (!manifest_in) {
        throw IoError(manifest_path.string(), "cannot open snapshot manifest");
    }
    nlohmann::json manifest = nlohmann::json::parse(manifest_in, nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object()) {
        throw ParseError(manifest_path.string(), 1, "invalid manifest JSON");
    }
    if (manifest.value("format_version", 0) != kSnapshotFormatVersion) {
        throw ParseError(manifest_path.string(), 1, "unsupported snapshot format version");
    }

    RelationRegistry registry;
    for (const auto& entry : manifest.at("registry")) {
        registry.add({entry.at("id").get<std::string>(), entry.at("label").get<std::string>()});
    }
    GraphOptions options;
    options.strict_endpoints = manifest.value("strict_endpoints", false);

    KnowledgeGraph g(std::make_shared<const RelationRegistry>(std::move(registry)), options);
    for (auto& node : parse_node_file((dir / "nodes.tsv").string())) {
        g.add_node(std::move(node));
    }

    const auto edges_path = (dir / "edges.tsv").string();
    TsvReader reader(edges_path);
    reader.expect_header({"subject", "relation_id", "relation_label", "object", "source_name",
                          "pmid", "year", "confidence", "sentence", "inferred", "negated"});
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() != 11) {
            reader.fail("expected 11 columns, got " + std::to_string(fields.size()));
        }
        EdgeRecord edge;
        edge.subject = fields[0];
        edge.relation = {fields[1], fields[2]};
        edge.object = fields[3];
        if (fields[10] == "1") {
            edge.negated = true;
        } else if (fields[10] != "0") {
            reader.fail("negated flag must be 0 or 1");
        }
        EvidenceRecord ev;
        ev.source_name = fields[4];
        ev.source = source_for_name(ev.source_name);
        if (!fields[5].empty()) {
            ev.pmid = fields[5];
        }
        ev.year = detail::parse_year_field(reader, fields[6]);
        ev.confidence = detail::parse_confidence_field(reader, fields[7]);
        if (!fields[8].empty()) {
            if (ev.source == EvidenceSource::Inferred) {
                ev.derived_from = fields[8];
            } else {
                ev.sentence = fields[8];
            }
        }
        edge.evidence.push_back(std::move(ev));
        g.add_edge(std::move(edge));
    }
    g.seal();

    if (g.node_count() != manifest.value("node_count", std::size_t{0}) ||
        g.edge_count() != manifest.value("edge_count", std::size_t{0}) ||
        g.negated_edge_count() != manifest.value("negated_edge_count", std::size_t{0})) {
        throw ParseError(manifest_path.string(), 1,
                         "snapshot tables do not match manifest counts");
    }
    return g;
}

}  // namespace npkg
