// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// In-memory directed multigraph with typed nodes, typed parallel edges, and
// per-edge evidence. An edge is identified by (subject, relation, object,
// negated); repeated assertions merge into its evidence set. Negated edges
// live in a separate store and never take part in inference or queries.
//
// A graph is mutable while being built and immutable after seal(); every
// query helper requires a sealed graph and is safe to call concurrently.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "npkg/errors.hpp"
#include "npkg/relations.hpp"

namespace npkg {

enum class NodeCategory {
    Chemical,
    Protein,
    Gene,
    Pathway,
    Disease,
    Phenotype,
    Anatomy,
    Cell,
    Process,
    Function,
    Other,
};

inline std::string_view to_string(NodeCategory c) {
    switch (c) {
        case NodeCategory::Chemical: return "CHEMICAL";
        case NodeCategory::Protein: return "PROTEIN";
        case NodeCategory::Gene: return "GENE";
        case NodeCategory::Pathway: return "PATHWAY";
        case NodeCategory::Disease: return "DISEASE";
        case NodeCategory::Phenotype: return "PHENOTYPE";
        case NodeCategory::Anatomy: return "ANATOMY";
        case NodeCategory::Cell: return "CELL";
        case NodeCategory::Process: return "PROCESS";
        case NodeCategory::Function: return "FUNCTION";
        case NodeCategory::Other: return "OTHER";
    }
    return "OTHER";
}

inline std::optional<NodeCategory> parse_node_category(std::string_view s) {
    static const StringMap<NodeCategory> table = {
        {"CHEMICAL", NodeCategory::Chemical}, {"PROTEIN", NodeCategory::Protein},
        {"GENE", NodeCategory::Gene},         {"PATHWAY", NodeCategory::Pathway},
        {"DISEASE", NodeCategory::Disease},   {"PHENOTYPE", NodeCategory::Phenotype},
        {"ANATOMY", NodeCategory::Anatomy},   {"CELL", NodeCategory::Cell},
        {"PROCESS", NodeCategory::Process},   {"FUNCTION", NodeCategory::Function},
        {"OTHER", NodeCategory::Other},
    };
    auto it = table.find(s);
    if (it == table.end()) {
        return std::nullopt;
    }
    return it->second;
}

// Default node category for identifiers minted during edge ingestion, keyed
// by ontology prefix.
inline NodeCategory category_for_prefix(std::string_view prefix) {
    static const StringMap<NodeCategory> table = {
        {"CHEBI", NodeCategory::Chemical}, {"PR", NodeCategory::Protein},
        {"SO", NodeCategory::Gene},        {"PW", NodeCategory::Pathway},
        {"MONDO", NodeCategory::Disease},  {"HP", NodeCategory::Phenotype},
        {"UBERON", NodeCategory::Anatomy}, {"CL", NodeCategory::Cell},
        {"CLO", NodeCategory::Cell},       {"GO", NodeCategory::Process},
    };
    auto it = table.find(prefix);
    return it == table.end() ? NodeCategory::Other : it->second;
}

struct NodeRecord {
    std::string id;
    std::string label;
    std::string ns;
    NodeCategory category = NodeCategory::Other;

    friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

enum class EvidenceSource {
    Ontology,
    Database,
    SemRep,
    Reach,
    Inferred,
};

inline std::string_view to_string(EvidenceSource s) {
    switch (s) {
        case EvidenceSource::Ontology: return "ONTOLOGY";
        case EvidenceSource::Database: return "DATABASE";
        case EvidenceSource::SemRep: return "SEMREP";
        case EvidenceSource::Reach: return "REACH";
        case EvidenceSource::Inferred: return "INFERRED";
    }
    return "ONTOLOGY";
}

// One piece of provenance for an edge. Literature evidence carries a PubMed
// id and sentence; inferred evidence instead names its supporting edges in
// derived_from.
struct EvidenceRecord {
    EvidenceSource source = EvidenceSource::Ontology;
    std::string source_name;
    std::optional<std::string> pmid;
    std::optional<int> year;
    std::optional<double> confidence;
    std::optional<std::string> sentence;
    std::string derived_from;

    void validate() const {
        if ((source == EvidenceSource::SemRep || source == EvidenceSource::Reach) && !pmid) {
            throw Error("literature evidence requires a pmid");
        }
        if (source == EvidenceSource::Inferred && (pmid || sentence)) {
            throw Error("inferred evidence cannot carry a pmid or sentence");
        }
        if (confidence && (*confidence < 0.0 || *confidence > 1.0)) {
            throw Error("confidence must lie in [0,1]");
        }
    }

    friend bool operator==(const EvidenceRecord&, const EvidenceRecord&) = default;

    // Total order consistent with operator==: records that tie here are
    // field-for-field equal, which keeps evidence ordering independent of
    // insertion order.
    auto sort_key() const {
        return std::tuple(static_cast<int>(source), std::string_view(source_name),
                          pmid.has_value(), pmid ? std::string_view(*pmid) : std::string_view{},
                          year.has_value(), year.value_or(0), confidence.has_value(),
                          confidence.value_or(0.0), sentence.has_value(),
                          sentence ? std::string_view(*sentence) : std::string_view{},
                          std::string_view(derived_from));
    }
};

inline bool evidence_less(const EvidenceRecord& a, const EvidenceRecord& b) {
    return a.sort_key() < b.sort_key();
}

struct EdgeRecord {
    std::string subject;
    RelationId relation;
    std::string object;
    std::vector<EvidenceRecord> evidence;  // kept sorted and deduplicated
    bool inferred = false;
    bool negated = false;

    // Canonical descriptor used in derivation notes and diagnostics.
    std::string descriptor() const {
        std::string d = subject;
        d += '|';
        d += relation.id;
        d += '|';
        d += object;
        if (negated) {
            d += "|neg";
        }
        return d;
    }
};

struct GraphStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    double average_degree = 0.0;
    double node_density = 0.0;
};

// Per-field relative change, as percentages.
struct StatsChange {
    double node_pct = 0.0;
    double edge_pct = 0.0;
    double average_degree_pct = 0.0;
    double node_density_pct = 0.0;
};

struct GraphOptions {
    // When set, edges whose endpoints are not already nodes raise
    // NodeNotFound instead of minting an OTHER-category node.
    bool strict_endpoints = false;
};

// Adjacency entry: the node on the far side of an edge plus the edge index.
// Keeping the neighbor index here lets traversals avoid id lookups.
struct AdjEntry {
    std::uint32_t neighbor;
    std::uint32_t edge;
};

class KnowledgeGraph {
public:
    using RegistryPtr = std::shared_ptr<const RelationRegistry>;

    explicit KnowledgeGraph(RegistryPtr registry, GraphOptions options = {})
        : registry_(std::move(registry)), options_(options) {
        if (!registry_) {
            throw Error("knowledge graph requires a relation registry");
        }
    }

    const RelationRegistry& registry() const noexcept { return *registry_; }
    const RegistryPtr& registry_ptr() const noexcept { return registry_; }
    const GraphOptions& options() const noexcept { return options_; }

    // ---- build phase -----------------------------------------------------

    // Adds a node; returns false if the id is already present (first record
    // wins, matching union-by-id merge semantics).
    bool add_node(NodeRecord node) {
        require_unsealed();
        if (node.id.empty()) {
            throw Error("node id must be non-empty");
        }
        if (node_index_.contains(node.id)) {
            return false;
        }
        const std::string prefix = curie_prefix(node.id);
        if (node.ns.empty()) {
            node.ns = prefix;
        } else if (!prefix.empty() && node.ns != prefix) {
            throw Error("node namespace '" + node.ns + "' does not match id prefix of " + node.id);
        }
        const auto index = static_cast<std::uint32_t>(nodes_.size());
        node_index_.emplace(node.id, index);
        nodes_.push_back(std::move(node));
        out_adj_.emplace_back();
        in_adj_.emplace_back();
        return true;
    }

    // Adds an edge, merging evidence into an existing (subject, relation,
    // object, negated) edge when present. Returns true when a new edge was
    // created, false when the assertion merged into an existing one.
    bool add_edge(EdgeRecord edge) {
        require_unsealed();
        if (edge.evidence.empty()) {
            throw Error("edge requires at least one evidence record");
        }
        const auto rel_index = registry_->require(edge.relation.id);
        edge.relation = registry_->at(rel_index);  // canonical label
        for (auto& ev : edge.evidence) {
            ev.validate();
        }
        std::sort(edge.evidence.begin(), edge.evidence.end(), evidence_less);
        edge.evidence.erase(std::unique(edge.evidence.begin(), edge.evidence.end()),
                            edge.evidence.end());

        const auto subj = resolve_endpoint(edge.subject);
        const auto obj = resolve_endpoint(edge.object);
        const std::uint64_t key = edge_key(subj, rel_index, obj, edge.negated);

        auto& store = edge.negated ? negated_edges_ : edges_;
        auto& lookup = edge.negated ? negated_lookup_ : edge_lookup_;
        if (auto it = lookup.find(key); it != lookup.end()) {
            merge_evidence(store[it->second], std::move(edge.evidence));
            return false;
        }

        edge.inferred = all_inferred(edge.evidence);
        const auto edge_index = static_cast<std::uint32_t>(store.size());
        lookup.emplace(key, edge_index);
        if (!edge.negated) {
            out_adj_[subj].push_back({obj, edge_index});
            in_adj_[obj].push_back({subj, edge_index});
        }
        store.push_back(std::move(edge));
        return true;
    }

    // Freezes the graph and builds the canonical traversal order: adjacency
    // lists sorted by (neighbor id, relation id) so iteration and tie-breaks
    // are deterministic regardless of insertion order.
    void seal() {
        if (sealed_) {
            return;
        }
        auto order = [this](const AdjEntry& a, const AdjEntry& b) {
            return std::tie(nodes_[a.neighbor].id, edges_[a.edge].relation.id) <
                   std::tie(nodes_[b.neighbor].id, edges_[b.edge].relation.id);
        };
        for (auto& list : out_adj_) {
            std::sort(list.begin(), list.end(), order);
        }
        for (auto& list : in_adj_) {
            std::sort(list.begin(), list.end(), order);
        }
        sealed_ = true;
    }

    bool is_sealed() const noexcept { return sealed_; }

    // Resumes the build phase on an owned graph value. Derived-graph
    // operations (closure, merge) reopen the value they were handed and
    // re-seal before returning; callers never observe the intermediate
    // state.
    void reopen() noexcept { sealed_ = false; }

    // A mutable copy for derived graphs (closure output, merges, slices).
    KnowledgeGraph unsealed_copy() const {
        KnowledgeGraph copy(*this);
        copy.sealed_ = false;
        return copy;
    }

    // ---- lookups ---------------------------------------------------------

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t negated_edge_count() const noexcept { return negated_edges_.size(); }

    std::optional<std::uint32_t> node_index(std::string_view id) const {
        auto it = node_index_.find(id);
        if (it == node_index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::uint32_t require_node(std::string_view id) const {
        if (auto idx = node_index(id)) {
            return *idx;
        }
        throw NodeNotFound(std::string(id));
    }

    bool has_node(std::string_view id) const { return node_index_.contains(id); }

    const NodeRecord* find_node(std::string_view id) const {
        auto idx = node_index(id);
        return idx ? &nodes_[*idx] : nullptr;
    }

    const NodeRecord& node_at(std::uint32_t index) const { return nodes_.at(index); }
    const std::vector<NodeRecord>& nodes() const noexcept { return nodes_; }

    const EdgeRecord& edge_at(std::uint32_t index) const { return edges_.at(index); }
    const std::vector<EdgeRecord>& edges() const noexcept { return edges_; }
    const std::vector<EdgeRecord>& negated_edges() const noexcept { return negated_edges_; }

    std::span<const AdjEntry> out_edges(std::uint32_t node) const { return out_adj_.at(node); }
    std::span<const AdjEntry> in_edges(std::uint32_t node) const { return in_adj_.at(node); }

    const EdgeRecord* find_edge(std::string_view subject, std::string_view relation_id,
                                std::string_view object, bool negated = false) const {
        auto subj = node_index(subject);
        auto obj = node_index(object);
        auto rel = registry_->find(relation_id);
        if (!subj || !obj || !rel) {
            return nullptr;
        }
        const auto& lookup = negated ? negated_lookup_ : edge_lookup_;
        auto it = lookup.find(edge_key(*subj, *rel, *obj, negated));
        if (it == lookup.end()) {
            return nullptr;
        }
        return negated ? &negated_edges_[it->second] : &edges_[it->second];
    }

private:
    void require_unsealed() const {
        if (sealed_) {
            throw Error("graph is sealed; no further mutation is allowed");
        }
    }

    std::uint32_t resolve_endpoint(const std::string& id) {
        if (auto idx = node_index(id)) {
            return *idx;
        }
        if (options_.strict_endpoints) {
            throw NodeNotFound(id);
        }
        NodeRecord node;
        node.id = id;
        node.label = id;
        node.ns = curie_prefix(id);
        node.category = category_for_prefix(node.ns);
        add_node(std::move(node));
        return *node_index(id);
    }

    static bool all_inferred(const std::vector<EvidenceRecord>& evidence) {
        return std::all_of(evidence.begin(), evidence.end(), [](const EvidenceRecord& ev) {
            return ev.source == EvidenceSource::Inferred;
        });
    }

    void merge_evidence(EdgeRecord& edge, std::vector<EvidenceRecord> incoming) {
        std::vector<EvidenceRecord> merged;
        merged.reserve(edge.evidence.size() + incoming.size());
        std::merge(std::make_move_iterator(edge.evidence.begin()),
                   std::make_move_iterator(edge.evidence.end()),
                   std::make_move_iterator(incoming.begin()),
                   std::make_move_iterator(incoming.end()), std::back_inserter(merged),
                   evidence_less);
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        edge.evidence = std::move(merged);
        edge.inferred = all_inferred(edge.evidence);
    }

    // Nodes are capped at 2^24 and relations at 2^15 so an edge identity
    // packs into one 64-bit key.
    static std::uint64_t edge_key(std::uint32_t subj, std::uint32_t rel, std::uint32_t obj,
                                  bool negated) {
        if (subj >= (1u << 24) || obj >= (1u << 24) || rel >= (1u << 15)) {
            throw Error("graph exceeds supported size (2^24 nodes, 2^15 relations)");
        }
        return (static_cast<std::uint64_t>(subj) << 40) | (static_cast<std::uint64_t>(obj) << 16) |
               (static_cast<std::uint64_t>(rel) << 1) | (negated ? 1u : 0u);
    }

    RegistryPtr registry_;
    GraphOptions options_;
    bool sealed_ = false;

    std::vector<NodeRecord> nodes_;
    StringMap<std::uint32_t> node_index_;

    std::vector<EdgeRecord> edges_;
    std::vector<EdgeRecord> negated_edges_;
    std::unordered_map<std::uint64_t, std::uint32_t> edge_lookup_;
    std::unordered_map<std::uint64_t, std::uint32_t> negated_lookup_;

    std::vector<std::vector<AdjEntry>> out_adj_;
    std::vector<std::vector<AdjEntry>> in_adj_;
};

// Average degree is edge count over node count; density is the raw edge
// count over ordered node pairs. Self-loops count toward the numerator only.
inline GraphStats compute_stats(std::size_t node_count, std::size_t edge_count) {
    GraphStats stats;
    stats.node_count = node_count;
    stats.edge_count = edge_count;
    if (node_count > 0) {
        stats.average_degree =
            static_cast<double>(edge_count) / static_cast<double>(node_count);
    }
    if (node_count > 1) {
        stats.node_density = static_cast<double>(edge_count) /
                             (static_cast<double>(node_count) *
                              static_cast<double>(node_count - 1));
    }
    return stats;
}

inline GraphStats compute_stats(const KnowledgeGraph& g) {
    return compute_stats(g.node_count(), g.edge_count());
}

inline StatsChange percent_change(const GraphStats& before, const GraphStats& after) {
    auto change = [](double b, double a, const char* field) {
        if (b == 0.0) {
            throw UndefinedChange(field);
        }
        return 100.0 * (a - b) / b;
    };
    StatsChange out;
    out.node_pct = change(static_cast<double>(before.node_count),
                          static_cast<double>(after.node_count), "node_count");
    out.edge_pct = change(static_cast<double>(before.edge_count),
                          static_cast<double>(after.edge_count), "edge_count");
    out.average_degree_pct = change(before.average_degree, after.average_degree, "average_degree");
    out.node_density_pct = change(before.node_density, after.node_density, "node_density");
    return out;
}

// Union of the two graphs: nodes by id (base record wins), edges with
// evidence merged under add_edge semantics. Both graphs must share registry
// content. base is taken by value; move it in to avoid the copy.
inline KnowledgeGraph merge_graphs(KnowledgeGraph base, const KnowledgeGraph& overlay) {
    if (!base.registry().same_content(overlay.registry())) {
        throw RegistryMismatch();
    }
    base.reopen();
    for (const auto& node : overlay.nodes()) {
        base.add_node(node);
    }
    for (const auto& edge : overlay.edges()) {
        base.add_edge(edge);
    }
    for (const auto& edge : overlay.negated_edges()) {
        base.add_edge(edge);
    }
    base.seal();
    return base;
}

}  // namespace npkg
