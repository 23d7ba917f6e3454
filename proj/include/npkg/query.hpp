// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// Hypothesis-discovery queries over a sealed graph: direct edges, bidirectional
// breadth-first shortest paths, the four meta-path templates (NP-drug direct
// edges both ways, NP -> target -> drug chains, and the convergent-target
// motif), and year-based graph slices.
//
// All queries are read-only, deterministic, and safe to run concurrently.
// Negated edges are never traversed. Self-loops are skipped during path
// search; among equal-length paths the lexicographically smallest node-id
// sequence is returned.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "npkg/errors.hpp"
#include "npkg/graph.hpp"
#include "npkg/tsv.hpp"

namespace npkg {

struct QueryOptions {
    bool directed = true;
    std::optional<int> year_cutoff;
};

// An edge qualifies under a cutoff when any evidence record does: a dated
// record at or before the cutoff, or an undated ontology/database record.
// Undated literature or inferred evidence never qualifies.
inline bool evidence_qualifies(const EvidenceRecord& ev, int cutoff) {
    if (ev.year) {
        return *ev.year <= cutoff;
    }
    return ev.source == EvidenceSource::Ontology || ev.source == EvidenceSource::Database;
}

inline bool edge_qualifies(const EdgeRecord& edge, const std::optional<int>& cutoff) {
    if (!cutoff) {
        return true;
    }
    return std::any_of(edge.evidence.begin(), edge.evidence.end(),
                       [&](const EvidenceRecord& ev) { return evidence_qualifies(ev, *cutoff); });
}

// ---------------------------------------------------------------------------
// Direct edges
// ---------------------------------------------------------------------------

// All non-negated edges a -> b (plus b -> a in undirected mode). Self-loops
// appear only when a == b.
inline std::vector<std::uint32_t> direct_edges(const KnowledgeGraph& g, std::string_view a,
                                               std::string_view b, bool directed = true) {
    const auto ai = g.require_node(a);
    const auto bi = g.require_node(b);
    std::vector<std::uint32_t> out;
    for (const AdjEntry& entry : g.out_edges(ai)) {
        if (entry.neighbor == bi) {
            out.push_back(entry.edge);
        }
    }
    if (!directed && ai != bi) {
        for (const AdjEntry& entry : g.out_edges(bi)) {
            if (entry.neighbor == ai) {
                out.push_back(entry.edge);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shortest paths
// ---------------------------------------------------------------------------

struct PathResult {
    std::vector<std::string> nodes;
    // Parallel qualifying edges per step; step_edges[i] connects nodes[i]
    // and nodes[i+1].
    std::vector<std::vector<std::uint32_t>> step_edges;

    std::size_t length() const noexcept { return nodes.empty() ? 0 : nodes.size() - 1; }
};

namespace detail {

// Visits each qualifying neighbor of u exactly once per incident edge.
template <typename Fn>
void for_each_neighbor(const KnowledgeGraph& g, std::uint32_t u, bool directed, bool reverse,
                       const std::optional<int>& cutoff, Fn&& fn) {
    auto scan = [&](std::span<const AdjEntry> list) {
        for (const AdjEntry& entry : list) {
            if (entry.neighbor == u) {
                continue;  // self-loops never shorten a path
            }
            if (cutoff && !edge_qualifies(g.edge_at(entry.edge), cutoff)) {
                continue;
            }
            fn(entry.neighbor, entry.edge);
        }
    };
    if (directed) {
        scan(reverse ? g.in_edges(u) : g.out_edges(u));
    } else {
        scan(g.out_edges(u));
        scan(g.in_edges(u));
    }
}

}  // namespace detail

// Minimum-hop path over non-negated qualifying edges, found with a
// bidirectional breadth-first search; returns std::nullopt when dst is
// unreachable. The reconstruction pass picks the lexicographically smallest
// node-id sequence among all minimum-hop paths and attaches every parallel
// qualifying edge to each step.
inline std::optional<PathResult> shortest_path(const KnowledgeGraph& g, std::string_view src,
                                               std::string_view dst, QueryOptions opts = {}) {
    const auto si = g.require_node(src);
    const auto di = g.require_node(dst);
    if (si == di) {
        return PathResult{{std::string(src)}, {}};
    }

    const auto n = g.node_count();
    std::vector<std::int32_t> dist_f(n, -1);
    std::vector<std::int32_t> dist_b(n, -1);
    std::vector<std::uint32_t> frontier_f{si};
    std::vector<std::uint32_t> frontier_b{di};
    dist_f[si] = 0;
    dist_b[di] = 0;

    std::optional<std::size_t> total;
    // Alternate expanding the smaller frontier until the searches touch.
    while (!frontier_f.empty() && !frontier_b.empty() && !total) {
        const bool forward = frontier_f.size() <= frontier_b.size();
        auto& frontier = forward ? frontier_f : frontier_b;
        auto& dist = forward ? dist_f : dist_b;
        auto& other = forward ? dist_b : dist_f;
        std::vector<std::uint32_t> next;
        for (std::uint32_t u : frontier) {
            detail::for_each_neighbor(
                g, u, opts.directed, !forward, opts.year_cutoff,
                [&](std::uint32_t v, std::uint32_t) {
                    if (dist[v] != -1) {
                        return;
                    }
                    dist[v] = dist[u] + 1;
                    next.push_back(v);
                    if (other[v] != -1) {
                        const std::size_t candidate =
                            static_cast<std::size_t>(dist[v]) + static_cast<std::size_t>(other[v]);
                        if (!total || candidate < *total) {
                            total = candidate;
                        }
                    }
                });
        }
        frontier = std::move(next);
    }
    if (!total) {
        return std::nullopt;
    }
    const std::size_t d = *total;

    // Exact distances to dst for every node within d hops, then a greedy
    // walk that always takes the smallest-id neighbor still on a shortest
    // path.
    std::vector<std::int32_t> to_dst(n, -1);
    to_dst[di] = 0;
    std::deque<std::uint32_t> queue{di};
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        if (static_cast<std::size_t>(to_dst[u]) >= d) {
            continue;
        }
        detail::for_each_neighbor(g, u, opts.directed, /*reverse=*/true, opts.year_cutoff,
                                  [&](std::uint32_t v, std::uint32_t) {
                                      if (to_dst[v] == -1) {
                                          to_dst[v] = to_dst[u] + 1;
                                          queue.push_back(v);
                                      }
                                  });
    }

    PathResult path;
    path.nodes.push_back(std::string(src));
    std::uint32_t u = si;
    for (std::size_t remaining = d; remaining > 0; --remaining) {
        std::optional<std::uint32_t> best;
        detail::for_each_neighbor(
            g, u, opts.directed, /*reverse=*/false, opts.year_cutoff,
            [&](std::uint32_t v, std::uint32_t) {
                if (to_dst[v] == -1 ||
                    static_cast<std::size_t>(to_dst[v]) != remaining - 1) {
                    return;
                }
                if (!best || g.node_at(v).id < g.node_at(*best).id) {
                    best = v;
                }
            });
        if (!best) {
            throw Error("internal: path reconstruction lost the frontier");
        }
        std::vector<std::uint32_t> step;
        detail::for_each_neighbor(g, u, opts.directed, /*reverse=*/false, opts.year_cutoff,
                                  [&](std::uint32_t v, std::uint32_t e) {
                                      if (v == *best) {
                                          step.push_back(e);
                                      }
                                  });
        std::sort(step.begin(), step.end());
        step.erase(std::unique(step.begin(), step.end()), step.end());
        path.step_edges.push_back(std::move(step));
        path.nodes.push_back(g.node_at(*best).id);
        u = *best;
    }
    return path;
}

// ---------------------------------------------------------------------------
// Meta-path discovery
// ---------------------------------------------------------------------------

enum class TemplateShape {
    NpToDrugDirect,
    DrugToNpDirect,
    NpViaTargetToDrug,
    ConvergentTarget,
};

inline std::string_view to_string(TemplateShape s) {
    switch (s) {
        case TemplateShape::NpToDrugDirect: return "NP_TO_DRUG_DIRECT";
        case TemplateShape::DrugToNpDirect: return "DRUG_TO_NP_DIRECT";
        case TemplateShape::NpViaTargetToDrug: return "NP_VIA_TARGET_TO_DRUG";
        case TemplateShape::ConvergentTarget: return "CONVERGENT_TARGET";
    }
    return "NP_TO_DRUG_DIRECT";
}

struct MetaPathTemplate {
    TemplateShape shape = TemplateShape::NpToDrugDirect;
    std::set<std::string, std::less<>> relation_whitelist;
    // Optional separate whitelist for the second relation slot of the
    // two-relation shapes; empty means the shared whitelist applies.
    std::set<std::string, std::less<>> relation_whitelist_b;

    const std::set<std::string, std::less<>>& slot_a() const { return relation_whitelist; }
    const std::set<std::string, std::less<>>& slot_b() const {
        return relation_whitelist_b.empty() ? relation_whitelist : relation_whitelist_b;
    }

    static std::set<std::string, std::less<>> default_whitelist() {
        return {
            std::string(rel::interacts_with),
            std::string(rel::molecularly_interacts_with),
            std::string(rel::correlated_with),
            std::string(rel::directly_regulates_activity_of),
            std::string(rel::positively_regulates),
            std::string(rel::inhibits),
            std::string(rel::capable_of_regulating),
            std::string(rel::capable_of_positively_regulating),
            std::string(rel::is_substrate_of),
            std::string(rel::transports),
            std::string(rel::regulates_activity_of),
        };
    }

    static std::vector<MetaPathTemplate> defaults() {
        std::vector<MetaPathTemplate> templates;
        for (auto shape : {TemplateShape::NpToDrugDirect, TemplateShape::DrugToNpDirect,
                           TemplateShape::NpViaTargetToDrug, TemplateShape::ConvergentTarget}) {
            templates.push_back({shape, default_whitelist(), {}});
        }
        return templates;
    }
};

enum class TargetKind { Enzyme, Transporter };

inline std::string_view to_string(TargetKind k) {
    return k == TargetKind::Enzyme ? "ENZYME" : "TRANSPORTER";
}

struct TargetSet {
    std::set<std::string, std::less<>> enzymes;
    std::set<std::string, std::less<>> transporters;

    // Columns: node_id, kind (ENZYME | TRANSPORTER).
    static TargetSet load(const std::string& path) {
        TsvReader reader(path);
        reader.expect_header({"node_id", "kind"});
        TargetSet targets;
        std::vector<std::string> fields;
        while (reader.next(fields)) {
            if (fields.size() != 2 || fields[0].empty()) {
                reader.fail("expected columns: node_id, kind");
            }
            if (fields[1] == "ENZYME") {
                targets.enzymes.insert(fields[0]);
            } else if (fields[1] == "TRANSPORTER") {
                targets.transporters.insert(fields[0]);
            } else {
                reader.fail("kind must be ENZYME or TRANSPORTER: " + fields[1]);
            }
        }
        return targets;
    }
};

// A direct NP-drug edge finding (template shapes without a target).
struct DirectFinding {
    TemplateShape shape;
    std::string np_node;
    std::vector<std::uint32_t> edges;
};

// An enzyme/transporter surfaced by a two-relation template.
struct MetaPathHit {
    TemplateShape shape;
    std::string np_node;
    std::string target;
    TargetKind kind;
    std::vector<std::uint32_t> np_side_edges;    // NP <-> target step
    std::vector<std::uint32_t> drug_side_edges;  // target <-> drug step
};

struct MetaPathResult {
    std::vector<std::string> np_nodes;
    std::string drug;
    std::vector<DirectFinding> direct;
    std::vector<MetaPathHit> hits;

    std::set<std::string, std::less<>> targets_of_kind(TargetKind kind) const {
        std::set<std::string, std::less<>> out;
        for (const auto& hit : hits) {
            if (hit.kind == kind) {
                out.insert(hit.target);
            }
        }
        return out;
    }
};

namespace detail {

inline std::vector<std::uint32_t> whitelisted_edges_between(
    const KnowledgeGraph& g, std::uint32_t from, std::uint32_t to,
    const std::set<std::string, std::less<>>& whitelist, bool directed) {
    std::vector<std::uint32_t> out;
    auto scan = [&](std::uint32_t subj, std::uint32_t obj) {
        for (const AdjEntry& entry : g.out_edges(subj)) {
            if (entry.neighbor == obj &&
                whitelist.contains(g.edge_at(entry.edge).relation.id)) {
                out.push_back(entry.edge);
            }
        }
    };
    scan(from, to);
    if (!directed && from != to) {
        scan(to, from);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Evaluates the templates for one natural-product/drug pair. np_nodes holds
// the product plus its constituents; any of them may anchor a match.
inline MetaPathResult find_metapaths(const KnowledgeGraph& g,
                                     const std::set<std::string, std::less<>>& np_nodes,
                                     std::string_view drug,
                                     const std::vector<MetaPathTemplate>& templates,
                                     const TargetSet& targets, bool directed = true) {
    MetaPathResult result;
    result.np_nodes.assign(np_nodes.begin(), np_nodes.end());
    result.drug = std::string(drug);

    const auto drug_idx = g.require_node(drug);
    std::vector<std::pair<std::string, std::uint32_t>> nps;
    for (const auto& id : np_nodes) {
        nps.emplace_back(id, g.require_node(id));
    }

    // target id -> kinds, sorted for deterministic hit order
    std::vector<std::pair<std::string, TargetKind>> target_list;
    for (const auto& id : targets.enzymes) {
        target_list.emplace_back(id, TargetKind::Enzyme);
    }
    for (const auto& id : targets.transporters) {
        target_list.emplace_back(id, TargetKind::Transporter);
    }
    std::sort(target_list.begin(), target_list.end());

    for (const auto& tmpl : templates) {
        switch (tmpl.shape) {
            case TemplateShape::NpToDrugDirect:
            case TemplateShape::DrugToNpDirect: {
                const bool np_first = tmpl.shape == TemplateShape::NpToDrugDirect;
                for (const auto& [np_id, np_idx] : nps) {
                    auto edges = detail::whitelisted_edges_between(
                        g, np_first ? np_idx : drug_idx, np_first ? drug_idx : np_idx,
                        tmpl.slot_a(), directed);
                    if (!edges.empty()) {
                        result.direct.push_back({tmpl.shape, np_id, std::move(edges)});
                    }
                }
                break;
            }
            case TemplateShape::NpViaTargetToDrug:
            case TemplateShape::ConvergentTarget: {
                const bool convergent = tmpl.shape == TemplateShape::ConvergentTarget;
                for (const auto& [target_id, kind] : target_list) {
                    const auto target_idx = g.node_index(target_id);
                    if (!target_idx) {
                        continue;  // target not present in this graph
                    }
                    auto drug_side = convergent
                                         ? detail::whitelisted_edges_between(
                                               g, drug_idx, *target_idx, tmpl.slot_b(), directed)
                                         : detail::whitelisted_edges_between(
                                               g, *target_idx, drug_idx, tmpl.slot_b(), directed);
                    if (drug_side.empty()) {
                        continue;
                    }
                    for (const auto& [np_id, np_idx] : nps) {
                        auto np_side = detail::whitelisted_edges_between(g, np_idx, *target_idx,
                                                                         tmpl.slot_a(), directed);
                        if (np_side.empty()) {
                            continue;
                        }
                        result.hits.push_back({tmpl.shape, np_id, target_id, kind,
                                               std::move(np_side), drug_side});
                    }
                }
                break;
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Time slicing
// ---------------------------------------------------------------------------

// Restricts the graph to edges with at least one evidence record at or
// before the cutoff (undated ontology/database evidence always qualifies).
// The node set is kept whole; retained edges keep their full evidence.
inline KnowledgeGraph time_slice(const KnowledgeGraph& g, int year_cutoff) {
    KnowledgeGraph sliced(g.registry_ptr(), g.options());
    for (const auto& node : g.nodes()) {
        sliced.add_node(node);
    }
    const std::optional<int> cutoff = year_cutoff;
    for (const auto& edge : g.edges()) {
        if (edge_qualifies(edge, cutoff)) {
            sliced.add_edge(edge);
        }
    }
    for (const auto& edge : g.negated_edges()) {
        if (edge_qualifies(edge, cutoff)) {
            sliced.add_edge(edge);
        }
    }
    sliced.seal();
    return sliced;
}

}  // namespace npkg
