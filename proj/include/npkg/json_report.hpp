// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// JSON report builders for the CLI subcommands. Everything uses ordered
// containers and canonical sorting so identical inputs serialize to
// byte-identical reports.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "npkg/closure.hpp"
#include "npkg/eval.hpp"
#include "npkg/graph.hpp"
#include "npkg/ingest.hpp"
#include "npkg/query.hpp"

namespace npkg {

using Json = nlohmann::ordered_json;

inline Json evidence_to_json(const EvidenceRecord& ev) {
    Json j;
    j["source"] = to_string(ev.source);
    j["source_name"] = ev.source_name;
    if (ev.pmid) {
        j["pmid"] = *ev.pmid;
    }
    if (ev.year) {
        j["year"] = *ev.year;
    }
    if (ev.confidence) {
        j["confidence"] = *ev.confidence;
    }
    if (ev.sentence) {
        j["sentence"] = *ev.sentence;
    }
    if (!ev.derived_from.empty()) {
        j["derived_from"] = ev.derived_from;
    }
    return j;
}

inline Json edge_to_json(const EdgeRecord& edge) {
    Json j;
    j["subject"] = edge.subject;
    j["relation_id"] = edge.relation.id;
    j["relation_label"] = edge.relation.label;
    j["object"] = edge.object;
    j["inferred"] = edge.inferred;
    j["negated"] = edge.negated;
    auto& evidence = j["evidence"] = Json::array();
    for (const auto& ev : edge.evidence) {
        evidence.push_back(evidence_to_json(ev));
    }
    return j;
}

inline Json edges_to_json(const KnowledgeGraph& g, const std::vector<std::uint32_t>& edge_ids) {
    Json arr = Json::array();
    for (std::uint32_t e : edge_ids) {
        arr.push_back(edge_to_json(g.edge_at(e)));
    }
    return arr;
}

inline Json stats_to_json(const GraphStats& stats) {
    Json j;
    j["node_count"] = stats.node_count;
    j["edge_count"] = stats.edge_count;
    j["average_degree"] = stats.average_degree;
    j["node_density"] = stats.node_density;
    return j;
}

inline Json stats_report(const GraphStats& stats,
                         const std::optional<GraphStats>& baseline = {}) {
    Json j;
    j["stats"] = stats_to_json(stats);
    if (baseline) {
        j["baseline"] = stats_to_json(*baseline);
        const StatsChange change = percent_change(*baseline, stats);
        Json c;
        c["node_pct"] = change.node_pct;
        c["edge_pct"] = change.edge_pct;
        c["average_degree_pct"] = change.average_degree_pct;
        c["node_density_pct"] = change.node_density_pct;
        j["percent_change"] = c;
    }
    return j;
}

inline Json ingest_report_to_json(const IngestReport& report) {
    Json j;
    j["input"] = report.input;
    j["accepted"] = report.accepted;
    j["rejected_by_filter"] = report.rejected_by_filter;
    j["dropped_unmapped"] = report.dropped_unmapped;
    j["negated"] = report.negated;
    j["deduplicated"] = report.deduplicated;
    Json reasons = Json::object();
    for (const auto& [reason, count] : report.reject_reasons) {
        reasons[reason] = count;
    }
    j["reject_reasons"] = reasons;
    Json unmapped = Json::object();
    for (const auto& [raw, count] : report.unmapped_relations) {
        unmapped[raw] = count;
    }
    j["unmapped_relations"] = unmapped;
    return j;
}

inline Json path_to_json(const KnowledgeGraph& g, const PathResult& path) {
    Json j;
    j["length"] = path.length();
    j["nodes"] = path.nodes;
    auto& steps = j["steps"] = Json::array();
    for (std::size_t i = 0; i < path.step_edges.size(); ++i) {
        Json step;
        step["from"] = path.nodes[i];
        step["to"] = path.nodes[i + 1];
        step["edges"] = edges_to_json(g, path.step_edges[i]);
        steps.push_back(std::move(step));
    }
    return j;
}

inline Json path_report(const KnowledgeGraph& g, const std::string& src, const std::string& dst,
                        const std::optional<PathResult>& path, const QueryOptions& opts) {
    Json j;
    j["src"] = src;
    j["dst"] = dst;
    j["directed"] = opts.directed;
    if (opts.year_cutoff) {
        j["year_cutoff"] = *opts.year_cutoff;
    }
    j["found"] = path.has_value();
    if (path) {
        j["path"] = path_to_json(g, *path);
    }
    return j;
}

inline Json metapath_report(const KnowledgeGraph& g, const MetaPathResult& result) {
    Json j;
    j["np_nodes"] = result.np_nodes;
    j["drug"] = result.drug;

    auto& direct = j["direct_edges"] = Json::array();
    for (const auto& finding : result.direct) {
        Json f;
        f["template"] = to_string(finding.shape);
        f["np_node"] = finding.np_node;
        f["edges"] = edges_to_json(g, finding.edges);
        direct.push_back(std::move(f));
    }

    // hits grouped by target kind
    for (auto kind : {TargetKind::Enzyme, TargetKind::Transporter}) {
        Json group = Json::array();
        for (const auto& hit : result.hits) {
            if (hit.kind != kind) {
                continue;
            }
            Json h;
            h["target"] = hit.target;
            h["template"] = to_string(hit.shape);
            h["np_node"] = hit.np_node;
            h["np_side_edges"] = edges_to_json(g, hit.np_side_edges);
            h["drug_side_edges"] = edges_to_json(g, hit.drug_side_edges);
            group.push_back(std::move(h));
        }
        j[kind == TargetKind::Enzyme ? "enzymes" : "transporters"] = std::move(group);
    }

    Json summary;
    summary["enzymes"] = result.targets_of_kind(TargetKind::Enzyme);
    summary["transporters"] = result.targets_of_kind(TargetKind::Transporter);
    j["summary"] = std::move(summary);
    return j;
}

inline Json verdict_to_json(const KnowledgeGraph& g, const CongruenceVerdict& verdict) {
    Json j;
    j["np_node"] = verdict.assertion.np_node;
    j["target_node"] = verdict.assertion.target_node;
    j["interaction"] = to_string(verdict.assertion.interaction);
    j["evidence_type"] = verdict.assertion.evidence_type;
    j["verdict"] = to_string(verdict.verdict);
    j["supporting"] = edges_to_json(g, verdict.supporting);
    j["opposing"] = edges_to_json(g, verdict.opposing);
    j["neutral"] = edges_to_json(g, verdict.neutral);
    if (verdict.path) {
        j["path"] = path_to_json(g, *verdict.path);
    }
    if (!verdict.note.empty()) {
        j["note"] = verdict.note;
    }
    return j;
}

inline Json evaluation_report(const KnowledgeGraph& g,
                              const std::vector<CongruenceVerdict>& verdicts) {
    Json j;
    auto& rows = j["assertions"] = Json::array();
    for (const auto& verdict : verdicts) {
        rows.push_back(verdict_to_json(g, verdict));
    }
    const EvalSummary summary = summarize_evaluation(verdicts);
    Json s;
    s["total"] = summary.total;
    for (auto verdict : {Verdict::Congruent, Verdict::Contradictory, Verdict::Indeterminate,
                         Verdict::Both, Verdict::NoPath}) {
        Json row;
        auto it = summary.counts.find(verdict);
        row["count"] = it == summary.counts.end() ? 0 : it->second;
        if (summary.total > 0) {
            row["percent"] = summary.percent_of(verdict);
        }
        s[std::string(to_string(verdict))] = std::move(row);
    }
    j["summary"] = std::move(s);
    return j;
}

inline Json contradictions_report(
    const KnowledgeGraph& g,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    Json j;
    j["pair_count"] = pairs.size();
    auto& rows = j["pairs"] = Json::array();
    for (const auto& [a, b] : pairs) {
        Json row;
        row["first"] = edge_to_json(g.edge_at(a));
        row["second"] = edge_to_json(g.edge_at(b));
        rows.push_back(std::move(row));
    }
    return j;
}

inline Json closure_report(const KnowledgeGraph& g) {
    Json j;
    j["edge_count"] = g.edge_count();
    j["inferred_edge_count"] = count_inferred(g);
    std::map<std::string, std::size_t> by_relation;
    for (const auto& edge : g.edges()) {
        if (edge.inferred) {
            ++by_relation[edge.relation.id];
        }
    }
    Json rows = Json::object();
    for (const auto& [relation, count] : by_relation) {
        rows[relation] = count;
    }
    j["inferred_by_relation"] = rows;
    return j;
}

}  // namespace npkg
