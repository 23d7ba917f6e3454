// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// Knowledge-recapturing evaluation: classify curated ground-truth assertions
// against the graph (congruent / contradictory / both / indeterminate),
// summarize verdict counts, and audit the graph for semantically
// contradictory edge pairs (a positive and a negative relation between the
// same node pair).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "npkg/errors.hpp"
#include "npkg/graph.hpp"
#include "npkg/query.hpp"
#include "npkg/tsv.hpp"

namespace npkg {

enum class Interaction { Inhibits, Induces, NoInteraction };

inline std::string_view to_string(Interaction i) {
    switch (i) {
        case Interaction::Inhibits: return "INHIBITS";
        case Interaction::Induces: return "INDUCES";
        case Interaction::NoInteraction: return "NO_INTERACTION";
    }
    return "INHIBITS";
}

struct GroundTruthAssertion {
    std::string np_node;
    std::string target_node;
    Interaction interaction = Interaction::Inhibits;
    std::string evidence_type;  // e.g. "in vitro", "clinical"
};

// Columns: np_node, target_node, interaction, evidence_type.
inline std::vector<GroundTruthAssertion> parse_ground_truth(const std::string& path) {
    TsvReader reader(path);
    reader.expect_header({"np_node", "target_node", "interaction", "evidence_type"});
    std::vector<GroundTruthAssertion> assertions;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() != 4 || fields[0].empty() || fields[1].empty()) {
            reader.fail("expected columns: np_node, target_node, interaction, evidence_type");
        }
        if (fields[0] == fields[1]) {
            reader.fail("assertion endpoints must differ: " + fields[0]);
        }
        GroundTruthAssertion a;
        a.np_node = fields[0];
        a.target_node = fields[1];
        if (fields[2] == "INHIBITS") {
            a.interaction = Interaction::Inhibits;
        } else if (fields[2] == "INDUCES") {
            a.interaction = Interaction::Induces;
        } else if (fields[2] == "NO_INTERACTION") {
            a.interaction = Interaction::NoInteraction;
        } else {
            reader.fail("interaction must be INHIBITS, INDUCES or NO_INTERACTION: " + fields[2]);
        }
        a.evidence_type = fields[3];
        assertions.push_back(std::move(a));
    }
    return assertions;
}

enum class Polarity { Positive, Negative, Neutral };

inline std::string_view to_string(Polarity p) {
    switch (p) {
        case Polarity::Positive: return "POSITIVE";
        case Polarity::Negative: return "NEGATIVE";
        case Polarity::Neutral: return "NEUTRAL";
    }
    return "NEUTRAL";
}

// Relation polarity assignments. Relations without an entry are neutral, so
// the table always covers the registry.
class PolarityTable {
public:
    void set(std::string_view relation_id, Polarity polarity) {
        table_[std::string(relation_id)] = polarity;
    }

    Polarity of(std::string_view relation_id) const {
        auto it = table_.find(relation_id);
        return it == table_.end() ? Polarity::Neutral : it->second;
    }

    static PolarityTable defaults() {
        PolarityTable t;
        t.set(rel::inhibits, Polarity::Negative);
        t.set(rel::negatively_regulates, Polarity::Negative);
        t.set(rel::directly_negatively_regulates_quantity_of, Polarity::Negative);
        t.set(rel::positively_regulates, Polarity::Positive);
        t.set(rel::directly_positively_regulates_quantity_of, Polarity::Positive);
        t.set(rel::capable_of_positively_regulating, Polarity::Positive);
        return t;
    }

    // Columns: relation_id, polarity (POSITIVE | NEGATIVE | NEUTRAL).
    static PolarityTable load(const std::string& path) {
        TsvReader reader(path);
        reader.expect_header({"relation_id", "polarity"});
        PolarityTable t;
        std::vector<std::string> fields;
        while (reader.next(fields)) {
            if (fields.size() != 2 || fields[0].empty()) {
                reader.fail("expected columns: relation_id, polarity");
            }
            if (fields[1] == "POSITIVE") {
                t.set(fields[0], Polarity::Positive);
            } else if (fields[1] == "NEGATIVE") {
                t.set(fields[0], Polarity::Negative);
            } else if (fields[1] == "NEUTRAL") {
                t.set(fields[0], Polarity::Neutral);
            } else {
                reader.fail("polarity must be POSITIVE, NEGATIVE or NEUTRAL: " + fields[1]);
            }
        }
        return t;
    }

private:
    StringMap<Polarity> table_;
};

enum class Verdict { Congruent, Contradictory, Both, Indeterminate, NoPath };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Congruent: return "CONGRUENT";
        case Verdict::Contradictory: return "CONTRADICTORY";
        case Verdict::Both: return "BOTH";
        case Verdict::Indeterminate: return "INDETERMINATE";
        case Verdict::NoPath: return "NO_PATH";
    }
    return "NO_PATH";
}

struct CongruenceVerdict {
    GroundTruthAssertion assertion;
    Verdict verdict = Verdict::NoPath;
    std::vector<std::uint32_t> supporting;
    std::vector<std::uint32_t> opposing;
    std::vector<std::uint32_t> neutral;
    std::optional<PathResult> path;  // set when no direct edge existed
    std::string note;
};

// Verdict semantics: for INHIBITS, negative relations support the
// assertion and positive relations oppose it; INDUCES is the mirror image;
// NO_INTERACTION is supported by the absence of polar edges (neutral edges
// are allowed) and contradicted by any polar edge. When no direct edge
// exists the shortest path is consulted and only its final hop into the
// target carries polarity; earlier hops are context.
inline CongruenceVerdict classify_assertion(const KnowledgeGraph& g,
                                            const GroundTruthAssertion& assertion,
                                            const PolarityTable& polarity, bool directed = true) {
    CongruenceVerdict verdict;
    verdict.assertion = assertion;

    if (!g.has_node(assertion.np_node) || !g.has_node(assertion.target_node)) {
        verdict.verdict = Verdict::NoPath;
        verdict.note = "missing node: " +
                       (g.has_node(assertion.np_node) ? assertion.target_node : assertion.np_node);
        return verdict;
    }

    std::vector<std::uint32_t> polar_edges =
        direct_edges(g, assertion.np_node, assertion.target_node, directed);
    bool via_path = false;
    if (polar_edges.empty()) {
        auto path = shortest_path(g, assertion.np_node, assertion.target_node,
                                  QueryOptions{directed, std::nullopt});
        if (path && path->length() > 0) {
            polar_edges = path->step_edges.back();  // final hop into the target
            verdict.path = std::move(path);
            via_path = true;
        }
    }

    if (polar_edges.empty()) {
        if (assertion.interaction == Interaction::NoInteraction) {
            verdict.verdict = Verdict::Congruent;
            verdict.note = "no edges or paths; absence supports NO_INTERACTION";
        } else {
            verdict.verdict = Verdict::NoPath;
        }
        return verdict;
    }

    for (std::uint32_t e : polar_edges) {
        const Polarity p = polarity.of(g.edge_at(e).relation.id);
        switch (assertion.interaction) {
            case Interaction::Inhibits:
                if (p == Polarity::Negative) {
                    verdict.supporting.push_back(e);
                } else if (p == Polarity::Positive) {
                    verdict.opposing.push_back(e);
                } else {
                    verdict.neutral.push_back(e);
                }
                break;
            case Interaction::Induces:
                if (p == Polarity::Positive) {
                    verdict.supporting.push_back(e);
                } else if (p == Polarity::Negative) {
                    verdict.opposing.push_back(e);
                } else {
                    verdict.neutral.push_back(e);
                }
                break;
            case Interaction::NoInteraction:
                if (p == Polarity::Neutral) {
                    verdict.neutral.push_back(e);
                } else {
                    verdict.opposing.push_back(e);
                }
                break;
        }
    }

    if (assertion.interaction == Interaction::NoInteraction) {
        verdict.verdict = verdict.opposing.empty() ? Verdict::Congruent : Verdict::Contradictory;
    } else if (!verdict.supporting.empty() && !verdict.opposing.empty()) {
        verdict.verdict = Verdict::Both;
    } else if (!verdict.supporting.empty()) {
        verdict.verdict = Verdict::Congruent;
    } else if (!verdict.opposing.empty()) {
        verdict.verdict = Verdict::Contradictory;
    } else {
        verdict.verdict = Verdict::Indeterminate;
    }
    if (via_path) {
        verdict.note = "verdict from final hop of a length-" +
                       std::to_string(verdict.path->length()) + " shortest path";
    }
    return verdict;
}

// Verdict counts with percentages at two decimals (half-up), matching the
// evaluation reporting convention.
struct EvalSummary {
    std::map<Verdict, std::size_t> counts;
    std::size_t total = 0;

    static double percent(std::size_t count, std::size_t total) {
        if (total == 0) {
            return 0.0;
        }
        const double raw = 100.0 * static_cast<double>(count) / static_cast<double>(total);
        return std::floor(raw * 100.0 + 0.5) / 100.0;
    }

    double percent_of(Verdict v) const {
        auto it = counts.find(v);
        return percent(it == counts.end() ? 0 : it->second, total);
    }
};

inline EvalSummary summarize_counts(const std::map<Verdict, std::size_t>& counts) {
    EvalSummary summary;
    summary.counts = counts;
    for (const auto& [verdict, count] : counts) {
        summary.total += count;
    }
    return summary;
}

inline EvalSummary summarize_evaluation(const std::vector<CongruenceVerdict>& verdicts) {
    std::map<Verdict, std::size_t> counts;
    for (const auto& v : verdicts) {
        ++counts[v.verdict];
    }
    return summarize_counts(counts);
}

// All unordered pairs of non-negated edges that share (subject, object) and
// carry opposite polarities. Pairs are reported once, ordered by edge index.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> find_contradictory_edge_pairs(
    const KnowledgeGraph& g, const PolarityTable& polarity) {
    std::map<std::pair<std::string_view, std::string_view>,
             std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>>
        by_endpoints;
    for (std::uint32_t e = 0; e < g.edges().size(); ++e) {
        const EdgeRecord& edge = g.edge_at(e);
        const Polarity p = polarity.of(edge.relation.id);
        if (p == Polarity::Neutral) {
            continue;
        }
        auto& [positives, negatives] = by_endpoints[{edge.subject, edge.object}];
        (p == Polarity::Positive ? positives : negatives).push_back(e);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const auto& [endpoints, grouped] : by_endpoints) {
        for (std::uint32_t pos : grouped.first) {
            for (std::uint32_t neg : grouped.second) {
                pairs.emplace_back(std::min(pos, neg), std::max(pos, neg));
            }
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace npkg
