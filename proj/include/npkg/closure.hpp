// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// Forward-chaining entailment over designated relations, run to fixpoint
// with semi-naive iteration (each round joins only against pairs derived in
// the previous round). Two rule forms are supported:
//
//   symmetric r:   (a, r, b)              =>  (b, r, a)
//   transitive r:  (a, r, b), (b, r, c)   =>  (a, r, c)
//
// Derived edges carry a single INFERRED evidence record naming their
// supporting edges. Negated edges are never premises or conclusions.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "npkg/errors.hpp"
#include "npkg/graph.hpp"
#include "npkg/tsv.hpp"

namespace npkg {

struct ClosureConfig {
    std::set<std::string, std::less<>> symmetric_relations;
    std::set<std::string, std::less<>> transitive_relations;

    static ClosureConfig defaults() {
        ClosureConfig cfg;
        cfg.symmetric_relations = {std::string(rel::interacts_with),
                                   std::string(rel::molecularly_interacts_with)};
        cfg.transitive_relations = {std::string(rel::part_of), std::string(rel::precedes),
                                    std::string(rel::positively_regulates)};
        return cfg;
    }

    // Columns: relation_id, rule (SYMMETRIC | TRANSITIVE).
    static ClosureConfig load(const std::string& path) {
        TsvReader reader(path);
        reader.expect_header({"relation_id", "rule"});
        ClosureConfig cfg;
        std::vector<std::string> fields;
        while (reader.next(fields)) {
            if (fields.size() != 2 || fields[0].empty()) {
                reader.fail("expected columns: relation_id, rule");
            }
            if (fields[1] == "SYMMETRIC") {
                cfg.symmetric_relations.insert(fields[0]);
            } else if (fields[1] == "TRANSITIVE") {
                cfg.transitive_relations.insert(fields[0]);
            } else {
                reader.fail("rule must be SYMMETRIC or TRANSITIVE: " + fields[1]);
            }
        }
        return cfg;
    }
};

namespace detail {

struct NodePair {
    std::uint32_t subject;
    std::uint32_t object;

    friend bool operator==(const NodePair&, const NodePair&) = default;
    friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

inline std::uint64_t pack_pair(const NodePair& p) {
    return (static_cast<std::uint64_t>(p.subject) << 32) | p.object;
}

}  // namespace detail

// Applies the configured rules until no new edge is derivable and returns the
// enlarged graph. Input must be sealed; the result is sealed. Edges that are
// entailed but already present are left untouched. Fixpoint needs at most |V|
// rounds per relation, and per-relation output is bounded by |V|^2 pairs.
// The graph is taken by value; move it in to avoid the copy.
inline KnowledgeGraph apply_closure(KnowledgeGraph g, const ClosureConfig& cfg) {
    if (!g.is_sealed()) {
        throw Error("closure requires a sealed graph");
    }
    g.reopen();

    std::set<std::string, std::less<>> rule_relations;
    rule_relations.insert(cfg.symmetric_relations.begin(), cfg.symmetric_relations.end());
    rule_relations.insert(cfg.transitive_relations.begin(), cfg.transitive_relations.end());

    using detail::NodePair;
    using detail::pack_pair;

    for (const auto& relation_id : rule_relations) {
        if (!g.registry().contains(relation_id)) {
            throw RelationNotRegistered(relation_id);
        }
        const bool symmetric = cfg.symmetric_relations.contains(relation_id);
        const bool transitive = cfg.transitive_relations.contains(relation_id);
        const RelationId relation = g.registry().at(g.registry().require(relation_id));

        // Base facts, in canonical pair order so derivation notes do not
        // depend on edge insertion order.
        std::vector<NodePair> base;
        for (const auto& edge : g.edges()) {
            if (edge.relation.id == relation_id) {
                base.push_back({g.require_node(edge.subject), g.require_node(edge.object)});
            }
        }
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());

        std::unordered_set<std::uint64_t> known;
        known.reserve(base.size() * 2);
        std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> out_by_subject;
        std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> in_by_object;
        for (const auto& p : base) {
            known.insert(pack_pair(p));
            out_by_subject[p.subject].push_back(p.object);
            in_by_object[p.object].push_back(p.subject);
        }

        struct Derived {
            NodePair pair;
            NodePair premise_a;
            NodePair premise_b;  // == premise_a for symmetric derivations
            bool from_symmetry;
        };
        std::vector<Derived> inferred;
        std::vector<NodePair> delta = base;

        while (!delta.empty()) {
            std::vector<Derived> candidates;
            if (symmetric) {
                for (const auto& p : delta) {
                    candidates.push_back({{p.object, p.subject}, p, p, true});
                }
            }
            if (transitive) {
                for (const auto& p : delta) {
                    if (auto it = out_by_subject.find(p.object); it != out_by_subject.end()) {
                        for (std::uint32_t c : it->second) {
                            candidates.push_back(
                                {{p.subject, c}, p, {p.object, c}, false});
                        }
                    }
                    if (auto it = in_by_object.find(p.subject); it != in_by_object.end()) {
                        for (std::uint32_t a : it->second) {
                            candidates.push_back({{a, p.object}, {a, p.subject}, p, false});
                        }
                    }
                }
            }
            std::sort(candidates.begin(), candidates.end(), [](const Derived& x, const Derived& y) {
                return std::tie(x.pair, x.premise_a, x.premise_b) <
                       std::tie(y.pair, y.premise_a, y.premise_b);
            });
            delta.clear();
            for (const auto& cand : candidates) {
                if (!known.insert(pack_pair(cand.pair)).second) {
                    continue;  // keeps the canonically-first derivation
                }
                out_by_subject[cand.pair.subject].push_back(cand.pair.object);
                in_by_object[cand.pair.object].push_back(cand.pair.subject);
                inferred.push_back(cand);
                delta.push_back(cand.pair);
            }
        }

        auto pair_descriptor = [&](const NodePair& p) {
            return g.node_at(p.subject).id + "|" + relation.id + "|" + g.node_at(p.object).id;
        };
        for (const auto& d : inferred) {
            EvidenceRecord ev;
            ev.source = EvidenceSource::Inferred;
            ev.source_name = "closure";
            ev.derived_from = d.from_symmetry
                                  ? pair_descriptor(d.premise_a)
                                  : pair_descriptor(d.premise_a) + ";" + pair_descriptor(d.premise_b);
            EdgeRecord edge;
            edge.subject = g.node_at(d.pair.subject).id;
            edge.relation = relation;
            edge.object = g.node_at(d.pair.object).id;
            edge.evidence.push_back(std::move(ev));
            g.add_edge(std::move(edge));
        }
    }

    g.seal();
    return g;
}

inline std::size_t count_inferred(const KnowledgeGraph& g) {
    return static_cast<std::size_t>(
        std::count_if(g.edges().begin(), g.edges().end(),
                      [](const EdgeRecord& e) { return e.inferred; }));
}

}  // namespace npkg
