// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// Shared fixtures for the test suites: evidence shorthands, small-graph
// builders, random graph generators, and the brute-force oracles the
// property tests compare against.

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "npkg/closure.hpp"
#include "npkg/graph.hpp"
#include "npkg/relations.hpp"

namespace testutil {

inline npkg::KnowledgeGraph::RegistryPtr registry() {
    static auto shared = npkg::RelationRegistry::builtin_shared();
    return shared;
}

inline npkg::EvidenceRecord ev_db(std::string source_name = "DIKB") {
    npkg::EvidenceRecord ev;
    ev.source = npkg::EvidenceSource::Database;
    ev.source_name = std::move(source_name);
    return ev;
}

inline npkg::EvidenceRecord ev_semrep(std::string pmid, int year,
                                      std::string sentence = "sentence") {
    npkg::EvidenceRecord ev;
    ev.source = npkg::EvidenceSource::SemRep;
    ev.source_name = "SemRep";
    ev.pmid = std::move(pmid);
    ev.year = year;
    ev.sentence = std::move(sentence);
    return ev;
}

inline npkg::EdgeRecord make_edge(std::string subject, std::string_view relation_id,
                                  std::string object,
                                  std::vector<npkg::EvidenceRecord> evidence = {ev_db()},
                                  bool negated = false) {
    npkg::EdgeRecord edge;
    edge.subject = std::move(subject);
    edge.relation.id = std::string(relation_id);
    edge.object = std::move(object);
    edge.evidence = std::move(evidence);
    edge.negated = negated;
    return edge;
}

struct Triple {
    std::string subject;
    std::string relation;
    std::string object;

    auto operator<=>(const Triple&) const = default;
};

// Builds a sealed graph from plain triples with database evidence.
inline npkg::KnowledgeGraph graph_from_triples(const std::vector<Triple>& triples) {
    npkg::KnowledgeGraph g(registry());
    for (const auto& t : triples) {
        g.add_edge(make_edge(t.subject, t.relation, t.object));
    }
    g.seal();
    return g;
}

inline std::string node_name(int i) { return "N" + std::to_string(i); }

// Random triple list over `node_count` nodes drawing relations from `rels`.
inline std::vector<Triple> random_triples(std::mt19937& rng, int node_count, int edge_count,
                                          const std::vector<std::string>& rels) {
    std::uniform_int_distribution<int> node_dist(0, node_count - 1);
    std::uniform_int_distribution<std::size_t> rel_dist(0, rels.size() - 1);
    std::vector<Triple> triples;
    triples.reserve(static_cast<std::size_t>(edge_count));
    for (int i = 0; i < edge_count; ++i) {
        triples.push_back(
            {node_name(node_dist(rng)), rels[rel_dist(rng)], node_name(node_dist(rng))});
    }
    return triples;
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

// Reachability closure of one relation's adjacency matrix: repeatedly apply
// the symmetric and/or transitive rule until nothing changes.
inline std::vector<std::vector<bool>> matrix_closure_oracle(std::vector<std::vector<bool>> m,
                                                            bool symmetric, bool transitive) {
    const std::size_t n = m.size();
    bool changed = true;
    while (changed) {
        changed = false;
        if (symmetric) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (m[i][j] && !m[j][i]) {
                        m[j][i] = true;
                        changed = true;
                    }
                }
            }
        }
        if (transitive) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (!m[i][j]) {
                        continue;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        if (m[j][k] && !m[i][k]) {
                            m[i][k] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    return m;
}

// Plain single-direction breadth-first distances from src over the triple
// list; -1 marks unreachable nodes. Self-loops are ignored, matching the
// path queries under test.
inline std::vector<int> bfs_oracle(const std::vector<Triple>& triples, int node_count,
                                   const std::string& src, bool directed) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count));
    auto index = [](const std::string& name) { return std::stoi(name.substr(1)); };
    for (const auto& t : triples) {
        const int s = index(t.subject);
        const int o = index(t.object);
        if (s == o) {
            continue;
        }
        adj[static_cast<std::size_t>(s)].push_back(o);
        if (!directed) {
            adj[static_cast<std::size_t>(o)].push_back(s);
        }
    }
    std::vector<int> dist(static_cast<std::size_t>(node_count), -1);
    std::vector<int> queue{index(src)};
    dist[static_cast<std::size_t>(index(src))] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] == -1) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Filesystem scratch space
// ---------------------------------------------------------------------------

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("npkg_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

    std::filesystem::path write_file(const std::string& name, const std::string& content) const {
        const auto file = path_ / name;
        std::ofstream out(file, std::ios::binary);
        out << content;
        return file;
    }

private:
    std::filesystem::path path_;
};

inline std::string fixture_path(const std::string& relative) {
    return std::string(NPKG_FIXTURE_DIR) + "/" + relative;
}

}  // namespace testutil
