// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "npkg/errors.hpp"

namespace npkg {

// Transparent hash so containers keyed by std::string accept string_view lookups.
struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
        return std::hash<std::string_view>{}(s);
    }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

// Prefix portion of a compact identifier. Handles both separator styles in
// common use: "CHEBI:23053" -> "CHEBI", "PR_000006130" -> "PR".
inline std::string curie_prefix(std::string_view id) {
    if (auto pos = id.find(':'); pos != std::string_view::npos) {
        return std::string(id.substr(0, pos));
    }
    if (auto pos = id.find('_'); pos != std::string_view::npos) {
        return std::string(id.substr(0, pos));
    }
    return std::string{};
}

// A typed edge relation: compact identifier plus canonical display label.
struct RelationId {
    std::string id;
    std::string label;

    friend bool operator==(const RelationId&, const RelationId&) = default;
    friend auto operator<=>(const RelationId&, const RelationId&) = default;
};

// Closed set of relations a graph may use. Every edge relation must resolve
// here; graphs can only merge when their registries have identical content.
class RelationRegistry {
public:
    // Registers a relation; re-registering the same id keeps the first label.
    std::uint32_t add(RelationId rel) {
        if (rel.id.empty()) {
            throw Error("relation id must be non-empty");
        }
        if (auto it = by_id_.find(rel.id); it != by_id_.end()) {
            return it->second;
        }
        const auto index = static_cast<std::uint32_t>(relations_.size());
        by_id_.emplace(rel.id, index);
        relations_.push_back(std::move(rel));
        return index;
    }

    std::optional<std::uint32_t> find(std::string_view id) const {
        auto it = by_id_.find(id);
        if (it == by_id_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    // Index for a registered id, or RelationNotRegistered.
    std::uint32_t require(std::string_view id) const {
        if (auto idx = find(id)) {
            return *idx;
        }
        throw RelationNotRegistered(std::string(id));
    }

    bool contains(std::string_view id) const { return by_id_.contains(id); }

    const RelationId& at(std::uint32_t index) const { return relations_.at(index); }

    std::size_t size() const noexcept { return relations_.size(); }

    const std::vector<RelationId>& relations() const noexcept { return relations_; }

    // Order-independent content hash (FNV-1a over sorted id/label pairs).
    std::uint64_t content_hash() const {
        std::vector<const RelationId*> sorted;
        sorted.reserve(relations_.size());
        for (const auto& rel : relations_) {
            sorted.push_back(&rel);
        }
        std::sort(sorted.begin(), sorted.end(),
                  [](const RelationId* a, const RelationId* b) { return a->id < b->id; });
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::string_view s) {
            for (unsigned char c : s) {
                h ^= c;
                h *= 1099511628211ull;
            }
            h ^= 0x1f;
            h *= 1099511628211ull;
        };
        for (const auto* rel : sorted) {
            mix(rel->id);
            mix(rel->label);
        }
        return h;
    }

    bool same_content(const RelationRegistry& other) const {
        return content_hash() == other.content_hash();
    }

    // Relations known out of the box: the Relation Ontology / GO terms that
    // ontology, database, and literature edges resolve to. "is substrate of"
    // has no OBO identifier in our sources, so it is minted under the local
    // NPKG prefix; deployments can remap it via the relation-map file.
    static RelationRegistry builtin() {
        RelationRegistry reg;
        for (const auto& [id, label] : builtin_entries()) {
            reg.add({std::string(id), std::string(label)});
        }
        return reg;
    }

    static std::shared_ptr<const RelationRegistry> builtin_shared() {
        return std::make_shared<const RelationRegistry>(builtin());
    }

private:
    static const std::vector<std::pair<std::string_view, std::string_view>>& builtin_entries() {
        static const std::vector<std::pair<std::string_view, std::string_view>> entries = {
            {"RO_0002434", "interacts with"},
            {"RO_0002436", "molecularly interacts with"},
            {"RO_0002449", "inhibits"},
            {"RO_0002213", "positively regulates"},
            {"RO_0002212", "negatively regulates"},
            {"RO_0002448", "directly regulates activity of"},
            {"RO_0011002", "regulates activity of"},
            {"RO_0011009", "directly positively regulates quantity of"},
            {"RO_0011010", "directly negatively regulates quantity of"},
            {"RO_0002596", "capable of regulating"},
            {"RO_0002598", "capable of positively regulating"},
            {"RO_0002599", "capable of inhibiting or preventing pathological process"},
            {"RO_0002610", "correlated with"},
            {"RO_0002566", "causally influences"},
            {"RO_0002490", "existence overlaps"},
            {"RO_0003309", "exacerbates condition"},
            {"RO_0003302", "causes or contributes to condition"},
            {"RO_0003000", "produces"},
            {"RO_0002606", "substance that treats"},
            {"RO_0002447", "phosphorylates"},
            {"RO_0002480", "ubiquitinates"},
            {"BFO_0000050", "part of"},
            {"BFO_0000063", "precedes"},
            {"RO_0000056", "participates in"},
            {"RO_0000085", "has function"},
            {"RO_0001025", "located in"},
            {"RO_0002180", "has component"},
            {"RO_0002205", "has gene product"},
            {"RO_0002020", "transports"},
            {"NPKG_0000001", "is substrate of"},
            {"GO_0006473", "protein acetylation"},
            {"GO_0006482", "protein demethylation"},
            {"GO_0006470", "protein dephosphorylation"},
            {"GO_0016579", "protein deubiquitination"},
            {"GO_0006486", "protein glycosylation"},
            {"GO_0018126", "protein hydroxylation"},
            {"GO_0006479", "protein methylation"},
        };
        return entries;
    }

    std::vector<RelationId> relations_;
    StringMap<std::uint32_t> by_id_;
};

// Well-known relation ids, so call sites don't scatter string literals.
namespace rel {
inline constexpr std::string_view interacts_with = "RO_0002434";
inline constexpr std::string_view molecularly_interacts_with = "RO_0002436";
inline constexpr std::string_view inhibits = "RO_0002449";
inline constexpr std::string_view positively_regulates = "RO_0002213";
inline constexpr std::string_view negatively_regulates = "RO_0002212";
inline constexpr std::string_view directly_regulates_activity_of = "RO_0002448";
inline constexpr std::string_view regulates_activity_of = "RO_0011002";
inline constexpr std::string_view directly_positively_regulates_quantity_of = "RO_0011009";
inline constexpr std::string_view directly_negatively_regulates_quantity_of = "RO_0011010";
inline constexpr std::string_view capable_of_regulating = "RO_0002596";
inline constexpr std::string_view capable_of_positively_regulating = "RO_0002598";
inline constexpr std::string_view correlated_with = "RO_0002610";
inline constexpr std::string_view part_of = "BFO_0000050";
inline constexpr std::string_view precedes = "BFO_0000063";
inline constexpr std::string_view transports = "RO_0002020";
inline constexpr std::string_view is_substrate_of = "NPKG_0000001";
}  // namespace rel

}  // namespace npkg
