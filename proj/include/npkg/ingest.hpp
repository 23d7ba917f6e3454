// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#pragma once

// Flat-file ingestion: node/edge TSVs for the ontology-grounded side, and a
// JSON-lines predication interchange format for literature extraction
// output. Predications pass through filter -> relation normalization ->
// entity linking before landing in a graph; negated relations are routed to
// the separate negated-edge store.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "npkg/errors.hpp"
#include "npkg/graph.hpp"
#include "npkg/relations.hpp"
#include "npkg/tsv.hpp"

namespace npkg {

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// ---------------------------------------------------------------------------
// Evidence source resolution
// ---------------------------------------------------------------------------

// Maps an evidence source_name to its source class. A few names are
// reserved for the literature/inference pipeline; the known databases map
// to DATABASE and everything else is treated as ontology-derived.
inline EvidenceSource source_for_name(std::string_view name) {
    if (name == "SemRep") {
        return EvidenceSource::SemRep;
    }
    if (name == "REACH" || name == "INDRA/REACH") {
        return EvidenceSource::Reach;
    }
    if (name == "closure") {
        return EvidenceSource::Inferred;
    }
    static const std::set<std::string, std::less<>> databases = {
        "CTD",
        "Comparative Toxicogenomics Database",
        "DIKB",
        "DisGeNET",
        "Drug Central",
        "DrugCentral",
        "FDA Drug Interaction Database",
        "GTEx",
        "Human Protein Atlas",
        "Reactome",
        "Reactome Pathway Database",
        "STRING",
        "STRING database",
        "UniProt",
    };
    return databases.contains(name) ? EvidenceSource::Database : EvidenceSource::Ontology;
}

// ---------------------------------------------------------------------------
// Node / edge file parsing
// ---------------------------------------------------------------------------

inline std::vector<NodeRecord> parse_node_file(const std::string& path) {
    TsvReader reader(path);
    reader.expect_header({"id", "label", "namespace", "category"});
    std::vector<NodeRecord> nodes;
    std::set<std::string, std::less<>> seen;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() != 4) {
            reader.fail("expected 4 columns, got " + std::to_string(fields.size()));
        }
        NodeRecord node;
        node.id = fields[0];
        node.label = fields[1];
        node.ns = fields[2];
        if (node.id.empty()) {
            reader.fail("empty node id");
        }
        if (!seen.insert(node.id).second) {
            throw DuplicateNode(node.id, path + ":" + std::to_string(reader.line_number()));
        }
        auto category = parse_node_category(fields[3]);
        if (!category) {
            reader.fail("unknown node category: " + fields[3]);
        }
        node.category = *category;
        const std::string prefix = curie_prefix(node.id);
        if (node.ns.empty()) {
            node.ns = prefix;
        } else if (!prefix.empty() && node.ns != prefix) {
            reader.fail("namespace '" + node.ns + "' does not match id prefix '" + prefix + "'");
        }
        nodes.push_back(std::move(node));
    }
    return nodes;
}

namespace detail {

inline std::optional<int> parse_year_field(TsvReader& reader, const std::string& field) {
    if (field.empty()) {
        return std::nullopt;
    }
    try {
        std::size_t pos = 0;
        int year = std::stoi(field, &pos);
        if (pos != field.size()) {
            reader.fail("invalid year: " + field);
        }
        return year;
    } catch (const std::logic_error&) {
        reader.fail("invalid year: " + field);
    }
}

inline std::optional<double> parse_confidence_field(TsvReader& reader, const std::string& field) {
    if (field.empty()) {
        return std::nullopt;
    }
    try {
        std::size_t pos = 0;
        double value = std::stod(field, &pos);
        if (pos != field.size() || value < 0.0 || value > 1.0) {
            reader.fail("invalid confidence: " + field);
        }
        return value;
    } catch (const std::logic_error&) {
        reader.fail("invalid confidence: " + field);
    }
}

}  // namespace detail

// Reads a 9-column edge file. Each row is one evidence record; rows for the
// same (subject, relation, object) are merged when added to a graph.
inline std::vector<EdgeRecord> parse_edge_file(const std::string& path,
                                               const RelationRegistry& registry) {
    TsvReader reader(path);
    reader.expect_header({"subject", "relation_id", "relation_label", "object", "source_name",
                          "pmid", "year", "confidence", "sentence"});
    std::vector<EdgeRecord> edges;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields.size() != 9) {
            reader.fail("expected 9 columns, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty() || fields[3].empty()) {
            reader.fail("empty edge endpoint");
        }
        auto rel_index = registry.find(fields[1]);
        if (!rel_index) {
            throw RelationNotRegistered(fields[1]);
        }
        EdgeRecord edge;
        edge.subject = fields[0];
        edge.relation = registry.at(*rel_index);
        edge.object = fields[3];
        EvidenceRecord ev;
        ev.source_name = fields[4];
        ev.source = source_for_name(ev.source_name);
        if (!fields[5].empty()) {
            ev.pmid = fields[5];
        }
        ev.year = detail::parse_year_field(reader, fields[6]);
        ev.confidence = detail::parse_confidence_field(reader, fields[7]);
        if (!fields[8].empty()) {
            ev.sentence = fields[8];
        }
        edge.evidence.push_back(std::move(ev));
        edges.push_back(std::move(edge));
    }
    return edges;
}

// ---------------------------------------------------------------------------
// Predications
// ---------------------------------------------------------------------------

enum class PredicationSource { SemRep, Reach };

inline std::string_view to_string(PredicationSource s) {
    return s == PredicationSource::SemRep ? "SEMREP" : "REACH";
}

// A raw literature-extracted triple, prior to normalization.
struct Predication {
    std::string subject_text;
    std::optional<std::string> subject_id;  // pre-linked identifier, if any
    std::string relation_raw;
    std::string object_text;
    std::optional<std::string> object_id;
    PredicationSource source = PredicationSource::SemRep;
    std::string pmid;
    std::optional<int> year;
    std::optional<double> confidence;
    std::string sentence;
    std::optional<std::string> subject_semtype;
    std::optional<std::string> object_semtype;
};

// One JSON object per line; see the file-format notes in the README.
inline std::vector<Predication> parse_predication_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(path, "cannot open file");
    }
    std::vector<Predication> preds;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw ParseError(path, line_number, "invalid JSON object");
        }
        auto require_string = [&](const char* key) -> std::string {
            if (!j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty()) {
                throw ParseError(path, line_number,
                                 std::string("missing or empty required field: ") + key);
            }
            return j[key].get<std::string>();
        };
        auto optional_string = [&](const char* key) -> std::optional<std::string> {
            if (!j.contains(key) || j[key].is_null()) {
                return std::nullopt;
            }
            if (!j[key].is_string()) {
                throw ParseError(path, line_number, std::string("field must be a string: ") + key);
            }
            return j[key].get<std::string>();
        };
        Predication p;
        p.subject_text = require_string("subject_text");
        p.relation_raw = require_string("relation_raw");
        p.object_text = require_string("object_text");
        p.pmid = require_string("pmid");
        p.sentence = require_string("sentence");
        const std::string source = require_string("source");
        if (source == "SEMREP") {
            p.source = PredicationSource::SemRep;
        } else if (source == "REACH") {
            p.source = PredicationSource::Reach;
        } else {
            throw ParseError(path, line_number, "source must be SEMREP or REACH: " + source);
        }
        p.subject_id = optional_string("subject_id");
        p.object_id = optional_string("object_id");
        p.subject_semtype = optional_string("subject_semtype");
        p.object_semtype = optional_string("object_semtype");
        if (j.contains("year") && !j["year"].is_null()) {
            if (!j["year"].is_number_integer()) {
                throw ParseError(path, line_number, "year must be an integer");
            }
            p.year = j["year"].get<int>();
        }
        if (j.contains("confidence") && !j["confidence"].is_null()) {
            if (!j["confidence"].is_number()) {
                throw ParseError(path, line_number, "confidence must be a number");
            }
            double c = j["confidence"].get<double>();
            if (c < 0.0 || c > 1.0) {
                throw ParseError(path, line_number, "confidence must lie in [0,1]");
            }
            p.confidence = c;
        }
        preds.push_back(std::move(p));
    }
    return preds;
}

// ---------------------------------------------------------------------------
// Relation normalization
// ---------------------------------------------------------------------------

enum class MapSource { SemRep, Reach, Any };
enum class Disposition { Keep, Negated, Exclude };

struct RelationMapping {
    std::string raw;
    MapSource source = MapSource::Any;
    RelationId mapped;  // for Negated entries: the positive-form relation
    Disposition disposition = Disposition::Keep;
};

// Curated raw-relation -> ontology-relation map. Lookup prefers a
// source-specific entry and falls back to an ANY entry.
class RelationMap {
public:
    void add(RelationMapping mapping) {
        if (mapping.disposition == Disposition::Negated &&
            !mapping.raw.starts_with("neg_")) {
            throw Error("NEGATED disposition requires a 'neg_'-prefixed relation: " + mapping.raw);
        }
        entries_[key(mapping.raw, mapping.source)] = std::move(mapping);
    }

    const RelationMapping* lookup(std::string_view raw, PredicationSource source) const {
        const MapSource specific =
            source == PredicationSource::SemRep ? MapSource::SemRep : MapSource::Reach;
        if (auto it = entries_.find(key(raw, specific)); it != entries_.end()) {
            return &it->second;
        }
        if (auto it = entries_.find(key(raw, MapSource::Any)); it != entries_.end()) {
            return &it->second;
        }
        return nullptr;
    }

    std::size_t size() const noexcept { return entries_.size(); }

    // Registers every mapped relation so the registry closes over the map.
    void register_relations(RelationRegistry& registry) const {
        std::vector<const RelationMapping*> sorted;
        sorted.reserve(entries_.size());
        for (const auto& [k, m] : entries_) {
            sorted.push_back(&m);
        }
        std::sort(sorted.begin(), sorted.end(), [](const RelationMapping* a,
                                                   const RelationMapping* b) {
            return std::tie(a->mapped.id, a->raw) < std::tie(b->mapped.id, b->raw);
        });
        for (const auto* m : sorted) {
            if (m->disposition != Disposition::Exclude) {
                registry.add(m->mapped);
            }
        }
    }

    // Columns: raw, source (SEMREP|REACH|ANY), mapped_id, mapped_label,
    // disposition (KEEP|NEGATED|EXCLUDE). Excluded rows may leave the
    // mapped columns empty.
    static RelationMap load(const std::string& path) {
        TsvReader reader(path);
        reader.expect_header({"raw", "source", "mapped_id", "mapped_label", "disposition"});
        RelationMap map;
        std::vector<std::string> fields;
        while (reader.next(fields)) {
            if (fields.size() != 5) {
                reader.fail("expected 5 columns, got " + std::to_string(fields.size()));
            }
            RelationMapping m;
            m.raw = fields[0];
            if (m.raw.empty()) {
                reader.fail("empty raw relation");
            }
            if (fields[1] == "SEMREP") {
                m.source = MapSource::SemRep;
            } else if (fields[1] == "REACH") {
                m.source = MapSource::Reach;
            } else if (fields[1] == "ANY") {
                m.source = MapSource::Any;
            } else {
                reader.fail("source must be SEMREP, REACH or ANY: " + fields[1]);
            }
            if (fields[4] == "KEEP") {
                m.disposition = Disposition::Keep;
            } else if (fields[4] == "NEGATED") {
                m.disposition = Disposition::Negated;
            } else if (fields[4] == "EXCLUDE") {
                m.disposition = Disposition::Exclude;
            } else {
                reader.fail("disposition must be KEEP, NEGATED or EXCLUDE: " + fields[4]);
            }
            m.mapped = {fields[2], fields[3]};
            if (m.disposition != Disposition::Exclude && m.mapped.id.empty()) {
                reader.fail("mapped_id required for KEEP/NEGATED rows");
            }
            try {
                map.add(std::move(m));
            } catch (const Error& e) {
                reader.fail(e.what());
            }
        }
        return map;
    }

    // The curated default map for SemRep and INDRA/REACH output.
    static RelationMap builtin() {
        RelationMap map;
        auto keep = [&map](std::string_view raw, MapSource src, std::string_view id,
                           std::string_view label) {
            map.add({std::string(raw), src, {std::string(id), std::string(label)},
                     Disposition::Keep});
        };
        // SemRep relations
        keep("affects", MapSource::SemRep, "RO_0002596", "capable of regulating");
        keep("associated_with", MapSource::SemRep, "RO_0002610", "correlated with");
        keep("augments", MapSource::SemRep, "RO_0002598", "capable of positively regulating");
        keep("causes", MapSource::SemRep, "RO_0002566", "causally influences");
        keep("coexists_with", MapSource::SemRep, "RO_0002490", "existence overlaps");
        keep("complicates", MapSource::SemRep, "RO_0003309", "exacerbates condition");
        keep("disrupts", MapSource::SemRep, "RO_0002212", "negatively regulates");
        keep("interacts_with", MapSource::SemRep, "RO_0002434", "interacts with");
        keep("part_of", MapSource::SemRep, "BFO_0000050", "part of");
        keep("precedes", MapSource::SemRep, "BFO_0000063", "precedes");
        keep("predisposes", MapSource::SemRep, "RO_0003302",
             "causes or contributes to condition");
        keep("prevents", MapSource::SemRep, "RO_0002599",
             "capable of inhibiting or preventing pathological process");
        keep("produces", MapSource::SemRep, "RO_0003000", "produces");
        keep("stimulates", MapSource::SemRep, "RO_0002213", "positively regulates");
        keep("treats", MapSource::SemRep, "RO_0002606", "substance that treats");
        // INDRA/REACH relations
        keep("acetylation", MapSource::Reach, "GO_0006473", "protein acetylation");
        keep("activation", MapSource::Reach, "RO_0002448", "directly regulates activity of");
        keep("decrease_amount", MapSource::Reach, "RO_0011010",
             "directly negatively regulates quantity of");
        keep("dehydroxylation", MapSource::Reach, "RO_0002436", "molecularly interacts with");
        keep("demethylation", MapSource::Reach, "GO_0006482", "protein demethylation");
        keep("dephosphorylation", MapSource::Reach, "GO_0006470", "protein dephosphorylation");
        keep("deubiquitination", MapSource::Reach, "GO_0016579", "protein deubiquitination");
        keep("glycosylation", MapSource::Reach, "GO_0006486", "protein glycosylation");
        keep("hydroxylation", MapSource::Reach, "GO_0018126", "protein hydroxylation");
        keep("increase_amount", MapSource::Reach, "RO_0011009",
             "directly positively regulates quantity of");
        keep("methylation", MapSource::Reach, "GO_0006479", "protein methylation");
        keep("phosphorylation", MapSource::Reach, "RO_0002447", "phosphorylates");
        keep("ubiquitination", MapSource::Reach, "RO_0002480", "ubiquitinates");
        // Extracted by both systems
        keep("inhibits", MapSource::Any, "RO_0002449", "inhibits");
        // Negated forms, stored under the positive relation
        map.add({"neg_inhibits", MapSource::SemRep, {"RO_0002449", "inhibits"},
                 Disposition::Negated});
        map.add({"neg_interacts_with", MapSource::SemRep, {"RO_0002434", "interacts with"},
                 Disposition::Negated});
        // Not useful for hypothesis generation
        for (std::string_view raw : {"converts_to", "diagnoses", "method_of", "process_of"}) {
            map.add({std::string(raw), MapSource::Any, {}, Disposition::Exclude});
        }
        return map;
    }

private:
    static std::string key(std::string_view raw, MapSource source) {
        std::string k(raw);
        k += '\x1f';
        switch (source) {
            case MapSource::SemRep: k += 'S'; break;
            case MapSource::Reach: k += 'R'; break;
            case MapSource::Any: k += 'A'; break;
        }
        return k;
    }

    StringMap<RelationMapping> entries_;
};

struct NormalizedRelation {
    Disposition disposition = Disposition::Exclude;
    RelationId relation;  // valid for Keep and Negated
};

// Unmapped raw relations normalize to Exclude; the ingest report counts them.
inline NormalizedRelation normalize_relation(std::string_view raw, PredicationSource source,
                                             const RelationMap& map) {
    const RelationMapping* m = map.lookup(raw, source);
    if (!m || m->disposition == Disposition::Exclude) {
        return {Disposition::Exclude, {}};
    }
    return {m->disposition, m->mapped};
}

// ---------------------------------------------------------------------------
// Entity linking
// ---------------------------------------------------------------------------

// Curated mention -> identifier map; lookup is case-insensitive, exact
// otherwise.
class EntityMap {
public:
    void add(std::string_view key, std::string_view mapped_id, std::string_view mapped_label) {
        if (key.empty() || mapped_id.empty()) {
            throw Error("entity map entries require a key and a mapped id");
        }
        std::string folded = to_lower(key);
        if (entries_.contains(folded)) {
            throw Error("duplicate entity map key: " + std::string(key));
        }
        entries_.emplace(std::move(folded),
                         std::pair<std::string, std::string>(mapped_id, mapped_label));
        // first label per id wins, so node labels depend only on the map file
        labels_by_id_.emplace(std::string(mapped_id), std::string(mapped_label));
    }

    const std::pair<std::string, std::string>* lookup(std::string_view mention) const {
        auto it = entries_.find(to_lower(mention));
        return it == entries_.end() ? nullptr : &it->second;
    }

    // Display label for an identifier, falling back to the id itself.
    std::string label_for(std::string_view id) const {
        auto it = labels_by_id_.find(id);
        return it == labels_by_id_.end() ? std::string(id) : it->second;
    }

    std::size_t size() const noexcept { return entries_.size(); }

    static EntityMap load(const std::string& path) {
        TsvReader reader(path);
        reader.expect_header({"key", "mapped_id", "mapped_label"});
        EntityMap map;
        std::vector<std::string> fields;
        while (reader.next(fields)) {
            if (fields.size() != 3) {
                reader.fail("expected 3 columns, got " + std::to_string(fields.size()));
            }
            try {
                map.add(fields[0], fields[1], fields[2]);
            } catch (const Error& e) {
                reader.fail(e.what());
            }
        }
        return map;
    }

private:
    StringMap<std::pair<std::string, std::string>> entries_;  // folded mention -> (id, label)
    StringMap<std::string> labels_by_id_;
};

struct LinkedEntity {
    bool linked = false;
    std::string id;
    std::string label;
};

// Pre-linked identifiers pass through unchanged; otherwise the mention text
// is looked up in the curated map.
inline LinkedEntity link_entity(std::string_view mention,
                                const std::optional<std::string>& pre_linked,
                                const EntityMap& map) {
    if (pre_linked && !pre_linked->empty()) {
        return {true, *pre_linked, map.label_for(*pre_linked)};
    }
    if (const auto* entry = map.lookup(mention)) {
        return {true, entry->first, entry->second};
    }
    return {false, {}, {}};
}

// ---------------------------------------------------------------------------
// Predication filtering
// ---------------------------------------------------------------------------

struct FilterConfig {
    std::set<std::string, std::less<>> excluded_relations;
    std::set<std::string, std::less<>> excluded_semtypes;
    std::set<std::string, std::less<>> excluded_generics;  // stored lower-case
    // Optional knob: drop predications whose confidence falls below the
    // threshold (predications without a score are unaffected). Off by
    // default.
    std::optional<double> min_confidence;

    static FilterConfig builtin() {
        FilterConfig cfg;
        cfg.excluded_relations = {"converts_to", "diagnoses", "method_of", "process_of"};
        cfg.excluded_semtypes = {"acty", "bhvr", "cnce", "evnt", "ftcn",
                                 "idcn", "inpr", "orgt", "qlco", "qnco",
                                 "spco", "tmco"};
        for (std::string_view g :
             {"animals", "disease", "persons", "organism", "syndrome", "patients"}) {
            cfg.excluded_generics.emplace(g);
        }
        return cfg;
    }

    static std::set<std::string, std::less<>> load_list(const std::string& path,
                                                        bool fold_case = false) {
        std::ifstream in(path);
        if (!in) {
            throw IoError(path, "cannot open file");
        }
        std::set<std::string, std::less<>> out;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty() || line.front() == '#') {
                continue;
            }
            out.insert(fold_case ? to_lower(line) : line);
        }
        return out;
    }
};

struct FilterDecision {
    bool accept = true;
    std::string reason;
};

inline FilterDecision filter_predication(const Predication& p, const FilterConfig& cfg) {
    if (cfg.excluded_relations.contains(p.relation_raw)) {
        return {false, "excluded-relation"};
    }
    if ((p.subject_semtype && cfg.excluded_semtypes.contains(*p.subject_semtype)) ||
        (p.object_semtype && cfg.excluded_semtypes.contains(*p.object_semtype))) {
        return {false, "excluded-semtype"};
    }
    if (cfg.excluded_generics.contains(to_lower(p.subject_text)) ||
        cfg.excluded_generics.contains(to_lower(p.object_text))) {
        return {false, "generic-concept"};
    }
    if (cfg.min_confidence && p.confidence && *p.confidence < *cfg.min_confidence) {
        return {false, "low-confidence"};
    }
    return {true, {}};
}

// ---------------------------------------------------------------------------
// Literature graph assembly
// ---------------------------------------------------------------------------

struct IngestReport {
    std::size_t input = 0;
    std::size_t accepted = 0;  // produced a graph edge (negated ones included)
    std::size_t rejected_by_filter = 0;
    std::size_t dropped_unmapped = 0;
    std::size_t negated = 0;       // subset of accepted routed to the negated store
    std::size_t deduplicated = 0;  // subset of accepted that merged into an existing edge
    std::map<std::string, std::size_t> reject_reasons;
    std::map<std::string, std::size_t> unmapped_relations;  // raw relation -> count

    bool conserved() const {
        return accepted + rejected_by_filter + dropped_unmapped == input;
    }
};

// Runs the full predication pipeline and assembles a literature graph. The
// resulting graph content is independent of input order; only dedup merges
// depend on equality, never on sequence.
inline KnowledgeGraph build_literature_graph(const std::vector<Predication>& predications,
                                             const RelationMap& rel_map,
                                             const EntityMap& ent_map, const FilterConfig& filter,
                                             KnowledgeGraph::RegistryPtr registry,
                                             IngestReport* report = nullptr,
                                             GraphOptions options = {}) {
    KnowledgeGraph graph(std::move(registry), options);
    IngestReport local;
    IngestReport& rep = report ? *report : local;
    rep = IngestReport{};
    rep.input = predications.size();

    for (const auto& p : predications) {
        const FilterDecision decision = filter_predication(p, filter);
        if (!decision.accept) {
            ++rep.rejected_by_filter;
            ++rep.reject_reasons[decision.reason];
            continue;
        }
        const NormalizedRelation norm = normalize_relation(p.relation_raw, p.source, rel_map);
        if (norm.disposition == Disposition::Exclude) {
            ++rep.rejected_by_filter;
            ++rep.reject_reasons["excluded-relation"];
            if (!rel_map.lookup(p.relation_raw, p.source)) {
                ++rep.unmapped_relations[p.relation_raw];
            }
            continue;
        }
        const LinkedEntity subject = link_entity(p.subject_text, p.subject_id, ent_map);
        const LinkedEntity object = link_entity(p.object_text, p.object_id, ent_map);
        if (!subject.linked || !object.linked) {
            ++rep.dropped_unmapped;
            continue;
        }

        for (const auto& endpoint : {subject, object}) {
            NodeRecord node;
            node.id = endpoint.id;
            node.label = ent_map.label_for(endpoint.id);
            node.ns = curie_prefix(endpoint.id);
            node.category = category_for_prefix(node.ns);
            graph.add_node(std::move(node));
        }

        EvidenceRecord ev;
        ev.source = p.source == PredicationSource::SemRep ? EvidenceSource::SemRep
                                                          : EvidenceSource::Reach;
        ev.source_name = p.source == PredicationSource::SemRep ? "SemRep" : "INDRA/REACH";
        ev.pmid = p.pmid;
        ev.year = p.year;
        ev.confidence = p.confidence;
        ev.sentence = p.sentence;

        EdgeRecord edge;
        edge.subject = subject.id;
        edge.relation = norm.relation;
        edge.object = object.id;
        edge.negated = norm.disposition == Disposition::Negated;
        edge.evidence.push_back(std::move(ev));

        const bool negated = edge.negated;
        const bool inserted = graph.add_edge(std::move(edge));
        ++rep.accepted;
        if (negated) {
            ++rep.negated;
        }
        if (!inserted) {
            ++rep.deduplicated;
        }
    }
    graph.seal();
    return graph;
}

}  // namespace npkg
