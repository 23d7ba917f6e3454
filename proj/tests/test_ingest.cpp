// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "npkg/ingest.hpp"
#include "npkg/snapshot.hpp"

using namespace npkg;

namespace {

Predication pred(std::string subject, std::string relation, std::string object,
                 PredicationSource source = PredicationSource::SemRep,
                 std::string pmid = "12345", int year = 2015) {
    Predication p;
    p.subject_text = std::move(subject);
    p.relation_raw = std::move(relation);
    p.object_text = std::move(object);
    p.source = source;
    p.pmid = std::move(pmid);
    p.year = year;
    p.sentence = "The subject acts on the object.";
    return p;
}

EntityMap small_entity_map() {
    EntityMap map;
    map.add("catechin", "CHEBI:23053", "catechin");
    map.add("nadolol", "CHEBI:7444", "nadolol");
    map.add("mitragynine", "CHEBI:6956", "mitragynine");
    map.add("CYP3A4", "PR_000006130", "cytochrome P450 3A4");
    return map;
}

}  // namespace

TEST_CASE("node files parse and validate") {
    testutil::TempDir dir("nodes");
    const auto good = dir.write_file("nodes.tsv",
                                     "id\tlabel\tnamespace\tcategory\n"
                                     "CHEBI:23053\tcatechin\tCHEBI\tCHEMICAL\n"
                                     "PR_000006130\tcytochrome P450 3A4\tPR\tPROTEIN\n");
    const auto nodes = parse_node_file(good.string());
    REQUIRE(nodes.size() == 2);
    CHECK(nodes[0].id == "CHEBI:23053");
    CHECK(nodes[0].label == "catechin");
    CHECK(nodes[0].ns == "CHEBI");
    CHECK(nodes[0].category == NodeCategory::Chemical);

    const auto three_cols = dir.write_file("three.tsv",
                                           "id\tlabel\tnamespace\tcategory\n"
                                           "CHEBI:1\tx\tCHEBI\n");
    CHECK_THROWS_AS(parse_node_file(three_cols.string()), ParseError);

    const auto duplicate = dir.write_file("dup.tsv",
                                          "id\tlabel\tnamespace\tcategory\n"
                                          "CHEBI:1\tx\tCHEBI\tCHEMICAL\n"
                                          "CHEBI:1\ty\tCHEBI\tCHEMICAL\n");
    CHECK_THROWS_AS(parse_node_file(duplicate.string()), DuplicateNode);

    const auto bad_category = dir.write_file("cat.tsv",
                                             "id\tlabel\tnamespace\tcategory\n"
                                             "CHEBI:1\tx\tCHEBI\tNOPE\n");
    CHECK_THROWS_AS(parse_node_file(bad_category.string()), ParseError);

    const auto bad_ns = dir.write_file("ns.tsv",
                                       "id\tlabel\tnamespace\tcategory\n"
                                       "CHEBI:1\tx\tPR\tCHEMICAL\n");
    CHECK_THROWS_AS(parse_node_file(bad_ns.string()), ParseError);
}

TEST_CASE("edge files parse with source classification") {
    testutil::TempDir dir("edges");
    const auto good = dir.write_file(
        "edges.tsv",
        "subject\trelation_id\trelation_label\tobject\tsource_name\tpmid\tyear\tconfidence"
        "\tsentence\n"
        "CHEBI:1\tRO_0002449\tinhibits\tPR_1\tDIKB\t\t\t\t\n"
        "CHEBI:1\tRO_0002606\tsubstance that treats\tMONDO:1\tCTD\t\t2017\t\t\n");
    const auto edges = parse_edge_file(good.string(), *testutil::registry());
    REQUIRE(edges.size() == 2);
    CHECK(edges[0].evidence.front().source == EvidenceSource::Database);
    CHECK(edges[0].evidence.front().source_name == "DIKB");
    CHECK_FALSE(edges[0].negated);
    CHECK(edges[1].evidence.front().year == 2017);

    const auto header_only = dir.write_file(
        "empty.tsv",
        "subject\trelation_id\trelation_label\tobject\tsource_name\tpmid\tyear\tconfidence"
        "\tsentence\n");
    CHECK(parse_edge_file(header_only.string(), *testutil::registry()).empty());

    const auto unregistered = dir.write_file(
        "unreg.tsv",
        "subject\trelation_id\trelation_label\tobject\tsource_name\tpmid\tyear\tconfidence"
        "\tsentence\n"
        "A\tFOO_1\tfoo\tB\tDIKB\t\t\t\t\n");
    CHECK_THROWS_AS(parse_edge_file(unregistered.string(), *testutil::registry()),
                    RelationNotRegistered);

    const auto bad_year = dir.write_file(
        "year.tsv",
        "subject\trelation_id\trelation_label\tobject\tsource_name\tpmid\tyear\tconfidence"
        "\tsentence\n"
        "A\tRO_0002449\tinhibits\tB\tDIKB\t\ttwenty\t\t\n");
    CHECK_THROWS_AS(parse_edge_file(bad_year.string(), *testutil::registry()), ParseError);
}

TEST_CASE("predication files parse JSON lines") {
    testutil::TempDir dir("preds");
    const auto good = dir.write_file(
        "preds.jsonl",
        R"({"subject_text":"catechin","relation_raw":"interacts_with","object_text":"nadolol",)"
        R"("source":"SEMREP","pmid":"24714760","year":2014,"sentence":"Catechin interacts."})"
        "\n"
        R"({"subject_text":"mitragynine","subject_id":"CHEBI:6956","relation_raw":"activation",)"
        R"("object_text":"CYP3A4","object_id":"PR_000006130","source":"REACH","pmid":"23001","confidence":0.8,)"
        R"("sentence":"Mitragynine activates CYP3A4."})"
        "\n");
    const auto preds = parse_predication_file(good.string());
    REQUIRE(preds.size() == 2);
    CHECK(preds[0].source == PredicationSource::SemRep);
    CHECK(preds[0].year == 2014);
    CHECK_FALSE(preds[0].subject_id);
    CHECK(preds[1].source == PredicationSource::Reach);
    CHECK(preds[1].subject_id == "CHEBI:6956");
    CHECK(preds[1].confidence == 0.8);
    CHECK_FALSE(preds[1].year);

    const auto missing_pmid = dir.write_file(
        "bad.jsonl",
        R"({"subject_text":"a","relation_raw":"inhibits","object_text":"b","source":"SEMREP",)"
        R"("sentence":"s"})"
        "\n");
    CHECK_THROWS_AS(parse_predication_file(missing_pmid.string()), ParseError);

    const auto empty = dir.write_file("empty.jsonl", "");
    CHECK(parse_predication_file(empty.string()).empty());

    const auto invalid = dir.write_file("invalid.jsonl", "not json\n");
    CHECK_THROWS_AS(parse_predication_file(invalid.string()), ParseError);
}

TEST_CASE("relation normalization follows the curated map") {
    const RelationMap map = RelationMap::builtin();

    const auto stimulates = normalize_relation("stimulates", PredicationSource::SemRep, map);
    CHECK(stimulates.disposition == Disposition::Keep);
    CHECK(stimulates.relation.id == "RO_0002213");
    CHECK(stimulates.relation.label == "positively regulates");

    const auto activation = normalize_relation("activation", PredicationSource::Reach, map);
    CHECK(activation.disposition == Disposition::Keep);
    CHECK(activation.relation.id == "RO_0002448");
    CHECK(activation.relation.label == "directly regulates activity of");

    const auto negated = normalize_relation("neg_inhibits", PredicationSource::SemRep, map);
    CHECK(negated.disposition == Disposition::Negated);
    CHECK(negated.relation.id == "RO_0002449");

    CHECK(normalize_relation("converts_to", PredicationSource::SemRep, map).disposition ==
          Disposition::Exclude);
    CHECK(normalize_relation("no_such_relation", PredicationSource::SemRep, map).disposition ==
          Disposition::Exclude);

    // source-specific entries do not leak across systems
    CHECK(normalize_relation("activation", PredicationSource::SemRep, map).disposition ==
          Disposition::Exclude);
    CHECK(normalize_relation("inhibits", PredicationSource::Reach, map).disposition ==
          Disposition::Keep);
}

TEST_CASE("relation maps load from TSV and register their relations") {
    testutil::TempDir dir("relmap");
    const auto file = dir.write_file("map.tsv",
                                     "raw\tsource\tmapped_id\tmapped_label\tdisposition\n"
                                     "zaps\tSEMREP\tLOCAL_1\tzaps strongly\tKEEP\n"
                                     "neg_zaps\tSEMREP\tLOCAL_1\tzaps strongly\tNEGATED\n"
                                     "boring\tANY\t\t\tEXCLUDE\n");
    const RelationMap map = RelationMap::load(file.string());
    CHECK(map.size() == 3);
    RelationRegistry registry = RelationRegistry::builtin();
    map.register_relations(registry);
    CHECK(registry.contains("LOCAL_1"));

    const auto bad = dir.write_file("bad.tsv",
                                    "raw\tsource\tmapped_id\tmapped_label\tdisposition\n"
                                    "zaps\tSEMREP\tLOCAL_1\tzaps\tNEGATED\n");
    CHECK_THROWS_AS(RelationMap::load(bad.string()), ParseError);
}

TEST_CASE("entity linking is case-insensitive with pre-linked pass-through") {
    const EntityMap map = small_entity_map();

    const auto linked = link_entity("Catechin", std::nullopt, map);
    CHECK(linked.linked);
    CHECK(linked.id == "CHEBI:23053");

    const auto pre_linked = link_entity("some text", std::string("PR_000006130"), map);
    CHECK(pre_linked.linked);
    CHECK(pre_linked.id == "PR_000006130");
    CHECK(pre_linked.label == "cytochrome P450 3A4");

    CHECK_FALSE(link_entity("frobnicatol", std::nullopt, map).linked);
}

TEST_CASE("filter rules reject generics, semtypes, relations and low confidence") {
    const FilterConfig cfg = FilterConfig::builtin();

    auto generic = pred("EGCG", "affects", "Patients");
    CHECK_FALSE(filter_predication(generic, cfg).accept);
    CHECK(filter_predication(generic, cfg).reason == "generic-concept");

    auto excluded_rel = pred("EGCG", "diagnoses", "CYP3A4");
    CHECK(filter_predication(excluded_rel, cfg).reason == "excluded-relation");

    auto semtype = pred("EGCG", "affects", "CYP3A4");
    semtype.object_semtype = "orgt";
    CHECK(filter_predication(semtype, cfg).reason == "excluded-semtype");

    auto ordinary = pred("EGCG", "inhibits", "CYP3A4");
    CHECK(filter_predication(ordinary, cfg).accept);

    FilterConfig with_threshold = cfg;
    with_threshold.min_confidence = 0.5;
    auto low = pred("EGCG", "inhibits", "CYP3A4");
    low.confidence = 0.2;
    CHECK(filter_predication(low, with_threshold).reason == "low-confidence");
    auto unscored = pred("EGCG", "inhibits", "CYP3A4");
    CHECK(filter_predication(unscored, with_threshold).accept);
}

TEST_CASE("literature graph assembly deduplicates, routes negations and conserves counts") {
    const RelationMap rel_map = RelationMap::builtin();
    const EntityMap ent_map = small_entity_map();
    const FilterConfig filter = FilterConfig::builtin();

    std::vector<Predication> preds;
    preds.push_back(pred("catechin", "interacts_with", "nadolol", PredicationSource::SemRep,
                         "1111", 2013));
    preds.push_back(pred("catechin", "interacts_with", "nadolol", PredicationSource::SemRep,
                         "2222", 2017));
    preds.push_back(pred("mitragynine", "neg_interacts_with", "CYP3A4",
                         PredicationSource::SemRep, "3333", 2019));
    preds.push_back(pred("mitragynine", "interacts_with", "oxycodone"));  // unmapped object
    preds.push_back(pred("catechin", "diagnoses", "nadolol"));            // excluded relation
    preds.push_back(pred("catechin", "affects", "Patients"));             // generic concept

    IngestReport report;
    const KnowledgeGraph g = build_literature_graph(preds, rel_map, ent_map, filter,
                                                    testutil::registry(), &report);

    CHECK(report.input == 6);
    CHECK(report.accepted == 3);
    CHECK(report.rejected_by_filter == 2);
    CHECK(report.dropped_unmapped == 1);
    CHECK(report.negated == 1);
    CHECK(report.deduplicated == 1);
    CHECK(report.conserved());

    CHECK(g.edge_count() == 1);
    CHECK(g.negated_edge_count() == 1);
    const EdgeRecord* merged = g.find_edge("CHEBI:23053", rel::interacts_with, "CHEBI:7444");
    REQUIRE(merged != nullptr);
    CHECK(merged->evidence.size() == 2);

    // negation routed to the separate store under the positive relation
    CHECK(g.find_edge("CHEBI:6956", rel::interacts_with, "PR_000006130") == nullptr);
    CHECK(g.find_edge("CHEBI:6956", rel::interacts_with, "PR_000006130", true) != nullptr);

    // pre-closure literature graphs carry only literature evidence
    for (const auto& edge : g.edges()) {
        CHECK_FALSE(edge.inferred);
        for (const auto& ev : edge.evidence) {
            CHECK((ev.source == EvidenceSource::SemRep || ev.source == EvidenceSource::Reach));
        }
    }
}

TEST_CASE("ingestion is independent of predication order") {
    const RelationMap rel_map = RelationMap::builtin();
    EntityMap ent_map = small_entity_map();
    ent_map.add("EGCG", "CHEBI:4806", "EGCG");
    const FilterConfig filter = FilterConfig::builtin();

    std::vector<Predication> preds;
    const std::vector<std::string> subjects = {"catechin", "mitragynine", "EGCG"};
    const std::vector<std::string> objects = {"nadolol", "CYP3A4"};
    const std::vector<std::string> relations = {"interacts_with", "inhibits", "stimulates",
                                                "neg_inhibits"};
    std::mt19937 rng(3);
    for (int i = 0; i < 60; ++i) {
        preds.push_back(pred(subjects[rng() % subjects.size()],
                             relations[rng() % relations.size()],
                             objects[rng() % objects.size()], PredicationSource::SemRep,
                             std::to_string(1000 + static_cast<int>(rng() % 5)),
                             2010 + static_cast<int>(rng() % 8)));
    }

    IngestReport base_report;
    const auto base = build_literature_graph(preds, rel_map, ent_map, filter,
                                             testutil::registry(), &base_report);
    const std::string base_digest = snapshot_digest(base);

    for (int shuffle = 0; shuffle < 10; ++shuffle) {
        std::shuffle(preds.begin(), preds.end(), rng);
        IngestReport report;
        const auto shuffled = build_literature_graph(preds, rel_map, ent_map, filter,
                                                     testutil::registry(), &report);
        REQUIRE(snapshot_digest(shuffled) == base_digest);
        CHECK(report.accepted == base_report.accepted);
        CHECK(report.deduplicated == base_report.deduplicated);
        CHECK(report.negated == base_report.negated);
        CHECK(report.conserved());
    }
}

TEST_CASE("filter list files load one entry per line") {
    testutil::TempDir dir("filters");
    const auto file = dir.write_file("generics.txt", "# comment\nAnimals\nPatients\n\n");
    const auto set = FilterConfig::load_list(file.string(), true);
    CHECK(set == std::set<std::string, std::less<>>{"animals", "patients"});
}
