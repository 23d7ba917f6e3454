// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 npkg contributors

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "npkg/eval.hpp"

using namespace npkg;
using testutil::ev_db;
using testutil::ev_semrep;
using testutil::make_edge;
using testutil::Triple;

namespace {

GroundTruthAssertion gt(std::string np, std::string target, Interaction i) {
    return {std::move(np), std::move(target), i, "in vitro"};
}

}  // namespace

TEST_CASE("single-edge congruence and contradiction") {
    const auto polarity = PolarityTable::defaults();

    auto congruent = testutil::graph_from_triples({{"X", std::string(rel::inhibits), "Y"}});
    CHECK(classify_assertion(congruent, gt("X", "Y", Interaction::Inhibits), polarity).verdict ==
          Verdict::Congruent);

    auto contradictory =
        testutil::graph_from_triples({{"X", std::string(rel::positively_regulates), "Y"}});
    CHECK(classify_assertion(contradictory, gt("X", "Y", Interaction::Inhibits), polarity)
              .verdict == Verdict::Contradictory);
}

TEST_CASE("neutral-only connections are indeterminate") {
    auto g = testutil::graph_from_triples({{"X", std::string(rel::interacts_with), "Y"}});
    const auto verdict =
        classify_assertion(g, gt("X", "Y", Interaction::Inhibits), PolarityTable::defaults());
    CHECK(verdict.verdict == Verdict::Indeterminate);
    CHECK(verdict.supporting.empty());
    CHECK(verdict.opposing.empty());
    CHECK(verdict.neutral.size() == 1);
}

TEST_CASE("mixed polarities yield BOTH with disjoint edge sets") {
    auto g = testutil::graph_from_triples(
        {{"X", std::string(rel::inhibits), "Y"},
         {"X", std::string(rel::directly_positively_regulates_quantity_of), "Y"},
         {"X", std::string(rel::interacts_with), "Y"}});
    const auto verdict =
        classify_assertion(g, gt("X", "Y", Interaction::Inhibits), PolarityTable::defaults());
    CHECK(verdict.verdict == Verdict::Both);
    REQUIRE(verdict.supporting.size() == 1);
    REQUIRE(verdict.opposing.size() == 1);
    CHECK(verdict.supporting != verdict.opposing);
}

TEST_CASE("flipping INHIBITS and INDUCES swaps supporting and opposing") {
    std::mt19937 rng(5);
    const std::vector<std::string> rels = {
        std::string(rel::inhibits), std::string(rel::positively_regulates),
        std::string(rel::negatively_regulates), std::string(rel::interacts_with),
        std::string(rel::directly_positively_regulates_quantity_of)};
    const auto polarity = PolarityTable::defaults();
    for (int round = 0; round < 20; ++round) {
        std::vector<Triple> triples;
        std::uniform_int_distribution<std::size_t> pick(0, rels.size() - 1);
        const int edge_count = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < edge_count; ++i) {
            triples.push_back({"X", rels[pick(rng)], "Y"});
        }
        auto g = testutil::graph_from_triples(triples);
        const auto inhibits =
            classify_assertion(g, gt("X", "Y", Interaction::Inhibits), polarity);
        const auto induces = classify_assertion(g, gt("X", "Y", Interaction::Induces), polarity);
        CHECK(inhibits.supporting == induces.opposing);
        CHECK(inhibits.opposing == induces.supporting);
        CHECK(inhibits.neutral == induces.neutral);
    }
}

TEST_CASE("NO_INTERACTION semantics") {
    const auto polarity = PolarityTable::defaults();

    auto base = testutil::graph_from_triples({{"X", std::string(rel::inhibits), "Z"}});
    auto with_y = base.unsealed_copy();  // X and Z exist, Y starts disconnected
    with_y.add_node({"Y", "Y", "", NodeCategory::Protein});
    with_y.seal();
    CHECK(classify_assertion(with_y, gt("X", "Y", Interaction::NoInteraction), polarity).verdict ==
          Verdict::Congruent);

    auto neutral = testutil::graph_from_triples({{"X", std::string(rel::interacts_with), "Y"}});
    CHECK(classify_assertion(neutral, gt("X", "Y", Interaction::NoInteraction), polarity)
              .verdict == Verdict::Congruent);

    auto polar = testutil::graph_from_triples({{"X", std::string(rel::inhibits), "Y"}});
    CHECK(classify_assertion(polar, gt("X", "Y", Interaction::NoInteraction), polarity).verdict ==
          Verdict::Contradictory);
}

TEST_CASE("missing nodes produce NO_PATH with a note") {
    auto g = testutil::graph_from_triples({{"X", std::string(rel::inhibits), "Y"}});
    const auto verdict = classify_assertion(g, gt("X", "MISSING", Interaction::Inhibits),
                                            PolarityTable::defaults());
    CHECK(verdict.verdict == Verdict::NoPath);
    CHECK(verdict.note.find("MISSING") != std::string::npos);
}

TEST_CASE("multi-hop assertions judge only the final hop") {
    // X -> M (positive), M -> Y (negative): the path verdict comes from M -> Y
    auto g = testutil::graph_from_triples({{"X", std::string(rel::positively_regulates), "M"},
                                           {"M", std::string(rel::inhibits), "Y"}});
    const auto verdict =
        classify_assertion(g, gt("X", "Y", Interaction::Inhibits), PolarityTable::defaults());
    CHECK(verdict.verdict == Verdict::Congruent);
    REQUIRE(verdict.path);
    CHECK(verdict.path->length() == 2);
    CHECK(verdict.note.find("final hop") != std::string::npos);
}

TEST_CASE("disconnected polar assertions are NO_PATH") {
    auto g = testutil::graph_from_triples({{"X", std::string(rel::inhibits), "Z"},
                                           {"Q", std::string(rel::inhibits), "Y"}});
    CHECK(classify_assertion(g, gt("X", "Y", Interaction::Inhibits), PolarityTable::defaults())
              .verdict == Verdict::NoPath);
}

TEST_CASE("summary percentages reproduce the reference breakdowns") {
    const EvalSummary green_tea = summarize_counts({{Verdict::Congruent, 23},
                                                    {Verdict::Contradictory, 9},
                                                    {Verdict::Indeterminate, 25},
                                                    {Verdict::Both, 2}});
    REQUIRE(green_tea.total == 59);
    CHECK(green_tea.percent_of(Verdict::Congruent) == 38.98);
    CHECK(green_tea.percent_of(Verdict::Contradictory) == 15.25);
    CHECK(green_tea.percent_of(Verdict::Indeterminate) == 42.37);
    CHECK(green_tea.percent_of(Verdict::Both) == 3.39);

    const EvalSummary kratom = summarize_counts({{Verdict::Congruent, 7},
                                                 {Verdict::Contradictory, 3},
                                                 {Verdict::Indeterminate, 3},
                                                 {Verdict::Both, 1}});
    REQUIRE(kratom.total == 14);
    CHECK(kratom.percent_of(Verdict::Congruent) == 50.0);
    CHECK(kratom.percent_of(Verdict::Contradictory) == 21.43);
    CHECK(kratom.percent_of(Verdict::Indeterminate) == 21.43);
    CHECK(kratom.percent_of(Verdict::Both) == 7.14);

    const EvalSummary empty = summarize_evaluation({});
    CHECK(empty.total == 0);
    CHECK(empty.percent_of(Verdict::Congruent) == 0.0);
}

TEST_CASE("summary percentages sum to roughly one hundred") {
    std::mt19937 rng(11);
    for (int round = 0; round < 25; ++round) {
        std::map<Verdict, std::size_t> counts;
        for (auto v : {Verdict::Congruent, Verdict::Contradictory, Verdict::Indeterminate,
                       Verdict::Both, Verdict::NoPath}) {
            counts[v] = rng() % 40;
        }
        const EvalSummary summary = summarize_counts(counts);
        if (summary.total == 0) {
            continue;
        }
        double sum = 0.0;
        for (const auto& [v, c] : counts) {
            sum += summary.percent_of(v);
        }
        CHECK_THAT(sum, Catch::Matchers::WithinAbs(100.0, 0.03));
    }
}

TEST_CASE("contradictory pair audit flags opposite polarities per node pair") {
    KnowledgeGraph g(testutil::registry());
    g.add_edge(make_edge("mit", rel::inhibits, "CYP2D6",
                         {ev_semrep("23524", 2013), ev_semrep("28830", 2017)}));
    g.add_edge(make_edge("mit", rel::positively_regulates, "CYP2D6", {ev_semrep("23524", 2013)}));
    g.add_edge(make_edge("EGCG", rel::inhibits, "UGT", {ev_semrep("29959", 2018)}));
    g.add_edge(make_edge("EGCG", rel::positively_regulates, "UGT", {ev_semrep("26026", 2016)}));
    g.add_edge(make_edge("mit", rel::interacts_with, "CYP2D6", {ev_semrep("23524", 2013)}));
    g.seal();

    const auto pairs = find_contradictory_edge_pairs(g, PolarityTable::defaults());
    REQUIRE(pairs.size() == 2);
    for (const auto& [a, b] : pairs) {
        const auto& first = g.edge_at(a);
        const auto& second = g.edge_at(b);
        CHECK(first.subject == second.subject);
        CHECK(first.object == second.object);
    }
}

TEST_CASE("neutral-only graphs contain no contradictory pairs") {
    auto g = testutil::graph_from_triples({{"A", std::string(rel::interacts_with), "B"},
                                           {"A", std::string(rel::correlated_with), "B"}});
    CHECK(find_contradictory_edge_pairs(g, PolarityTable::defaults()).empty());
}

TEST_CASE("contradiction audit equals the brute-force pair scan") {
    std::mt19937 rng(31);
    const std::vector<std::string> rels = {
        std::string(rel::inhibits), std::string(rel::positively_regulates),
        std::string(rel::negatively_regulates), std::string(rel::interacts_with),
        std::string(rel::capable_of_positively_regulating)};
    const auto polarity = PolarityTable::defaults();
    for (int round = 0; round < 15; ++round) {
        auto g = testutil::graph_from_triples(testutil::random_triples(rng, 10, 60, rels));
        const auto fast = find_contradictory_edge_pairs(g, polarity);

        std::vector<std::pair<std::uint32_t, std::uint32_t>> brute;
        for (std::uint32_t i = 0; i < g.edges().size(); ++i) {
            for (std::uint32_t j = i + 1; j < g.edges().size(); ++j) {
                const auto& a = g.edge_at(i);
                const auto& b = g.edge_at(j);
                if (a.subject != b.subject || a.object != b.object) {
                    continue;
                }
                const auto pa = polarity.of(a.relation.id);
                const auto pb = polarity.of(b.relation.id);
                const bool opposite = (pa == Polarity::Positive && pb == Polarity::Negative) ||
                                      (pa == Polarity::Negative && pb == Polarity::Positive);
                if (opposite) {
                    brute.emplace_back(i, j);
                }
            }
        }
        std::sort(brute.begin(), brute.end());
        REQUIRE(fast == brute);
    }
}

TEST_CASE("polarity tables load from TSV and default unlisted relations to neutral") {
    testutil::TempDir dir("polarity");
    const auto file = dir.write_file("polarity.tsv",
                                     "relation_id\tpolarity\n"
                                     "RO_0002449\tNEGATIVE\n"
                                     "RO_0002213\tPOSITIVE\n");
    const PolarityTable table = PolarityTable::load(file.string());
    CHECK(table.of("RO_0002449") == Polarity::Negative);
    CHECK(table.of("RO_0002213") == Polarity::Positive);
    CHECK(table.of("RO_0002434") == Polarity::Neutral);
    CHECK(table.of("BFO_0000050") == Polarity::Neutral);
}

TEST_CASE("ground truth files parse and reject same-node assertions") {
    testutil::TempDir dir("gt");
    const auto good = dir.write_file("gt.tsv",
                                     "np_node\ttarget_node\tinteraction\tevidence_type\n"
                                     "CHEBI:1\tPR_1\tINHIBITS\tin vitro\n"
                                     "CHEBI:1\tPR_2\tNO_INTERACTION\tclinical\n");
    const auto assertions = parse_ground_truth(good.string());
    REQUIRE(assertions.size() == 2);
    CHECK(assertions[0].interaction == Interaction::Inhibits);
    CHECK(assertions[1].interaction == Interaction::NoInteraction);

    const auto bad = dir.write_file("bad.tsv",
                                    "np_node\ttarget_node\tinteraction\tevidence_type\n"
                                    "CHEBI:1\tCHEBI:1\tINHIBITS\tin vitro\n");
    CHECK_THROWS_AS(parse_ground_truth(bad.string()), ParseError);
}
