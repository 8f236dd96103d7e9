#include <gtest/gtest.h>

#include <map>

#include "fdof/dataset.hpp"
#include "fdof/term.hpp"
#include "generators.hpp"

namespace fdof {
namespace {

TEST(Term, LiteralDatatypeDefaultsToXsdString) {
  const auto t = Term::literal("x");
  EXPECT_EQ(t.datatype(), kXsdString);
  EXPECT_EQ(t.language(), "");
  EXPECT_EQ(t, Term::literal("x", std::string(kXsdString)));
}

TEST(Term, LanguageTagForcesLangString) {
  const auto t = Term::literal("chat", "http://example.org/ignored", "FR-ca");
  EXPECT_EQ(t.datatype(), kRdfLangString);
  EXPECT_EQ(t.language(), "fr-ca");
}

TEST(Term, KindsAreDistinctEvenWithEqualValues) {
  EXPECT_NE(Term::iri("x:y"), Term::blank("x:y"));
  EXPECT_NE(Term::iri("x:y"), Term::literal("x:y"));
  EXPECT_TRUE(Term::iri("x:y").is_iri());
  EXPECT_TRUE(Term::blank("b").is_blank());
  EXPECT_TRUE(Term::literal("l").is_literal());
}

TEST(Term, NTriplesEscaping) {
  EXPECT_EQ(Term::iri("http://e.org/a").to_ntriples(), "<http://e.org/a>");
  EXPECT_EQ(Term::blank("b1").to_ntriples(), "_:b1");
  EXPECT_EQ(Term::literal("a\"b\\c\nd\te\r").to_ntriples(),
            "\"a\\\"b\\\\c\\nd\\te\\r\"");
  EXPECT_EQ(Term::literal(std::string("\x01", 1)).to_ntriples(), "\"\\u0001\"");
  EXPECT_EQ(Term::literal("hi", {}, "en").to_ntriples(), "\"hi\"@en");
  EXPECT_EQ(Term::literal("2020-10-01", "http://www.w3.org/2001/XMLSchema#date")
                .to_ntriples(),
            "\"2020-10-01\"^^<http://www.w3.org/2001/XMLSchema#date>");
  EXPECT_EQ(Term::iri("http://e.org/a b").to_ntriples(), "<http://e.org/a\\u0020b>");
}

TEST(Term, AbsoluteForm) {
  EXPECT_TRUE(has_absolute_form("https://w3id.org/x"));
  EXPECT_TRUE(has_absolute_form("urn:isbn:1"));
  EXPECT_TRUE(has_absolute_form("a+b.c-d:"));
  EXPECT_FALSE(has_absolute_form("foo/bar"));
  EXPECT_FALSE(has_absolute_form(":x"));
  EXPECT_FALSE(has_absolute_form("1a:x"));
  EXPECT_FALSE(has_absolute_form(""));
}

TEST(Quad, NQuadsLine) {
  const Quad q{Term::iri("http://e.org/s"), Term::iri("http://e.org/p"),
               Term::literal("o"), Term::iri("http://e.org/g")};
  EXPECT_EQ(q.to_nquads(),
            "<http://e.org/s> <http://e.org/p> \"o\" <http://e.org/g> .");
  const Quad d{q.subject, q.predicate, q.object, std::nullopt};
  EXPECT_EQ(d.to_nquads(), "<http://e.org/s> <http://e.org/p> \"o\" .");
}

Quad quad(std::string s, std::string o, GraphName g = std::nullopt) {
  return {Term::iri("http://e.org/" + s), Term::iri("http://e.org/p"),
          Term::iri("http://e.org/" + o), std::move(g)};
}

TEST(Dataset, DeduplicatesAndKeepsInsertionOrder) {
  Dataset ds;
  EXPECT_TRUE(ds.add(quad("b", "x")));
  EXPECT_TRUE(ds.add(quad("a", "x")));
  EXPECT_FALSE(ds.add(quad("b", "x")));
  EXPECT_TRUE(ds.add(quad("b", "x", Term::iri("http://e.org/g"))));
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.quads()[0], quad("b", "x"));
  EXPECT_EQ(ds.quads()[1], quad("a", "x"));
}

TEST(Dataset, EqualityIgnoresOrderAndPrefixes) {
  Dataset a;
  a.add(quad("a", "x"));
  a.add(quad("b", "y"));
  Dataset b;
  b.add_prefix("ex", "http://e.org/");
  b.add(quad("b", "y"));
  b.add(quad("a", "x"));
  EXPECT_EQ(a, b);
}

TEST(Dataset, GraphNamesInFirstAppearanceOrder) {
  Dataset ds;
  const Term g2 = Term::iri("http://e.org/g2");
  const Term g1 = Term::blank("g1");
  ds.add(quad("a", "x", g2));
  ds.add(quad("a", "x"));
  ds.add(quad("a", "x", g1));
  ds.add(quad("b", "x", g2));
  EXPECT_EQ(ds.graph_names(), (std::vector<Term>{g2, g1}));
}

TEST(Dataset, MergeKeepsFirstPrefixBinding) {
  Dataset a;
  a.add_prefix("ex", "http://one/");
  Dataset b;
  b.add_prefix("ex", "http://two/");
  b.add_prefix("o", "http://o/");
  b.add(quad("a", "x"));
  a.merge(b);
  EXPECT_EQ(a.prefixes().at("ex"), "http://one/");
  EXPECT_EQ(a.prefixes().at("o"), "http://o/");
  EXPECT_EQ(a.size(), 1u);
}

TEST(GraphSlice, UnusedGraphIsEmpty) {
  Dataset ds;
  ds.add(quad("a", "x", Term::iri("http://e.org/g")));
  EXPECT_TRUE(graph_slice(ds, Term::iri("http://e.org/nope")).empty());
}

TEST(GraphSlice, SlicesPartitionEveryGeneratedDataset) {
  testing::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Dataset ds = testing::random_dataset(rng);
    // Oracle: group quads by graph with a plain map.
    std::map<GraphName, std::set<Quad>> groups;
    for (const auto& q : ds.quads()) groups[q.graph].insert(q);
    std::size_t total = graph_slice(ds, std::nullopt).size();
    EXPECT_EQ(graph_slice(ds, std::nullopt).quad_set(), groups[std::nullopt]);
    for (const auto& g : ds.graph_names()) {
      const Dataset slice = graph_slice(ds, g);
      EXPECT_EQ(slice.quad_set(), groups[g]);
      total += slice.size();
    }
    EXPECT_EQ(total, ds.size());
  }
}

TEST(RenameBlankNodes, PrefixesEveryBlankPosition) {
  Dataset ds;
  const Term b = Term::blank("x");
  ds.add({b, Term::iri("http://e.org/p"), b, b});
  ds.add(quad("a", "y"));
  const Dataset r = rename_blank_nodes(ds, "f1_");
  const Term rb = Term::blank("f1_x");
  EXPECT_TRUE(r.contains({rb, Term::iri("http://e.org/p"), rb, rb}));
  EXPECT_TRUE(r.contains(quad("a", "y")));
  EXPECT_EQ(r.size(), 2u);
}

}  // namespace
}  // namespace fdof
