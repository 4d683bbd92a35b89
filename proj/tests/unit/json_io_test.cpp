#include <gtest/gtest.h>

#include "mecsr/errors.hpp"
#include "mecsr/json_io.hpp"

namespace mecsr::io {
namespace {

TEST(InstanceFile, CanonicalBytes) {
  Instance inst{2, 1, 2, Model::Max, 1, 2, {0, 1, 2, 3}};
  EXPECT_EQ(write_instance(inst),
            "{\"n\":2,\"t\":1,\"ell\":2,\"model\":\"max\",\"d\":1,\"alpha\":2,"
            "\"sat\":[[[0,1]],[[2,3]]]}\n");
}

TEST(InstanceFile, RoundTrip) {
  Instance inst{2, 3, 2, Model::Sum, 4, 1, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};
  const auto text = write_instance(inst);
  EXPECT_EQ(read_instance(text), inst);
  EXPECT_EQ(write_instance(read_instance(text)), text);
}

TEST(InstanceFile, SyntaxErrorPosition) {
  try {
    read_instance("{\"n\":1,\n  \"t\": ]}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 8u);
    EXPECT_EQ(e.byte(), 16u);
  }
}

TEST(InstanceFile, StructuralErrorsNameThePath) {
  try {
    read_instance(R"({"n":1,"t":1,"ell":1,"model":"sum","d":1,"alpha":1,"sat":[[[1,"x"]]]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("$.sat[0][0][1]"), std::string::npos);
  }
  EXPECT_THROW(read_instance(R"({"n":1,"t":1,"ell":1,"model":"avg","d":1,"alpha":1,"sat":[[[1]]]})"),
               ParseError);
  EXPECT_THROW(read_instance(R"({"n":1,"t":1,"ell":1,"model":"sum","d":1,"sat":[[[1]]]})"), ParseError);
  EXPECT_THROW(read_instance(R"({"n":1,"t":1,"ell":1,"model":"sum","d":1,"alpha":-1,"sat":[[[1]]]})"),
               ParseError);
}

TEST(InstanceFile, RaggedTensorIsAParseError) {
  EXPECT_THROW(read_instance(R"({"n":2,"t":1,"ell":2,"model":"sum","d":1,"alpha":1,"sat":[[[1,0]],[[1]]]})"),
               ParseError);
}

TEST(InstanceFile, ShapeMismatchIsLeftToValidate) {
  const auto inst = read_instance(R"({"n":3,"t":1,"ell":1,"model":"sum","d":1,"alpha":1,"sat":[[[1]],[[1]]]})");
  EXPECT_FALSE(validate(inst).empty());
}

TEST(SolveResultFile, CanonicalBytesAndRoundTrip) {
  SolveResult r;
  r.feasible = true;
  r.assignment = RuleAssignment{{1, 0}};
  r.method = Method::SubsetFpt;
  r.stats.assignments = 3;
  r.stats.subsets = 2;
  r.stats.rule_types = 4;
  r.stats.elapsed_ns = 99;
  r.stats.sat_reads = 12;
  const auto text = write_solve_result(r);
  EXPECT_EQ(text,
            "{\"feasible\":true,\"assignment\":[1,0],\"method\":\"subset_fpt\",\"stats\":"
            "{\"assignments\":3,\"subsets\":2,\"rule_types\":4,\"elapsed_ns\":99}}\n");
  const auto back = solve_result_from_json(parse_document(text));
  EXPECT_EQ(back.assignment, r.assignment);
  EXPECT_EQ(back.method, r.method);
  EXPECT_EQ(back.stats.rule_types, 4u);

  SolveResult none;
  EXPECT_NE(write_solve_result(none).find("\"assignment\":null"), std::string::npos);
}

TEST(SourceFiles, RoundTripEveryKind) {
  const std::vector<SourceInstance> sources{
      Graph{3, {{0, 1}, {1, 2}}},
      ColoredGraph{{4, {{0, 2}}}, 2, 2, {0, 0, 1, 1}},
      Cnf3{3, {{1, -2, 3}}},
      TripleSystem{6, {{0, 1, 2}, {3, 4, 5}}},
      ValueMultiset{{1, 1, 2}},
  };
  for (const auto& s : sources) {
    const auto kind = kind_of(s);
    const auto text = write_source(s);
    EXPECT_EQ(read_source(kind, text), s);
    EXPECT_EQ(parse_source_kind(to_string(kind)), kind);
  }
  EXPECT_EQ(write_source(Graph{2, {{0, 1}}}), "{\"n\":2,\"edges\":[[0,1]]}\n");
}

TEST(SourceFiles, MalformedSources) {
  EXPECT_THROW(read_source(SourceKind::Graph, R"({"n":3,"edges":[[0,1,2]]})"), ParseError);
  EXPECT_THROW(read_source(SourceKind::Cnf, R"({"vars":3,"clauses":[[1,2]]})"), ParseError);
  EXPECT_THROW(read_source(SourceKind::Cnf, R"({"vars":3,"clauses":[[1,0,2]]})"), ParseError);
  EXPECT_THROW(read_source(SourceKind::Triples, R"({"m":3,"triples":[[0,1]]})"), ParseError);
  EXPECT_THROW(read_source(SourceKind::Values, R"({"values":[1,"2"]})"), ParseError);
  EXPECT_THROW(read_source(SourceKind::Graph, "{\"n\":3,\"edges\":[[0,1]"), ParseError);
}

TEST(ExtractionJson, TaggedPayloads) {
  EXPECT_EQ(dump(to_json(Extraction{VertexSet{{0, 2}}})), "{\"type\":\"vertex_set\",\"vertices\":[0,2]}\n");
  EXPECT_EQ(dump(to_json(Extraction{TruthAssignment{{true, false}}})),
            "{\"type\":\"truth_assignment\",\"values\":[true,false]}\n");
  EXPECT_EQ(dump(to_json(Extraction{Bipartition{{2}, {0, 1}}})),
            "{\"type\":\"bipartition\",\"first\":[2],\"second\":[0,1]}\n");
}

TEST(ProfileFile, RoundTripAndErrors) {
  const std::string text =
      R"({"m":3,"p":0,"rankings":[[[0,1,2],[2,1,0]]],"rules":[{"kind":"borda"},{"kind":"kapproval","k":2}]})"
      "\n";
  const auto file = read_profile(text);
  EXPECT_EQ(file.profile.m, 3u);
  EXPECT_EQ(file.profile.rankings[0][1], (Ranking{2, 1, 0}));
  EXPECT_EQ(file.rules[1], RuleSpec::k_approval(2));
  EXPECT_EQ(write_profile(file), text);
  EXPECT_THROW(read_profile(R"({"m":3,"p":0,"rankings":[[[0,1,1]]],"rules":[{"kind":"borda"}]})"),
               ParseError);
  EXPECT_THROW(read_profile(R"({"m":3,"p":0,"rankings":[[[0,1,2]]],"rules":[{"kind":"copeland"}]})"),
               ParseError);
}

}  // namespace
}  // namespace mecsr::io
