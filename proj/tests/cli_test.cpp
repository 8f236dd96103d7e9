#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "fdof/cli.hpp"
#include "fdof/service.hpp"
#include "fdof/trig.hpp"
#include "fixtures.hpp"
#include "json.hpp"

namespace fdof {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_file(const std::string& name, const std::string& content) {
  const auto dir = fs::temp_directory_path() / ("fdof-cli-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::vector<std::string> with_corpus(std::vector<std::string> args) {
  for (const auto& p : testing::corpus_paths()) args.push_back(p);
  return args;
}

TEST(CliValidate, ExampleCorpusConforms) {
  const auto r = run(with_corpus({"validate", "--shapes", testing::shapes_path()}));
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_TRUE(r.out.starts_with("CONFORMS")) << r.out;
}

TEST(CliValidate, EmptyFileConformsWithZeroObjects) {
  const auto r = run({"validate", scratch_file("empty.trig", "").string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("objects: 0"), std::string::npos) << r.out;
}

TEST(CliValidate, DeletedLinkExitsOneWithC3AndC4) {
  const Dataset bad = testing::without(testing::corpus_dataset(),
                                       testing::ex("amazonTop50Metadata").value(),
                                       "https://w3id.org/fdof/ontology#isMetadataOf");
  const auto path = scratch_file("bad.trig", serialize_trig(bad));
  const auto r = run({"validate", "--shapes", testing::shapes_path(), "--format", "json",
                      path.string()});
  EXPECT_EQ(r.code, kExitFindings);
  const auto doc = json::parse(r.out);
  ASSERT_EQ(doc["findings"].size(), 2u);
  EXPECT_EQ(doc["findings"][0]["rule"], "C3");
  EXPECT_EQ(doc["findings"][1]["rule"], "C4");
}

TEST(CliValidate, StrictAndMetadataOnly) {
  const auto path = scratch_file("untyped.trig",
                                 "@prefix f: <https://w3id.org/fdof/ontology#> .\n"
                                 "<http://e/r> a f:FAIRMetadataRecord ; f:gupri \"urn:r\" .\n"
                                 "<http://e/r> { <http://e/r> f:isMetadataOf <http://e/r> . }\n");
  EXPECT_EQ(run({"validate", path.string()}).code, kExitFindings);  // C5
  EXPECT_EQ(run({"validate", "--metadata-only", path.string()}).code, kExitOk);
  EXPECT_EQ(run({"validate", "--metadata-only", "--strict", path.string()}).code, kExitFindings);
}

TEST(CliValidate, Errors) {
  const auto broken = scratch_file("broken.trig", "@prefix a: <http://a/> .\nb:x a:p a:o .\n");
  const auto r = run({"validate", broken.string()});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find(broken.string() + ":2:1:"), std::string::npos) << r.err;
  EXPECT_EQ(run({"validate", "/nonexistent/file.trig"}).code, kExitError);
  const auto shapes = scratch_file("bad-shapes.json", "[{\"type\": 1}]");
  EXPECT_EQ(run(with_corpus({"validate", "--shapes", shapes.string()})).code, kExitError);
  EXPECT_EQ(run({}).code, kExitError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run({"validate"}).code, kExitError);
  EXPECT_EQ(run(with_corpus({"validate", "--format", "xml"})).code, kExitError);
}

TEST(CliLoadInputs, BlankNodesStaySeparateAcrossFiles) {
  const auto a = scratch_file("a.trig", "_:x <http://p> <http://o> .\n");
  const auto b = scratch_file("b.trig", "_:x <http://p> <http://o> .\n");
  EXPECT_EQ(load_inputs({a.string(), b.string()}).size(), 2u);
  EXPECT_EQ(load_inputs({a.string()}).size(), 1u);
}

TEST(CliInspect, NodeByPrefixedNameOrGupri) {
  for (const std::string id :
       {":amazonTop50", "https://w3id.org/fdof/fois23-paper/amazonTop50",
        "<https://w3id.org/fdof/fois23-paper/ex1/amazonTop50>"}) {
    const auto r = run(with_corpus({"inspect", "--id", id}));
    ASSERT_EQ(r.code, kExitOk) << id << r.err;
    EXPECT_NE(r.out.find("kinds: InformationObject"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("<https://w3id.org/fdof/types#Dataset>"), std::string::npos);
    EXPECT_NE(r.out.find("materialized by: <https://w3id.org/fdof/fois23-paper/ex1/amazonTop50Csv>"),
              std::string::npos)
        << r.out;
  }
  const auto unknown = run(with_corpus({"inspect", "--id", ":nothing"}));
  EXPECT_EQ(unknown.code, kExitError);
}

TEST(CliInspect, JsonListsEveryFdoLikeClassify) {
  const auto r = run(with_corpus({"inspect", "--format", "json"}));
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  const FdofModel model = extract_model(testing::corpus_dataset());
  ASSERT_EQ(doc.size(), 5u);
  for (const auto& entry : doc) {
    const auto s = classify(model, parse_term(entry.at("node").get<std::string>()));
    EXPECT_EQ(entry.at("kinds").get<std::vector<std::string>>(), s.kinds.names());
    EXPECT_EQ(entry.at("info_types").size(), s.info_types.size());
    EXPECT_EQ(entry.at("encoding_formats").size(), s.encoding_formats.size());
  }
}

TEST(CliMint, PrintsProvenanceJson) {
  const auto r = run({"mint", "--template", "https://ex.org/fdo/{}", "--agent",
                      "https://ex.org/agentA", "--object", "https://ex.org/obj1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_TRUE(doc["gupri"].get<std::string>().starts_with("https://ex.org/fdo/"));
  EXPECT_EQ(doc["agent"], "https://ex.org/agentA");
  EXPECT_EQ(doc["object"], "https://ex.org/obj1");
  EXPECT_EQ(doc["space"], "uri");
  EXPECT_TRUE(doc["timestamp"].get<std::string>().ends_with("Z"));
  EXPECT_EQ(run({"mint", "--template", "no-slot", "--agent", "a:b", "--object", "c:d"}).code,
            kExitError);
}

TEST(CliRegistry, DepositAndResolveThroughJournal) {
  const auto journal = scratch_file("cli.journal", "");
  const auto dep = run(with_corpus({"deposit", "--shapes", testing::shapes_path(), "--journal",
                                    journal.string()}));
  ASSERT_EQ(dep.code, kExitOk) << dep.err;
  EXPECT_EQ(json::parse(dep.out).size(), 6u);
  const auto r = run({"resolve", "--journal", journal.string(),
                      "https://w3id.org/fdof/fois23-paper/amazonTop50"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(parse_trig(r.out).quad_set(),
            graph_slice(testing::corpus_dataset(), testing::ex("amazonTop50Metadata")).quad_set());
  const auto t = run({"resolve", "--type", "--journal", journal.string(),
                      "https://w3id.org/fdof/fois23-paper/amazonTop50"});
  EXPECT_EQ(json::parse(t.out)["kinds"], json::array({"InformationObject"}));
  EXPECT_EQ(run({"resolve", "--journal", journal.string(), "urn:unknown"}).code, kExitFindings);
  EXPECT_EQ(run({"resolve", "urn:x"}).code, kExitError);
}

TEST(CliRegistry, ResolveAgainstServedRegistry) {
  RegistryOptions options;
  options.shapes = testing::example_shapes();
  Registry registry(std::move(options));
  registry.deposit(testing::corpus_dataset());
  Service service(registry);
  const int port = service.bind({"127.0.0.1", 0});
  std::thread thread([&] { service.run(); });
  const std::string endpoint = "http://127.0.0.1:" + std::to_string(port);

  const auto r = run({"resolve", "--endpoint", endpoint,
                      "https://w3id.org/fdof/fois23-paper/amazonTop50"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(parse_trig(r.out).size(), 7u);
  const auto missing = run({"resolve", "--endpoint", endpoint, "urn:unknown"});
  EXPECT_EQ(missing.code, kExitFindings);
  EXPECT_NE(missing.err.find("HTTP 404"), std::string::npos);
  const auto again = run(with_corpus({"deposit", "--endpoint", endpoint}));
  EXPECT_EQ(again.code, kExitOk) << again.err;

  service.stop();
  thread.join();
  EXPECT_EQ(run({"resolve", "--endpoint", endpoint, "urn:x"}).code, kExitError);
}

}  // namespace
}  // namespace fdof
