#include <gtest/gtest.h>

#include <algorithm>

#include "fdof/validator.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "json.hpp"

namespace fdof {
namespace {

using json = nlohmann::json;

TEST(RenderReport, EmptyReportJson) {
  const auto text = render_report(validate(FdofModel{}, ShapeRegistry{}), ReportFormat::Json);
  const auto doc = json::parse(text);
  EXPECT_EQ(doc.at("conforms"), true);
  EXPECT_TRUE(doc.at("findings").is_array());
  EXPECT_TRUE(doc.at("findings").empty());
  EXPECT_TRUE(doc.at("stats").at("violations").empty());
  EXPECT_EQ(doc.at("summary").at("objects"), 0);
  EXPECT_TRUE(text.ends_with("}\n"));
}

TEST(RenderReport, OneFindingHasAllFields) {
  ValidationReport report;
  report.findings.push_back({Rule::C3, Severity::Violation, testing::ex("x"),
                             "not described", {}});
  report.violations_per_rule["C3"] = 1;
  const auto doc = json::parse(render_report(report, ReportFormat::Json));
  ASSERT_EQ(doc.at("findings").size(), 1u);
  const auto& f = doc["findings"][0];
  EXPECT_EQ(f.at("rule"), "C3");
  EXPECT_EQ(f.at("severity"), "violation");
  EXPECT_EQ(f.at("focus"), "<https://w3id.org/fdof/fois23-paper/ex1/x>");
  EXPECT_EQ(f.at("message"), "not described");
  EXPECT_TRUE(f.at("evidence").empty());
  EXPECT_EQ(doc.at("conforms"), false);
  EXPECT_EQ(doc["stats"]["violations"]["C3"], 1);
}

TEST(RenderReport, StatsFollowRuleOrder) {
  ValidationReport report;
  report.violations_per_rule = {{"C10", 1}, {"C2", 2}, {"C9", 3}};
  const auto text = render_report(report, ReportFormat::Json);
  EXPECT_LT(text.find("\"C2\""), text.find("\"C9\""));
  EXPECT_LT(text.find("\"C9\""), text.find("\"C10\""));
}

TEST(RenderReport, TextForm) {
  const Dataset ds = testing::without(testing::corpus_dataset(),
                                      testing::ex("amazonTop50Metadata").value(),
                                      "https://w3id.org/fdof/ontology#isMetadataOf");
  const auto text = render_report(validate(extract_model(ds), testing::example_shapes()),
                                  ReportFormat::Text);
  EXPECT_TRUE(text.starts_with("DOES NOT CONFORM: 2 violation(s), 0 warning(s)\n")) << text;
  EXPECT_NE(text.find("C3 violation <https://w3id.org/fdof/fois23-paper/ex1/amazonTop50>: "),
            std::string::npos);
  const auto ok = render_report(validate(FdofModel{}, ShapeRegistry{}), ReportFormat::Text);
  EXPECT_TRUE(ok.starts_with("CONFORMS"));
}

TEST(ParseReportFindings, RoundTripPreservesFindings) {
  testing::Rng rng(21);
  std::size_t seen = 0;
  for (int round = 0; round < 100; ++round) {
    const auto report = validate(extract_model(testing::random_fdof_corpus(rng)),
                                 testing::example_shapes());
    const auto text = render_report(report, ReportFormat::Json);
    auto back = parse_report_findings(text);
    auto original = report.findings;
    const auto key = [](const Finding& f) {
      return std::tuple(f.rule, f.focus.to_ntriples(), f.message, f.severity);
    };
    const auto by_key = [&](const Finding& a, const Finding& b) { return key(a) < key(b); };
    std::sort(back.begin(), back.end(), by_key);
    std::sort(original.begin(), original.end(), by_key);
    EXPECT_EQ(back, original);
    EXPECT_EQ(render_report(report, ReportFormat::Json), text);
    seen += original.size();
  }
  EXPECT_GT(seen, 100u);
  EXPECT_THROW(parse_report_findings("{}"), std::exception);
}

}  // namespace
}  // namespace fdof
