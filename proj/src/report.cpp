#include <sstream>

#include "fdof/trig.hpp"
#include "fdof/validator.hpp"
#include "json.hpp"

namespace fdof {

using ojson = nlohmann::ordered_json;

namespace {

ojson quad_json(const Quad& q) {
  ojson j;
  j["subject"] = q.subject.to_ntriples();
  j["predicate"] = q.predicate.to_ntriples();
  j["object"] = q.object.to_ntriples();
  j["graph"] = q.graph ? ojson(q.graph->to_ntriples()) : ojson(nullptr);
  return j;
}

ojson counts_json(const std::map<std::string, std::size_t>& counts) {
  // Rule order, so that C10 follows C9.
  ojson j = ojson::object();
  for (int r = 1; r <= 10; ++r) {
    auto it = counts.find(rule_name(static_cast<Rule>(r)));
    if (it != counts.end()) j[it->first] = it->second;
  }
  return j;
}

std::string render_json(const ValidationReport& report) {
  ojson doc;
  doc["conforms"] = report.conforms();
  doc["findings"] = ojson::array();
  for (const auto& f : report.findings) {
    ojson e;
    e["rule"] = rule_name(f.rule);
    e["severity"] = severity_name(f.severity);
    e["focus"] = f.focus.to_ntriples();
    e["message"] = f.message;
    e["evidence"] = ojson::array();
    for (const auto& q : f.evidence) e["evidence"].push_back(quad_json(q));
    doc["findings"].push_back(std::move(e));
  }
  doc["stats"]["violations"] = counts_json(report.violations_per_rule);
  doc["stats"]["warnings"] = counts_json(report.warnings_per_rule);
  const auto& s = report.summary;
  doc["summary"] = {{"objects", s.objects},
                    {"fdos", s.fdos},
                    {"information_objects", s.information_objects},
                    {"media_objects", s.media_objects},
                    {"metadata_records", s.metadata_records}};
  return doc.dump(2) + "\n";
}

std::string render_text(const ValidationReport& report) {
  std::ostringstream out;
  const auto& s = report.summary;
  out << (report.conforms() ? "CONFORMS" : "DOES NOT CONFORM") << ": "
      << report.violation_count() << " violation(s), " << report.warning_count()
      << " warning(s)\n";
  out << "objects: " << s.objects << " (fdos " << s.fdos << ", information "
      << s.information_objects << ", media " << s.media_objects
      << ", metadata records " << s.metadata_records << ")\n";
  for (const auto& f : report.findings) {
    out << rule_name(f.rule) << ' ' << severity_name(f.severity) << ' '
        << f.focus.to_ntriples() << ": " << f.message << '\n';
    for (const auto& q : f.evidence) out << "    " << q.to_nquads() << '\n';
  }
  return out.str();
}

Severity parse_severity(const std::string& s) {
  if (s == "violation") return Severity::Violation;
  if (s == "warning") return Severity::Warning;
  throw std::invalid_argument("unknown severity: " + s);
}

}  // namespace

std::string render_report(const ValidationReport& report, ReportFormat format) {
  return format == ReportFormat::Json ? render_json(report) : render_text(report);
}

std::vector<Finding> parse_report_findings(std::string_view json_text) {
  const auto doc = ojson::parse(json_text);
  std::vector<Finding> out;
  for (const auto& e : doc.at("findings")) {
    Finding f{parse_rule(e.at("rule").get<std::string>()),
              parse_severity(e.at("severity").get<std::string>()),
              parse_term(e.at("focus").get<std::string>()),
              e.at("message").get<std::string>(),
              {}};
    if (e.contains("evidence")) {
      for (const auto& q : e["evidence"]) {
        GraphName g;
        if (!q.at("graph").is_null()) g = parse_term(q["graph"].get<std::string>());
        f.evidence.push_back(Quad{parse_term(q.at("subject").get<std::string>()),
                                  parse_term(q.at("predicate").get<std::string>()),
                                  parse_term(q.at("object").get<std::string>()),
                                  std::move(g)});
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace fdof
