#include "fdof/cli.hpp"

#include <pthread.h>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fdof/identifiers.hpp"
#include "fdof/model.hpp"
#include "fdof/registry.hpp"
#include "fdof/service.hpp"
#include "fdof/shapes.hpp"
#include "fdof/trig.hpp"
#include "fdof/validator.hpp"
#include "json.hpp"

namespace fdof {

using ojson = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error(path + ": read error");
  return buf.str();
}

ShapeRegistry load_shape_file(const std::string& path) {
  if (path.empty()) return {};
  const std::string text = read_file(path);
  try {
    return load_shapes(text);
  } catch (const ShapeError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string join_terms(const std::vector<Term>& terms) {
  std::string out;
  for (const auto& t : terms) out += (out.empty() ? "" : " ") + t.to_ntriples();
  return out.empty() ? "-" : out;
}

ojson terms_json(const std::vector<Term>& terms) {
  ojson a = ojson::array();
  for (const auto& t : terms) a.push_back(t.to_ntriples());
  return a;
}

std::vector<Term> select_nodes(const FdofModel& model, const Dataset& ds,
                               const std::string& id) {
  if (auto hits = lookup_by_gupri(model, id); !hits.empty()) return hits;
  std::vector<Term> candidates;
  if (!id.empty() && (id.front() == '<' || id.rfind("_:", 0) == 0)) {
    try {
      candidates.push_back(parse_term(id));
    } catch (const ParseError&) {
    }
  } else {
    candidates.push_back(Term::iri(id));
    if (const auto colon = id.find(':'); colon != std::string::npos) {
      auto it = ds.prefixes().find(id.substr(0, colon));
      if (it != ds.prefixes().end()) {
        candidates.push_back(Term::iri(it->second + id.substr(colon + 1)));
      }
    }
  }
  for (const auto& c : candidates) {
    if (model.find(c) != nullptr) return {c};
  }
  return {};
}

void inspect_text(const FdofModel& model, const Term& node, std::ostream& out) {
  const FdofObject& o = *model.find(node);
  const auto summary = classify(model, node);
  std::string kinds;
  for (const auto& k : summary.kinds.names()) kinds += (kinds.empty() ? "" : ", ") + k;
  out << "node: " << node.to_ntriples() << '\n';
  out << "  kinds: " << (kinds.empty() ? "-" : kinds)
      << (o.declared_fdo ? " (declared FAIRDigitalObject)" : "") << '\n';
  std::string gupris;
  for (const auto& g : o.gupris) gupris += (gupris.empty() ? "" : " ") + g;
  out << "  gupris: " << (gupris.empty() ? "-" : gupris) << '\n';
  out << "  identifiers: " << join_terms(o.identifier_nodes) << '\n';
  out << "  information object types: " << join_terms(summary.info_types) << '\n';
  out << "  materialized by: " << join_terms(o.materialized_by) << '\n';
  out << "  encoding formats: " << join_terms(summary.encoding_formats) << '\n';
  out << "  described by: " << join_terms(o.described_by) << '\n';
  if (auto rec = model.records.find(node); rec != model.records.end()) {
    out << "  metadata of: " << join_terms(rec->second.targets) << '\n';
  }
  out << "  attributions:";
  if (o.attributions.empty()) out << " -";
  out << '\n';
  for (const auto& [p, v] : o.attributions) {
    out << "    " << p.to_ntriples() << ' ' << v.to_ntriples() << '\n';
  }
}

ojson inspect_json(const FdofModel& model, const Term& node) {
  const FdofObject& o = *model.find(node);
  const auto summary = classify(model, node);
  ojson j;
  j["node"] = node.to_ntriples();
  j["kinds"] = summary.kinds.names();
  j["declared_fdo"] = o.declared_fdo;
  j["gupris"] = o.gupris;
  j["identifiers"] = terms_json(o.identifier_nodes);
  j["info_types"] = terms_json(summary.info_types);
  j["materialized_by"] = terms_json(o.materialized_by);
  j["encoding_formats"] = terms_json(summary.encoding_formats);
  j["described_by"] = terms_json(o.described_by);
  auto rec = model.records.find(node);
  j["metadata_of"] =
      rec == model.records.end() ? ojson::array() : terms_json(rec->second.targets);
  j["attributions"] = ojson::array();
  for (const auto& [p, v] : o.attributions) {
    j["attributions"].push_back({{"predicate", p.to_ntriples()},
                                 {"object", v.to_ntriples()}});
  }
  return j;
}

ValidateOptions validate_options(bool strict, bool metadata_only) {
  ValidateOptions o;
  o.strict = strict;
  o.materialization_as_warning = metadata_only;
  return o;
}

std::string bind_address(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kBindEnv); env != nullptr && *env != '\0') {
    return env;
  }
  return std::string(kDefaultBind);
}

int serve(Registry& registry, const std::string& bind, std::ostream& out) {
  const BindAddress address = parse_bind(bind);
  Service service(registry);
  const int port = service.bind(address);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    service.stop();
  });

  out << "listening on " << address.host << ':' << port << " ("
      << registry.size() << " entries)" << std::endl;
  service.run();
  // run() only returns after stop(), which the waiter issues.
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return kExitOk;
}

void print_http_error(const HttpReply& reply, std::ostream& err) {
  std::string detail = reply.body;
  try {
    const auto j = ojson::parse(reply.body);
    if (j.contains("detail")) detail = j["detail"].get<std::string>();
  } catch (const std::exception&) {
  }
  err << "error: HTTP " << reply.status << ": " << detail << '\n';
}

}  // namespace

Dataset load_inputs(const std::vector<std::string>& paths) {
  Dataset merged;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::string text = read_file(paths[i]);
    Dataset ds;
    try {
      ds = parse_trig(text);
    } catch (const ParseError& e) {
      throw std::runtime_error(paths[i] + ":" + std::to_string(e.line()) + ":" +
                               std::to_string(e.column()) + ": " + e.detail());
    }
    if (paths.size() > 1) ds = rename_blank_nodes(ds, "f" + std::to_string(i) + "_");
    merged.merge(ds);
  }
  return merged;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"FAIR Digital Object toolkit"};
  app.name("fdof");
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string shapes_path;
  std::string format = "text";
  bool strict = false;
  bool metadata_only = false;
  bool force = false;
  std::string journal;
  std::string bind;
  std::string endpoint;
  std::string id;
  std::string tmpl;
  std::string agent;
  std::string object;
  std::string gupri;
  bool want_type = false;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  auto add_validation = [&](CLI::App* cmd) {
    cmd->add_option("--shapes", shapes_path, "JSON shape configuration");
    cmd->add_flag("--strict", strict, "Treat warnings as violations");
    cmd->add_flag("--metadata-only", metadata_only,
                  "Report missing materialization (C5) as a warning");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Validate TriG files");
  validate_cmd->add_option("inputs", inputs, "TriG files")->required();
  add_validation(validate_cmd);
  add_format(validate_cmd);

  auto* inspect_cmd = app.add_subcommand("inspect", "Show the objects of TriG files");
  inspect_cmd->add_option("inputs", inputs, "TriG files")->required();
  inspect_cmd->add_option("--id", id, "Node IRI, prefixed name or GUPRI");
  add_format(inspect_cmd);

  auto* mint_cmd = app.add_subcommand("mint", "Mint a GUPRI");
  mint_cmd->add_option("--template", tmpl, "URI template with one {} slot")->required();
  mint_cmd->add_option("--agent", agent, "IRI of the assigning agent")->required();
  mint_cmd->add_option("--object", object, "IRI of the identified object")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the registry service");
  serve_cmd->add_option("--journal", journal, "Journal file");
  serve_cmd->add_option("--bind", bind,
                        std::string("host:port (default: $") + kBindEnv + " or " +
                            std::string(kDefaultBind) + ")");
  add_validation(serve_cmd);

  auto* resolve_cmd = app.add_subcommand("resolve", "Resolve a GUPRI");
  resolve_cmd->add_option("gupri", gupri, "GUPRI to resolve")->required();
  auto* resolve_endpoint =
      resolve_cmd->add_option("--endpoint", endpoint, "Registry URL");
  auto* resolve_journal = resolve_cmd->add_option("--journal", journal, "Journal file");
  resolve_endpoint->excludes(resolve_journal);
  resolve_cmd->add_flag("--type", want_type, "Print the classification instead");

  auto* deposit_cmd = app.add_subcommand("deposit", "Deposit TriG files");
  deposit_cmd->add_option("inputs", inputs, "TriG files")->required();
  auto* deposit_endpoint =
      deposit_cmd->add_option("--endpoint", endpoint, "Registry URL");
  auto* deposit_journal = deposit_cmd->add_option("--journal", journal, "Journal file");
  deposit_endpoint->excludes(deposit_journal);
  deposit_cmd->add_flag("--force", force, "Skip validation");
  add_validation(deposit_cmd);

  std::vector<const char*> argv{"fdof"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    if (validate_cmd->parsed()) {
      const ShapeRegistry shapes = load_shape_file(shapes_path);
      const Dataset ds = load_inputs(inputs);
      const auto report =
          validate(extract_model(ds), shapes, validate_options(strict, metadata_only));
      out << render_report(report, format == "json" ? ReportFormat::Json
                                                    : ReportFormat::Text);
      return report.conforms() ? kExitOk : kExitFindings;
    }

    if (inspect_cmd->parsed()) {
      const Dataset ds = load_inputs(inputs);
      const FdofModel model = extract_model(ds);
      std::vector<Term> nodes;
      if (id.empty()) {
        for (const auto& [node, obj] : model.objects) {
          if (obj.is_fdo()) nodes.push_back(node);
        }
      } else {
        nodes = select_nodes(model, ds, id);
        if (nodes.empty()) {
          err << "error: unknown node or GUPRI: " << id << '\n';
          return kExitError;
        }
      }
      if (format == "json") {
        ojson list = ojson::array();
        for (const auto& n : nodes) list.push_back(inspect_json(model, n));
        out << list.dump(2) << '\n';
      } else {
        if (nodes.empty()) out << "no FAIR digital objects\n";
        for (const auto& n : nodes) inspect_text(model, n, out);
      }
      return kExitOk;
    }

    if (mint_cmd->parsed()) {
      Minter minter(IdentificationSpace::uri());
      const auto [g, provenance] = minter.mint(tmpl, agent, object);
      ojson j;
      j["gupri"] = g.value();
      j["space"] = provenance.identifier.space;
      j["object"] = provenance.object;
      j["agent"] = provenance.agent;
      j["timestamp"] = format_utc(provenance.timestamp);
      out << j.dump(2) << '\n';
      return kExitOk;
    }

    if (serve_cmd->parsed()) {
      RegistryOptions options;
      options.shapes = load_shape_file(shapes_path);
      options.validate = validate_options(strict, metadata_only);
      if (!journal.empty()) options.journal = journal;
      Registry registry(std::move(options));
      return serve(registry, bind_address(bind), out);
    }

    if (resolve_cmd->parsed()) {
      if (!endpoint.empty()) {
        RegistryClient client(endpoint);
        const auto reply = want_type ? client.describe_type(gupri) : client.resolve(gupri);
        if (reply.status == 200) {
          out << reply.body;
          return kExitOk;
        }
        print_http_error(reply, err);
        return reply.status == 404 ? kExitFindings : kExitError;
      }
      if (journal.empty()) throw UsageError("resolve needs --endpoint or --journal");
      RegistryOptions options;
      options.journal = journal;
      const Registry registry(std::move(options));
      try {
        if (want_type) {
          const auto c = registry.describe_type(gupri);
          ojson j;
          j["gupri"] = gupri;
          j["node"] = c.node.to_ntriples();
          j["kinds"] = c.kinds.names();
          j["info_types"] = terms_json(c.info_types);
          j["encoding_formats"] = terms_json(c.encoding_formats);
          out << j.dump(2) << '\n';
        } else {
          out << serialize_trig(registry.resolve(gupri).dataset);
        }
        return kExitOk;
      } catch (const NotFound& e) {
        err << "error: not found: " << e.what() << '\n';
        return kExitFindings;
      }
    }

    if (deposit_cmd->parsed()) {
      const Dataset ds = load_inputs(inputs);
      if (!endpoint.empty()) {
        RegistryClient client(endpoint);
        const auto reply = client.deposit(serialize_trig(ds), force);
        if (reply.status == 200) {
          out << reply.body;
          return kExitOk;
        }
        print_http_error(reply, err);
        return reply.status == 422 ? kExitFindings : kExitError;
      }
      if (journal.empty()) throw UsageError("deposit needs --endpoint or --journal");
      RegistryOptions options;
      options.shapes = load_shape_file(shapes_path);
      options.validate = validate_options(strict, metadata_only);
      options.journal = journal;
      Registry registry(std::move(options));
      try {
        ojson list = ojson::array();
        for (const auto& r : registry.deposit(ds, force)) {
          list.push_back({{"gupri", r.gupri}, {"etag", r.etag}});
        }
        out << list.dump(2) << '\n';
        return kExitOk;
      } catch (const DepositRejected& e) {
        err << "error: " << e.what() << '\n'
            << render_report(e.report(), ReportFormat::Text);
        return kExitFindings;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace fdof
