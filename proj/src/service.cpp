#include "fdof/service.hpp"

#include <stdexcept>

#include "fdof/trig.hpp"
#include "httplib.h"
#include "json.hpp"

namespace fdof {

using ojson = nlohmann::ordered_json;

BindAddress parse_bind(std::string_view text) {
  BindAddress out;
  std::string_view port;
  if (!text.empty() && text.front() == '[') {
    const auto close = text.find(']');
    if (close == std::string_view::npos || close + 1 >= text.size() ||
        text[close + 1] != ':') {
      throw std::invalid_argument("bad bind address: " + std::string(text));
    }
    out.host = std::string(text.substr(1, close - 1));
    port = text.substr(close + 2);
  } else {
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("bind address needs host:port: " +
                                  std::string(text));
    }
    out.host = std::string(text.substr(0, colon));
    port = text.substr(colon + 1);
  }
  if (out.host.empty()) out.host = "0.0.0.0";
  if (port.empty() || port.size() > 5 ||
      port.find_first_not_of("0123456789") != std::string_view::npos) {
    throw std::invalid_argument("bad port in bind address: " + std::string(text));
  }
  out.port = std::stoi(std::string(port));
  if (out.port > 65535) {
    throw std::invalid_argument("port out of range: " + std::string(text));
  }
  return out;
}

std::string percent_encode(std::string_view value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
        (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::string percent_decode(std::string_view value) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] != '%') {
      out.push_back(value[i]);
      continue;
    }
    if (i + 2 >= value.size()) {
      throw std::invalid_argument("truncated percent escape");
    }
    const int hi = hex(value[i + 1]);
    const int lo = hex(value[i + 2]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("bad percent escape");
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  return out;
}

namespace {

void problem(httplib::Response& res, int status, const std::string& title,
             const std::string& detail, ojson extra = ojson::object()) {
  ojson body;
  body["type"] = "about:blank";
  body["title"] = title;
  body["status"] = status;
  body["detail"] = detail;
  for (auto& [k, v] : extra.items()) body[k] = v;
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/problem+json");
}

ojson classification_json(const std::string& gupri, const ClassificationSummary& c) {
  ojson j;
  j["gupri"] = gupri;
  j["node"] = c.node.to_ntriples();
  j["kinds"] = c.kinds.names();
  j["info_types"] = ojson::array();
  for (const auto& t : c.info_types) j["info_types"].push_back(t.to_ntriples());
  j["encoding_formats"] = ojson::array();
  for (const auto& t : c.encoding_formats) {
    j["encoding_formats"].push_back(t.to_ntriples());
  }
  return j;
}

bool etag_matches(const std::string& header, const std::string& etag) {
  if (header.find('*') != std::string::npos) return true;
  const std::string quoted = "\"" + etag + "\"";
  std::size_t pos = 0;
  while (pos <= header.size()) {
    auto comma = header.find(',', pos);
    if (comma == std::string::npos) comma = header.size();
    auto item = header.substr(pos, comma - pos);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos && item.substr(b, e - b + 1) == quoted) return true;
    pos = comma + 1;
  }
  return false;
}

}  // namespace

struct Service::Impl {
  explicit Impl(Registry& r) : registry(r) {
    server.Get(R"(/fdo/[\s\S]+)", [this](const auto& req, auto& res) {
      handle_get(req, res);
    });
    server.Post("/deposit", [this](const auto& req, auto& res) {
      handle_deposit(req, res);
    });
  }

  void handle_get(const httplib::Request& req, httplib::Response& res) {
    std::string raw = req.target.substr(0, req.target.find('?'));
    raw = raw.substr(std::string_view("/fdo/").size());
    bool type = false;
    if (const auto slash = raw.find('/'); slash != std::string::npos) {
      if (raw.substr(slash) != "/type") {
        problem(res, 404, "Not Found", "no such resource");
        return;
      }
      type = true;
      raw.resize(slash);
    }
    std::string gupri;
    try {
      gupri = percent_decode(raw);
    } catch (const std::invalid_argument& e) {
      problem(res, 400, "Bad Request", e.what());
      return;
    }
    try {
      if (type) {
        res.set_content(
            classification_json(gupri, registry.describe_type(gupri)).dump(2) + "\n",
            "application/json");
        return;
      }
      const auto r = registry.resolve(gupri);
      res.set_header("ETag", "\"" + r.etag + "\"");
      if (req.has_header("If-None-Match") &&
          etag_matches(req.get_header_value("If-None-Match"), r.etag)) {
        res.status = 304;
        return;
      }
      res.set_content(serialize_trig(r.dataset), "application/trig");
    } catch (const NotFound& e) {
      problem(res, 404, "Not Found", e.what());
    } catch (const Unprocessable& e) {
      problem(res, 422, "Unprocessable Entity", e.what());
    }
  }

  void handle_deposit(const httplib::Request& req, httplib::Response& res) {
    const bool force = req.has_param("force") &&
                       (req.get_param_value("force") == "true" ||
                        req.get_param_value("force") == "1");
    try {
      const auto results = registry.deposit(parse_trig(req.body), force);
      ojson list = ojson::array();
      for (const auto& r : results) list.push_back({{"gupri", r.gupri}, {"etag", r.etag}});
      res.set_content(list.dump(2) + "\n", "application/json");
    } catch (const ParseError& e) {
      problem(res, 400, "Bad Request", e.what());
    } catch (const DepositRejected& e) {
      problem(res, 422, "Unprocessable Entity", e.what(),
              {{"report", ojson::parse(render_report(e.report(), ReportFormat::Json))}});
    } catch (const DepositConflict& e) {
      problem(res, 409, "Conflict", e.what(), {{"gupri", e.gupri()}});
    } catch (const JournalError& e) {
      problem(res, 500, "Internal Server Error", e.what());
    }
  }

  Registry& registry;
  httplib::Server server;
};

Service::Service(Registry& registry) : impl_(std::make_unique<Impl>(registry)) {}

Service::~Service() { stop(); }

int Service::bind(const BindAddress& address) {
  if (address.port == 0) {
    const int port = impl_->server.bind_to_any_port(address.host);
    if (port < 0) throw std::runtime_error("cannot bind " + address.host);
    return port;
  }
  if (!impl_->server.bind_to_port(address.host, address.port)) {
    throw std::runtime_error("cannot bind " + address.host + ":" +
                             std::to_string(address.port));
  }
  return address.port;
}

void Service::run() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_) impl_->server.stop();
}

// ---- client -----------------------------------------------------------------

RegistryClient::RegistryClient(std::string endpoint) : endpoint_(std::move(endpoint)) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
}

namespace {

HttpReply to_reply(const httplib::Result& result, const std::string& endpoint) {
  if (!result) {
    throw std::runtime_error("cannot reach " + endpoint + ": " +
                             httplib::to_string(result.error()));
  }
  HttpReply reply;
  reply.status = result->status;
  reply.body = result->body;
  reply.content_type = result->get_header_value("Content-Type");
  auto etag = result->get_header_value("ETag");
  if (etag.size() >= 2 && etag.front() == '"' && etag.back() == '"') {
    etag = etag.substr(1, etag.size() - 2);
  }
  reply.etag = etag;
  return reply;
}

httplib::Client make_client(const std::string& endpoint) {
  httplib::Client client(endpoint);
  client.set_url_encode(false);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  return client;
}

}  // namespace

HttpReply RegistryClient::get(const std::string& path,
                              const std::optional<std::string>& if_none_match) {
  auto client = make_client(endpoint_);
  httplib::Headers headers;
  if (if_none_match) headers.emplace("If-None-Match", "\"" + *if_none_match + "\"");
  return to_reply(client.Get(path, headers), endpoint_);
}

HttpReply RegistryClient::resolve(std::string_view gupri,
                                  std::optional<std::string> if_none_match) {
  return get("/fdo/" + percent_encode(gupri), if_none_match);
}

HttpReply RegistryClient::describe_type(std::string_view gupri) {
  return get("/fdo/" + percent_encode(gupri) + "/type", std::nullopt);
}

HttpReply RegistryClient::deposit(std::string_view trig, bool force) {
  auto client = make_client(endpoint_);
  return to_reply(client.Post(force ? "/deposit?force=true" : "/deposit",
                              std::string(trig), "application/trig"),
                  endpoint_);
}

}  // namespace fdof
