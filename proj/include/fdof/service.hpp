#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdof/registry.hpp"

namespace fdof {

// Environment variable holding the default bind address (host:port).
inline constexpr const char* kBindEnv = "FDOF_BIND";
inline constexpr std::string_view kDefaultBind = "127.0.0.1:8080";

struct BindAddress {
  std::string host;
  int port = 0;
};

// Accepts "host:port", "[v6]:port" or ":port". Throws std::invalid_argument.
BindAddress parse_bind(std::string_view text);

std::string percent_encode(std::string_view value);
// Throws std::invalid_argument on malformed escapes.
std::string percent_decode(std::string_view value);

// HTTP front end of a Registry:
//   GET  /fdo/{pct-encoded gupri}        metadata record, application/trig
//   GET  /fdo/{pct-encoded gupri}/type   classification, application/json
//   POST /deposit[?force=true]           TriG body, json list of {gupri, etag}
// Errors carry application/problem+json bodies.
class Service {
 public:
  explicit Service(Registry& registry);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds the socket and returns the bound port (port 0 picks a free one).
  int bind(const BindAddress& address);
  // Serves until stop(); call after bind().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct HttpReply {
  int status = 0;
  std::string body;
  std::string content_type;
  std::string etag;  // unquoted
};

// Minimal client for the service. endpoint is "http://host:port".
class RegistryClient {
 public:
  explicit RegistryClient(std::string endpoint);

  HttpReply resolve(std::string_view gupri,
                    std::optional<std::string> if_none_match = std::nullopt);
  HttpReply describe_type(std::string_view gupri);
  HttpReply deposit(std::string_view trig, bool force = false);

 private:
  HttpReply get(const std::string& path,
                const std::optional<std::string>& if_none_match);

  std::string endpoint_;
};

}  // namespace fdof
