#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fdof/cli.hpp"

namespace fdof::testing {

Term ex(std::string_view local) { return Term::iri(std::string(kEx) + std::string(local)); }

std::string fixture_path(std::string_view relative) {
  return std::string(FDOF_FIXTURE_DIR) + "/" + std::string(relative);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> example_paths() {
  return {fixture_path("example/identifier.trig"), fixture_path("example/record.trig"),
          fixture_path("example/media.trig")};
}

std::vector<std::string> corpus_paths() {
  auto paths = example_paths();
  paths.push_back(fixture_path("distributions.trig"));
  return paths;
}

std::string shapes_path() { return fixture_path("shapes.json"); }

Dataset example_dataset() { return load_inputs(example_paths()); }
Dataset corpus_dataset() { return load_inputs(corpus_paths()); }
ShapeRegistry example_shapes() { return load_shapes(read_text(shapes_path())); }

Dataset without(const Dataset& ds, std::string_view subject,
                std::string_view predicate, std::string_view object) {
  return ds.filter([&](const Quad& q) {
    const bool match = (subject.empty() || q.subject.value() == subject) &&
                       (predicate.empty() || q.predicate.value() == predicate) &&
                       (object.empty() || q.object.value() == object);
    return !match;
  });
}

}  // namespace fdof::testing
