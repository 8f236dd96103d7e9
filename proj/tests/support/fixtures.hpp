#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fdof/dataset.hpp"
#include "fdof/shapes.hpp"

namespace fdof::testing {

// Namespace of the Amazon example.
inline constexpr std::string_view kEx = "https://w3id.org/fdof/fois23-paper/ex1/";
inline constexpr std::string_view kDct = "http://purl.org/dc/terms/";

Term ex(std::string_view local);

std::string fixture_path(std::string_view relative);
std::string read_text(const std::string& path);

// The three documents of the example: identifier, record and media objects.
std::vector<std::string> example_paths();
// The example documents plus the record describing the two media objects.
std::vector<std::string> corpus_paths();
std::string shapes_path();

Dataset example_dataset();
Dataset corpus_dataset();
ShapeRegistry example_shapes();

// Copy of ds without the quads matching s/p/o; empty fields match anything.
Dataset without(const Dataset& ds, std::string_view subject,
                std::string_view predicate, std::string_view object = {});

}  // namespace fdof::testing
