#pragma once

#include <string_view>

// Fixed IRIs of the FDOF ontology and the handful of RDF/RDFS terms the
// toolkit interprets.
namespace fdof::vocab {

inline constexpr std::string_view kFdofNamespace =
    "https://w3id.org/fdof/ontology#";

inline constexpr std::string_view kFairDigitalObject =
    "https://w3id.org/fdof/ontology#FAIRDigitalObject";
inline constexpr std::string_view kFairDigitalInformationObject =
    "https://w3id.org/fdof/ontology#FAIRDigitalInformationObject";
inline constexpr std::string_view kFairDigitalMediaObject =
    "https://w3id.org/fdof/ontology#FAIRDigitalMediaObject";
inline constexpr std::string_view kFairMetadataRecord =
    "https://w3id.org/fdof/ontology#FAIRMetadataRecord";
inline constexpr std::string_view kIdentifier =
    "https://w3id.org/fdof/ontology#Identifier";

inline constexpr std::string_view kGupri =
    "https://w3id.org/fdof/ontology#gupri";
inline constexpr std::string_view kIsIdentifiedBy =
    "https://w3id.org/fdof/ontology#isIdentifiedBy";
inline constexpr std::string_view kIsMetadataOf =
    "https://w3id.org/fdof/ontology#isMetadataOf";
inline constexpr std::string_view kIsMaterializedBy =
    "https://w3id.org/fdof/ontology#isMaterializedBy";
inline constexpr std::string_view kHasEncodingFormat =
    "https://w3id.org/fdof/ontology#hasEncodingFormat";
inline constexpr std::string_view kHasInformationObjectType =
    "https://w3id.org/fdof/ontology#hasInformationObjectType";

inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsSubClassOf =
    "http://www.w3.org/2000/01/rdf-schema#subClassOf";

inline constexpr std::string_view kClasses[] = {
    kFairDigitalObject, kFairDigitalInformationObject, kFairDigitalMediaObject,
    kFairMetadataRecord, kIdentifier};

inline constexpr std::string_view kProperties[] = {
    kGupri,          kIsIdentifiedBy,   kIsMetadataOf,
    kIsMaterializedBy, kHasEncodingFormat, kHasInformationObjectType};

constexpr bool is_fdof_class(std::string_view iri) {
  for (auto c : kClasses) {
    if (c == iri) return true;
  }
  return false;
}

constexpr bool is_fdof_property(std::string_view iri) {
  for (auto p : kProperties) {
    if (p == iri) return true;
  }
  return false;
}

}  // namespace fdof::vocab
