#include "flipgraph/error.hpp"

namespace flipgraph {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidSignature: return "InvalidSignature";
    case ErrorKind::MalformedTriangulation: return "MalformedTriangulation";
    case ErrorKind::NoTriangulation: return "NoTriangulation";
    case ErrorKind::NotFlippable: return "NotFlippable";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::SameArc: return "SameArc";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::InsufficientRadius: return "InsufficientRadius";
    case ErrorKind::Contradiction: return "Contradiction";
    case ErrorKind::ConfigNotFound: return "ConfigNotFound";
    case ErrorKind::ProjectionUndefined: return "ProjectionUndefined";
    case ErrorKind::KeyCollision: return "KeyCollision";
    case ErrorKind::Precondition: return "Precondition";
  }
  return "Error";
}

}  // namespace flipgraph
