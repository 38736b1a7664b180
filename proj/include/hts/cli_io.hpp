#pragma once

// Text formats, SVG output and the command-line driver.
//
// Mesh documents:
//
//   hts-mesh 1
//   degree 3 3
//   pairing vertical-m
//   kind hierarchy            (or: kind segments)
//   size 5 6                  hierarchy: cell counts p q
//   x 0 1 2 3 4 5             hierarchy, optional: p + 1 line coordinates
//   y 0 1 2 3 4 5 6
//   level 0 2,0 1,1           hierarchy: blocks split at that level
//   extension 1               segments: extension depth
//   h 3/2 0 5 1 original      segments: y x0 x1 [level|-] [provenance]
//   v 2 0 6 - copy            segments: x y0 y1 [level|-] [provenance]
//   end
//
// Vector documents list conformality factors by vertex position:
//
//   hts-vectors 1
//   degree 3 3
//   count 2
//   vector 0 level 1 label A4 window 0 alpha 1 corrected 0
//   k 1/2 3 -4
//   end
//
// Blank lines and text after '#' are ignored. Rationals are written as n or
// n/d, never as decimals.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hts/basis.hpp"
#include "hts/extension.hpp"
#include "hts/hierarchy.hpp"
#include "hts/mesh.hpp"

namespace hts {

struct MeshDocument {
  int m = 3;
  int n = 3;
  ExtensionPairing pairing = ExtensionPairing::VerticalM;
  std::optional<HierSpec> spec;  // set for kind hierarchy
  std::vector<Segment> segments;  // kind segments
  int extension_depth = 0;

  bool hierarchical() const { return spec.has_value(); }
};

/// Errors: SyntaxError with "line N:" in the message, SemanticError for
/// documents that parse but describe no valid mesh (bad addresses, dangling
/// or overlapping segments, non-rectangular boundary).
MeshDocument parse_mesh(std::string_view text);
std::string serialize(const MeshDocument& doc);

MeshDocument document_of(const HierSpec& spec, ExtensionPairing pairing = ExtensionPairing::VerticalM);
MeshDocument document_of(const TMesh& mesh, int m, int n, ExtensionPairing pairing = ExtensionPairing::VerticalM);

/// The mesh a document describes, and the hierarchy for kind hierarchy.
/// Errors: SemanticError.
TMesh mesh_of(const MeshDocument& doc);
Hierarchy hierarchy_of(const MeshDocument& doc);

struct VectorRecord {
  PointFactors factors;
  std::map<std::string, std::string> info;  // key/value pairs of the vector line
};

struct VectorDocument {
  int m = 3;
  int n = 3;
  std::vector<VectorRecord> vectors;
};

VectorDocument parse_vectors(std::string_view text);
std::string serialize(const VectorDocument& doc);
VectorDocument document_of(const std::vector<BasisFn>& fns, int m, int n);

struct RenderOptions {
  bool color_levels = false;
  std::vector<std::pair<Segment, std::string>> labels;  // drawn at segment midpoints
  std::vector<Rect> supports;                           // shaded rectangles
  double width = 640;                                   // pixels, height follows the aspect ratio
};

/// SVG 1.1; one line element per mesh edge. Byte-identical for equal input.
std::string render_svg(const TMesh& mesh, const RenderOptions& options = {});

/// Stroke color used for a level tag by render_svg.
std::string_view level_color(std::optional<int> level);

/// Runs one command; returns 0 when every requested check passes, 1 when a
/// check fails, 2 on input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hts
