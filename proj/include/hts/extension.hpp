#pragma once

// Extended T-meshes: boundary lines copied outward and every segment that
// ends on the boundary continued straight through the copies.

#include <optional>
#include <string_view>
#include <vector>

#include "hts/mesh.hpp"

namespace hts {

enum class ExtensionPairing {
  VerticalM,  // vertical boundary lines copied m times, horizontal ones n times
  Literal,    // horizontal boundary lines copied m times, vertical ones n times
};

std::string_view to_string(ExtensionPairing pairing);
ExtensionPairing parse_pairing(std::string_view text);

/// Outward distances of the copied lines from the boundary line they copy,
/// strictly increasing and positive. Each list must have as many entries as
/// copies on that side.
struct ExtensionPlacement {
  std::vector<Coord> left, right, bottom, top;
};

struct ExtensionOptions {
  ExtensionPairing pairing = ExtensionPairing::VerticalM;
  std::optional<ExtensionPlacement> placement;  // default: uniform spacing, see extend()
};

/// Number of copies of each vertical and horizontal boundary line.
std::pair<int, int> copy_counts(int m, int n, ExtensionPairing pairing);

/// Default placement puts copies at multiples of the smallest cell side of the
/// mesh. Copies carry provenance BoundaryCopy and level 0; segments that were
/// extended carry provenance Extension unless they are boundary lines.
TMesh extend(const TMesh& mesh, int m, int n, const ExtensionOptions& options = {});

}  // namespace hts
