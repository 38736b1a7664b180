#pragma once

// Random hierarchical meshes and extension placements for sweeps.

#include <random>

#include "hts/extension.hpp"
#include "hts/hierarchy.hpp"

namespace hts {

struct SpecSampler {
  int m = 3;
  int n = 3;
  int max_p = 8;
  int max_q = 8;
  int max_levels = 3;          // refinement levels in the script
  double split_chance = 0.35;  // per block
  bool uneven_spacing = true;  // integer gaps in 1..3 instead of unit spacing
};

/// Every level of the script splits at least one block when any exist.
HierSpec random_spec(std::mt19937_64& rng, const SpecSampler& sampler);

/// Offsets are random positive rationals, increasing on each side.
ExtensionPlacement random_placement(std::mt19937_64& rng, int m, int n, ExtensionPairing pairing);

}  // namespace hts
