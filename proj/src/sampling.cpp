#include "hts/sampling.hpp"

namespace hts {

namespace {

std::vector<Coord> random_lines(std::mt19937_64& rng, int count, bool uneven) {
  std::uniform_int_distribution<int> gap(1, uneven ? 3 : 1);
  std::vector<Coord> out{Coord(0)};
  for (int i = 0; i < count; ++i) out.push_back(out.back() + gap(rng));
  return out;
}

std::vector<Coord> random_offsets(std::mt19937_64& rng, int count) {
  std::uniform_int_distribution<int> num(1, 4), den(1, 3);
  std::vector<Coord> out;
  Coord at = 0;
  for (int i = 0; i < count; ++i) {
    at += make_rational(num(rng), den(rng));
    out.push_back(at);
  }
  return out;
}

}  // namespace

HierSpec random_spec(std::mt19937_64& rng, const SpecSampler& sampler) {
  HierSpec spec;
  spec.m = sampler.m;
  spec.n = sampler.n;
  spec.p = std::uniform_int_distribution<int>(1, sampler.max_p)(rng);
  spec.q = std::uniform_int_distribution<int>(1, sampler.max_q)(rng);
  spec.x_coords = random_lines(rng, spec.p, sampler.uneven_spacing);
  spec.y_coords = random_lines(rng, spec.q, sampler.uneven_spacing);
  const int levels = std::uniform_int_distribution<int>(0, sampler.max_levels)(rng);
  std::bernoulli_distribution split(sampler.split_chance);
  for (int k = 0; k < levels; ++k) {
    HierSpec partial = spec;
    partial.script.emplace_back();
    const Hierarchy h = generate(partial);
    const auto ids = h.forest.at_level(k);
    if (ids.empty()) break;
    std::vector<Address> chosen;
    for (int id : ids) {
      if (split(rng)) chosen.push_back(h.forest.subdomains[id].address);
    }
    if (chosen.empty()) {
      const auto pick = std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng);
      chosen.push_back(h.forest.subdomains[ids[pick]].address);
    }
    spec.script.push_back(std::move(chosen));
  }
  return spec;
}

ExtensionPlacement random_placement(std::mt19937_64& rng, int m, int n, ExtensionPairing pairing) {
  const auto [vertical, horizontal] = copy_counts(m, n, pairing);
  ExtensionPlacement out;
  out.left = random_offsets(rng, vertical);
  out.right = random_offsets(rng, vertical);
  out.bottom = random_offsets(rng, horizontal);
  out.top = random_offsets(rng, horizontal);
  return out;
}

}  // namespace hts
