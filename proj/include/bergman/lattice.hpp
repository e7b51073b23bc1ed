#pragma once

#include <string>
#include <vector>

#include "bergman/ball.hpp"

namespace bergman {

// Covering lattice {a_k} for the Bergman metric: every point of the
// rmax-ball lies within Bergman distance r of the lattice, while distinct
// lattice points stay at least r/2 apart (so quarter-radius balls are
// disjoint and overlap multiplicities stay bounded).
struct Lattice {
  std::vector<Point> points;
  double r = 0.0;      // covering radius in the Bergman metric
  double rmax = 0.0;   // Euclidean truncation radius of the covered ball
  int n = 1;
  std::string strategy;  // "radial-shell" or "greedy"
  uint64_t seed = 0;     // greedy candidate pool seed
};

enum class LatticeStrategy { RadialShell, Greedy };

// Deterministic radial-shell construction (n = 1): shells equally spaced in
// Bergman radius with angularly equispaced staggered points.  Greedy (any n):
// maximal r/2-separated subset of a seeded hyperbolic-density candidate pool;
// throws if the pool cannot resolve the requested r.
Lattice generate_lattice(int n, double r, double rmax, LatticeStrategy strategy,
                         uint64_t seed = 1);

struct LatticeReport {
  size_t count = 0;
  double min_separation = 0.0;  // min pairwise Bergman distance
  double covering_gap = 0.0;    // max over samples of distance to the lattice
  size_t uncovered = 0;         // samples with distance >= r
  int max_overlap = 0;          // max multiplicity of the 4r-balls
  double mean_overlap = 0.0;
  long samples = 0;
  uint64_t seed = 0;
};

// Monte Carlo verification over the rmax-ball (samples drawn uniformly in
// Bergman radius, uniform direction, so the boundary region is probed hard).
LatticeReport verify_lattice(const Lattice& lat, long samples, uint64_t seed);

std::string lattice_to_json(const Lattice& lat, const LatticeReport* report = nullptr);
Lattice lattice_from_json(const std::string& text);

}  // namespace bergman
