#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equidist/mesh.hpp"
#include "equidist/special12.hpp"

namespace equidist {

// A circuit of (p, q) samples around (p0, q0).
struct SweepConfig {
  std::optional<DegenNormalForm> degen;
  std::optional<SpecialFamily> special;  // p, q of the family are overridden per sample
  double p0 = 0, q0 = 0, radius = 0.05;
  int samples = 24;
  double phase = 0;  // angle of sample 0
  GridSpec grid;
  // free text attached to the transition arriving at a sample index; never generated
  std::map<int, std::string> annotations;
  bool store_meshes = false;
  int threads = 0;  // 0: hardware concurrency
  void validate() const;  // throws std::invalid_argument
};

struct SweepSample {
  int index = 0;
  double p = 0, q = 0;
  int cusp_edges = 0, self_int = 0;
  int cusp_window = 0, si_window = 0;  // open ends on the window boundary
};

struct Transition {
  int from = 0, to = 0;
  FeatureKind kind = FeatureKind::CuspEdge;
  int before = 0, after = 0;
  std::string annotation;
};

struct SweepResult {
  std::vector<SweepSample> samples;
  std::vector<Transition> transitions;
  std::vector<Mesh> meshes;  // filled when store_meshes
};

SweepResult sweep(const SweepConfig& cfg);
Mesh sweep_mesh(const SweepConfig& cfg, double p, double q);
std::string transition_log(const SweepResult& r);
std::string sweep_csv(const SweepResult& r);

}  // namespace equidist
