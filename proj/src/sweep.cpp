#include "equidist/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace equidist {

void SweepConfig::validate() const {
  if (degen.has_value() == special.has_value()) throw std::invalid_argument("sweep needs exactly one source");
  if (samples < 2) throw std::invalid_argument("sweep needs at least 2 samples");
  if (!(radius > 0) || !std::isfinite(radius)) throw std::invalid_argument("sweep radius must be positive");
  grid.validate();
}

Mesh sweep_mesh(const SweepConfig& cfg, double p, double q) {
  if (cfg.degen) return extract_degen(*cfg.degen, p, q, cfg.grid);
  SpecialFamily f = *cfg.special;
  f.p = p;
  f.q = q;
  if (std::abs(q) > kSpecialQLimit) throw std::invalid_argument("|q| exceeds the local limit 1");
  return evaluate_special(f, cfg.grid);
}

SweepResult sweep(const SweepConfig& cfg) {
  cfg.validate();
  const int n = cfg.samples;
  SweepResult r;
  r.samples.resize(n);
  std::vector<Mesh> meshes(n);
  std::vector<std::string> errors(n);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i; (i = next++) < n;) {
      double th = cfg.phase + 2 * std::numbers::pi * i / n;
      SweepSample& s = r.samples[i];
      s.index = i;
      s.p = cfg.p0 + cfg.radius * std::cos(th);
      s.q = cfg.q0 + cfg.radius * std::sin(th);
      try {
        Mesh m = sweep_mesh(cfg, s.p, s.q);
        s.cusp_edges = m.count(FeatureKind::CuspEdge);
        s.self_int = m.count(FeatureKind::SelfIntersection);
        s.cusp_window = m.window_crossings(FeatureKind::CuspEdge);
        s.si_window = m.window_crossings(FeatureKind::SelfIntersection);
        if (cfg.store_meshes) meshes[i] = std::move(m);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  int t = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  t = std::min(t, n);
  if (t <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < t; ++k) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("sweep sample failed: " + e);
  if (cfg.store_meshes) r.meshes = std::move(meshes);

  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    const auto &a = r.samples[i], &b = r.samples[j];
    auto add = [&](FeatureKind k, int x, int y) {
      if (x == y) return;
      Transition tr{i, j, k, x, y, {}};
      if (auto it = cfg.annotations.find(j); it != cfg.annotations.end()) tr.annotation = it->second;
      r.transitions.push_back(tr);
    };
    add(FeatureKind::CuspEdge, a.cusp_edges, b.cusp_edges);
    add(FeatureKind::SelfIntersection, a.self_int, b.self_int);
  }
  return r;
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c == '\n' ? ' ' : c;
  }
  return o + '"';
}
}  // namespace

std::string transition_log(const SweepResult& r) {
  std::ostringstream os;
  os << "from,to,p_from,q_from,p_to,q_to,kind,before,after,annotation\n";
  for (const auto& t : r.transitions) {
    const auto &a = r.samples[t.from], &b = r.samples[t.to];
    os << t.from << ',' << t.to << ',' << fmt17(a.p) << ',' << fmt17(a.q) << ',' << fmt17(b.p) << ',' << fmt17(b.q) << ','
       << feature_kind_name(t.kind) << ',' << t.before << ',' << t.after << ',' << csv_field(t.annotation) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "index,p,q,cusp_edges,self_int,cusp_window,si_window\n";
  for (const auto& s : r.samples)
    os << s.index << ',' << fmt17(s.p) << ',' << fmt17(s.q) << ',' << s.cusp_edges << ',' << s.self_int << ',' << s.cusp_window << ','
       << s.si_window << '\n';
  return os.str();
}

}  // namespace equidist
