#include <functional>

#include "gricci/scenario.hpp"

namespace gricci::scenario {

namespace {

struct Entry {
  PresetInfo info;
  std::function<ScenarioConfig()> make;
};

ScenarioConfig base(const std::string& name, int n, double lambda, double k_sin, double t_end, double interval,
                    std::vector<Suite> suites) {
  ScenarioConfig c;
  c.name = name;
  c.n_nodes = n;
  c.lambda = lambda;
  if (k_sin != 0.0) c.k_per.sin = {k_sin};
  c.flow.t_end = t_end;
  c.flow.checkpoint_interval = interval;
  c.suites = std::move(suites);
  c.out_dir = "out/" + name;
  return c;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {{"flat_torus", "k = u = f = 0 on n=64 to t=10; the global fixed point, every suite"},
       [] {
         auto c = base("flat_torus", 64, 0.0, 0.0, 10.0, 1.0, all_suites());
         c.tolerances.monotonicity_residual = 1e-10;
         c.tolerances.harnack_residual = 1e-10;
         c.tolerances.steady = 1e-10;
         c.expected_steady_kind = "FlatTorus";
         return c;
       }},
      {{"twisted", "λ=1, k_per=0.3 sin 2πy, n=128 to t=100; gradient envelopes and H decay"},
       [] {
         auto c = base("twisted", 128, 1.0, 0.3, 100.0, 0.1,
                       {Suite::max_principle, Suite::blowdown, Suite::steady_classify});
         c.expected_steady_kind = "HyperbolicCuspNormalized";
         return c;
       }},
      {{"twisted_blowdown", "λ=1, k_per=0.3 sin 2πy, n=128 to t=200; rescaled limit of g/t"},
       [] {
         auto c = base("twisted_blowdown", 128, 1.0, 0.3, 200.0, 1.0, {Suite::blowdown, Suite::steady_classify});
         c.expected_steady_kind = "HyperbolicCuspNormalized";
         return c;
       }},
      {{"monotonicity", "λ=0, k_per=0.2 sin 2πy, n=128, Δt=1e-3 to t=2; F identity, λ, Harnack"},
       [] {
         return base("monotonicity", 128, 0.0, 0.2, 2.0, 1e-3, {Suite::monotonicity, Suite::lambda, Suite::harnack});
       }},
      {{"monotonicity_twisted", "λ=1, k_per=0.3 sin 2πy, n=128, Δt=1e-3 to t=2; F identity on t >= 0.5"},
       [] {
         auto c = base("monotonicity_twisted", 128, 1.0, 0.3, 2.0, 1e-3, {Suite::monotonicity, Suite::lambda});
         c.tolerances.monotonicity_t_min = 0.5;
         return c;
       }},
      {{"uniqueness", "λ=0.5, k_per=0.2 sin 2πy, n=128 to t=1; energy between refined and perturbed runs"},
       [] { return base("uniqueness", 128, 0.5, 0.2, 1.0, 0.05, {Suite::uniqueness}); }},
      {{"cusp", "k = y, u = 0 on n=32 to t=1; constant curvature throughout"},
       [] {
         auto c = base("cusp", 32, 1.0, 0.0, 1.0, 0.1, {Suite::lambda, Suite::max_principle, Suite::steady_classify});
         c.expected_steady_kind = "HyperbolicCuspNormalized";
         return c;
       }},
  };
  return list;
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> infos = [] {
    std::vector<PresetInfo> v;
    for (const Entry& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

ScenarioConfig preset(std::string_view name) {
  for (const Entry& e : entries()) {
    if (e.info.name == name) return e.make();
  }
  throw ConfigError("preset", "unknown preset \"" + std::string(name) + "\"");
}

}  // namespace gricci::scenario
