#include "vqelab/optimizers.hpp"
#include "recorder.hpp"

namespace vqelab::detail {

// Global-best particle swarm with constriction-style constants. Personal and
// global bests keep their first noisy value (no reevaluation), which is the
// selection-bias-prone behavior the tracking analysis studies.
void run_pso(AlgoArgs a) {
  const int d = a.obj.dimension();
  const int n = static_cast<int>(a.hp.at("population"));
  const double inertia = a.hp.at("inertia");
  const double cognitive = a.hp.at("cognitive");
  const double social = a.hp.at("social");
  const double init_lo = a.hp.at("init_lo");
  const double init_hi = a.hp.at("init_hi");

  std::vector<std::vector<double>> x(n, std::vector<double>(d));
  std::vector<std::vector<double>> v(n, std::vector<double>(d, 0.0));
  std::vector<std::vector<double>> pbest = x;
  std::vector<double> pbest_val(n, std::numeric_limits<double>::infinity());
  std::vector<double> gbest(d);
  double gbest_val = std::numeric_limits<double>::infinity();

  x[0] = a.x0;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < d; ++j) x[i][j] = a.rng.next_uniform(init_lo, init_hi);

  const double vmax = 2.0 * kParamBound;
  bool done = false;
  while (!done && a.rec.budget_left(1)) {
    a.rec.begin_iteration();
    for (int i = 0; i < n; ++i) {
      if (!a.rec.budget_left(1)) {
        done = true;
        break;
      }
      const double f = a.rec.eval(x[i]);
      if (f < pbest_val[i]) {
        pbest_val[i] = f;
        pbest[i] = x[i];
      }
      if (f < gbest_val) {
        gbest_val = f;
        gbest = x[i];
      }
    }
    a.rec.end_iteration(gbest);
    *a.final_iterate = gbest;
    if (done) break;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) {
        const double r1 = a.rng.next_double();
        const double r2 = a.rng.next_double();
        v[i][j] = inertia * v[i][j] + cognitive * r1 * (pbest[i][j] - x[i][j]) +
                  social * r2 * (gbest[j] - x[i][j]);
        v[i][j] = clip_to_bound(v[i][j], vmax);
        x[i][j] = clip_to_bound(x[i][j] + v[i][j], kParamBound);
      }
    }
  }
}

}  // namespace vqelab::detail
