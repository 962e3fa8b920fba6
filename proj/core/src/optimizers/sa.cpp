#include "vqelab/optimizers.hpp"
#include "recorder.hpp"

namespace vqelab::detail {

// Simulated annealing with per-coordinate Cauchy proposals scaled by the
// temperature, geometric cooling, and Metropolis acceptance on noisy values.
void run_sa_cauchy(AlgoArgs a) {
  const double t0 = a.hp.at("t0");
  const double cooling = a.hp.at("cooling");
  const double tmin = a.hp.at("tmin");
  const double step_scale = a.hp.at("step_scale");
  const int d = a.obj.dimension();

  std::vector<double> x = a.x0;
  a.rec.begin_iteration();
  double fx = a.rec.eval(x);
  a.rec.end_iteration(x);

  std::vector<double> cand(d);
  double temp = t0;
  while (a.rec.budget_left(1)) {
    for (int j = 0; j < d; ++j)
      cand[j] = clip_to_bound(x[j] + step_scale * temp * a.rng.next_cauchy(), kParamBound);
    a.rec.begin_iteration();
    const double fc = a.rec.eval(cand);
    const double delta = fc - fx;
    if (delta <= 0.0 || a.rng.next_double() < std::exp(-delta / std::max(temp, tmin))) {
      x = cand;
      fx = fc;
    }
    a.rec.end_iteration(x);
    *a.final_iterate = x;
    temp = std::max(temp * cooling, tmin);
  }
}

}  // namespace vqelab::detail
