#include "recorder.hpp"

namespace vqelab::detail {

// Fixed-step steepest descent x <- x - eta * grad. The step size eta is the
// knob the stability experiments sweep against 2/L.
void run_gd(AlgoArgs a) {
  const double eta = a.hp.at("eta");
  const double fd_step = a.hp.at("fd_step");
  const int d = a.obj.dimension();
  std::vector<double> x = a.x0;
  while (a.rec.budget_left(2 * d)) {
    a.rec.begin_iteration();
    const std::vector<double> g = recorded_gradient(a.rec, a.obj, x, fd_step);
    for (int j = 0; j < d; ++j) x[j] -= eta * g[j];
    a.rec.end_iteration(x);
    bool finite = true;
    for (double v : x) finite = finite && std::isfinite(v);
    if (!finite) throw DivergenceAbort{};
  }
  *a.final_iterate = x;
}

}  // namespace vqelab::detail
