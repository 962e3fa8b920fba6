#include "vqelab/optimizers.hpp"
#include "recorder.hpp"

namespace vqelab::detail {

// DE/best/1/bin with fixed F and CR. Greedy one-to-one selection against the
// stored (noisy) parent value; the best individual anchors every mutation.
void run_de_best1bin(AlgoArgs a) {
  const int d = a.obj.dimension();
  const int n = static_cast<int>(a.hp.at("population"));
  const double f_weight = a.hp.at("f");
  const double cr = a.hp.at("cr");
  const double init_lo = a.hp.at("init_lo");
  const double init_hi = a.hp.at("init_hi");

  std::vector<std::vector<double>> pop(n, std::vector<double>(d));
  std::vector<double> fit(n, std::numeric_limits<double>::infinity());
  pop[0] = a.x0;
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < d; ++j) pop[i][j] = a.rng.next_uniform(init_lo, init_hi);

  int best = 0;
  a.rec.begin_iteration();
  int evaluated = 0;
  for (int i = 0; i < n && a.rec.budget_left(1); ++i) {
    fit[i] = a.rec.eval(pop[i]);
    if (fit[i] < fit[best]) best = i;
    ++evaluated;
  }
  a.rec.end_iteration(pop[best]);
  *a.final_iterate = pop[best];
  if (evaluated < n) return;

  std::vector<double> trial(d);
  while (a.rec.budget_left(1)) {
    a.rec.begin_iteration();
    bool exhausted = false;
    for (int i = 0; i < n; ++i) {
      if (!a.rec.budget_left(1)) {
        exhausted = true;
        break;
      }
      int r1 = i, r2 = i;
      while (r1 == i) r1 = static_cast<int>(a.rng.next_below(n));
      while (r2 == i || r2 == r1) r2 = static_cast<int>(a.rng.next_below(n));
      const int jrand = static_cast<int>(a.rng.next_below(d));
      for (int j = 0; j < d; ++j) {
        if (j == jrand || a.rng.next_double() < cr) {
          trial[j] = pop[best][j] + f_weight * (pop[r1][j] - pop[r2][j]);
          trial[j] = clip_to_bound(trial[j], kParamBound);
        } else {
          trial[j] = pop[i][j];
        }
      }
      const double ft = a.rec.eval(trial);
      if (ft <= fit[i]) {
        pop[i] = trial;
        fit[i] = ft;
        if (ft < fit[best]) best = i;
      }
    }
    a.rec.end_iteration(pop[best]);
    *a.final_iterate = pop[best];
    if (exhausted) break;
  }
}

}  // namespace vqelab::detail
