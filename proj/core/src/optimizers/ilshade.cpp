#include <algorithm>
#include <numeric>

#include "vqelab/optimizers.hpp"
#include "recorder.hpp"

namespace vqelab::detail {

// iL-SHADE: success-history adaptation of F and CR (weighted Lehmer means,
// last memory slot frozen at 0.9/0.9), current-to-pbest/1 mutation with an
// external archive, linear population-size reduction NP0 -> 4 over the FE
// budget, p shrinking from p_max to p_min, and early-phase caps on F and CR.
void run_ilshade(AlgoArgs a) {
  const int d = a.obj.dimension();
  int np = static_cast<int>(a.hp.at("population"));
  const int np_min = 4;
  const int np0 = np;
  const int h_size = static_cast<int>(a.hp.at("memory"));
  const double p_max = a.hp.at("p_max");
  const double p_min = a.hp.at("p_min");
  const double init_lo = a.hp.at("init_lo");
  const double init_hi = a.hp.at("init_hi");
  const std::int64_t budget = a.rec.remaining() + a.rec.used();

  std::vector<std::vector<double>> pop(np, std::vector<double>(d));
  std::vector<double> fit(np, std::numeric_limits<double>::infinity());
  pop[0] = a.x0;
  for (int i = 1; i < np; ++i)
    for (int j = 0; j < d; ++j) pop[i][j] = a.rng.next_uniform(init_lo, init_hi);

  std::vector<double> mem_f(h_size, 0.8), mem_cr(h_size, 0.8);
  mem_f[h_size - 1] = 0.9;  // frozen slot
  mem_cr[h_size - 1] = 0.9;
  int mem_pos = 0;
  std::vector<std::vector<double>> archive;

  a.rec.begin_iteration();
  int evaluated = 0;
  int best = 0;
  for (int i = 0; i < np && a.rec.budget_left(1); ++i) {
    fit[i] = a.rec.eval(pop[i]);
    if (fit[i] < fit[best]) best = i;
    ++evaluated;
  }
  a.rec.end_iteration(pop[best]);
  *a.final_iterate = pop[best];
  if (evaluated < np) return;

  std::vector<int> order(np);
  std::vector<double> trial(d);
  while (a.rec.budget_left(1)) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return fit[i] < fit[j]; });

    const double progress =
        static_cast<double>(a.rec.used()) / static_cast<double>(std::max<std::int64_t>(budget, 1));
    const double p_now = p_max - (p_max - p_min) * progress;
    const int n_pbest = std::max(2, static_cast<int>(p_now * np));

    std::vector<double> s_f, s_cr, s_w;
    std::vector<std::vector<double>> next_pop = pop;
    std::vector<double> next_fit = fit;

    a.rec.begin_iteration();
    bool exhausted = false;
    for (int i = 0; i < np; ++i) {
      if (!a.rec.budget_left(1)) {
        exhausted = true;
        break;
      }
      const int r = static_cast<int>(a.rng.next_below(h_size));
      double cr = mem_cr[r] < 0.0 ? 0.0 : mem_cr[r] + 0.1 * a.rng.next_normal();
      cr = std::clamp(cr, 0.0, 1.0);
      double f = 0.0;
      do {
        f = mem_f[r] + 0.1 * a.rng.next_cauchy();
      } while (f <= 0.0);
      f = std::min(f, 1.0);
      if (progress < 0.25) {
        cr = std::max(cr, 0.5);
        f = std::min(f, 0.7);
      } else if (progress < 0.5) {
        cr = std::max(cr, 0.25);
        f = std::min(f, 0.8);
      } else if (progress < 0.75) {
        f = std::min(f, 0.9);
      }

      const int pbest = order[static_cast<int>(a.rng.next_below(n_pbest))];
      int r1 = i;
      while (r1 == i) r1 = static_cast<int>(a.rng.next_below(np));
      const int pool = np + static_cast<int>(archive.size());
      int r2 = i;
      while (r2 == i || r2 == r1) r2 = static_cast<int>(a.rng.next_below(pool));
      const std::vector<double>& x_r2 = r2 < np ? pop[r2] : archive[r2 - np];

      const int jrand = static_cast<int>(a.rng.next_below(d));
      for (int j = 0; j < d; ++j) {
        if (j == jrand || a.rng.next_double() < cr) {
          trial[j] = pop[i][j] + f * (pop[pbest][j] - pop[i][j]) + f * (pop[r1][j] - x_r2[j]);
          trial[j] = clip_to_bound(trial[j], kParamBound);
        } else {
          trial[j] = pop[i][j];
        }
      }

      const double ft = a.rec.eval(trial);
      if (ft <= fit[i]) {
        if (ft < fit[i]) {
          archive.push_back(pop[i]);
          s_f.push_back(f);
          s_cr.push_back(cr);
          s_w.push_back(fit[i] - ft);
        }
        next_pop[i] = trial;
        next_fit[i] = ft;
      }
    }
    pop = std::move(next_pop);
    fit = std::move(next_fit);

    best = 0;
    for (int i = 1; i < np; ++i)
      if (fit[i] < fit[best]) best = i;
    a.rec.end_iteration(pop[best]);
    *a.final_iterate = pop[best];
    if (exhausted) break;

    // Success-history memory update (weighted Lehmer means, averaged with the
    // previous entry; frozen last slot untouched).
    if (!s_f.empty()) {
      const double wtot = std::accumulate(s_w.begin(), s_w.end(), 0.0);
      double f_num = 0.0, f_den = 0.0, cr_num = 0.0, cr_den = 0.0;
      for (std::size_t k = 0; k < s_f.size(); ++k) {
        const double w = s_w[k] / wtot;
        f_num += w * s_f[k] * s_f[k];
        f_den += w * s_f[k];
        cr_num += w * s_cr[k] * s_cr[k];
        cr_den += w * s_cr[k];
      }
      mem_f[mem_pos] = 0.5 * (mem_f[mem_pos] + f_num / f_den);
      if (cr_den <= 1e-12 || mem_cr[mem_pos] < 0.0) {
        mem_cr[mem_pos] = -1.0;  // terminal value
      } else {
        mem_cr[mem_pos] = 0.5 * (mem_cr[mem_pos] + cr_num / cr_den);
      }
      mem_pos = (mem_pos + 1) % (h_size - 1);
    }

    // Linear population-size reduction against the FE budget.
    const int np_target = std::max(
        np_min, static_cast<int>(std::lround(
                    np0 - (static_cast<double>(np0 - np_min)) *
                              static_cast<double>(a.rec.used()) / static_cast<double>(budget))));
    while (np > np_target) {
      int worst = 0;
      for (int i = 1; i < np; ++i)
        if (fit[i] > fit[worst]) worst = i;
      pop.erase(pop.begin() + worst);
      fit.erase(fit.begin() + worst);
      --np;
    }
    while (static_cast<int>(archive.size()) > np) {
      const std::size_t victim = a.rng.next_below(archive.size());
      archive.erase(archive.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    best = 0;
    for (int i = 1; i < np; ++i)
      if (fit[i] < fit[best]) best = i;
  }
}

}  // namespace vqelab::detail
