#include <algorithm>
#include <numeric>

#include "recorder.hpp"

namespace vqelab::detail {

// Standard reflect/expand/contract/shrink simplex with coefficients
// (1, 2, 0.5, 0.5); initial simplex edge along each coordinate.
void run_nelder_mead(AlgoArgs a) {
  const double edge = a.hp.at("edge");
  const double alpha = a.hp.at("alpha");
  const double gamma = a.hp.at("gamma");
  const double rho = a.hp.at("rho");
  const double sigma = a.hp.at("sigma");
  const int d = a.obj.dimension();
  const int n_vertices = d + 1;

  std::vector<std::vector<double>> simplex(n_vertices, a.x0);
  std::vector<double> values(n_vertices);
  if (!a.rec.budget_left(n_vertices)) {
    a.rec.begin_iteration();
    if (a.rec.budget_left(1)) a.rec.eval(a.x0);
    a.rec.end_iteration(a.x0);
    *a.final_iterate = a.x0;
    return;
  }
  a.rec.begin_iteration();
  for (int i = 1; i < n_vertices; ++i) simplex[i][i - 1] += edge;
  for (int i = 0; i < n_vertices; ++i) values[i] = a.rec.eval(simplex[i]);
  a.rec.end_iteration(simplex[0]);

  std::vector<int> order(n_vertices);
  std::vector<double> centroid(d), xr(d), xe(d), xc(d);
  while (a.rec.budget_left(1)) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return values[i] < values[j]; });
    const int best = order[0];
    const int worst = order[n_vertices - 1];
    const int second_worst = order[n_vertices - 2];

    // Degenerate simplex: value spread and edge lengths both collapsed.
    double spread = values[worst] - values[best];
    double edge_len = 0.0;
    for (int j = 0; j < d; ++j)
      edge_len = std::max(edge_len, std::abs(simplex[worst][j] - simplex[best][j]));
    if (spread < 1e-14 && edge_len < 1e-12) {
      a.rec.early_stop("simplex_collapse");
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i < n_vertices; ++i) {
      if (i == worst) continue;
      for (int j = 0; j < d; ++j) centroid[j] += simplex[i][j];
    }
    for (int j = 0; j < d; ++j) centroid[j] /= static_cast<double>(d);

    a.rec.begin_iteration();
    for (int j = 0; j < d; ++j) xr[j] = centroid[j] + alpha * (centroid[j] - simplex[worst][j]);
    const double fr = a.rec.eval(xr);

    if (fr < values[best]) {
      if (a.rec.budget_left(1)) {
        for (int j = 0; j < d; ++j) xe[j] = centroid[j] + gamma * (xr[j] - centroid[j]);
        const double fe = a.rec.eval(xe);
        if (fe < fr) {
          simplex[worst] = xe;
          values[worst] = fe;
        } else {
          simplex[worst] = xr;
          values[worst] = fr;
        }
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
    } else if (fr < values[second_worst]) {
      simplex[worst] = xr;
      values[worst] = fr;
    } else if (a.rec.budget_left(1)) {
      // Contract toward the better of (worst, reflected).
      const bool outside = fr < values[worst];
      const std::vector<double>& anchor = outside ? xr : simplex[worst];
      for (int j = 0; j < d; ++j) xc[j] = centroid[j] + rho * (anchor[j] - centroid[j]);
      const double fc = a.rec.eval(xc);
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = xc;
        values[worst] = fc;
      } else {
        // Shrink toward the best vertex.
        for (int i = 0; i < n_vertices && a.rec.budget_left(1); ++i) {
          if (i == best) continue;
          for (int j = 0; j < d; ++j)
            simplex[i][j] = simplex[best][j] + sigma * (simplex[i][j] - simplex[best][j]);
          values[i] = a.rec.eval(simplex[i]);
        }
      }
    }
    int cur_best = 0;
    for (int i = 1; i < n_vertices; ++i)
      if (values[i] < values[cur_best]) cur_best = i;
    a.rec.end_iteration(simplex[cur_best]);
    *a.final_iterate = simplex[cur_best];
  }
}

}  // namespace vqelab::detail
