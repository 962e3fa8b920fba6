#include "recorder.hpp"

namespace vqelab::detail {

// Simultaneous perturbation: two evaluations per iteration at x +- c_k * delta
// with Rademacher delta, gain sequences a_k = a/(k+1+A)^alpha and
// c_k = c/(k+1)^gamma (Spall's standard exponents).
void run_spsa(AlgoArgs a) {
  const double ga = a.hp.at("a");
  const double gc = a.hp.at("c");
  const double big_a = a.hp.at("big_a");
  const double alpha = a.hp.at("alpha");
  const double gamma = a.hp.at("gamma");
  const int d = a.obj.dimension();

  std::vector<double> x = a.x0;
  std::vector<double> delta(d), plus(d), minus(d);
  for (std::int64_t k = 0; a.rec.budget_left(2); ++k) {
    const double ak = ga / std::pow(static_cast<double>(k) + 1.0 + big_a, alpha);
    const double ck = gc / std::pow(static_cast<double>(k) + 1.0, gamma);
    for (int j = 0; j < d; ++j) delta[j] = a.rng.next_double() < 0.5 ? -1.0 : 1.0;
    for (int j = 0; j < d; ++j) {
      plus[j] = x[j] + ck * delta[j];
      minus[j] = x[j] - ck * delta[j];
    }
    a.rec.begin_iteration();
    const double fp = a.rec.eval(plus);
    const double fm = a.rec.eval(minus);
    const double diff = (fp - fm) / (2.0 * ck);
    for (int j = 0; j < d; ++j) x[j] -= ak * diff * delta[j];
    a.rec.end_iteration(x);
  }
  *a.final_iterate = x;
}

}  // namespace vqelab::detail
