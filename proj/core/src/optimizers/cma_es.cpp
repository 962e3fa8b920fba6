#include <Eigen/Dense>
#include <algorithm>
#include <numeric>

#include "vqelab/optimizers.hpp"
#include "recorder.hpp"

namespace vqelab::detail {

// Covariance matrix adaptation with rank-1 + rank-mu updates and cumulative
// step-size control (Hansen's standard formulation, positive weights).
void run_cma_es(AlgoArgs a) {
  const int d = a.obj.dimension();
  const int lambda = static_cast<int>(a.hp.at("population"));
  const double sigma0 = a.hp.at("sigma0");
  const int mu = lambda / 2;

  std::vector<double> w(mu);
  for (int i = 0; i < mu; ++i) w[i] = std::log(mu + 0.5) - std::log(i + 1.0);
  const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= wsum;
  double mu_eff = 0.0;
  for (double v : w) mu_eff += v * v;
  mu_eff = 1.0 / mu_eff;

  const double dd = static_cast<double>(d);
  const double c_sigma = (mu_eff + 2.0) / (dd + mu_eff + 5.0);
  const double d_sigma =
      1.0 + 2.0 * std::max(0.0, std::sqrt((mu_eff - 1.0) / (dd + 1.0)) - 1.0) + c_sigma;
  const double c_c = (4.0 + mu_eff / dd) / (dd + 4.0 + 2.0 * mu_eff / dd);
  const double c_1 = 2.0 / ((dd + 1.3) * (dd + 1.3) + mu_eff);
  const double c_mu =
      std::min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((dd + 2.0) * (dd + 2.0) + mu_eff));
  const double chi_n = std::sqrt(dd) * (1.0 - 1.0 / (4.0 * dd) + 1.0 / (21.0 * dd * dd));

  Eigen::VectorXd mean = Eigen::Map<const Eigen::VectorXd>(a.x0.data(), d);
  double sigma = sigma0;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd p_sigma = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd p_c = Eigen::VectorXd::Zero(d);

  std::vector<Eigen::VectorXd> ys(lambda), xs(lambda);
  std::vector<double> values(lambda);
  std::vector<int> order(lambda);
  std::vector<double> probe(d);

  for (std::int64_t gen = 0; a.rec.budget_left(1); ++gen) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) {
      a.rec.early_stop("covariance_decomposition_failure");
      break;
    }
    Eigen::VectorXd evals = eig.eigenvalues().cwiseMax(1e-20);
    const Eigen::MatrixXd& b = eig.eigenvectors();
    const Eigen::VectorXd sqrt_evals = evals.cwiseSqrt();

    a.rec.begin_iteration();
    int evaluated = 0;
    for (int i = 0; i < lambda && a.rec.budget_left(1); ++i) {
      Eigen::VectorXd z(d);
      for (int j = 0; j < d; ++j) z(j) = a.rng.next_normal();
      ys[i] = b * (sqrt_evals.asDiagonal() * z);
      xs[i] = mean + sigma * ys[i];
      for (int j = 0; j < d; ++j) xs[i](j) = clip_to_bound(xs[i](j), kParamBound);
      ys[i] = (xs[i] - mean) / sigma;  // keep updates consistent with clipping
      for (int j = 0; j < d; ++j) probe[j] = xs[i](j);
      values[i] = a.rec.eval(probe);
      ++evaluated;
    }
    if (evaluated < lambda) {  // budget hit mid-generation
      std::vector<double> mean_out(mean.data(), mean.data() + d);
      a.rec.end_iteration(mean_out);
      *a.final_iterate = mean_out;
      break;
    }

    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return values[i] < values[j]; });

    Eigen::VectorXd y_w = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < mu; ++i) y_w += w[i] * ys[order[i]];
    const Eigen::VectorXd mean_new = mean + sigma * y_w;

    // C^{-1/2} (m' - m) / sigma through the eigenbasis.
    Eigen::VectorXd c_inv_sqrt_yw = b * (sqrt_evals.cwiseInverse().asDiagonal() * (b.transpose() * y_w));
    p_sigma = (1.0 - c_sigma) * p_sigma +
              std::sqrt(c_sigma * (2.0 - c_sigma) * mu_eff) * c_inv_sqrt_yw;
    const double expected_decay =
        std::sqrt(1.0 - std::pow(1.0 - c_sigma, 2.0 * static_cast<double>(gen + 1)));
    const bool hsig = p_sigma.norm() / expected_decay < (1.4 + 2.0 / (dd + 1.0)) * chi_n;

    p_c = (1.0 - c_c) * p_c;
    if (hsig) p_c += std::sqrt(c_c * (2.0 - c_c) * mu_eff) * y_w;

    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < mu; ++i) rank_mu += w[i] * (ys[order[i]] * ys[order[i]].transpose());
    const double hsig_correction = hsig ? 0.0 : c_c * (2.0 - c_c);
    cov = (1.0 - c_1 - c_mu) * cov +
          c_1 * (p_c * p_c.transpose() + hsig_correction * cov) + c_mu * rank_mu;
    cov = 0.5 * (cov + cov.transpose().eval());

    sigma *= std::exp((c_sigma / d_sigma) * (p_sigma.norm() / chi_n - 1.0));
    if (!std::isfinite(sigma) || sigma > 1e6) throw DivergenceAbort{};
    mean = mean_new;

    std::vector<double> mean_out(mean.data(), mean.data() + d);
    a.rec.end_iteration(mean_out);
    *a.final_iterate = mean_out;

    if (sigma < 1e-14) {
      a.rec.early_stop("sigma_collapse");
      break;
    }
  }
}

}  // namespace vqelab::detail
