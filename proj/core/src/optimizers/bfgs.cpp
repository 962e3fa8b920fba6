#include <Eigen/Dense>

#include "recorder.hpp"

namespace vqelab::detail {

// Quasi-Newton with finite-difference (or parameter-shift) gradients and a
// backtracking Armijo line search; the inverse Hessian approximation is kept.
void run_bfgs(AlgoArgs a) {
  const double fd_step = a.hp.at("fd_step");
  const double c1 = a.hp.at("armijo_c1");
  const double backtrack = a.hp.at("backtrack");
  const int max_ls = static_cast<int>(a.hp.at("max_linesearch"));
  const double grad_tol = a.hp.at("grad_tol");
  const int d = a.obj.dimension();

  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(a.x0.data(), d);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(d, d);

  if (!a.rec.budget_left(2 * d + 1)) {
    a.rec.begin_iteration();
    if (a.rec.budget_left(1)) a.rec.eval(a.x0);
    a.rec.end_iteration(a.x0);
    *a.final_iterate = a.x0;
    return;
  }
  std::vector<double> xv(d);
  auto to_vec = [&](const Eigen::VectorXd& v) {
    for (int j = 0; j < d; ++j) xv[j] = v(j);
    return std::span<const double>(xv);
  };

  a.rec.begin_iteration();
  double fx = a.rec.eval(to_vec(x));
  std::vector<double> g0 = recorded_gradient(a.rec, a.obj, to_vec(x), fd_step);
  Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(g0.data(), d);
  a.rec.end_iteration(to_vec(x));

  while (a.rec.budget_left(2 * d + 2)) {
    if (g.norm() < grad_tol) {
      a.rec.early_stop("gradient_below_tolerance");
      break;
    }
    Eigen::VectorXd p = -(h_inv * g);
    double slope = g.dot(p);
    if (slope >= 0.0) {  // not a descent direction; reset curvature
      h_inv.setIdentity();
      p = -g;
      slope = g.dot(p);
    }

    a.rec.begin_iteration();
    double step = 1.0;
    double f_new = fx;
    Eigen::VectorXd x_new = x;
    bool accepted = false;
    for (int ls = 0; ls < max_ls && a.rec.budget_left(2 * d + 1); ++ls) {
      x_new = x + step * p;
      f_new = a.rec.eval(to_vec(x_new));
      if (f_new <= fx + c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= backtrack;
    }
    if (!accepted) {
      a.rec.end_iteration(to_vec(x));
      a.rec.early_stop("line_search_failure");
      break;
    }

    std::vector<double> gn = recorded_gradient(a.rec, a.obj, to_vec(x_new), fd_step);
    Eigen::VectorXd g_new = Eigen::Map<const Eigen::VectorXd>(gn.data(), d);
    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
      h_inv = (eye - rho * s * y.transpose()) * h_inv * (eye - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }
    x = x_new;
    fx = f_new;
    g = g_new;
    a.rec.end_iteration(to_vec(x));
    *a.final_iterate = std::vector<double>(xv.begin(), xv.end());
  }
  *a.final_iterate = std::vector<double>(x.data(), x.data() + d);
}

}  // namespace vqelab::detail
