#pragma once

#include <functional>

#include <Eigen/Dense>

namespace ahmass::detail {

struct GmresResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double relative_residual = 1.0;
};

using LinearOp = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Restarted GMRES with right preconditioning for A x = b, starting from
/// x = 0: the Krylov space is built for A M and the returned x is already
/// mapped back through M. Stops when |b - A x| <= rtol |b| or after
/// max_iter inner steps.
GmresResult gmres(const LinearOp& A, const LinearOp& M, const Eigen::VectorXd& b, double rtol,
                  int restart, int max_iter);

}  // namespace ahmass::detail
