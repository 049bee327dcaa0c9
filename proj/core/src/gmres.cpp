#include "gmres.hpp"

#include <cmath>
#include <vector>

namespace ahmass::detail {

GmresResult gmres(const LinearOp& A, const LinearOp& M, const Eigen::VectorXd& b, double rtol,
                  int restart, int max_iter) {
  GmresResult out;
  const Eigen::Index n = b.size();
  out.x = Eigen::VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.relative_residual = 0.0;
    return out;
  }
  Eigen::VectorXd r = b;
  while (out.iterations < max_iter) {
    const double beta = r.norm();
    out.relative_residual = beta / bnorm;
    if (out.relative_residual <= rtol) break;

    const int m = std::min(restart, max_iter - out.iterations);
    std::vector<Eigen::VectorXd> V{r / beta};
    std::vector<Eigen::VectorXd> Z;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd cs = Eigen::VectorXd::Zero(m), sn = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
    g[0] = beta;
    int k = 0;
    for (; k < m; ++k) {
      Z.push_back(M(V[k]));
      Eigen::VectorXd w = A(Z[k]);
      // Modified Gram-Schmidt, applied twice for stability.
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= k; ++i) {
          const double h = V[i].dot(w);
          H(i, k) += h;
          w -= h * V[i];
        }
      }
      H(k + 1, k) = w.norm();
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
        H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
        H(i, k) = t;
      }
      const double rho = std::hypot(H(k, k), H(k + 1, k));
      cs[k] = (rho == 0.0) ? 1.0 : H(k, k) / rho;
      sn[k] = (rho == 0.0) ? 0.0 : H(k + 1, k) / rho;
      const double hk1 = H(k + 1, k);
      H(k, k) = rho;
      H(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      ++out.iterations;
      const bool done = std::abs(g[k + 1]) / bnorm <= rtol || hk1 == 0.0;
      if (!done) V.push_back(w / hk1);
      if (done) {
        ++k;
        break;
      }
    }
    const Eigen::VectorXd y =
        H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    for (int i = 0; i < k; ++i) out.x += y[i] * Z[i];
    r = b - A(out.x);
  }
  out.relative_residual = r.norm() / bnorm;
  return out;
}

}  // namespace ahmass::detail
