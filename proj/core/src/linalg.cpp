#include "firecast/linalg.hpp"

#include <string>

#include "firecast/errors.hpp"

namespace firecast {

Eigen::LLT<Eigen::MatrixXd> safe_llt(Eigen::MatrixXd a, const char* context) {
  a = 0.5 * (a + a.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    a.diagonal().array() += 1e-10;
    llt.compute(a);
    if (llt.info() != Eigen::Success) {
      throw NumericalError(std::string(context) +
                           ": matrix not positive definite");
    }
  }
  return llt;
}

Eigen::MatrixXd chol_lower(const Eigen::MatrixXd& a, const char* context) {
  return safe_llt(a, context).matrixL();
}

Eigen::MatrixXd pd_inverse(const Eigen::MatrixXd& a, const char* context) {
  const auto llt = safe_llt(a, context);
  Eigen::MatrixXd inv =
      llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
  return 0.5 * (inv + inv.transpose()).eval();
}

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace firecast
