#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace firecast {

/// Cholesky of a (near) symmetric positive definite matrix: symmetrize, then
/// factor, with a single 1e-10 diagonal jitter retry. Throws NumericalError
/// naming `context` on failure.
Eigen::LLT<Eigen::MatrixXd> safe_llt(Eigen::MatrixXd a, const char* context);

/// Lower Cholesky factor via safe_llt.
Eigen::MatrixXd chol_lower(const Eigen::MatrixXd& a, const char* context);

/// Symmetric PD inverse via safe_llt.
Eigen::MatrixXd pd_inverse(const Eigen::MatrixXd& a, const char* context);

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace firecast
