#pragma once

#include <fetgv/params.hpp>

#include <Eigen/Core>

namespace fetgv {

///
/// 1D FE-TGV on n intervals with w on the n + 1 vertices:
///
///   alpha1 sum_{interior V} |(u_right - u_left) - h_V w_V| + alpha0 sum_I |w_right - w_left|
///
/// with h_V the distance between the adjacent interval midpoints.
///
double fetgv_1d_objective(const Eigen::VectorXd& u, const Eigen::VectorXd& lengths, const Eigen::VectorXd& w,
                          const TgvParams& p);

/// min over w of fetgv_1d_objective; same conventions as fetgv_value.
double fetgv_1d_value(const Eigen::VectorXd& u, const Eigen::VectorXd& lengths, const TgvParams& p, double tol,
                      double lambda = 1.0, int max_iter = 5000);

///
/// Finite-difference 1D TGV on n unit cells with w in R^n (w(k) holds w_{k+1}):
///
///   alpha1 sum_{i=1}^{n-1} |(u_{i+1} - u_i) - w_i| + alpha1 |w_n|
///     + alpha0 |w_1| + alpha0 sum_{i=2}^{n-1} |w_i - w_{i-1}| + alpha0 |w_{n-1}|
///
/// The first alpha0 term is the backward difference at the left boundary.
///
double bredies_1d_objective(const Eigen::VectorXd& u, const Eigen::VectorXd& w, const TgvParams& p);

double bredies_1d_value(const Eigen::VectorXd& u, const TgvParams& p, double tol, double lambda = 1.0,
                        int max_iter = 5000);

} // namespace fetgv
