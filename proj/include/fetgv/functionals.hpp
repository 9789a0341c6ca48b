#pragma once

#include <fetgv/fespace.hpp>
#include <fetgv/params.hpp>
#include <fetgv/solver.hpp>
#include <fetgv/split_bregman.hpp>

#include <Eigen/Core>

#include <vector>

namespace fetgv {

/// A Lap-FE-TGV auxiliary field has a nonzero boundary flux.
class BoundaryDofNonzero : public MeshError
{
public:
    using MeshError::MeshError;
};

/// Settings of the inner minimization used by the *_value functions.
struct ValueSettings
{
    double lambda = 1.0;
    int max_iter = 5000;
};

/// sum_E |E| |[u]| over interior edges.
double tv_dg0(const FeSpace& space, const Dg0Field& u);

///
/// FE-TGV objective for a given auxiliary field:
///
///   alpha1 sum_E |E| |[u] + h_E <w, mu_plus>|
///     + alpha0 sum_T |T| |grad w|_F
///     + alpha0 sum_E sum_i (|E| / 2) |[w](X_{E,i})|
///
double fetgv_objective(const FeSpace& space, const Dg0Field& u, const Rt1Field& w, const TgvParams& p);

/// alpha1 sum_E |E| |[u] + <w, mu_plus> / |E|| + alpha0 sum_T |T| |div w|.
/// Throws BoundaryDofNonzero unless every boundary DOF of w is zero.
double lapfetgv_objective(const FeSpace& space, const Dg0Field& u, const Rt1Field& w, const TgvParams& p);

/// Regularizer value R(u, w) of the given kind (w is ignored for TV).
double regularizer_objective(const FeSpace& space, Regularizer kind, const Dg0Field& u, const Rt1Field& w,
                             const TgvParams& p);

/// 1/2 sum_T fid_T |T| (u - f)^2 + R(u, w), with fid the optional mask.
double denoise_objective(const FeSpace& space, Regularizer kind, const Dg0Field& f, const Dg0Field& u,
                         const Rt1Field& w, const TgvParams& p, const std::vector<bool>* mask = nullptr);

///
/// min over w of fetgv_objective(u, w, p), by split Bregman with u fixed.
///
/// Returns the lowest objective seen over the iterates, which is an upper
/// bound of the minimum. Throws NoConvergence (carrying that value) when both
/// residuals do not reach `tol` within the iteration budget.
///
double fetgv_value(const FeSpace& space, const Dg0Field& u, const TgvParams& p, double tol,
                   const ValueSettings& settings = {});

/// min over w with zero boundary DOFs of lapfetgv_objective(u, w, p).
double lapfetgv_value(const FeSpace& space, const Dg0Field& u, const TgvParams& p, double tol,
                      const ValueSettings& settings = {});

/// Dispatch on the regularizer kind (TV needs no minimization).
double regularizer_value(const FeSpace& space, Regularizer kind, const Dg0Field& u, const TgvParams& p,
                         double tol, const ValueSettings& settings = {});

/// Weighted incidence matrix J of a graph: row l is weight_l (e_a - e_b).
Eigen::SparseMatrix<double> incidence_matrix(const DualGraph& graph);

/// |J u|_1 = sum_l weight_l |u_a - u_b|.
double graph_tv_value(const DualGraph& graph, const Eigen::VectorXd& u);

/// alpha1 |J u - q|_1 + alpha0 |J^T q|_1.
double graph_tgv_objective(const DualGraph& graph, const Eigen::VectorXd& u, const Eigen::VectorXd& q,
                           const TgvParams& p);

/// min over q of graph_tgv_objective, same conventions as fetgv_value.
double graph_tgv_value(const DualGraph& graph, const Eigen::VectorXd& u, const TgvParams& p, double tol,
                       const ValueSettings& settings = {});

/// Run a SplitProblem to tolerance `tol` and return its best objective.
/// Retries with a small proximal term when the quadratic step is singular.
double minimize_split(SplitProblem problem, double tol, int max_iter, const char* what);

} // namespace fetgv
