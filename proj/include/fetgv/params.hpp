#pragma once

namespace fetgv {

/// Regularization weights: alpha1 on the first-order term, alpha0 on the
/// second-order (auxiliary variable) terms.
struct TgvParams
{
    double alpha0 = 0.0;
    double alpha1 = 0.0;
};

/// Augmented Lagrangian penalties, one per split constraint block.
struct PenaltyParams
{
    double lambda0 = 10.0;
    double lambda1 = 10.0;
    double lambda2 = 10.0;

    static PenaltyParams uniform(double lambda) { return {lambda, lambda, lambda}; }
};

struct StopCriteria
{
    double tol_primal = 1e-4;
    double tol_dual = 1e-4;
    int max_iter = 2000;
};

} // namespace fetgv
