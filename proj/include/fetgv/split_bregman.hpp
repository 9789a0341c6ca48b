#pragma once

#include <fetgv/params.hpp>
#include <fetgv/sparse_spd.hpp>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fetgv {

///
/// One split constraint d = K z + offset, penalized by
/// alpha * sum_g weights[g] * |d_g| in the objective, where d_g runs over
/// consecutive groups of `group_size` entries (absolute value, Euclidean or
/// Frobenius norm for group sizes 1, 2, 4).
///
struct ShrinkBlock
{
    std::string name;
    Eigen::SparseMatrix<double> op;
    Eigen::VectorXd offset; ///< empty means zero
    Eigen::VectorXd weights;
    int group_size = 1;
    double alpha = 0.0;
    double lambda = 1.0;

    Eigen::Index rows() const { return op.rows(); }
};

///
/// min_z 1/2 sum_i fidelity_i (z_i - data_i)^2 + sum_j alpha_j sum_g W_jg |(K_j z + g_j)_g|
///
/// `fidelity` may be empty (no data term). A positive `proximal` adds
/// proximal/2 |z - z_prev|^2 to every quadratic step, which keeps the step
/// well posed when the constraint operators have a common kernel that does
/// not affect the objective.
///
struct SplitProblem
{
    Eigen::Index unknowns = 0;
    Eigen::VectorXd fidelity;
    Eigen::VectorXd data;
    std::vector<ShrinkBlock> blocks;
    double proximal = 0.0;
};

/// Split variables d_j and scaled multipliers b_j, one pair per block.
struct SplitVars
{
    std::vector<Eigen::VectorXd> d;
    std::vector<Eigen::VectorXd> b;
};

struct Residuals
{
    double primal = 0.0;
    double dual = 0.0;
};

struct SolveReport
{
    int iterations = 0;
    bool converged = false;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double objective = 0.0;
    std::vector<double> primal_history;
    std::vector<double> dual_history;
    std::vector<double> objective_history;
    double seconds = 0.0;
};

struct SplitResult
{
    Eigen::VectorXd z;
    SplitVars vars;
    SolveReport report;
    /// Iterate with the lowest objective seen (including the start point).
    Eigen::VectorXd best_z;
    double best_objective = 0.0;
};

/// A *_value minimization stopped at max_iter before meeting its tolerance.
class NoConvergence : public std::runtime_error
{
public:
    NoConvergence(const std::string& what, double best_value)
        : std::runtime_error(what)
        , m_best(best_value)
    {}

    double best_value() const { return m_best; }

private:
    double m_best;
};

///
/// Split Bregman iteration (scaled-multiplier ADMM) for a SplitProblem.
///
/// The system matrix of the quadratic step is assembled and factored once in
/// the constructor. Each sweep solves for z, shrinks every block and updates
/// the multipliers.
///
class SplitBregman
{
public:
    explicit SplitBregman(SplitProblem problem);

    const SplitProblem& problem() const { return m_problem; }
    const SparseSpd& system() const { return m_system; }

    SplitVars initial_vars() const;

    /// Constant part of the quadratic step's right-hand side plus the terms
    /// from the current split variables.
    Eigen::VectorXd rhs(const SplitVars& vars, const Eigen::VectorXd& z_prev) const;

    /// Exact minimizer of the quadratic step, computed as a correction to z_prev.
    Eigen::VectorXd step_u(const SplitVars& vars, const Eigen::VectorXd& z_prev) const;

    /// K_j z + offset_j for every block.
    std::vector<Eigen::VectorXd> constraint_values(const Eigen::VectorXd& z) const;

    /// d_j = shrink(K_j z + offset_j + b_j, alpha_j / lambda_j).
    void step_shrink(const std::vector<Eigen::VectorXd>& kz, SplitVars& vars) const;

    /// b_j += K_j z + offset_j - d_j.
    void step_multipliers(const std::vector<Eigen::VectorXd>& kz, SplitVars& vars) const;

    /// Primal: quadrature-weighted L2 norm of all constraint violations.
    /// Dual: |sum_j lambda_j K_j^T W_j (d_j - d_j_prev)|_2.
    Residuals residuals(const std::vector<Eigen::VectorXd>& kz, const SplitVars& prev,
                        const SplitVars& vars) const;

    double objective(const Eigen::VectorXd& z) const;

    /// One full sweep from (z, vars); returns the new z.
    Eigen::VectorXd sweep(const Eigen::VectorXd& z, SplitVars& vars) const;

    /// Iterate until both residuals are below their tolerances or max_iter.
    /// Without z0 the iteration starts from the data (or zero when there is
    /// no data term).
    SplitResult run(const StopCriteria& stop, const std::optional<Eigen::VectorXd>& z0 = {}) const;

    /// The assembled quadratic-step matrix, re-assembled from scratch.
    static Eigen::SparseMatrix<double> assemble(const SplitProblem& problem);

private:
    static SplitProblem validated(SplitProblem problem);

    SplitProblem m_problem;
    SparseSpd m_system;
    Eigen::VectorXd m_data_rhs;
};

} // namespace fetgv
