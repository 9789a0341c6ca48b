#include <fetgv/shrink.hpp>
#include <fetgv/split_bregman.hpp>

#include <chrono>
#include <cmath>
#include <limits>

namespace fetgv {

namespace {

Eigen::VectorXd expand_weights(const ShrinkBlock& block)
{
    Eigen::VectorXd w(block.rows());
    for (Eigen::Index g = 0; g < block.weights.size(); ++g) {
        w.segment(g * block.group_size, block.group_size).setConstant(block.weights[g]);
    }
    return w;
}

double group_norm_sum(const ShrinkBlock& block, const Eigen::VectorXd& v)
{
    double sum = 0.0;
    for (Eigen::Index g = 0; g < block.weights.size(); ++g) {
        sum += block.weights[g] * v.segment(g * block.group_size, block.group_size).norm();
    }
    return sum;
}

} // namespace

SplitProblem SplitBregman::validated(SplitProblem problem)
{
    const Eigen::Index n = problem.unknowns;
    if (problem.fidelity.size() != 0 && (problem.fidelity.size() != n || problem.data.size() != n)) {
        throw std::invalid_argument("fidelity weights / data do not match the unknown count");
    }
    if (problem.proximal < 0.0) throw std::invalid_argument("proximal weight must be nonnegative");
    for (ShrinkBlock& block : problem.blocks) {
        if (block.op.cols() != n) throw std::invalid_argument("block " + block.name + ": operator width mismatch");
        if (block.group_size <= 0 || block.op.rows() != block.weights.size() * block.group_size) {
            throw std::invalid_argument("block " + block.name + ": weights do not match operator rows");
        }
        if (block.offset.size() == 0) block.offset = Eigen::VectorXd::Zero(block.op.rows());
        if (block.offset.size() != block.op.rows()) {
            throw std::invalid_argument("block " + block.name + ": offset length mismatch");
        }
        if (!(block.lambda > 0.0)) throw std::invalid_argument("block " + block.name + ": penalty must be positive");
        if (!(block.alpha >= 0.0)) throw std::invalid_argument("block " + block.name + ": weight must be nonnegative");
        block.op.makeCompressed();
    }
    return problem;
}

Eigen::SparseMatrix<double> SplitBregman::assemble(const SplitProblem& problem)
{
    const Eigen::Index n = problem.unknowns;
    Eigen::SparseMatrix<double> a(n, n);
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, problem.proximal);
    if (problem.fidelity.size() == n) diag += problem.fidelity;
    a = Eigen::SparseMatrix<double>(diag.asDiagonal());
    for (const ShrinkBlock& block : problem.blocks) {
        const Eigen::VectorXd w = block.lambda * expand_weights(block);
        const Eigen::SparseMatrix<double> weighted = w.asDiagonal() * block.op;
        a += Eigen::SparseMatrix<double>(block.op.transpose()) * weighted;
    }
    a.prune(0.0);
    a.makeCompressed();
    return a;
}

SplitBregman::SplitBregman(SplitProblem problem)
    : m_problem(validated(std::move(problem)))
    , m_system(assemble(m_problem))
{
    m_data_rhs = Eigen::VectorXd::Zero(m_problem.unknowns);
    if (m_problem.fidelity.size() == m_problem.unknowns) {
        m_data_rhs = m_problem.fidelity.cwiseProduct(m_problem.data);
    }
}

SplitVars SplitBregman::initial_vars() const
{
    SplitVars v;
    for (const ShrinkBlock& block : m_problem.blocks) {
        v.d.push_back(Eigen::VectorXd::Zero(block.rows()));
        v.b.push_back(Eigen::VectorXd::Zero(block.rows()));
    }
    return v;
}

Eigen::VectorXd SplitBregman::rhs(const SplitVars& vars, const Eigen::VectorXd& z_prev) const
{
    Eigen::VectorXd r = m_data_rhs;
    if (m_problem.proximal > 0.0) r += m_problem.proximal * z_prev;
    for (std::size_t j = 0; j < m_problem.blocks.size(); ++j) {
        const ShrinkBlock& block = m_problem.blocks[j];
        const Eigen::VectorXd w = block.lambda * expand_weights(block);
        r += block.op.transpose() * w.cwiseProduct(vars.d[j] - block.offset - vars.b[j]);
    }
    return r;
}

Eigen::VectorXd SplitBregman::step_u(const SplitVars& vars, const Eigen::VectorXd& z_prev) const
{
    // Solve for the correction from z_prev. The defect is formed term by term,
    // so a z_prev that already satisfies the normal equations is returned
    // unchanged.
    Eigen::VectorXd defect = Eigen::VectorXd::Zero(m_problem.unknowns);
    if (m_problem.fidelity.size() == m_problem.unknowns) {
        defect = m_problem.fidelity.cwiseProduct(m_problem.data - z_prev);
    }
    const auto kz = constraint_values(z_prev);
    for (std::size_t j = 0; j < m_problem.blocks.size(); ++j) {
        const ShrinkBlock& block = m_problem.blocks[j];
        const Eigen::VectorXd w = block.lambda * expand_weights(block);
        defect += block.op.transpose() * w.cwiseProduct(vars.d[j] - vars.b[j] - kz[j]);
    }
    return z_prev + m_system.solve(defect);
}

std::vector<Eigen::VectorXd> SplitBregman::constraint_values(const Eigen::VectorXd& z) const
{
    std::vector<Eigen::VectorXd> kz;
    kz.reserve(m_problem.blocks.size());
    for (const ShrinkBlock& block : m_problem.blocks) kz.push_back(block.op * z + block.offset);
    return kz;
}

void SplitBregman::step_shrink(const std::vector<Eigen::VectorXd>& kz, SplitVars& vars) const
{
    for (std::size_t j = 0; j < m_problem.blocks.size(); ++j) {
        const ShrinkBlock& block = m_problem.blocks[j];
        vars.d[j] = kz[j] + vars.b[j];
        shrink_groups(vars.d[j], block.group_size, block.alpha / block.lambda);
    }
}

void SplitBregman::step_multipliers(const std::vector<Eigen::VectorXd>& kz, SplitVars& vars) const
{
    for (std::size_t j = 0; j < m_problem.blocks.size(); ++j) vars.b[j] += kz[j] - vars.d[j];
}

Residuals SplitBregman::residuals(const std::vector<Eigen::VectorXd>& kz, const SplitVars& prev,
                                  const SplitVars& vars) const
{
    double primal2 = 0.0;
    Eigen::VectorXd dual = Eigen::VectorXd::Zero(m_problem.unknowns);
    for (std::size_t j = 0; j < m_problem.blocks.size(); ++j) {
        const ShrinkBlock& block = m_problem.blocks[j];
        const Eigen::VectorXd w = expand_weights(block);
        primal2 += w.dot((kz[j] - vars.d[j]).cwiseAbs2());
        dual += block.lambda * (block.op.transpose() * w.cwiseProduct(vars.d[j] - prev.d[j]));
    }
    return {std::sqrt(primal2), dual.norm()};
}

double SplitBregman::objective(const Eigen::VectorXd& z) const
{
    double value = 0.0;
    if (m_problem.fidelity.size() == m_problem.unknowns) {
        value += 0.5 * m_problem.fidelity.dot((z - m_problem.data).cwiseAbs2());
    }
    for (const ShrinkBlock& block : m_problem.blocks) {
        if (block.alpha == 0.0) continue;
        value += block.alpha * group_norm_sum(block, block.op * z + block.offset);
    }
    return value;
}

Eigen::VectorXd SplitBregman::sweep(const Eigen::VectorXd& z, SplitVars& vars) const
{
    const Eigen::VectorXd next = step_u(vars, z);
    const auto kz = constraint_values(next);
    step_shrink(kz, vars);
    step_multipliers(kz, vars);
    return next;
}

SplitResult SplitBregman::run(const StopCriteria& stop, const std::optional<Eigen::VectorXd>& z0) const
{
    if (!(stop.tol_primal > 0.0) || !(stop.tol_dual > 0.0)) {
        throw std::invalid_argument("stopping tolerances must be positive");
    }
    const auto start = std::chrono::steady_clock::now();

    SplitResult result;
    if (z0) {
        result.z = *z0;
    } else if (m_problem.fidelity.size() == m_problem.unknowns) {
        result.z = m_problem.data;
    } else {
        result.z = Eigen::VectorXd::Zero(m_problem.unknowns);
    }
    if (result.z.size() != m_problem.unknowns) throw std::invalid_argument("initial guess has the wrong length");
    result.vars = initial_vars();
    result.best_z = result.z;
    result.best_objective = objective(result.z);

    SolveReport& report = result.report;
    for (int k = 0; k < stop.max_iter; ++k) {
        const SplitVars prev = result.vars;
        result.z = step_u(result.vars, result.z);
        const auto kz = constraint_values(result.z);
        step_shrink(kz, result.vars);
        const Residuals res = residuals(kz, prev, result.vars);
        step_multipliers(kz, result.vars);

        const double obj = objective(result.z);
        if (obj < result.best_objective) {
            result.best_objective = obj;
            result.best_z = result.z;
        }
        report.iterations = k + 1;
        report.primal_residual = res.primal;
        report.dual_residual = res.dual;
        report.objective = obj;
        report.primal_history.push_back(res.primal);
        report.dual_history.push_back(res.dual);
        report.objective_history.push_back(obj);
        if (res.primal <= stop.tol_primal && res.dual <= stop.tol_dual) {
            report.converged = true;
            break;
        }
    }
    if (report.iterations == 0) report.objective = objective(result.z);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace fetgv
