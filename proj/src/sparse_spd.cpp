#include <fetgv/sparse_spd.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace fetgv {

namespace {

constexpr double k_pivot_tol = 1e-11;

} // namespace

int kernel_dimension(const Eigen::SparseMatrix<double>& matrix, double rel_tol)
{
    const Eigen::MatrixXd dense(matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = eig.eigenvalues();
    const double scale = ev.cwiseAbs().maxCoeff();
    if (scale == 0.0) return static_cast<int>(ev.size());
    return static_cast<int>((ev.array().abs() <= rel_tol * scale).count());
}

SparseSpd::SparseSpd(Matrix matrix)
    : m_matrix(std::move(matrix))
    , m_factor(std::make_shared<Eigen::SimplicialLDLT<Matrix>>())
{
    m_matrix.makeCompressed();
    m_factor->compute(m_matrix);

    bool ok = m_factor->info() == Eigen::Success;
    int small_pivots = 0;
    if (ok) {
        const Eigen::VectorXd d = m_factor->vectorD();
        const double scale = d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            if (!(d[i] > k_pivot_tol * scale)) ++small_pivots;
        }
        ok = small_pivots == 0 && scale > 0.0;
    }
    if (!ok) {
        const int kernel = m_matrix.rows() <= dense_kernel_limit ? kernel_dimension(m_matrix)
                                                                  : (small_pivots > 0 ? small_pivots : -1);
        throw SingularSystem("system matrix is not positive definite (kernel dimension " +
                                 std::to_string(kernel) + ")",
                             kernel);
    }
}

Eigen::VectorXd SparseSpd::solve(const Eigen::VectorXd& rhs) const
{
    Eigen::VectorXd x = m_factor->solve(rhs);
    const double scale = rhs.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
        const Eigen::VectorXd r = rhs - m_matrix * x;
        if (r.cwiseAbs().maxCoeff() > 1e-12 * scale) x += m_factor->solve(r);
    }
    return x;
}

double SparseSpd::symmetry_error() const
{
    const Matrix diff = Matrix(m_matrix.transpose()) - m_matrix;
    double worst = 0.0;
    double scale = 0.0;
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
        for (Matrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    for (Eigen::Index k = 0; k < m_matrix.outerSize(); ++k) {
        for (Matrix::InnerIterator it(m_matrix, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

} // namespace fetgv
