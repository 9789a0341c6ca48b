#pragma once

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <memory>
#include <stdexcept>
#include <string>

namespace fetgv {

/// The assembled quadratic has a nontrivial kernel.
class SingularSystem : public std::runtime_error
{
public:
    SingularSystem(const std::string& what, int kernel_dimension)
        : std::runtime_error(what)
        , m_kernel_dimension(kernel_dimension)
    {}

    /// Dimension of the numerical kernel, -1 if it was not computed.
    int kernel_dimension() const { return m_kernel_dimension; }

private:
    int m_kernel_dimension;
};

///
/// Symmetric positive definite sparse matrix with a cached LDL^T factorization.
///
/// Construction factors the matrix and throws SingularSystem when a pivot is
/// not safely positive; the kernel dimension is then reported through a dense
/// eigen-decomposition for systems up to `dense_kernel_limit` unknowns.
///
class SparseSpd
{
public:
    using Matrix = Eigen::SparseMatrix<double>;

    static constexpr Eigen::Index dense_kernel_limit = 4000;

    explicit SparseSpd(Matrix matrix);

    Eigen::Index dimension() const { return m_matrix.rows(); }
    const Matrix& matrix() const { return m_matrix; }

    /// Solve A x = rhs, with one step of iterative refinement when the
    /// relative residual exceeds 1e-12.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

    /// max |A - A^T| / max |A|.
    double symmetry_error() const;

private:
    Matrix m_matrix;
    std::shared_ptr<Eigen::SimplicialLDLT<Matrix>> m_factor;
};

/// Numerical kernel dimension of a symmetric matrix by dense eigen-decomposition:
/// eigenvalues with |ev| <= rel_tol * max |ev| are counted.
int kernel_dimension(const Eigen::SparseMatrix<double>& matrix, double rel_tol = 1e-9);

} // namespace fetgv
