#pragma once

#include <fetgv/params.hpp>
#include <fetgv/split_bregman.hpp>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <vector>

namespace fetgv {

/// Image dimensions do not match.
class SizeMismatch : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

///
/// Rectangular grayscale raster. Pixel (i, j), 0 <= i < width, 0 <= j < height,
/// is stored at values[j * width + i]; i runs along x, j along y.
///
struct GridImage
{
    int width = 0;
    int height = 0;
    double h = 1.0;
    Eigen::VectorXd values;

    static GridImage filled(int width, int height, double value = 0.0, double h = 1.0);

    Eigen::Index index(int i, int j) const { return static_cast<Eigen::Index>(j) * width + i; }
    double& at(int i, int j) { return values[index(i, j)]; }
    double at(int i, int j) const { return values[index(i, j)]; }
    Eigen::Index pixels() const { return static_cast<Eigen::Index>(width) * height; }

    /// Throws std::invalid_argument on bad sizes, spacing or non-finite values.
    void validate() const;
};

enum class Axis
{
    x,
    y,
};

///
/// Forward difference along an axis: (v_{i+1} - v_i) / h, and 0 in the last
/// row. An axis of length 1 gives zero everywhere.
///
GridImage forward_difference(const GridImage& img, Axis axis);

///
/// Backward difference along an axis:
///   v_0 / h                     first row
///   (v_i - v_{i-1}) / h         interior
///   -v_{M-2} / h                last row
/// An axis of length 1 gives zero everywhere.
///
GridImage backward_difference(const GridImage& img, Axis axis);

/// Sparse matrices of the two difference operators on a width x height grid.
Eigen::SparseMatrix<double> forward_difference_matrix(int width, int height, double h, Axis axis);
Eigen::SparseMatrix<double> backward_difference_matrix(int width, int height, double h, Axis axis);

/// Interleaved gradient (dx, dy) per pixel, 2 rows per pixel.
Eigen::SparseMatrix<double> grid_gradient_matrix(int width, int height, double h);

/// Symmetrized Jacobian of an interleaved vector field (w1, w2) per pixel,
/// 4 rows per pixel: (d1 w1, s, s, d2 w2) with s = (d2 w1 + d1 w2) / 2,
/// built from backward differences.
Eigen::SparseMatrix<double> grid_sym_jacobian_matrix(int width, int height, double h);

/// alpha1 sum |grad u - w|_2 + alpha0 sum |E w|_F, w interleaved per pixel.
double grid_tgv_objective(const GridImage& u, const Eigen::VectorXd& w, const TgvParams& p);

/// min over w of grid_tgv_objective; same conventions as fetgv_value.
double grid_tgv_value(const GridImage& u, const TgvParams& p, double tol, double lambda = 1.0,
                      int max_iter = 5000);

struct GridDenoiseResult
{
    GridImage u;
    Eigen::VectorXd w;
    SolveReport report;
};

///
/// min 1/2 sum mask (u - f)^2 + alpha1 sum |grad u - w| + alpha0 sum |E w|_F,
/// split Bregman with lambda0 on the first block and lambda1 on the second.
///
GridDenoiseResult solve_grid_denoise(const GridImage& f, const TgvParams& p, const PenaltyParams& penalties,
                                     const StopCriteria& stop, const std::vector<bool>* mask = nullptr);

} // namespace fetgv
