#include <fetgv/functionals.hpp>
#include <fetgv/grid.hpp>

#include <cmath>
#include <string>

namespace fetgv {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;
using Sparse = Eigen::SparseMatrix<double>;

/// Copy the entries of `d` into `out`, row r -> r * row_stride + row_off,
/// column c -> c * col_stride + col_off.
void scatter(Triplets& out, const Sparse& d, int row_stride, int row_off, int col_stride, int col_off, double scale)
{
    for (int k = 0; k < d.outerSize(); ++k) {
        for (Sparse::InnerIterator it(d, k); it; ++it) {
            out.emplace_back(static_cast<int>(it.row()) * row_stride + row_off,
                             static_cast<int>(it.col()) * col_stride + col_off, scale * it.value());
        }
    }
}

Sparse difference_matrix(int width, int height, double h, Axis axis, bool forward)
{
    const int len = axis == Axis::x ? width : height;
    const Eigen::Index n = static_cast<Eigen::Index>(width) * height;
    Triplets t;
    auto at = [&](int i, int j) { return j * width + i; };
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            if (len == 1) continue;
            const int pos = axis == Axis::x ? i : j;
            const int row = at(i, j);
            auto shifted = [&](int delta) { return axis == Axis::x ? at(i + delta, j) : at(i, j + delta); };
            if (forward) {
                if (pos == len - 1) continue;
                t.emplace_back(row, shifted(1), 1.0 / h);
                t.emplace_back(row, row, -1.0 / h);
            } else if (pos == 0) {
                t.emplace_back(row, row, 1.0 / h);
            } else if (pos == len - 1) {
                t.emplace_back(row, shifted(-1), -1.0 / h);
            } else {
                t.emplace_back(row, row, 1.0 / h);
                t.emplace_back(row, shifted(-1), -1.0 / h);
            }
        }
    }
    Sparse m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

GridImage apply(const GridImage& img, const Sparse& op)
{
    GridImage out = img;
    out.values = op * img.values;
    return out;
}

} // namespace

GridImage GridImage::filled(int width, int height, double value, double h)
{
    GridImage img;
    img.width = width;
    img.height = height;
    img.h = h;
    img.values = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(width) * height, value);
    return img;
}

void GridImage::validate() const
{
    if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
    if (values.size() != pixels()) {
        throw std::invalid_argument("image has " + std::to_string(values.size()) + " values for " +
                                    std::to_string(width) + "x" + std::to_string(height) + " pixels");
    }
    if (!values.allFinite()) throw std::invalid_argument("image contains non-finite values");
}

GridImage forward_difference(const GridImage& img, Axis axis)
{
    img.validate();
    return apply(img, forward_difference_matrix(img.width, img.height, img.h, axis));
}

GridImage backward_difference(const GridImage& img, Axis axis)
{
    img.validate();
    return apply(img, backward_difference_matrix(img.width, img.height, img.h, axis));
}

Sparse forward_difference_matrix(int width, int height, double h, Axis axis)
{
    return difference_matrix(width, height, h, axis, true);
}

Sparse backward_difference_matrix(int width, int height, double h, Axis axis)
{
    return difference_matrix(width, height, h, axis, false);
}

Sparse grid_gradient_matrix(int width, int height, double h)
{
    const Eigen::Index n = static_cast<Eigen::Index>(width) * height;
    Triplets t;
    scatter(t, forward_difference_matrix(width, height, h, Axis::x), 2, 0, 1, 0, 1.0);
    scatter(t, forward_difference_matrix(width, height, h, Axis::y), 2, 1, 1, 0, 1.0);
    Sparse m(2 * n, n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Sparse grid_sym_jacobian_matrix(int width, int height, double h)
{
    const Eigen::Index n = static_cast<Eigen::Index>(width) * height;
    const Sparse dx = backward_difference_matrix(width, height, h, Axis::x);
    const Sparse dy = backward_difference_matrix(width, height, h, Axis::y);
    Triplets t;
    scatter(t, dx, 4, 0, 2, 0, 1.0);
    for (int off : {1, 2}) {
        scatter(t, dy, 4, off, 2, 0, 0.5);
        scatter(t, dx, 4, off, 2, 1, 0.5);
    }
    scatter(t, dy, 4, 3, 2, 1, 1.0);
    Sparse m(4 * n, 2 * n);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

namespace {

double group_sum(const Eigen::VectorXd& v, int group)
{
    double sum = 0.0;
    for (Eigen::Index g = 0; g < v.size(); g += group) sum += v.segment(g, group).norm();
    return sum;
}

ShrinkBlock first_block(const GridImage& u, bool with_u, const TgvParams& p, double lambda)
{
    const Eigen::Index n = u.pixels();
    const Sparse grad = grid_gradient_matrix(u.width, u.height, u.h);
    const Eigen::Index cols = (with_u ? n : 0) + 2 * n;
    Triplets t;
    if (with_u) scatter(t, grad, 1, 0, 1, 0, 1.0);
    const int w0 = with_u ? static_cast<int>(n) : 0;
    for (int r = 0; r < static_cast<int>(2 * n); ++r) t.emplace_back(r, w0 + r, -1.0);

    ShrinkBlock block;
    block.name = "grad u - w";
    block.op = Sparse(2 * n, cols);
    block.op.setFromTriplets(t.begin(), t.end());
    if (!with_u) block.offset = grad * u.values;
    block.weights = Eigen::VectorXd::Ones(n);
    block.group_size = 2;
    block.alpha = p.alpha1;
    block.lambda = lambda;
    return block;
}

ShrinkBlock second_block(const GridImage& u, bool with_u, const TgvParams& p, double lambda)
{
    const Eigen::Index n = u.pixels();
    const Sparse e = grid_sym_jacobian_matrix(u.width, u.height, u.h);
    Triplets t;
    scatter(t, e, 1, 0, 1, with_u ? static_cast<int>(n) : 0, 1.0);

    ShrinkBlock block;
    block.name = "E w";
    block.op = Sparse(4 * n, (with_u ? n : 0) + 2 * n);
    block.op.setFromTriplets(t.begin(), t.end());
    block.weights = Eigen::VectorXd::Ones(n);
    block.group_size = 4;
    block.alpha = p.alpha0;
    block.lambda = lambda;
    return block;
}

} // namespace

double grid_tgv_objective(const GridImage& u, const Eigen::VectorXd& w, const TgvParams& p)
{
    u.validate();
    if (w.size() != 2 * u.pixels()) throw SizeMismatch("w must hold two components per pixel");
    const Eigen::VectorXd first = grid_gradient_matrix(u.width, u.height, u.h) * u.values - w;
    const Eigen::VectorXd second = grid_sym_jacobian_matrix(u.width, u.height, u.h) * w;
    return p.alpha1 * group_sum(first, 2) + p.alpha0 * group_sum(second, 4);
}

double grid_tgv_value(const GridImage& u, const TgvParams& p, double tol, double lambda, int max_iter)
{
    u.validate();
    SplitProblem problem;
    problem.unknowns = 2 * u.pixels();
    problem.blocks.push_back(first_block(u, false, p, lambda));
    problem.blocks.push_back(second_block(u, false, p, lambda));
    return minimize_split(std::move(problem), tol, max_iter, "grid_tgv_value");
}

GridDenoiseResult solve_grid_denoise(const GridImage& f, const TgvParams& p, const PenaltyParams& penalties,
                                     const StopCriteria& stop, const std::vector<bool>* mask)
{
    f.validate();
    const Eigen::Index n = f.pixels();
    if (mask && static_cast<Eigen::Index>(mask->size()) != n) throw SizeMismatch("mask size != pixel count");

    SplitProblem problem;
    problem.unknowns = 3 * n;
    problem.fidelity = Eigen::VectorXd::Zero(3 * n);
    problem.data = Eigen::VectorXd::Zero(3 * n);
    for (Eigen::Index k = 0; k < n; ++k) {
        problem.fidelity[k] = (!mask || (*mask)[static_cast<std::size_t>(k)]) ? 1.0 : 0.0;
    }
    problem.data.head(n) = f.values;
    problem.blocks.push_back(first_block(f, true, p, penalties.lambda0));
    problem.blocks.push_back(second_block(f, true, p, penalties.lambda1));

    const SplitBregman engine(std::move(problem));
    SplitResult run = engine.run(stop);

    GridDenoiseResult out;
    out.u = f;
    const Eigen::VectorXd& z = run.report.converged ? run.z : run.best_z;
    out.u.values = z.head(n);
    out.w = z.tail(2 * n);
    out.report = std::move(run.report);
    return out;
}

} // namespace fetgv
