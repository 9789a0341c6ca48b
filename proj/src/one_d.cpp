#include <fetgv/functionals.hpp>
#include <fetgv/one_d.hpp>

#include <stdexcept>

namespace fetgv {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;
using Sparse = Eigen::SparseMatrix<double>;

void check_intervals(const Eigen::VectorXd& u, const Eigen::VectorXd& lengths)
{
    if (u.size() < 2) throw std::invalid_argument("at least two intervals are required");
    if (lengths.size() != u.size()) throw std::invalid_argument("one length per interval is required");
    if (!(lengths.array() > 0.0).all()) throw std::invalid_argument("interval lengths must be positive");
}

/// Rows: interior vertices 1..n-1, coupling -h_V w_V, offset u_V+ - u_V-.
ShrinkBlock vertex_block(const Eigen::VectorXd& u, const Eigen::VectorXd& lengths, double alpha, double lambda)
{
    const Eigen::Index n = u.size();
    Triplets t;
    ShrinkBlock block;
    block.name = "jump - h w";
    block.offset.resize(n - 1);
    for (Eigen::Index v = 1; v < n; ++v) {
        t.emplace_back(v - 1, v, -0.5 * (lengths[v - 1] + lengths[v]));
        block.offset[v - 1] = u[v] - u[v - 1];
    }
    block.op = Sparse(n - 1, n + 1);
    block.op.setFromTriplets(t.begin(), t.end());
    block.weights = Eigen::VectorXd::Ones(n - 1);
    block.alpha = alpha;
    block.lambda = lambda;
    return block;
}

/// Rows: intervals, w_right - w_left.
ShrinkBlock interval_block(Eigen::Index n, double alpha, double lambda)
{
    Triplets t;
    for (Eigen::Index i = 0; i < n; ++i) {
        t.emplace_back(i, i + 1, 1.0);
        t.emplace_back(i, i, -1.0);
    }
    ShrinkBlock block;
    block.name = "grad w";
    block.op = Sparse(n, n + 1);
    block.op.setFromTriplets(t.begin(), t.end());
    block.weights = Eigen::VectorXd::Ones(n);
    block.alpha = alpha;
    block.lambda = lambda;
    return block;
}

/// First-order rows: (u_{i+1} - u_i) - w_i for i = 1..n-1, then w_n.
ShrinkBlock bredies_first(const Eigen::VectorXd& u, double alpha, double lambda)
{
    const Eigen::Index n = u.size();
    Triplets t;
    ShrinkBlock block;
    block.name = "du - w";
    block.offset = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        t.emplace_back(i, i, -1.0);
        block.offset[i] = u[i + 1] - u[i];
    }
    t.emplace_back(n - 1, n - 1, 1.0);
    block.op = Sparse(n, n);
    block.op.setFromTriplets(t.begin(), t.end());
    block.weights = Eigen::VectorXd::Ones(n);
    block.alpha = alpha;
    block.lambda = lambda;
    return block;
}

/// Second-order rows: w_1, w_i - w_{i-1} for i = 2..n-1, -w_{n-1}.
ShrinkBlock bredies_second(Eigen::Index n, double alpha, double lambda)
{
    Triplets t;
    t.emplace_back(0, 0, 1.0);
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        t.emplace_back(i, i, 1.0);
        t.emplace_back(i, i - 1, -1.0);
    }
    t.emplace_back(n - 1, n - 2, -1.0);
    ShrinkBlock block;
    block.name = "bw";
    block.op = Sparse(n, n);
    block.op.setFromTriplets(t.begin(), t.end());
    block.weights = Eigen::VectorXd::Ones(n);
    block.alpha = alpha;
    block.lambda = lambda;
    return block;
}

double l1(const ShrinkBlock& block, const Eigen::VectorXd& w)
{
    Eigen::VectorXd v = block.op * w;
    if (block.offset.size() != 0) v += block.offset;
    return v.lpNorm<1>();
}

} // namespace

double fetgv_1d_objective(const Eigen::VectorXd& u, const Eigen::VectorXd& lengths, const Eigen::VectorXd& w,
                          const TgvParams& p)
{
    check_intervals(u, lengths);
    if (w.size() != u.size() + 1) throw std::invalid_argument("w needs one value per vertex");
    return p.alpha1 * l1(vertex_block(u, lengths, p.alpha1, 1.0), w) +
           p.alpha0 * l1(interval_block(u.size(), p.alpha0, 1.0), w);
}

double fetgv_1d_value(const Eigen::VectorXd& u, const Eigen::VectorXd& lengths, const TgvParams& p, double tol,
                      double lambda, int max_iter)
{
    check_intervals(u, lengths);
    SplitProblem problem;
    problem.unknowns = u.size() + 1;
    problem.blocks.push_back(vertex_block(u, lengths, p.alpha1, lambda));
    problem.blocks.push_back(interval_block(u.size(), p.alpha0, lambda));
    return minimize_split(std::move(problem), tol, max_iter, "fetgv_1d_value");
}

double bredies_1d_objective(const Eigen::VectorXd& u, const Eigen::VectorXd& w, const TgvParams& p)
{
    if (u.size() < 2) throw std::invalid_argument("at least two cells are required");
    if (w.size() != u.size()) throw std::invalid_argument("w needs one value per cell");
    return p.alpha1 * l1(bredies_first(u, p.alpha1, 1.0), w) + p.alpha0 * l1(bredies_second(u.size(), p.alpha0, 1.0), w);
}

double bredies_1d_value(const Eigen::VectorXd& u, const TgvParams& p, double tol, double lambda, int max_iter)
{
    if (u.size() < 2) throw std::invalid_argument("at least two cells are required");
    SplitProblem problem;
    problem.unknowns = u.size();
    problem.blocks.push_back(bredies_first(u, p.alpha1, lambda));
    problem.blocks.push_back(bredies_second(u.size(), p.alpha0, lambda));
    return minimize_split(std::move(problem), tol, max_iter, "bredies_1d_value");
}

} // namespace fetgv
