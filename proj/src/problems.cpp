#include <fetgv/solver.hpp>

#include <stdexcept>

namespace fetgv {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Eigen::SparseMatrix<double> from_triplets(Eigen::Index rows, Eigen::Index cols, const Triplets& t)
{
    Eigen::SparseMatrix<double> m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

} // namespace

std::string to_string(Regularizer kind)
{
    switch (kind) {
    case Regularizer::tv: return "tv";
    case Regularizer::fetgv: return "fetgv";
    case Regularizer::lapfetgv: return "lapfetgv";
    }
    return "unknown";
}

Regularizer parse_regularizer(std::string_view name)
{
    if (name == "tv") return Regularizer::tv;
    if (name == "fetgv") return Regularizer::fetgv;
    if (name == "lapfetgv") return Regularizer::lapfetgv;
    throw std::invalid_argument("unknown regularizer '" + std::string(name) + "'");
}

FeOperators::FeOperators(const FeSpace& space, Regularizer kind, bool solve_for_u)
    : m_space(&space)
    , m_kind(kind)
    , m_u_count(solve_for_u ? static_cast<Eigen::Index>(space.mesh().num_triangles()) : 0)
{
    const TriMesh& mesh = space.mesh();
    m_w_slot.assign(mesh.num_edges(), -1);
    if (kind == Regularizer::fetgv) {
        for (int e = 0; e < static_cast<int>(mesh.num_edges()); ++e) m_w_edges.push_back(e);
    } else if (kind == Regularizer::lapfetgv) {
        m_w_edges = mesh.interior_edges();
    }
    for (std::size_t i = 0; i < m_w_edges.size(); ++i) m_w_slot[static_cast<std::size_t>(m_w_edges[i])] = static_cast<int>(i);
}

Eigen::VectorXd FeOperators::pack(const Dg0Field* u, const Rt1Field* w) const
{
    Eigen::VectorXd z = Eigen::VectorXd::Zero(unknowns());
    if (u && m_u_count > 0) {
        m_space->check(*u);
        z.head(m_u_count) = u->values;
    }
    if (w) {
        m_space->check(*w);
        for (std::size_t i = 0; i < m_w_edges.size(); ++i) {
            z[m_u_count + static_cast<Eigen::Index>(i)] = w->dofs[m_w_edges[i]];
        }
    }
    return z;
}

Dg0Field FeOperators::unpack_u(const Eigen::VectorXd& z) const
{
    if (m_u_count == 0) throw std::logic_error("operators were built with u fixed");
    return {z.head(m_u_count)};
}

Rt1Field FeOperators::unpack_w(const Eigen::VectorXd& z) const
{
    Rt1Field w = m_space->make_rt();
    for (std::size_t i = 0; i < m_w_edges.size(); ++i) {
        w.dofs[m_w_edges[i]] = z[m_u_count + static_cast<Eigen::Index>(i)];
    }
    return w;
}

std::vector<ShrinkBlock> FeOperators::blocks(const TgvParams& params, const PenaltyParams& penalties,
                                             const Dg0Field* fixed_u) const
{
    const TriMesh& mesh = m_space->mesh();
    const auto& interior = mesh.interior_edges();
    const Eigen::Index ni = static_cast<Eigen::Index>(interior.size());
    const Eigen::Index nt = static_cast<Eigen::Index>(mesh.num_triangles());
    const Eigen::Index n = unknowns();
    auto w_col = [&](int edge) { return m_u_count + m_w_slot[static_cast<std::size_t>(edge)]; };

    std::vector<ShrinkBlock> out;

    // First-order coupling on interior edges.
    {
        ShrinkBlock block;
        block.name = m_kind == Regularizer::tv ? "jump" : "d0";
        block.group_size = 1;
        block.alpha = params.alpha1;
        block.lambda = penalties.lambda0;
        block.weights.resize(ni);
        Triplets t;
        for (Eigen::Index i = 0; i < ni; ++i) {
            const int e = interior[static_cast<std::size_t>(i)];
            const Edge& edge = mesh.edge(e);
            block.weights[i] = edge.length;
            if (m_u_count > 0) {
                t.emplace_back(i, edge.t_plus, 1.0);
                t.emplace_back(i, edge.t_minus, -1.0);
            }
            if (m_kind == Regularizer::fetgv) {
                t.emplace_back(i, w_col(e), edge.h / edge.length);
            } else if (m_kind == Regularizer::lapfetgv) {
                t.emplace_back(i, w_col(e), 1.0 / (edge.length * edge.length));
            }
        }
        block.op = from_triplets(ni, n, t);
        if (fixed_u) block.offset = m_space->jumps(*fixed_u).values;
        out.push_back(std::move(block));
    }

    if (m_kind == Regularizer::fetgv) {
        ShrinkBlock grad;
        grad.name = "D1";
        grad.group_size = 4;
        grad.alpha = params.alpha0;
        grad.lambda = penalties.lambda1;
        grad.weights.resize(nt);
        Triplets t;
        for (int tri = 0; tri < static_cast<int>(nt); ++tri) {
            grad.weights[tri] = mesh.area(tri);
            const auto slope = m_space->slope_weights(tri);
            const auto& edges = m_space->local_edges(tri);
            for (std::size_t k = 0; k < 3; ++k) {
                t.emplace_back(4 * tri + 0, w_col(edges[k]), slope[k]);
                t.emplace_back(4 * tri + 3, w_col(edges[k]), slope[k]);
            }
        }
        grad.op = from_triplets(4 * nt, n, t);
        out.push_back(std::move(grad));

        ShrinkBlock jump;
        jump.name = "d2";
        jump.group_size = 2;
        jump.alpha = params.alpha0;
        jump.lambda = penalties.lambda2;
        jump.weights.resize(2 * ni);
        Triplets tj;
        for (Eigen::Index i = 0; i < ni; ++i) {
            const int e = interior[static_cast<std::size_t>(i)];
            for (int endpoint = 1; endpoint <= 2; ++endpoint) {
                const Eigen::Index group = 2 * i + (endpoint - 1);
                jump.weights[group] = 0.5 * mesh.edge(e).length;
                const auto stencil = m_space->jump_stencil(e, endpoint);
                for (std::size_t k = 0; k < 6; ++k) {
                    tj.emplace_back(2 * group + 0, w_col(stencil.dofs[k]), stencil.weights[k].x());
                    tj.emplace_back(2 * group + 1, w_col(stencil.dofs[k]), stencil.weights[k].y());
                }
            }
        }
        jump.op = from_triplets(4 * ni, n, tj);
        out.push_back(std::move(jump));
    } else if (m_kind == Regularizer::lapfetgv) {
        ShrinkBlock div;
        div.name = "div";
        div.group_size = 1;
        div.alpha = params.alpha0;
        div.lambda = penalties.lambda1;
        div.weights.resize(nt);
        Triplets t;
        for (int tri = 0; tri < static_cast<int>(nt); ++tri) {
            div.weights[tri] = mesh.area(tri);
            const auto& edges = m_space->local_edges(tri);
            const auto& signs = m_space->local_signs(tri);
            for (std::size_t k = 0; k < 3; ++k) {
                if (m_w_slot[static_cast<std::size_t>(edges[k])] < 0) continue;
                t.emplace_back(tri, w_col(edges[k]), signs[k] / mesh.area(tri));
            }
        }
        div.op = from_triplets(nt, n, t);
        out.push_back(std::move(div));
    }
    return out;
}

Eigen::VectorXd fidelity_weights(const TriMesh& mesh, const std::vector<bool>* mask)
{
    const Eigen::Index nt = static_cast<Eigen::Index>(mesh.num_triangles());
    if (mask && mask->size() != mesh.num_triangles()) {
        throw MeshMismatch("mask length does not match the triangle count");
    }
    Eigen::VectorXd w(nt);
    for (Eigen::Index t = 0; t < nt; ++t) {
        const bool observed = !mask || (*mask)[static_cast<std::size_t>(t)];
        w[t] = observed ? mesh.area(static_cast<int>(t)) : 0.0;
    }
    return w;
}

SplitBregman assemble_quadratic(const FeSpace& space, Regularizer kind, const Eigen::VectorXd& fidelity,
                                const Dg0Field& f, const TgvParams& params, const PenaltyParams& penalties)
{
    space.check(f);
    if (static_cast<std::size_t>(fidelity.size()) != space.mesh().num_triangles()) {
        throw MeshMismatch("fidelity weights do not match the triangle count");
    }
    const FeOperators ops(space, kind, true);
    SplitProblem problem;
    problem.unknowns = ops.unknowns();
    problem.fidelity = Eigen::VectorXd::Zero(problem.unknowns);
    problem.fidelity.head(ops.u_count()) = fidelity;
    problem.data = ops.pack(&f, nullptr);
    problem.blocks = ops.blocks(params, penalties);
    return SplitBregman(std::move(problem));
}

DenoiseResult solve_denoise(const FeSpace& space, const Dg0Field& f, const TgvParams& params,
                            const PenaltyParams& penalties, Regularizer kind, const StopCriteria& stop,
                            const std::vector<bool>* mask)
{
    const FeOperators ops(space, kind, true);
    const SplitBregman solver =
        assemble_quadratic(space, kind, fidelity_weights(space.mesh(), mask), f, params, penalties);
    SplitResult run = solver.run(stop);

    // Without convergence the final iterate carries no guarantee; hand back
    // the iterate with the lowest objective instead.
    const Eigen::VectorXd& z = run.report.converged ? run.z : run.best_z;
    DenoiseResult out;
    out.u = ops.unpack_u(z);
    out.w = ops.unpack_w(z);
    out.vars = std::move(run.vars);
    out.report = std::move(run.report);
    return out;
}

EdgeScalarField as_edge_scalar(const Eigen::VectorXd& block)
{
    return {block};
}

CellMatrixField as_cell_matrix(const Eigen::VectorXd& block)
{
    if (block.size() % 4 != 0) throw std::invalid_argument("matrix block length must be a multiple of 4");
    CellMatrixField out;
    for (Eigen::Index g = 0; g < block.size(); g += 4) {
        Eigen::Matrix2d m;
        m << block[g], block[g + 1], block[g + 2], block[g + 3];
        out.values.push_back(m);
    }
    return out;
}

EdgeVectorP1Field as_edge_vector(const Eigen::VectorXd& block)
{
    if (block.size() % 4 != 0) throw std::invalid_argument("edge vector block length must be a multiple of 4");
    EdgeVectorP1Field out;
    for (Eigen::Index g = 0; g < block.size(); g += 4) {
        out.values.push_back({Vec2(block[g], block[g + 1]), Vec2(block[g + 2], block[g + 3])});
    }
    return out;
}

} // namespace fetgv
