#include <fetgv/functionals.hpp>

#include <cmath>
#include <optional>
#include <string>

namespace fetgv {

namespace {

void check_tol(double tol)
{
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

} // namespace

double tv_dg0(const FeSpace& space, const Dg0Field& u)
{
    space.check(u);
    const TriMesh& mesh = space.mesh();
    double sum = 0.0;
    for (int e : mesh.interior_edges()) sum += mesh.edge(e).length * std::abs(space.scalar_jump(u, e));
    return sum;
}

double fetgv_objective(const FeSpace& space, const Dg0Field& u, const Rt1Field& w, const TgvParams& p)
{
    space.check(u);
    space.check(w);
    const TriMesh& mesh = space.mesh();
    double first = 0.0;
    double jumps = 0.0;
    for (int e : mesh.interior_edges()) {
        const Edge& edge = mesh.edge(e);
        first += edge.length * std::abs(space.scalar_jump(u, e) + edge.h * space.rt_normal_component(w, e));
        jumps += space.edge_interpolated_norm(w, e);
    }
    double grad = 0.0;
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        grad += mesh.area(t) * space.rt_gradient(w, t).norm();
    }
    return p.alpha1 * first + p.alpha0 * (grad + jumps);
}

double lapfetgv_objective(const FeSpace& space, const Dg0Field& u, const Rt1Field& w, const TgvParams& p)
{
    space.check(u);
    space.check(w);
    const TriMesh& mesh = space.mesh();
    for (int e : mesh.boundary_edges()) {
        if (w.dofs[e] != 0.0) {
            throw BoundaryDofNonzero("boundary edge " + std::to_string(e) + " carries a nonzero flux");
        }
    }
    double first = 0.0;
    for (int e : mesh.interior_edges()) {
        const double len = mesh.edge(e).length;
        first += len * std::abs(space.scalar_jump(u, e) + space.rt_normal_component(w, e) / len);
    }
    double div = 0.0;
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        // div w = trace(c I) = 2c.
        div += mesh.area(t) * std::abs(2.0 * space.rt_local(w, t).c);
    }
    return p.alpha1 * first + p.alpha0 * div;
}

double regularizer_objective(const FeSpace& space, Regularizer kind, const Dg0Field& u, const Rt1Field& w,
                             const TgvParams& p)
{
    switch (kind) {
    case Regularizer::tv: return p.alpha1 * tv_dg0(space, u);
    case Regularizer::fetgv: return fetgv_objective(space, u, w, p);
    case Regularizer::lapfetgv: return lapfetgv_objective(space, u, w, p);
    }
    throw std::invalid_argument("unknown regularizer");
}

double denoise_objective(const FeSpace& space, Regularizer kind, const Dg0Field& f, const Dg0Field& u,
                         const Rt1Field& w, const TgvParams& p, const std::vector<bool>* mask)
{
    space.check(f);
    space.check(u);
    const Eigen::VectorXd fid = fidelity_weights(space.mesh(), mask);
    return 0.5 * fid.dot((u.values - f.values).cwiseAbs2()) + regularizer_objective(space, kind, u, w, p);
}

double minimize_split(SplitProblem problem, double tol, int max_iter, const char* what)
{
    check_tol(tol);
    std::optional<SplitBregman> engine;
    try {
        engine.emplace(problem);
    } catch (const SingularSystem&) {
        // The auxiliary variable has directions that no term sees (e.g. a
        // constant field on a single interior edge with h_E = 0). Any point
        // on that affine set is a minimizer, so a vanishing proximal term is
        // enough to make the step well posed.
        const Eigen::VectorXd diag = SplitBregman::assemble(problem).diagonal();
        const double scale = diag.size() > 0 ? diag.cwiseAbs().maxCoeff() : 1.0;
        problem.proximal = 1e-6 * (scale > 0.0 ? scale : 1.0);
        engine.emplace(std::move(problem));
    }
    const SplitResult result = engine->run(StopCriteria{tol, tol, max_iter});
    if (!result.report.converged) {
        throw NoConvergence(std::string(what) + ": no convergence in " + std::to_string(max_iter) + " iterations",
                            result.best_objective);
    }
    return result.best_objective;
}

namespace {

double fe_value(const FeSpace& space, Regularizer kind, const Dg0Field& u, const TgvParams& p, double tol,
                const ValueSettings& settings, const char* what)
{
    space.check(u);
    const FeOperators ops(space, kind, false);
    SplitProblem problem;
    problem.unknowns = ops.unknowns();
    problem.blocks = ops.blocks(p, PenaltyParams::uniform(settings.lambda), &u);
    if (problem.unknowns == 0) return p.alpha1 * tv_dg0(space, u);
    return minimize_split(std::move(problem), tol, settings.max_iter, what);
}

} // namespace

double fetgv_value(const FeSpace& space, const Dg0Field& u, const TgvParams& p, double tol,
                   const ValueSettings& settings)
{
    return fe_value(space, Regularizer::fetgv, u, p, tol, settings, "fetgv_value");
}

double lapfetgv_value(const FeSpace& space, const Dg0Field& u, const TgvParams& p, double tol,
                      const ValueSettings& settings)
{
    return fe_value(space, Regularizer::lapfetgv, u, p, tol, settings, "lapfetgv_value");
}

double regularizer_value(const FeSpace& space, Regularizer kind, const Dg0Field& u, const TgvParams& p,
                         double tol, const ValueSettings& settings)
{
    switch (kind) {
    case Regularizer::tv: return p.alpha1 * tv_dg0(space, u);
    case Regularizer::fetgv: return fetgv_value(space, u, p, tol, settings);
    case Regularizer::lapfetgv: return lapfetgv_value(space, u, p, tol, settings);
    }
    throw std::invalid_argument("unknown regularizer");
}

Eigen::SparseMatrix<double> incidence_matrix(const DualGraph& graph)
{
    std::vector<Eigen::Triplet<double>> t;
    for (std::size_t l = 0; l < graph.links.size(); ++l) {
        const auto& link = graph.links[l];
        t.emplace_back(static_cast<int>(l), link.a, link.weight);
        t.emplace_back(static_cast<int>(l), link.b, -link.weight);
    }
    Eigen::SparseMatrix<double> j(static_cast<Eigen::Index>(graph.links.size()),
                                  static_cast<Eigen::Index>(graph.num_nodes));
    j.setFromTriplets(t.begin(), t.end());
    return j;
}

double graph_tv_value(const DualGraph& graph, const Eigen::VectorXd& u)
{
    if (static_cast<std::size_t>(u.size()) != graph.num_nodes) throw MeshMismatch("signal length != node count");
    return (incidence_matrix(graph) * u).lpNorm<1>();
}

double graph_tgv_objective(const DualGraph& graph, const Eigen::VectorXd& u, const Eigen::VectorXd& q,
                           const TgvParams& p)
{
    if (static_cast<std::size_t>(u.size()) != graph.num_nodes) throw MeshMismatch("signal length != node count");
    if (static_cast<std::size_t>(q.size()) != graph.links.size()) throw MeshMismatch("q length != link count");
    const Eigen::SparseMatrix<double> j = incidence_matrix(graph);
    return p.alpha1 * (j * u - q).lpNorm<1>() + p.alpha0 * (Eigen::SparseMatrix<double>(j.transpose()) * q).lpNorm<1>();
}

double graph_tgv_value(const DualGraph& graph, const Eigen::VectorXd& u, const TgvParams& p, double tol,
                       const ValueSettings& settings)
{
    if (static_cast<std::size_t>(u.size()) != graph.num_nodes) throw MeshMismatch("signal length != node count");
    const Eigen::SparseMatrix<double> j = incidence_matrix(graph);
    const Eigen::Index links = j.rows();
    if (links == 0) return 0.0;

    Eigen::SparseMatrix<double> minus_id(links, links);
    minus_id.setIdentity();
    minus_id *= -1.0;

    SplitProblem problem;
    problem.unknowns = links;

    ShrinkBlock first;
    first.name = "Ju-q";
    first.op = minus_id;
    first.offset = j * u;
    first.weights = Eigen::VectorXd::Ones(links);
    first.alpha = p.alpha1;
    first.lambda = settings.lambda;
    problem.blocks.push_back(std::move(first));

    ShrinkBlock second;
    second.name = "J^Tq";
    second.op = j.transpose();
    second.weights = Eigen::VectorXd::Ones(j.cols());
    second.alpha = p.alpha0;
    second.lambda = settings.lambda;
    problem.blocks.push_back(std::move(second));

    return minimize_split(std::move(problem), tol, settings.max_iter, "graph_tgv_value");
}

} // namespace fetgv
