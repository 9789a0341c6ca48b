#include <fetgv/fespace.hpp>

#include <Eigen/LU>

#include <cassert>
#include <cmath>
#include <string>

namespace fetgv {

FeSpace::FeSpace(const TriMesh& mesh)
    : m_mesh(&mesh)
{
    const int nt = static_cast<int>(mesh.num_triangles());
    m_edges.resize(static_cast<std::size_t>(nt));
    m_signs.resize(static_cast<std::size_t>(nt));
    m_inverse.resize(static_cast<std::size_t>(nt));

    for (int t = 0; t < nt; ++t) {
        const auto& edges = mesh.triangle_edges(t);
        const TriangleFrame& frame = mesh.frame(t);
        Eigen::Matrix3d local;
        for (int k = 0; k < 3; ++k) {
            const Edge& e = mesh.edge(edges[static_cast<std::size_t>(k)]);
            const bool plus = e.t_plus == t;
            const Vec3& n = plus ? e.mu_plus : e.mu_minus;
            // Outward flux of a + c (x - origin) through the edge.
            local(k, 0) = e.length * n.dot(frame.e1);
            local(k, 1) = e.length * n.dot(frame.e2);
            local(k, 2) = e.length * n.dot(e.midpoint - frame.origin);
            m_signs[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)] = plus ? 1.0 : -1.0;
        }
        m_edges[static_cast<std::size_t>(t)] = edges;
        Eigen::FullPivLU<Eigen::Matrix3d> lu(local);
        assert(lu.isInvertible() && "RT local system of a non-degenerate triangle");
        m_inverse[static_cast<std::size_t>(t)] = lu.inverse();
    }
}

Dg0Field FeSpace::make_dg0(double value) const
{
    return {Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m_mesh->num_triangles()), value)};
}

Rt1Field FeSpace::make_rt() const
{
    return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m_mesh->num_edges()))};
}

void FeSpace::check(const Dg0Field& u) const
{
    if (static_cast<std::size_t>(u.values.size()) != m_mesh->num_triangles()) {
        throw MeshMismatch("DG0 field has " + std::to_string(u.values.size()) + " values, mesh has " +
                           std::to_string(m_mesh->num_triangles()) + " triangles");
    }
}

void FeSpace::check(const Rt1Field& w) const
{
    if (static_cast<std::size_t>(w.dofs.size()) != m_mesh->num_edges()) {
        throw MeshMismatch("RT field has " + std::to_string(w.dofs.size()) + " dofs, mesh has " +
                           std::to_string(m_mesh->num_edges()) + " edges");
    }
}

double FeSpace::scalar_jump(const Dg0Field& u, int edge) const
{
    const Edge& e = m_mesh->edge(edge);
    if (e.is_boundary()) throw BoundaryEdge("jump requested on boundary edge " + std::to_string(edge));
    return u.values[e.t_plus] - u.values[e.t_minus];
}

RtLocal FeSpace::rt_local(const Rt1Field& w, int triangle) const
{
    const auto& edges = m_edges[static_cast<std::size_t>(triangle)];
    const auto& signs = m_signs[static_cast<std::size_t>(triangle)];
    Eigen::Vector3d rhs;
    for (int k = 0; k < 3; ++k) rhs[k] = signs[static_cast<std::size_t>(k)] * w.dofs[edges[static_cast<std::size_t>(k)]];
    const Eigen::Vector3d sol = m_inverse[static_cast<std::size_t>(triangle)] * rhs;
    return {Vec2(sol[0], sol[1]), sol[2]};
}

Vec3 FeSpace::rt_value(const Rt1Field& w, int triangle, const Vec3& x) const
{
    const RtLocal loc = rt_local(w, triangle);
    const TriangleFrame& frame = m_mesh->frame(triangle);
    return frame.to_global(loc.a) + loc.c * (x - frame.origin);
}

double FeSpace::rt_normal_component(const Rt1Field& w, int edge) const
{
    return w.dofs[edge] / m_mesh->edge(edge).length;
}

Eigen::Matrix2d FeSpace::rt_gradient(const Rt1Field& w, int triangle) const
{
    return rt_local(w, triangle).c * Eigen::Matrix2d::Identity();
}

Vec2 FeSpace::to_edge_frame(const Edge& e, const Vec3& v) const
{
    if (m_mesh->is_surface()) return {e.tangent.dot(v), 0.0};
    return {e.tangent.dot(v), e.mu_plus.dot(v)};
}

Vec2 FeSpace::rt_tangential_jump(const Rt1Field& w, int edge, int endpoint) const
{
    const Edge& e = m_mesh->edge(edge);
    if (e.is_boundary()) throw BoundaryEdge("jump requested on boundary edge " + std::to_string(edge));
    if (endpoint != 1 && endpoint != 2) throw std::invalid_argument("edge endpoint must be 1 or 2");
    const Vec3& x = m_mesh->vertex(endpoint == 1 ? e.v_a : e.v_b);
    return to_edge_frame(e, rt_value(w, e.t_plus, x) - rt_value(w, e.t_minus, x));
}

double FeSpace::edge_interpolated_norm(const Rt1Field& w, int edge) const
{
    const double len = m_mesh->edge(edge).length;
    return 0.5 * len * (rt_tangential_jump(w, edge, 1).norm() + rt_tangential_jump(w, edge, 2).norm());
}

EdgeScalarField FeSpace::jumps(const Dg0Field& u) const
{
    check(u);
    const auto& interior = m_mesh->interior_edges();
    EdgeScalarField out{Eigen::VectorXd(static_cast<Eigen::Index>(interior.size()))};
    for (std::size_t i = 0; i < interior.size(); ++i) out.values[static_cast<Eigen::Index>(i)] = scalar_jump(u, interior[i]);
    return out;
}

CellMatrixField FeSpace::gradients(const Rt1Field& w) const
{
    check(w);
    CellMatrixField out;
    out.values.reserve(m_mesh->num_triangles());
    for (int t = 0; t < static_cast<int>(m_mesh->num_triangles()); ++t) out.values.push_back(rt_gradient(w, t));
    return out;
}

EdgeVectorP1Field FeSpace::endpoint_jumps(const Rt1Field& w) const
{
    check(w);
    EdgeVectorP1Field out;
    out.values.reserve(m_mesh->num_interior_edges());
    for (int e : m_mesh->interior_edges()) {
        out.values.push_back({rt_tangential_jump(w, e, 1), rt_tangential_jump(w, e, 2)});
    }
    return out;
}

Rt1Field FeSpace::rt_interpolate(const std::function<Vec3(const Vec3&)>& field) const
{
    Rt1Field w = make_rt();
    const double g = 0.5 / std::sqrt(3.0);
    for (int i = 0; i < static_cast<int>(m_mesh->num_edges()); ++i) {
        const Edge& e = m_mesh->edge(i);
        const Vec3& a = m_mesh->vertex(e.v_a);
        const Vec3& b = m_mesh->vertex(e.v_b);
        const Vec3 x1 = e.midpoint - g * (b - a);
        const Vec3 x2 = e.midpoint + g * (b - a);
        w.dofs[i] = 0.5 * e.length * (field(x1).dot(e.mu_plus) + field(x2).dot(e.mu_plus));
    }
    return w;
}

Rt1Field FeSpace::rt_constant(const Vec3& v) const
{
    Rt1Field w = make_rt();
    for (int i = 0; i < static_cast<int>(m_mesh->num_edges()); ++i) {
        const Edge& e = m_mesh->edge(i);
        w.dofs[i] = e.length * v.dot(e.mu_plus);
    }
    return w;
}

const std::array<int, 3>& FeSpace::local_edges(int triangle) const
{
    return m_edges[static_cast<std::size_t>(triangle)];
}

const std::array<double, 3>& FeSpace::local_signs(int triangle) const
{
    return m_signs[static_cast<std::size_t>(triangle)];
}

std::array<Vec3, 3> FeSpace::value_weights(int triangle, const Vec3& x) const
{
    const auto& inv = m_inverse[static_cast<std::size_t>(triangle)];
    const auto& signs = m_signs[static_cast<std::size_t>(triangle)];
    const TriangleFrame& frame = m_mesh->frame(triangle);
    std::array<Vec3, 3> out;
    for (int k = 0; k < 3; ++k) {
        out[static_cast<std::size_t>(k)] =
            signs[static_cast<std::size_t>(k)] *
            (inv(0, k) * frame.e1 + inv(1, k) * frame.e2 + inv(2, k) * (x - frame.origin));
    }
    return out;
}

std::array<double, 3> FeSpace::slope_weights(int triangle) const
{
    const auto& inv = m_inverse[static_cast<std::size_t>(triangle)];
    const auto& signs = m_signs[static_cast<std::size_t>(triangle)];
    return {signs[0] * inv(2, 0), signs[1] * inv(2, 1), signs[2] * inv(2, 2)};
}

FeSpace::JumpStencil FeSpace::jump_stencil(int edge, int endpoint) const
{
    const Edge& e = m_mesh->edge(edge);
    if (e.is_boundary()) throw BoundaryEdge("jump requested on boundary edge " + std::to_string(edge));
    const Vec3& x = m_mesh->vertex(endpoint == 1 ? e.v_a : e.v_b);
    JumpStencil s;
    const auto plus = value_weights(e.t_plus, x);
    const auto minus = value_weights(e.t_minus, x);
    for (std::size_t k = 0; k < 3; ++k) {
        s.dofs[k] = m_edges[static_cast<std::size_t>(e.t_plus)][k];
        s.weights[k] = to_edge_frame(e, plus[k]);
        s.dofs[k + 3] = m_edges[static_cast<std::size_t>(e.t_minus)][k];
        s.weights[k + 3] = -to_edge_frame(e, minus[k]);
    }
    return s;
}

} // namespace fetgv
