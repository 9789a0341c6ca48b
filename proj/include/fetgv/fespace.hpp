#pragma once

#include <fetgv/mesh.hpp>

#include <Eigen/Core>

#include <array>
#include <functional>
#include <vector>

namespace fetgv {

/// Raised when an operation that needs two incident triangles gets a boundary edge.
class BoundaryEdge : public MeshError
{
public:
    using MeshError::MeshError;
};

/// Piecewise constant scalar: one value per triangle.
struct Dg0Field
{
    Eigen::VectorXd values;
};

///
/// Lowest-order Raviart-Thomas field: one DOF per edge (interior and
/// boundary), the flux of the t_plus restriction through the edge along
/// mu_plus.
///
struct Rt1Field
{
    Eigen::VectorXd dofs;
};

/// One value per interior edge, indexed like TriMesh::interior_edges().
struct EdgeScalarField
{
    Eigen::VectorXd values;
};

/// One 2x2 matrix per triangle, in the triangle's intrinsic frame.
struct CellMatrixField
{
    std::vector<Eigen::Matrix2d> values;
};

///
/// Two vectors per interior edge, sampled at X_{E,1} = v_a and X_{E,2} = v_b,
/// expressed in the edge frame (tangent, mu_plus). Surface edges keep only the
/// tangential component.
///
struct EdgeVectorP1Field
{
    std::vector<std::array<Vec2, 2>> values;
};

/// w(x) = a + c (x - origin) on one triangle, with a in the triangle frame.
struct RtLocal
{
    Vec2 a = Vec2::Zero();
    double c = 0.0;
};

///
/// DG0 / RT1 degrees of freedom on a TriMesh.
///
/// Holds a reference to the mesh, which must outlive the space. All RT local
/// algebra is done in each triangle's intrinsic frame so planar and surface
/// meshes share one code path.
///
class FeSpace
{
public:
    explicit FeSpace(const TriMesh& mesh);

    const TriMesh& mesh() const { return *m_mesh; }

    Dg0Field make_dg0(double value = 0.0) const;
    Rt1Field make_rt() const;

    void check(const Dg0Field& u) const;
    void check(const Rt1Field& w) const;

    /// u_plus - u_minus.
    double scalar_jump(const Dg0Field& u, int edge) const;

    RtLocal rt_local(const Rt1Field& w, int triangle) const;

    /// Value of the restriction of w to `triangle` at the point x (3D, in plane).
    Vec3 rt_value(const Rt1Field& w, int triangle, const Vec3& x) const;

    /// <w, mu_plus> on the edge, i.e. dof / |E|.
    double rt_normal_component(const Rt1Field& w, int edge) const;

    /// Jacobian of w on the triangle, c * I in the intrinsic frame.
    Eigen::Matrix2d rt_gradient(const Rt1Field& w, int triangle) const;

    /// Jump w_plus - w_minus at endpoint 1 (v_a) or 2 (v_b), in the edge frame.
    Vec2 rt_tangential_jump(const Rt1Field& w, int edge, int endpoint) const;

    /// (|E| / 2) * (|[w](X_{E,1})| + |[w](X_{E,2})|).
    double edge_interpolated_norm(const Rt1Field& w, int edge) const;

    EdgeScalarField jumps(const Dg0Field& u) const;
    CellMatrixField gradients(const Rt1Field& w) const;
    EdgeVectorP1Field endpoint_jumps(const Rt1Field& w) const;

    /// Interpolate a vector field into RT1 by integrating its mu_plus flux over
    /// each edge (two-point Gauss). Exact for fields of the form a + c x.
    Rt1Field rt_interpolate(const std::function<Vec3(const Vec3&)>& field) const;
    Rt1Field rt_constant(const Vec3& v) const;

    // Linear coefficient access used by operator assembly.

    /// Mesh edges of a triangle and the DOF sign seen from it (+1 if it is t_plus).
    const std::array<int, 3>& local_edges(int triangle) const;
    const std::array<double, 3>& local_signs(int triangle) const;
    /// Coefficient of each local DOF in w(x) on `triangle`.
    std::array<Vec3, 3> value_weights(int triangle, const Vec3& x) const;
    /// Coefficient of each local DOF in the slope c on `triangle`.
    std::array<double, 3> slope_weights(int triangle) const;
    /// Coefficients (per triangle DOF) of the endpoint jump, edge-frame components.
    struct JumpStencil
    {
        std::array<int, 6> dofs;
        std::array<Vec2, 6> weights;
    };
    JumpStencil jump_stencil(int edge, int endpoint) const;

private:
    Vec2 to_edge_frame(const Edge& e, const Vec3& v) const;

    const TriMesh* m_mesh;
    std::vector<std::array<int, 3>> m_edges;
    std::vector<std::array<double, 3>> m_signs;
    std::vector<Eigen::Matrix3d> m_inverse; ///< signed local DOFs -> (a_1, a_2, c)
};

} // namespace fetgv
