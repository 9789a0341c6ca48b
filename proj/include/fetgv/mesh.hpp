#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fetgv {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

class MeshError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// An edge is shared by more than two triangles.
class NonManifoldEdge : public MeshError
{
public:
    using MeshError::MeshError;
};

class DegenerateTriangle : public MeshError
{
public:
    using MeshError::MeshError;
};

/// Raised when a field or index does not belong to the mesh it is used with.
class MeshMismatch : public MeshError
{
public:
    using MeshError::MeshError;
};

///
/// One mesh edge with its incident triangles and the per-edge geometry used by
/// the jump-based regularizers.
///
/// Orientation: v_a < v_b, t_plus is the incident triangle with the smaller
/// index. Boundary edges have t_minus == -1 and zero mu_minus / h.
///
struct Edge
{
    int v_a = -1;
    int v_b = -1;
    int t_plus = -1;
    int t_minus = -1;
    double length = 0.0;
    Vec3 mu_plus = Vec3::Zero();  ///< outward unit normal of t_plus, in its plane
    Vec3 mu_minus = Vec3::Zero(); ///< outward unit normal of t_minus, in its plane
    Vec3 midpoint = Vec3::Zero();
    Vec3 tangent = Vec3::Zero(); ///< (x(v_b) - x(v_a)) / length
    double h = 0.0;              ///< signed circumcenter gap, see edge_factor_planar

    bool is_boundary() const { return t_minus < 0; }
};

/// Orthonormal frame of a triangle's plane. Planar meshes use the global axes
/// with origin zero; surface triangles are anchored at their circumcenter.
struct TriangleFrame
{
    Vec3 origin = Vec3::Zero();
    Vec3 e1 = Vec3::UnitX();
    Vec3 e2 = Vec3::UnitY();

    Vec2 to_local(const Vec3& v) const { return {v.dot(e1), v.dot(e2)}; }
    Vec3 to_global(const Vec2& v) const { return v.x() * e1 + v.y() * e2; }
};

///
/// Immutable triangle mesh, planar (dimension 2) or a surface embedded in 3D
/// (dimension 3). Planar coordinates are stored with z = 0.
///
class TriMesh
{
public:
    TriMesh() = default;

    int dimension() const { return m_dimension; }
    bool is_surface() const { return m_dimension == 3; }

    std::size_t num_vertices() const { return m_vertices.size(); }
    std::size_t num_triangles() const { return m_triangles.size(); }
    std::size_t num_edges() const { return m_edges.size(); }
    std::size_t num_interior_edges() const { return m_interior.size(); }

    const std::vector<Vec3>& vertices() const { return m_vertices; }
    const Vec3& vertex(int v) const { return m_vertices[static_cast<std::size_t>(v)]; }
    const std::vector<Triangle>& triangles() const { return m_triangles; }
    const Triangle& triangle(int t) const { return m_triangles[static_cast<std::size_t>(t)]; }

    const std::vector<Edge>& edges() const { return m_edges; }
    const Edge& edge(int e) const { return m_edges[static_cast<std::size_t>(e)]; }

    /// Indices into edges() of the interior / boundary edges, ascending.
    const std::vector<int>& interior_edges() const { return m_interior; }
    const std::vector<int>& boundary_edges() const { return m_boundary; }

    /// Position of an interior edge inside interior_edges(), -1 for boundary edges.
    int interior_index(int e) const { return m_interior_slot[static_cast<std::size_t>(e)]; }

    /// Edge k of triangle t joins its local vertices k and (k + 1) % 3.
    const std::array<int, 3>& triangle_edges(int t) const
    {
        return m_triangle_edges[static_cast<std::size_t>(t)];
    }

    double area(int t) const { return m_areas[static_cast<std::size_t>(t)]; }
    const std::vector<double>& areas() const { return m_areas; }
    const Vec3& circumcenter(int t) const { return m_circumcenters[static_cast<std::size_t>(t)]; }
    const TriangleFrame& frame(int t) const { return m_frames[static_cast<std::size_t>(t)]; }

    double total_area() const;
    /// Length of the bounding box diagonal.
    double diameter() const;

    /// Number of interior edges whose signed circumcenter gap is negative
    /// (non-Delaunay configurations).
    int negative_h_count() const { return m_negative_h; }

private:
    friend TriMesh build_mesh(std::vector<Vec3>, std::vector<Triangle>, int);

    int m_dimension = 2;
    std::vector<Vec3> m_vertices;
    std::vector<Triangle> m_triangles;
    std::vector<Edge> m_edges;
    std::vector<int> m_interior;
    std::vector<int> m_boundary;
    std::vector<int> m_interior_slot;
    std::vector<std::array<int, 3>> m_triangle_edges;
    std::vector<double> m_areas;
    std::vector<Vec3> m_circumcenters;
    std::vector<TriangleFrame> m_frames;
    int m_negative_h = 0;
};

///
/// Build a mesh and all derived quantities.
///
/// `dimension` is 2 for planar input (z coordinates must be zero) or 3 for
/// surface meshes. Throws std::out_of_range for bad indices, MeshError for
/// repeated vertices in a triangle, NonManifoldEdge and DegenerateTriangle.
///
TriMesh build_mesh(std::vector<Vec3> vertex_coords, std::vector<Triangle> triangles, int dimension);

/// Planar convenience overload.
TriMesh build_mesh(const std::vector<Vec2>& vertex_coords, std::vector<Triangle> triangles);

/// Point equidistant from a, b and c, in their plane.
Vec3 circumcenter(const Vec3& a, const Vec3& b, const Vec3& c);

/// h_E = <m_plus - m_minus, mu_minus>. Equals the circumcenter distance when
/// the circumcenters lie on their own sides of the edge; negative otherwise.
double edge_factor_planar(const TriMesh& mesh, int edge);

/// h_E = mu_plus.(m_E - m_plus) + mu_minus.(m_E - m_minus), each summand
/// measured inside its own triangle's plane.
double edge_factor_surface(const TriMesh& mesh, int edge);

///
/// Dual graph: one node per triangle, one link per interior mesh edge.
///
struct DualGraph
{
    struct Link
    {
        int a = -1; ///< t_plus of the mesh edge
        int b = -1; ///< t_minus of the mesh edge
        double weight = 1.0;
        int mesh_edge = -1;
    };

    std::size_t num_nodes = 0;
    std::vector<Link> links;
    /// (neighbor node, link index) per node.
    std::vector<std::vector<std::pair<int, int>>> adjacency;

    int component_count() const;
};

/// Dual graph with link weights |E|.
DualGraph dual_graph(const TriMesh& mesh);

/// All nodes within `radius` hops of `node` (BFS order, node first).
std::vector<int> graph_distance_ball(const DualGraph& graph, int node, int radius);

} // namespace fetgv
