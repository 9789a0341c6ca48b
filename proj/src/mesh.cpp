#include <fetgv/mesh.hpp>

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <tuple>

namespace fetgv {

namespace {

constexpr double k_degenerate_tol = 1e-14;

Vec3 outward_normal(const Vec3& p, const Vec3& q, const Vec3& opposite)
{
    const Vec3 t = (q - p).normalized();
    Vec3 d = opposite - p;
    d -= d.dot(t) * t;
    return -d.normalized();
}

void check_triangle(const Vec3& a, const Vec3& b, const Vec3& c, int index)
{
    const double twice_area = (b - a).cross(c - a).norm();
    const double longest =
        std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
    if (!(twice_area >= k_degenerate_tol * longest) || twice_area == 0.0) {
        std::ostringstream msg;
        msg << "triangle " << index << " is degenerate (2*area = " << twice_area << ")";
        throw DegenerateTriangle(msg.str());
    }
}

} // namespace

Vec3 circumcenter(const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 n = ab.cross(ac);
    const double n2 = n.squaredNorm();
    const double longest =
        std::max({ab.squaredNorm(), ac.squaredNorm(), (c - b).squaredNorm()});
    if (!(std::sqrt(n2) >= k_degenerate_tol * longest) || n2 == 0.0) {
        throw DegenerateTriangle("circumcenter of a degenerate triangle");
    }
    return a + (ac.squaredNorm() * n.cross(ab) + ab.squaredNorm() * ac.cross(n)) / (2.0 * n2);
}

double edge_factor_planar(const TriMesh& mesh, int edge)
{
    const Edge& e = mesh.edge(edge);
    if (e.is_boundary()) return 0.0;
    return (mesh.circumcenter(e.t_plus) - mesh.circumcenter(e.t_minus)).dot(e.mu_minus);
}

double edge_factor_surface(const TriMesh& mesh, int edge)
{
    const Edge& e = mesh.edge(edge);
    if (e.is_boundary()) return 0.0;
    return e.mu_plus.dot(e.midpoint - mesh.circumcenter(e.t_plus)) +
           e.mu_minus.dot(e.midpoint - mesh.circumcenter(e.t_minus));
}

double TriMesh::total_area() const
{
    return std::accumulate(m_areas.begin(), m_areas.end(), 0.0);
}

double TriMesh::diameter() const
{
    if (m_vertices.empty()) return 0.0;
    Vec3 lo = m_vertices.front();
    Vec3 hi = lo;
    for (const Vec3& v : m_vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    return (hi - lo).norm();
}

TriMesh build_mesh(const std::vector<Vec2>& vertex_coords, std::vector<Triangle> triangles)
{
    std::vector<Vec3> coords;
    coords.reserve(vertex_coords.size());
    for (const Vec2& p : vertex_coords) coords.emplace_back(p.x(), p.y(), 0.0);
    return build_mesh(std::move(coords), std::move(triangles), 2);
}

TriMesh build_mesh(std::vector<Vec3> vertex_coords, std::vector<Triangle> triangles, int dimension)
{
    if (dimension != 2 && dimension != 3) {
        throw MeshError("mesh dimension must be 2 or 3");
    }
    TriMesh mesh;
    mesh.m_dimension = dimension;
    mesh.m_vertices = std::move(vertex_coords);
    mesh.m_triangles = std::move(triangles);

    const int nv = static_cast<int>(mesh.m_vertices.size());
    const int nt = static_cast<int>(mesh.m_triangles.size());
    if (dimension == 2) {
        for (const Vec3& v : mesh.m_vertices) {
            if (v.z() != 0.0) throw MeshError("planar mesh with nonzero z coordinate");
        }
    }

    // Per-triangle geometry.
    mesh.m_areas.resize(static_cast<std::size_t>(nt));
    mesh.m_circumcenters.resize(static_cast<std::size_t>(nt));
    mesh.m_frames.resize(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        const Triangle& tri = mesh.m_triangles[static_cast<std::size_t>(t)];
        for (int k = 0; k < 3; ++k) {
            if (tri[k] < 0 || tri[k] >= nv) {
                throw std::out_of_range("triangle " + std::to_string(t) + " has vertex index out of range");
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            throw MeshError("triangle " + std::to_string(t) + " repeats a vertex");
        }
        const Vec3& a = mesh.vertex(tri[0]);
        const Vec3& b = mesh.vertex(tri[1]);
        const Vec3& c = mesh.vertex(tri[2]);
        check_triangle(a, b, c, t);
        const Vec3 n = (b - a).cross(c - a);
        mesh.m_areas[static_cast<std::size_t>(t)] = 0.5 * n.norm();
        mesh.m_circumcenters[static_cast<std::size_t>(t)] = circumcenter(a, b, c);
        if (dimension == 3) {
            TriangleFrame& f = mesh.m_frames[static_cast<std::size_t>(t)];
            f.origin = mesh.m_circumcenters[static_cast<std::size_t>(t)];
            f.e1 = (b - a).normalized();
            f.e2 = n.normalized().cross(f.e1);
        }
    }

    // Edges, sorted by (v_a, v_b) then by triangle index.
    std::vector<std::tuple<int, int, int, int>> half; // v_a, v_b, triangle, local slot
    half.reserve(static_cast<std::size_t>(3 * nt));
    for (int t = 0; t < nt; ++t) {
        const Triangle& tri = mesh.m_triangles[static_cast<std::size_t>(t)];
        for (int k = 0; k < 3; ++k) {
            const int p = tri[k];
            const int q = tri[(k + 1) % 3];
            half.emplace_back(std::min(p, q), std::max(p, q), t, k);
        }
    }
    std::sort(half.begin(), half.end());

    mesh.m_triangle_edges.assign(static_cast<std::size_t>(nt), {-1, -1, -1});
    for (std::size_t i = 0; i < half.size();) {
        std::size_t j = i;
        while (j < half.size() && std::get<0>(half[j]) == std::get<0>(half[i]) &&
               std::get<1>(half[j]) == std::get<1>(half[i])) {
            ++j;
        }
        if (j - i > 2) {
            std::ostringstream msg;
            msg << "edge (" << std::get<0>(half[i]) << ", " << std::get<1>(half[i]) << ") is shared by "
                << (j - i) << " triangles";
            throw NonManifoldEdge(msg.str());
        }
        if (j - i == 2 && std::get<2>(half[i]) == std::get<2>(half[i + 1])) {
            throw MeshError("triangle lists the same edge twice");
        }

        Edge e;
        e.v_a = std::get<0>(half[i]);
        e.v_b = std::get<1>(half[i]);
        e.t_plus = std::get<2>(half[i]);
        e.t_minus = (j - i == 2) ? std::get<2>(half[i + 1]) : -1;
        const Vec3& pa = mesh.vertex(e.v_a);
        const Vec3& pb = mesh.vertex(e.v_b);
        e.length = (pb - pa).norm();
        e.tangent = (pb - pa) / e.length;
        e.midpoint = 0.5 * (pa + pb);

        const int edge_index = static_cast<int>(mesh.m_edges.size());
        auto opposite = [&](int t, int slot) {
            return mesh.vertex(mesh.m_triangles[static_cast<std::size_t>(t)][(slot + 2) % 3]);
        };
        e.mu_plus = outward_normal(pa, pb, opposite(e.t_plus, std::get<3>(half[i])));
        mesh.m_triangle_edges[static_cast<std::size_t>(e.t_plus)][static_cast<std::size_t>(std::get<3>(half[i]))] =
            edge_index;
        if (e.t_minus >= 0) {
            e.mu_minus = outward_normal(pa, pb, opposite(e.t_minus, std::get<3>(half[i + 1])));
            mesh.m_triangle_edges[static_cast<std::size_t>(e.t_minus)]
                                 [static_cast<std::size_t>(std::get<3>(half[i + 1]))] = edge_index;
        }
        mesh.m_edges.push_back(e);
        i = j;
    }

    mesh.m_interior_slot.assign(mesh.m_edges.size(), -1);
    for (int e = 0; e < static_cast<int>(mesh.m_edges.size()); ++e) {
        if (mesh.m_edges[static_cast<std::size_t>(e)].is_boundary()) {
            mesh.m_boundary.push_back(e);
        } else {
            mesh.m_interior_slot[static_cast<std::size_t>(e)] = static_cast<int>(mesh.m_interior.size());
            mesh.m_interior.push_back(e);
        }
    }

    for (int e : mesh.m_interior) {
        Edge& edge = mesh.m_edges[static_cast<std::size_t>(e)];
        edge.h = dimension == 2 ? edge_factor_planar(mesh, e) : edge_factor_surface(mesh, e);
        if (edge.h < 0.0) ++mesh.m_negative_h;
    }
    return mesh;
}

int DualGraph::component_count() const
{
    std::vector<int> seen(num_nodes, 0);
    int count = 0;
    for (std::size_t start = 0; start < num_nodes; ++start) {
        if (seen[start]) continue;
        ++count;
        std::deque<int> queue{static_cast<int>(start)};
        seen[start] = 1;
        while (!queue.empty()) {
            const int n = queue.front();
            queue.pop_front();
            for (const auto& [next, link] : adjacency[static_cast<std::size_t>(n)]) {
                (void)link;
                if (!seen[static_cast<std::size_t>(next)]) {
                    seen[static_cast<std::size_t>(next)] = 1;
                    queue.push_back(next);
                }
            }
        }
    }
    return count;
}

DualGraph dual_graph(const TriMesh& mesh)
{
    DualGraph g;
    g.num_nodes = mesh.num_triangles();
    g.adjacency.resize(g.num_nodes);
    for (int e : mesh.interior_edges()) {
        const Edge& edge = mesh.edge(e);
        const int link = static_cast<int>(g.links.size());
        g.links.push_back({edge.t_plus, edge.t_minus, edge.length, e});
        g.adjacency[static_cast<std::size_t>(edge.t_plus)].emplace_back(edge.t_minus, link);
        g.adjacency[static_cast<std::size_t>(edge.t_minus)].emplace_back(edge.t_plus, link);
    }
    return g;
}

std::vector<int> graph_distance_ball(const DualGraph& graph, int node, int radius)
{
    if (node < 0 || static_cast<std::size_t>(node) >= graph.num_nodes) {
        throw std::out_of_range("graph node out of range");
    }
    if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");

    std::vector<int> depth(graph.num_nodes, -1);
    std::vector<int> ball{node};
    depth[static_cast<std::size_t>(node)] = 0;
    for (std::size_t head = 0; head < ball.size(); ++head) {
        const int n = ball[head];
        const int d = depth[static_cast<std::size_t>(n)];
        if (d == radius) continue;
        for (const auto& [next, link] : graph.adjacency[static_cast<std::size_t>(n)]) {
            (void)link;
            if (depth[static_cast<std::size_t>(next)] < 0) {
                depth[static_cast<std::size_t>(next)] = d + 1;
                ball.push_back(next);
            }
        }
    }
    return ball;
}

} // namespace fetgv
