#include <fetgv/quality.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace fetgv {

namespace {

std::string format_double(double x)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void check_pair(const TriMesh& mesh, const Dg0Field& u, const Dg0Field& v)
{
    const auto n = static_cast<Eigen::Index>(mesh.num_triangles());
    if (u.values.size() != n || v.values.size() != n) throw MeshMismatch("SSIM fields do not match the mesh");
}

} // namespace

void SsimConfig::validate() const
{
    if (!(c1 > 0.0) || !(c2 > 0.0)) throw std::invalid_argument("SSIM constants must be positive");
    if (radius < 0) throw std::invalid_argument("SSIM hop radius must be nonnegative");
    if (window < 1 || window % 2 == 0) throw std::invalid_argument("SSIM window must be a positive odd integer");
}

std::string SsimConfig::mesh_fingerprint() const
{
    return "mesh;radius=" + std::to_string(radius) + ";c1=" + format_double(c1) + ";c2=" + format_double(c2);
}

std::string SsimConfig::grid_fingerprint() const
{
    return "grid;window=" + std::to_string(window) + ";c1=" + format_double(c1) + ";c2=" + format_double(c2);
}

WindowStats mesh_window_stats(const TriMesh& mesh, const DualGraph& graph, const Dg0Field& u, const Dg0Field& v,
                              int triangle, int radius)
{
    check_pair(mesh, u, v);
    const std::vector<int> ball = graph_distance_ball(graph, triangle, radius);
    double area = 0.0;
    WindowStats s;
    for (int t : ball) {
        const double a = mesh.area(t);
        area += a;
        s.mu_u += a * u.values[t];
        s.mu_v += a * v.values[t];
    }
    s.mu_u /= area;
    s.mu_v /= area;
    for (int t : ball) {
        const double a = mesh.area(t);
        const double du = u.values[t] - s.mu_u;
        const double dv = v.values[t] - s.mu_v;
        s.var_u += a * (du * du);
        s.var_v += a * (dv * dv);
        s.cov += a * (du * dv);
    }
    s.var_u /= area;
    s.var_v /= area;
    s.cov /= area;
    return s;
}

double ssim_from_stats(const WindowStats& s, const SsimConfig& cfg)
{
    const double num = (2.0 * (s.mu_u * s.mu_v) + cfg.c1) * (2.0 * s.cov + cfg.c2);
    const double den = (s.mu_u * s.mu_u + s.mu_v * s.mu_v + cfg.c1) * (s.var_u + s.var_v + cfg.c2);
    return num / den;
}

double ssim_at(const TriMesh& mesh, const DualGraph& graph, const Dg0Field& u, const Dg0Field& v, int triangle,
               const SsimConfig& cfg)
{
    return ssim_from_stats(mesh_window_stats(mesh, graph, u, v, triangle, cfg.radius), cfg);
}

double mssim(const TriMesh& mesh, const Dg0Field& u, const Dg0Field& v, const SsimConfig& cfg)
{
    cfg.validate();
    check_pair(mesh, u, v);
    const DualGraph graph = dual_graph(mesh);
    double area = 0.0;
    double sum = 0.0;
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        area += mesh.area(t);
        sum += mesh.area(t) * ssim_at(mesh, graph, u, v, t, cfg);
    }
    return sum / area;
}

WindowStats grid_window_stats(const GridImage& u, const GridImage& v, int i, int j, int window)
{
    const int half = window / 2;
    const int i0 = std::max(0, i - half);
    const int i1 = std::min(u.width - 1, i + half);
    const int j0 = std::max(0, j - half);
    const int j1 = std::min(u.height - 1, j + half);
    const double count = static_cast<double>((i1 - i0 + 1) * (j1 - j0 + 1));
    WindowStats s;
    for (int y = j0; y <= j1; ++y) {
        for (int x = i0; x <= i1; ++x) {
            s.mu_u += u.at(x, y);
            s.mu_v += v.at(x, y);
        }
    }
    s.mu_u /= count;
    s.mu_v /= count;
    for (int y = j0; y <= j1; ++y) {
        for (int x = i0; x <= i1; ++x) {
            const double du = u.at(x, y) - s.mu_u;
            const double dv = v.at(x, y) - s.mu_v;
            s.var_u += du * du;
            s.var_v += dv * dv;
            s.cov += du * dv;
        }
    }
    s.var_u /= count;
    s.var_v /= count;
    s.cov /= count;
    return s;
}

double mssim(const GridImage& u, const GridImage& v, const SsimConfig& cfg)
{
    cfg.validate();
    u.validate();
    v.validate();
    if (u.width != v.width || u.height != v.height) throw SizeMismatch("images differ in size");
    double sum = 0.0;
    for (int j = 0; j < u.height; ++j) {
        for (int i = 0; i < u.width; ++i) sum += ssim_from_stats(grid_window_stats(u, v, i, j, cfg.window), cfg);
    }
    return sum / static_cast<double>(u.pixels());
}

} // namespace fetgv
