#pragma once

#include <fetgv/fespace.hpp>
#include <fetgv/grid.hpp>
#include <fetgv/mesh.hpp>

#include <string>

namespace fetgv {

///
/// SSIM constants and window. `radius` is the dual-graph hop radius used on
/// meshes, `window` the odd side length of the square pixel window on grids.
/// Scores assume data scaled to [0, 1].
///
struct SsimConfig
{
    double c1 = 0.01;
    double c2 = 0.03;
    int radius = 6;
    int window = 11;

    void validate() const;
    /// Identifies every setting that affects a mesh (or grid) score.
    std::string mesh_fingerprint() const;
    std::string grid_fingerprint() const;
};

/// Window means, (population) variances and covariance.
struct WindowStats
{
    double mu_u = 0.0;
    double mu_v = 0.0;
    double var_u = 0.0;
    double var_v = 0.0;
    double cov = 0.0;
};

/// Area-weighted moments over the hop ball of `triangle`.
WindowStats mesh_window_stats(const TriMesh& mesh, const DualGraph& graph, const Dg0Field& u, const Dg0Field& v,
                              int triangle, int radius);

/// ((2 mu_u mu_v + C1)(2 cov + C2)) / ((mu_u^2 + mu_v^2 + C1)(var_u + var_v + C2)).
double ssim_from_stats(const WindowStats& s, const SsimConfig& cfg);

double ssim_at(const TriMesh& mesh, const DualGraph& graph, const Dg0Field& u, const Dg0Field& v, int triangle,
               const SsimConfig& cfg);

/// Area-weighted mean of the per-triangle SSIM.
double mssim(const TriMesh& mesh, const Dg0Field& u, const Dg0Field& v, const SsimConfig& cfg);

/// Plain pixel moments over the window centered at (i, j), truncated at the border.
WindowStats grid_window_stats(const GridImage& u, const GridImage& v, int i, int j, int window);

/// Pixel average of the windowed SSIM. Throws SizeMismatch.
double mssim(const GridImage& u, const GridImage& v, const SsimConfig& cfg);

} // namespace fetgv
