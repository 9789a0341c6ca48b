#include "test_support.hpp"

#include <fetgv/experiments.hpp>
#include <fetgv/pixel_mesh.hpp>
#include <fetgv/quality.hpp>

#include <doctest.h>

#include <cmath>

using namespace fetgv;
using namespace fetgv::testing;

TEST_CASE("window statistics on a two-triangle mesh")
{
    // Areas 1 and 3.
    const std::vector<Vec2> pts{Vec2(0, 0), Vec2(1, 0), Vec2(0, 2), Vec2(3, 2)};
    const TriMesh mesh = build_mesh(pts, {{0, 1, 2}, {1, 3, 2}});
    REQUIRE(mesh.area(0) == doctest::Approx(1.0));
    REQUIRE(mesh.area(1) == doctest::Approx(3.0));
    const DualGraph g = dual_graph(mesh);
    const Dg0Field u{Eigen::Vector2d(0, 4)};
    const WindowStats s = mesh_window_stats(mesh, g, u, u, 0, 1);
    CHECK(s.mu_u == doctest::Approx(3.0));
    // Population variance: (1 * 9 + 3 * 1) / 4.
    CHECK(s.var_u == doctest::Approx(3.0));
    CHECK(s.cov == doctest::Approx(s.var_u));

    const WindowStats single = mesh_window_stats(mesh, g, u, u, 1, 0);
    CHECK(single.mu_u == 4.0);
    CHECK(single.var_u == 0.0);
    CHECK_THROWS_AS(mesh_window_stats(mesh, g, u, {Eigen::Vector3d::Zero()}, 0, 1), MeshMismatch);
}

TEST_CASE("Cauchy-Schwarz and nonnegative variances")
{
    const TriMesh mesh = random_delaunay(5, 3).build();
    const DualGraph g = dual_graph(mesh);
    std::mt19937 rng(2);
    const Eigen::Index n = static_cast<Eigen::Index>(mesh.num_triangles());
    const Dg0Field u{random_vector(n, rng, 0, 1)}, v{random_vector(n, rng, 0, 1)};
    for (int t = 0; t < static_cast<int>(n); ++t) {
        for (int r : {0, 1, 3}) {
            const WindowStats s = mesh_window_stats(mesh, g, u, v, t, r);
            CHECK(s.var_u >= 0.0);
            CHECK(s.var_v >= 0.0);
            CHECK(std::abs(s.cov) <= std::sqrt(s.var_u * s.var_v) + 1e-12);
        }
    }
}

TEST_CASE("SSIM formula")
{
    SsimConfig cfg;
    WindowStats s;
    s.mu_u = 0.0;
    s.mu_v = 1.0;
    CHECK(ssim_from_stats(s, cfg) == doctest::Approx(0.01 / 1.01).epsilon(1e-14));
    s.mu_u = s.mu_v = 0.4;
    s.var_u = s.var_v = s.cov = 0.02;
    CHECK(ssim_from_stats(s, cfg) == 1.0);
    s.mu_u = s.mu_v = 0.0;
    s.cov = -0.02;
    const double anti = ssim_from_stats(s, cfg);
    CHECK(anti >= -1.0);
    CHECK(anti < 0.0);
}

TEST_CASE("mesh MSSIM")
{
    SUBCASE("weighted mean of per-triangle scores")
    {
        const TriMesh mesh = square_diagonal().build();
        SsimConfig cfg;
        cfg.radius = 0;
        // Triangle 0 identical; triangle 1 gets mu 0 vs mu 1 with zero variances.
        const Dg0Field u{Eigen::Vector2d(0.5, 0.0)}, v{Eigen::Vector2d(0.5, 1.0)};
        const double expected = 0.5 * (1.0 + 0.01 / 1.01);
        CHECK(mssim(mesh, u, v, cfg) == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("identity, symmetry and maximality")
    {
        const TriMesh mesh = random_delaunay(5, 4).build();
        const Eigen::Index n = static_cast<Eigen::Index>(mesh.num_triangles());
        std::mt19937 rng(3);
        SsimConfig cfg;
        cfg.radius = 2;
        const Dg0Field u{random_vector(n, rng, 0, 1)};
        CHECK(mssim(mesh, u, u, cfg) == 1.0);
        for (int k = 0; k < 10; ++k) {
            const Dg0Field v{u.values + 0.05 * random_vector(n, rng)};
            const double ab = mssim(mesh, u, v, cfg);
            CHECK(ab == mssim(mesh, v, u, cfg));
            CHECK(ab < 1.0);
            CHECK(ab >= -1.0);
        }
    }
}

TEST_CASE("grid MSSIM")
{
    std::mt19937 rng(5);
    GridImage a = GridImage::filled(20, 15);
    a.values = random_vector(a.pixels(), rng, 0, 1);
    GridImage b = a;
    b.values += 0.1 * random_vector(b.pixels(), rng);
    const SsimConfig cfg;
    CHECK(mssim(a, a, cfg) == 1.0);
    CHECK(mssim(a, b, cfg) == mssim(b, a, cfg));
    CHECK(mssim(a, b, cfg) < 1.0);
    CHECK_THROWS_AS(mssim(a, GridImage::filled(3, 3), cfg), SizeMismatch);

    SUBCASE("truncated windows at the corner")
    {
        const WindowStats s = grid_window_stats(a, a, 0, 0, 11);
        double sum = 0.0;
        for (int j = 0; j <= 5; ++j) {
            for (int i = 0; i <= 5; ++i) sum += a.at(i, j);
        }
        CHECK(s.mu_u == doctest::Approx(sum / 36.0).epsilon(1e-14));
    }
    SUBCASE("grid and mesh scores agree on the test image")
    {
        const GridImage clean = ramp_with_inverted_square(32);
        GridImage noisy = clean;
        noisy.values = add_gaussian_noise(clean.values, 0.1, 42);
        const double grid = mssim(clean, noisy, cfg);
        const auto [mesh, uc] = image_to_mesh(clean);
        const auto [mesh2, un] = image_to_mesh(noisy);
        const double on_mesh = mssim(mesh, uc, un, cfg);
        CHECK(std::abs(grid - on_mesh) <= 0.05);
    }
}

TEST_CASE("configuration")
{
    SsimConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.window = 4;
    CHECK_THROWS(cfg.validate());
    cfg.window = 11;
    cfg.c1 = 0.0;
    CHECK_THROWS(cfg.validate());
    cfg.c1 = 0.01;
    cfg.radius = -1;
    CHECK_THROWS(cfg.validate());
    SsimConfig a, b;
    b.radius = 3;
    CHECK(a.mesh_fingerprint() != b.mesh_fingerprint());
    CHECK(a.grid_fingerprint() == b.grid_fingerprint());
}
