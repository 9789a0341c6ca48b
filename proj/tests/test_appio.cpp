#include "test_support.hpp"

#include <fetgv/experiments.hpp>
#include <fetgv/functionals.hpp>
#include <fetgv/image_io.hpp>
#include <fetgv/mesh_io.hpp>
#include <fetgv/pixel_mesh.hpp>
#include <fetgv/quality.hpp>
#include <fetgv/tuning.hpp>

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fetgv;
using namespace fetgv::testing;

namespace {

std::filesystem::path scratch_dir()
{
    const auto dir = std::filesystem::temp_directory_path() / "fetgv_appio_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("pixel split")
{
    GridImage img = GridImage::filled(2, 2);
    img.values << 0.1, 0.2, 0.3, 0.4;
    const auto [mesh, u] = image_to_mesh(img);
    CHECK(mesh.num_triangles() == 8);
    CHECK(u.values.size() == 8);
    for (int p = 0; p < 4; ++p) {
        CHECK(u.values[2 * p] == img.values[p]);
        CHECK(u.values[2 * p + 1] == img.values[p]);
    }
    // Every diagonal joins the lower-left and upper-right pixel corners.
    for (int p = 0; p < 4; ++p) {
        const Triangle& t = mesh.triangle(2 * p);
        const Vec3 diag = mesh.vertex(t[2]) - mesh.vertex(t[0]);
        CHECK((diag - Vec3(1, 1, 0)).norm() < 1e-15);
    }
    CHECK(mesh_to_image(mesh, u, 2, 2).values == img.values);
    const auto [cm, cu] = image_to_mesh(GridImage::filled(3, 2, 0.25));
    CHECK((cu.values.array() == 0.25).all());

    SUBCASE("averaging and mismatches")
    {
        const auto [m1, u1] = image_to_mesh(GridImage::filled(1, 1));
        const Dg0Field pair{Eigen::Vector2d(0, 1)};
        CHECK(mesh_to_image(m1, pair, 1, 1).values[0] == 0.5);
        CHECK_THROWS_AS(mesh_to_image(mesh, u, 4, 1), NotPixelSplit);
        CHECK_THROWS_AS(mesh_to_image(random_delaunay(2, 1).build(), Dg0Field{Eigen::VectorXd::Zero(8)}, 2, 2),
                        NotPixelSplit);
    }
    SUBCASE("diagonals have zero edge factor")
    {
        int zero = 0;
        for (int e : mesh.interior_edges()) zero += std::abs(mesh.edge(e).h) < 1e-15;
        CHECK(zero >= 4);
    }
}

TEST_CASE("Gaussian noise")
{
    const Eigen::VectorXd base = Eigen::VectorXd::Constant(100000, 0.5);
    CHECK(add_gaussian_noise(base, 0.0, 1) == base);
    const Eigen::VectorXd a = add_gaussian_noise(base, 0.2, 7);
    CHECK(a == add_gaussian_noise(base, 0.2, 7));
    CHECK(a != add_gaussian_noise(base, 0.2, 8));
    const Eigen::VectorXd noise = a - base;
    const double n = static_cast<double>(noise.size());
    const double mean = noise.mean();
    const double sd = std::sqrt((noise.array() - mean).square().sum() / n);
    CHECK(std::abs(mean) <= 3 * 0.2 / std::sqrt(n));
    CHECK(std::abs(sd - 0.2) <= 0.02 * 0.2);
    CHECK_THROWS(add_gaussian_noise(base, -1.0, 1));
}

TEST_CASE("kernel elements")
{
    SUBCASE("constant")
    {
        const TriMesh mesh = random_delaunay(3, 2).build();
        const FeSpace space(mesh);
        const auto [u, w] = make_kernel_element(space, 5, 0, 0);
        CHECK((u.values.array() == 5.0).all());
        CHECK(w.dofs.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("jump equals the edge factor on the equilateral pair")
    {
        const TriMesh mesh = equilateral_pair().build();
        const FeSpace space(mesh);
        const int e = mesh.interior_edges().front();
        // The shared edge of this fixture is horizontal, so y is the coordinate across it.
        const auto [u, w] = make_kernel_element(space, 0, 0, 1);
        CHECK(std::abs(space.scalar_jump(u, e)) == doctest::Approx(mesh.edge(e).h).epsilon(1e-14));
        CHECK(std::abs(space.scalar_jump(u, e) + mesh.edge(e).h * space.rt_normal_component(w, e)) < 1e-15);
        const auto [ux, wx] = make_kernel_element(space, 0, 1, 0);
        CHECK(std::abs(space.scalar_jump(ux, e)) < 1e-15);
    }
    SUBCASE("pixel-split diagonals carry no jump")
    {
        const auto [mesh, unused] = image_to_mesh(GridImage::filled(4, 3));
        (void)unused;
        const FeSpace space(mesh);
        const auto [u, w] = make_kernel_element(space, 0, 1, 1);
        for (int p = 0; p < 12; ++p) CHECK(u.values[2 * p] == doctest::Approx(u.values[2 * p + 1]).epsilon(1e-15));
        CHECK(fetgv_objective(space, u, w, {1.0, 1.0}) <= 1e-10);
    }
    SUBCASE("surfaces are rejected")
    {
        const TriMesh mesh = square_diagonal().build_embedded();
        const FeSpace space(mesh);
        CHECK_THROWS_AS(make_kernel_element(space, 1, 1, 1), SurfaceNotSupported);
    }
}

TEST_CASE("mesh signal files")
{
    std::mt19937 rng(3);
    const PlanarMesh pm = random_delaunay(3, 5);
    MeshSignal s;
    for (const Vec2& p : pm.points) s.vertices.emplace_back(p.x(), p.y(), 0.0);
    s.triangles = pm.triangles;
    s.payload = Payload::rgb;
    for (int c = 0; c < 3; ++c) s.channels.push_back(random_vector(static_cast<Eigen::Index>(s.triangles.size()), rng, 0, 1));

    std::stringstream buf;
    write_mesh_signal(buf, s);
    const MeshSignal back = read_mesh_signal(buf);
    CHECK(back.dimension == 2);
    CHECK(back.payload == Payload::rgb);
    CHECK(back.triangles == s.triangles);
    REQUIRE(back.vertices.size() == s.vertices.size());
    for (std::size_t v = 0; v < s.vertices.size(); ++v) CHECK(back.vertices[v] == s.vertices[v]);
    for (int c = 0; c < 3; ++c) CHECK(back.channels[static_cast<std::size_t>(c)] == s.channels[static_cast<std::size_t>(c)]);
    std::stringstream again;
    write_mesh_signal(again, back);
    CHECK(again.str() == buf.str());

    SUBCASE("mask payload")
    {
        const MeshSignal m = s.with_channels(Payload::mask, {Eigen::VectorXd::Ones(static_cast<Eigen::Index>(s.triangles.size()))});
        std::stringstream out;
        write_mesh_signal(out, m);
        const auto mask = read_mesh_signal(out).mask();
        CHECK(mask.size() == s.triangles.size());
        CHECK(std::all_of(mask.begin(), mask.end(), [](bool b) { return b; }));
        CHECK_THROWS_AS(s.mask(), FormatError);
    }
    SUBCASE("malformed input")
    {
        std::stringstream bad("ply\nformat binary_little_endian 1.0\nend_header\n");
        CHECK_THROWS_AS(read_mesh_signal(bad), FormatError);
        std::string text = buf.str();
        text.resize(text.size() - 20);
        std::stringstream truncated(text);
        CHECK_THROWS_AS(read_mesh_signal(truncated), FormatError);
        CHECK_THROWS_AS(read_mesh_signal(std::string("/nonexistent/file.ply")), FormatError);
    }
    SUBCASE("surface meshes and pixel tags survive")
    {
        MeshSignal surf = pixel_split_geometry(3, 2);
        surf.dimension = 3;
        surf.vertices[0].z() = 0.25;
        surf.payload = Payload::scalar;
        surf.channels = {Eigen::VectorXd::LinSpaced(12, 0, 1)};
        std::stringstream out;
        write_mesh_signal(out, surf);
        const MeshSignal r = read_mesh_signal(out);
        CHECK(r.dimension == 3);
        REQUIRE(r.pixel_grid.has_value());
        CHECK((*r.pixel_grid)[0] == 3);
        CHECK(r.vertices[0].z() == 0.25);
    }
}

TEST_CASE("PNM images")
{
    const auto dir = scratch_dir();
    PnmImage img;
    img.maxval = 255;
    GridImage g = GridImage::filled(5, 3);
    for (Eigen::Index p = 0; p < g.pixels(); ++p) g.values[p] = static_cast<double>(p * 17 % 256) / 255.0;
    img.channels = {g};
    for (bool ascii : {false, true}) {
        const std::string path = (dir / (ascii ? "a.pgm" : "b.pgm")).string();
        write_pnm(path, img, ascii);
        const PnmImage back = read_pnm(path);
        CHECK(back.width() == 5);
        CHECK(back.height() == 3);
        CHECK((back.channels[0].values - g.values).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("file rows run top to bottom")
    {
        const std::string path = (dir / "rows.pgm").string();
        std::ofstream(path) << "P2\n2 2\n# comment\n255\n0 255\n51 102\n";
        const PnmImage r = read_pnm(path);
        CHECK(r.channels[0].at(0, 1) == 0.0);
        CHECK(r.channels[0].at(1, 1) == 1.0);
        CHECK(r.channels[0].at(0, 0) == doctest::Approx(0.2));
    }
    SUBCASE("colour and 16 bit")
    {
        PnmImage rgb;
        rgb.maxval = 65535;
        for (int c = 0; c < 3; ++c) rgb.channels.push_back(GridImage::filled(2, 2, 0.25 * (c + 1)));
        const std::string path = (dir / "c.ppm").string();
        write_pnm(path, rgb);
        const PnmImage back = read_pnm(path);
        REQUIRE(back.channels.size() == 3);
        CHECK(back.maxval == 65535);
        CHECK(back.channels[2].at(1, 1) == doctest::Approx(0.75).epsilon(1e-4));
    }
    SUBCASE("errors")
    {
        const std::string path = (dir / "bad.pgm").string();
        std::ofstream(path) << "P7\n";
        CHECK_THROWS_AS(read_pnm(path), FormatError);
        std::ofstream(path) << "P5\n4 4\n255\nab";
        CHECK_THROWS_AS(read_pnm(path), FormatError);
    }
}

TEST_CASE("parameter tuning")
{
    SUBCASE("finds the maximum of a smooth profile")
    {
        TuneSpec spec;
        spec.budget = 60;
        const auto score = [](double a1, double a0) {
            const double x = std::log10(a1) + 1.3, y = std::log10(a0) - 0.2;
            return 1.0 - x * x - 0.5 * y * y;
        };
        const TuneResult r = tune_parameters(score, spec);
        CHECK(std::log10(r.alpha1) == doctest::Approx(-1.3).epsilon(0.05).scale(1.0));
        CHECK(std::log10(r.alpha0) == doctest::Approx(0.2).epsilon(0.1).scale(1.0));
        CHECK(r.trace.size() <= 60);
    }
    SUBCASE("budget one evaluates the midpoint only")
    {
        TuneSpec spec;
        spec.budget = 1;
        const TuneResult r = tune_parameters([](double, double) { return 0.5; }, spec);
        REQUIRE(r.trace.size() == 1);
        CHECK(std::log10(r.alpha1) == doctest::Approx(-1.5));
        CHECK(std::log10(r.alpha0) == doctest::Approx(-1.0));
    }
    SUBCASE("failing evaluations are recorded")
    {
        TuneSpec spec;
        spec.budget = 10;
        const TuneResult r = tune_parameters(
            [](double a1, double) {
                if (a1 > 0.1) throw std::runtime_error("boom");
                return a1;
            },
            spec);
        CHECK(r.trace.size() <= 10);
        CHECK(std::any_of(r.trace.begin(), r.trace.end(), [](const TuneEval& e) { return !e.ok; }));
        CHECK(r.alpha1 <= 0.1);
    }
    SUBCASE("TV on noiseless data drives alpha1 to the lower bound")
    {
        const GridImage clean = ramp_with_inverted_square(12);
        const auto [mesh, u] = image_to_mesh(clean);
        const FeSpace space(mesh);
        TuneSpec spec;
        spec.search_alpha0 = false;
        spec.budget = 12;
        SsimConfig cfg;
        cfg.radius = 3;
        const auto score = [&](double a1, double) {
            const DenoiseResult r = solve_denoise(space, u, {0.0, a1}, PenaltyParams{}, Regularizer::tv, StopCriteria{});
            return mssim(mesh, r.u, u, cfg);
        };
        const TuneResult r = tune_parameters(score, spec);
        CHECK(std::log10(r.alpha1) <= spec.alpha1.lo + 0.3);
        for (const TuneEval& e : r.trace) CHECK(e.alpha0 == r.trace.front().alpha0);
    }
}
