#include "cli_support.hpp"
#include "test_support.hpp"

#include <fetgv/image_io.hpp>
#include <fetgv/mesh_io.hpp>
#include <fetgv/pixel_mesh.hpp>

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace fetgv;
using namespace fetgv::testing;
namespace fs = std::filesystem;

namespace {

MeshSignal signal_of(const PlanarMesh& pm, std::vector<Eigen::VectorXd> channels, Payload kind = Payload::scalar)
{
    MeshSignal s;
    for (const Vec2& p : pm.points) s.vertices.emplace_back(p.x(), p.y(), 0.0);
    s.triangles = pm.triangles;
    s.payload = kind;
    s.channels = std::move(channels);
    return s;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string q(const fs::path& p)
{
    return "\"" + p.string() + "\"";
}

} // namespace

TEST_CASE("denoise returns constant input unchanged")
{
    const auto dir = scratch("cli_constant");
    const MeshSignal img = image_to_signal({GridImage::filled(6, 5, 0.3)});
    write_mesh_signal((dir / "c.ply").string(), img);
    for (const char* reg : {"tv", "fetgv", "lapfetgv", "gridtgv"}) {
        for (const char* alpha : {"0.01", "5"}) {
            const auto out = dir / (std::string(reg) + alpha + ".ply");
            const auto r = run_cli(std::string("denoise --in ") + q(dir / "c.ply") + " --regularizer " + reg +
                                   " --alpha1 " + alpha + " --alpha0 " + alpha + " --out " + q(out));
            REQUIRE(r.status == 0);
            const MeshSignal back = read_mesh_signal(out.string());
            CHECK(back.channels[0] == img.channels[0]);
        }
    }
}

TEST_CASE("eval prints the TV of the square")
{
    const auto dir = scratch("cli_eval");
    write_mesh_signal((dir / "sq.ply").string(), signal_of(square_diagonal(), {Eigen::Vector2d(0, 1)}));
    const auto r = run_cli("eval --in " + q(dir / "sq.ply") + " --regularizer tv --alpha1 0.7");
    REQUIRE(r.status == 0);
    CHECK(std::stod(r.out) == doctest::Approx(0.7 * std::sqrt(2.0)).epsilon(1e-15));

    const auto fe = run_cli("eval --in " + q(dir / "sq.ply") + " --regularizer fetgv --alpha1 0.7 --alpha0 1");
    REQUIRE(fe.status == 0);
    CHECK(std::stod(fe.out) <= 0.7 * std::sqrt(2.0) + 1e-12);
}

TEST_CASE("mssim of a file with itself")
{
    const auto dir = scratch("cli_mssim");
    std::mt19937 rng(1);
    const PlanarMesh pm = random_delaunay(4, 1);
    write_mesh_signal((dir / "a.ply").string(), signal_of(pm, {random_vector(32, rng, 0, 1)}));
    write_mesh_signal((dir / "b.ply").string(), signal_of(pm, {random_vector(32, rng, 0, 1)}));
    const auto same = run_cli("mssim --a " + q(dir / "a.ply") + " --b " + q(dir / "a.ply"));
    REQUIRE(same.status == 0);
    CHECK(std::stod(same.out) == 1.0);
    const auto ab = run_cli("mssim --a " + q(dir / "a.ply") + " --b " + q(dir / "b.ply") + " --radius 2");
    const auto ba = run_cli("mssim --a " + q(dir / "b.ply") + " --b " + q(dir / "a.ply") + " --radius 2");
    CHECK(ab.out == ba.out);
    CHECK(std::stod(ab.out) < 1.0);
    CHECK(run_cli("mssim --a " + q(dir / "a.ply") + " --b " + q(dir / "b.ply") + " --radius 2 --window 5").status != 0);
}

TEST_CASE("noise, convert and determinism")
{
    const auto dir = scratch("cli_noise");
    std::ofstream(dir / "in.pgm") << "P2\n3 2\n255\n0 128 255\n10 20 30\n";
    REQUIRE(run_cli("convert --image " + q(dir / "in.pgm") + " --out " + q(dir / "in.ply")).status == 0);
    REQUIRE(run_cli("convert --mesh " + q(dir / "in.ply") + " --out " + q(dir / "back.pgm") + " --ascii").status == 0);
    CHECK(slurp(dir / "back.pgm") == "P2\n3 2\n255\n0 128 255\n10 20 30\n");

    for (const char* name : {"n1.ply", "n2.ply"}) {
        REQUIRE(run_cli("noise --in " + q(dir / "in.ply") + " --sigma 0.1 --seed 9 --out " + q(dir / name)).status == 0);
    }
    CHECK(slurp(dir / "n1.ply") == slurp(dir / "n2.ply"));
    REQUIRE(run_cli("noise --in " + q(dir / "in.ply") + " --sigma 0 --seed 9 --out " + q(dir / "n0.ply")).status == 0);
    CHECK(slurp(dir / "n0.ply") == slurp(dir / "in.ply"));
}

TEST_CASE("colour images are processed channel by channel")
{
    const auto dir = scratch("cli_rgb");
    std::mt19937 rng(4);
    PnmImage img;
    for (int c = 0; c < 3; ++c) {
        GridImage g = GridImage::filled(5, 4);
        g.values = random_vector(g.pixels(), rng, 0, 1);
        img.channels.push_back(g);
    }
    write_pnm((dir / "c.ppm").string(), img);
    const std::string flags = " --regularizer fetgv --alpha1 0.1 --alpha0 0.05";
    REQUIRE(run_cli("denoise --in " + q(dir / "c.ppm") + flags + " --out " + q(dir / "rgb.ply")).status == 0);
    const MeshSignal rgb = read_mesh_signal((dir / "rgb.ply").string());
    REQUIRE(rgb.payload == Payload::rgb);

    const PnmImage exact = read_pnm((dir / "c.ppm").string());
    for (int c = 0; c < 3; ++c) {
        const auto one = dir / ("ch" + std::to_string(c) + ".ply");
        write_mesh_signal(one.string(), image_to_signal({exact.channels[static_cast<std::size_t>(c)]}));
        const auto out = dir / ("out" + std::to_string(c) + ".ply");
        REQUIRE(run_cli("denoise --in " + q(one) + flags + " --out " + q(out)).status == 0);
        CHECK(read_mesh_signal(out.string()).channels[0] == rgb.channels[static_cast<std::size_t>(c)]);
    }
}

TEST_CASE("report JSON")
{
    const auto dir = scratch("cli_report");
    std::mt19937 rng(6);
    write_mesh_signal((dir / "n.ply").string(), signal_of(random_delaunay(4, 3), {random_vector(32, rng, 0, 1)}));
    const std::string cmd = "denoise --in " + q(dir / "n.ply") +
                            " --regularizer lapfetgv --alpha1 0.1 --alpha0 0.1 --out " + q(dir / "o.ply") +
                            " --report ";
    REQUIRE(run_cli(cmd + q(dir / "r1.json")).status == 0);
    REQUIRE(run_cli(cmd + q(dir / "r2.json")).status == 0);
    const auto j1 = nlohmann::json::parse(slurp(dir / "r1.json"));
    const auto j2 = nlohmann::json::parse(slurp(dir / "r2.json"));
    for (const char* key : {"config", "fingerprint", "converged", "channels", "wall_seconds"}) CHECK(j1.contains(key));
    const auto& ch = j1["channels"][0];
    for (const char* key : {"iterations", "primal_history", "dual_history", "objective", "seconds"}) CHECK(ch.contains(key));
    CHECK(ch["primal_history"].size() == ch["iterations"].get<std::size_t>());
    CHECK(j1["fingerprint"] == j2["fingerprint"]);
    CHECK(j1["channels"][0]["primal_history"] == j2["channels"][0]["primal_history"]);
}

TEST_CASE("kernel and inpaint")
{
    const auto dir = scratch("cli_inpaint");
    const PlanarMesh pm = random_delaunay(5, 8);
    write_mesh_signal((dir / "m.ply").string(), signal_of(pm, {}, Payload::none));
    REQUIRE(run_cli("kernel --mesh " + q(dir / "m.ply") + " --abc 1,0.5,-2 --out " + q(dir / "k.ply")).status == 0);
    const MeshSignal k = read_mesh_signal((dir / "k.ply").string());
    const TriMesh mesh = k.build();
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const Vec3& m = mesh.circumcenter(t);
        CHECK(k.channels[0][t] == doctest::Approx(1 + 0.5 * m.x() - 2 * m.y()).epsilon(1e-14));
    }

    Eigen::VectorXd mask = Eigen::VectorXd::Ones(k.channels[0].size());
    Eigen::VectorXd holes = k.channels[0];
    for (Eigen::Index t = 0; t < mask.size(); t += 7) {
        mask[t] = 0.0;
        holes[t] = 0.0;
    }
    write_mesh_signal((dir / "mask.ply").string(), k.with_channels(Payload::mask, {mask}));
    write_mesh_signal((dir / "holes.ply").string(), k.with_channels(Payload::scalar, {holes}));
    REQUIRE(run_cli("inpaint --in " + q(dir / "holes.ply") + " --mask " + q(dir / "mask.ply") +
                    " --regularizer fetgv --alpha1 1 --alpha0 1 --tol 1e-7 --max-iter 20000 --out " + q(dir / "f.ply"))
                .status == 0);
    const MeshSignal filled = read_mesh_signal((dir / "f.ply").string());
    CHECK((filled.channels[0] - k.channels[0]).cwiseAbs().maxCoeff() <= 1e-4);
    CHECK(run_cli("kernel --mesh " + q(dir / "m.ply") + " --abc 1,2 --out " + q(dir / "x.ply")).status == 1);
}

TEST_CASE("tune writes a trace and refuses mismatched baselines")
{
    const auto dir = scratch("cli_tune");
    GridImage clean = GridImage::filled(8, 8);
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) clean.at(i, j) = (i < 4) ? 0.2 : 0.8;
    }
    write_mesh_signal((dir / "t.ply").string(), image_to_signal({clean}));
    REQUIRE(run_cli("noise --in " + q(dir / "t.ply") + " --sigma 0.1 --seed 1 --out " + q(dir / "n.ply")).status == 0);
    const std::string base = "tune --noisy " + q(dir / "n.ply") + " --truth " + q(dir / "t.ply") + " --budget 4 ";
    REQUIRE(run_cli(base + "--regularizer tv --radius 2 --out " + q(dir / "tv.json")).status == 0);
    const auto tv = nlohmann::json::parse(slurp(dir / "tv.json"));
    CHECK(tv["trace"].size() <= 4);
    CHECK(tv["alpha0"].is_null());
    CHECK(tv["best_mssim"].get<double>() > 0.0);

    REQUIRE(run_cli(base + "--regularizer fetgv --radius 2 --baseline " + q(dir / "tv.json") + " --out " +
                    q(dir / "fe.json"))
                .status == 0);
    const auto fe = nlohmann::json::parse(slurp(dir / "fe.json"));
    CHECK(fe.contains("delta_mssim"));

    const auto err = dir / "err.txt";
    const auto refused = run_cli(base + "--regularizer fetgv --radius 3 --baseline " + q(dir / "tv.json") + " --out " +
                                     q(dir / "x.json"),
                                 err.string());
    CHECK(refused.status == 1);
    CHECK(slurp(err).rfind("fetgv: error:", 0) == 0);
}

TEST_CASE("errors are reported on stderr with a nonzero status")
{
    const auto dir = scratch("cli_errors");
    const auto err = dir / "err.txt";
    const auto missing = run_cli("denoise --in " + q(dir / "none.ply") + " --regularizer tv --alpha1 1 --out " +
                                     q(dir / "o.ply"),
                                 err.string());
    CHECK(missing.status == 1);
    CHECK(slurp(err).rfind("fetgv: error:", 0) == 0);

    write_mesh_signal((dir / "sq.ply").string(), signal_of(square_diagonal(), {Eigen::Vector2d(0, 1)}));
    CHECK(run_cli("denoise --in " + q(dir / "sq.ply") + " --regularizer fetgv --alpha1 1 --out " + q(dir / "o.ply")).status == 1);
    CHECK(run_cli("denoise --in " + q(dir / "sq.ply") + " --regularizer gridtgv --alpha1 1 --alpha0 1 --out " +
                  q(dir / "o.ply"))
              .status == 1);
    CHECK(run_cli("denoise --in " + q(dir / "sq.ply") + " --regularizer bogus --alpha1 1 --out " + q(dir / "o.ply")).status != 0);
    CHECK(run_cli("frobnicate").status != 0);
}
