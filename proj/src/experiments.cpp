#include <fetgv/experiments.hpp>

#include <random>
#include <stdexcept>

namespace fetgv {

Eigen::VectorXd add_gaussian_noise(const Eigen::VectorXd& values, double sigma, std::uint64_t seed)
{
    if (!(sigma >= 0.0)) throw std::invalid_argument("noise level must be nonnegative");
    if (sigma == 0.0) return values;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd out = values;
    for (Eigen::Index k = 0; k < out.size(); ++k) out[k] += sigma * normal(rng);
    return out;
}

Dg0Field add_gaussian_noise(const Dg0Field& u, double sigma, std::uint64_t seed)
{
    return {add_gaussian_noise(u.values, sigma, seed)};
}

std::pair<Dg0Field, Rt1Field> make_kernel_element(const FeSpace& space, double a, double b, double c)
{
    const TriMesh& mesh = space.mesh();
    if (mesh.is_surface()) throw SurfaceNotSupported("kernel elements are defined for planar meshes only");
    Dg0Field u = space.make_dg0();
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const Vec3& m = mesh.circumcenter(t);
        u.values[t] = a + b * m.x() + c * m.y();
    }
    return {u, space.rt_constant(Vec3(b, c, 0.0))};
}

GridImage ramp_with_inverted_square(int size)
{
    if (size < 2) throw std::invalid_argument("test image needs at least 2 pixels per side");
    GridImage img = GridImage::filled(size, size);
    const int lo = size / 4;
    const int hi = size - size / 4;
    for (int j = 0; j < size; ++j) {
        for (int i = 0; i < size; ++i) {
            const double ramp = (i + 0.5) / size;
            const bool inside = i >= lo && i < hi && j >= lo && j < hi;
            img.at(i, j) = inside ? 1.0 - ramp : ramp;
        }
    }
    return img;
}

} // namespace fetgv
