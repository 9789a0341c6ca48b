#pragma once

#include <fetgv/fespace.hpp>
#include <fetgv/grid.hpp>

#include <cstdint>
#include <utility>

namespace fetgv {

/// The operation is only defined for planar meshes.
class SurfaceNotSupported : public MeshError
{
public:
    using MeshError::MeshError;
};

/// values + sigma * N(0, 1) per entry, drawn from mt19937_64 seeded with `seed`.
Eigen::VectorXd add_gaussian_noise(const Eigen::VectorXd& values, double sigma, std::uint64_t seed);
Dg0Field add_gaussian_noise(const Dg0Field& u, double sigma, std::uint64_t seed);

///
/// Element of the FE-TGV kernel built from f(x, y) = a + b x + c y:
/// u takes the value f(m_T) at each circumcenter and w is the constant RT
/// field (b, c). Throws SurfaceNotSupported on surface meshes.
///
std::pair<Dg0Field, Rt1Field> make_kernel_element(const FeSpace& space, double a, double b, double c);

///
/// Grayscale ramp test image: intensity grows linearly from left to right,
/// and is reversed (1 - v) inside the centered square of half the side.
///
GridImage ramp_with_inverted_square(int size = 32);

} // namespace fetgv
