#pragma once

#include <fetgv/fespace.hpp>
#include <fetgv/mesh.hpp>

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fetgv {

class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Per-face payload stored with a mesh.
enum class Payload
{
    none,
    scalar, ///< face property "value"
    rgb,    ///< face properties "red green blue", reals in [0, 1]
    mask,   ///< face property "mask", 0 or 1
};

///
/// A mesh together with its per-triangle signal, as stored on disk.
///
/// Text layout (ASCII PLY):
///
///   ply
///   format ascii 1.0
///   comment dimension 2|3
///   comment pixel_grid <width> <height>        only for pixel-split meshes
///   element vertex <V>
///   property double x / y / z
///   element face <F>
///   property list uchar int vertex_indices
///   property double value | red green blue     or  property int mask
///   end_header
///
/// Reals are written with 17 significant digits so that a write/read cycle
/// reproduces every value bit for bit.
///
struct MeshSignal
{
    int dimension = 2;
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    std::optional<std::array<int, 2>> pixel_grid;
    Payload payload = Payload::none;
    /// One vector per channel: 1 for scalar and mask payloads, 3 for RGB.
    std::vector<Eigen::VectorXd> channels;

    TriMesh build() const { return build_mesh(vertices, triangles, dimension); }
    std::size_t channel_count() const { return channels.size(); }
    Dg0Field channel(std::size_t k) const { return {channels.at(k)}; }
    /// Observed triangles of a mask payload. Throws FormatError otherwise.
    std::vector<bool> mask() const;
    /// Copy with the geometry kept and a new payload.
    MeshSignal with_channels(Payload kind, std::vector<Eigen::VectorXd> values) const;
};

void write_mesh_signal(std::ostream& out, const MeshSignal& signal);
void write_mesh_signal(const std::string& path, const MeshSignal& signal);
MeshSignal read_mesh_signal(std::istream& in);
MeshSignal read_mesh_signal(const std::string& path);

} // namespace fetgv
