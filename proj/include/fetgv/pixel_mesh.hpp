#pragma once

#include <fetgv/fespace.hpp>
#include <fetgv/grid.hpp>
#include <fetgv/mesh_io.hpp>

#include <utility>
#include <vector>

namespace fetgv {

/// The mesh was not produced by image_to_mesh for the requested grid.
class NotPixelSplit : public MeshError
{
public:
    using MeshError::MeshError;
};

///
/// Split every pixel into two triangles along its lower-left to upper-right
/// diagonal. Vertex (i, j) sits at (i h, j h) with index j (width + 1) + i;
/// pixel p = j width + i owns triangles 2p and 2p + 1, both carrying its value.
///
MeshSignal pixel_split_geometry(int width, int height, double h = 1.0);
std::pair<TriMesh, Dg0Field> image_to_mesh(const GridImage& img);
/// Same split for every channel of a multi-channel image.
MeshSignal image_to_signal(const std::vector<GridImage>& channels);

/// Pixel values as the mean of each pixel's two triangle values. Throws
/// NotPixelSplit when the mesh does not match the pixel split of the grid.
GridImage mesh_to_image(const TriMesh& mesh, const Dg0Field& u, int width, int height);
/// Uses the pixel_grid tag of the signal.
std::vector<GridImage> signal_to_image(const MeshSignal& signal);

/// Per-triangle mask from a per-pixel one.
std::vector<bool> pixel_mask_to_triangles(const std::vector<bool>& pixels);

} // namespace fetgv
