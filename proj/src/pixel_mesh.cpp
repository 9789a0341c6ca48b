#include <fetgv/pixel_mesh.hpp>

#include <string>

namespace fetgv {

MeshSignal pixel_split_geometry(int width, int height, double h)
{
    if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
    MeshSignal s;
    s.dimension = 2;
    s.pixel_grid = std::array<int, 2>{width, height};
    for (int j = 0; j <= height; ++j) {
        for (int i = 0; i <= width; ++i) s.vertices.emplace_back(i * h, j * h, 0.0);
    }
    auto vid = [&](int i, int j) { return j * (width + 1) + i; };
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            const int v00 = vid(i, j);
            const int v10 = vid(i + 1, j);
            const int v11 = vid(i + 1, j + 1);
            const int v01 = vid(i, j + 1);
            s.triangles.push_back({v00, v10, v11});
            s.triangles.push_back({v00, v11, v01});
        }
    }
    return s;
}

namespace {

Eigen::VectorXd duplicate(const Eigen::VectorXd& pixels)
{
    Eigen::VectorXd out(2 * pixels.size());
    for (Eigen::Index p = 0; p < pixels.size(); ++p) out[2 * p] = out[2 * p + 1] = pixels[p];
    return out;
}

void check_split(const TriMesh& mesh, int width, int height)
{
    const MeshSignal expected = pixel_split_geometry(width, height);
    if (mesh.num_triangles() != expected.triangles.size() || mesh.num_vertices() != expected.vertices.size()) {
        throw NotPixelSplit("mesh is not the pixel split of a " + std::to_string(width) + "x" +
                            std::to_string(height) + " grid");
    }
    if (mesh.triangles() != expected.triangles) {
        throw NotPixelSplit("triangle connectivity differs from the pixel split layout");
    }
}

} // namespace

std::pair<TriMesh, Dg0Field> image_to_mesh(const GridImage& img)
{
    img.validate();
    const MeshSignal s = pixel_split_geometry(img.width, img.height, img.h);
    return {s.build(), Dg0Field{duplicate(img.values)}};
}

MeshSignal image_to_signal(const std::vector<GridImage>& channels)
{
    if (channels.size() != 1 && channels.size() != 3) throw std::invalid_argument("images need 1 or 3 channels");
    MeshSignal s = pixel_split_geometry(channels[0].width, channels[0].height, channels[0].h);
    s.payload = channels.size() == 1 ? Payload::scalar : Payload::rgb;
    for (const GridImage& c : channels) {
        c.validate();
        if (c.width != channels[0].width || c.height != channels[0].height) throw SizeMismatch("channels differ in size");
        s.channels.push_back(duplicate(c.values));
    }
    return s;
}

GridImage mesh_to_image(const TriMesh& mesh, const Dg0Field& u, int width, int height)
{
    check_split(mesh, width, height);
    if (static_cast<std::size_t>(u.values.size()) != mesh.num_triangles()) {
        throw MeshMismatch("field does not match the mesh");
    }
    GridImage img = GridImage::filled(width, height);
    img.h = mesh.vertex(1).x() - mesh.vertex(0).x();
    for (Eigen::Index p = 0; p < img.pixels(); ++p) img.values[p] = 0.5 * (u.values[2 * p] + u.values[2 * p + 1]);
    return img;
}

std::vector<GridImage> signal_to_image(const MeshSignal& signal)
{
    if (!signal.pixel_grid) throw NotPixelSplit("mesh carries no pixel_grid tag");
    const auto [width, height] = *signal.pixel_grid;
    const TriMesh mesh = signal.build();
    std::vector<GridImage> out;
    for (std::size_t c = 0; c < signal.channel_count(); ++c) {
        out.push_back(mesh_to_image(mesh, signal.channel(c), width, height));
    }
    return out;
}

std::vector<bool> pixel_mask_to_triangles(const std::vector<bool>& pixels)
{
    std::vector<bool> out;
    out.reserve(2 * pixels.size());
    for (bool p : pixels) {
        out.push_back(p);
        out.push_back(p);
    }
    return out;
}

} // namespace fetgv
