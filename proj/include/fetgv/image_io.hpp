#pragma once

#include <fetgv/grid.hpp>
#include <fetgv/mesh_io.hpp>

#include <string>
#include <vector>

namespace fetgv {

///
/// A PGM (one channel) or PPM (three channels) image with samples scaled to
/// [0, 1]. Each channel is a GridImage with pixel size 1 whose row j = 0 is
/// the bottom row of the file.
///
struct PnmImage
{
    int maxval = 255;
    std::vector<GridImage> channels;

    int width() const { return channels.empty() ? 0 : channels[0].width; }
    int height() const { return channels.empty() ? 0 : channels[0].height; }
};

/// Reads P2, P3, P5 and P6 files (8- or 16-bit samples).
PnmImage read_pnm(const std::string& path);

/// Writes P5/P6 (binary) or P2/P3 (ascii). Samples are clamped to [0, 1]
/// and rounded to the nearest level.
void write_pnm(const std::string& path, const PnmImage& image, bool ascii = false);

} // namespace fetgv
