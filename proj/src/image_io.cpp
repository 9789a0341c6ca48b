#include <fetgv/image_io.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

namespace fetgv {

namespace {

/// Next header token, skipping whitespace and '#' comments.
std::string header_token(std::istream& in)
{
    std::string token;
    for (;;) {
        const int c = in.get();
        if (c == EOF) break;
        if (c == '#') {
            std::string rest;
            std::getline(in, rest);
            if (!token.empty()) break;
            continue;
        }
        if (std::isspace(c)) {
            if (!token.empty()) break;
            continue;
        }
        token.push_back(static_cast<char>(c));
    }
    if (token.empty()) throw FormatError("truncated PNM header");
    return token;
}

int header_int(std::istream& in)
{
    const std::string t = header_token(in);
    if (!std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw FormatError("bad PNM header value '" + t + "'");
    }
    return std::stoi(t);
}

} // namespace

PnmImage read_pnm(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    const std::string magic = header_token(in);
    int channels = 0;
    bool binary = false;
    if (magic == "P2") channels = 1;
    else if (magic == "P3") channels = 3;
    else if (magic == "P5") channels = 1, binary = true;
    else if (magic == "P6") channels = 3, binary = true;
    else throw FormatError("'" + path + "' is not a PGM/PPM file");

    const int width = header_int(in);
    const int height = header_int(in);
    const int maxval = header_int(in);
    if (width < 1 || height < 1) throw FormatError("image dimensions must be positive");
    if (maxval < 1 || maxval > 65535) throw FormatError("maxval must lie in 1..65535");

    PnmImage img;
    img.maxval = maxval;
    img.channels.assign(static_cast<std::size_t>(channels), GridImage::filled(width, height));
    const int bytes = maxval > 255 ? 2 : 1;
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            for (int c = 0; c < channels; ++c) {
                int sample = 0;
                if (binary) {
                    for (int b = 0; b < bytes; ++b) {
                        const int byte = in.get();
                        if (byte == EOF) throw FormatError("truncated PNM pixel data");
                        sample = sample * 256 + byte;
                    }
                } else {
                    if (!(in >> sample)) throw FormatError("truncated PNM pixel data");
                }
                if (sample < 0 || sample > maxval) throw FormatError("PNM sample exceeds maxval");
                img.channels[static_cast<std::size_t>(c)].at(col, height - 1 - row) =
                    static_cast<double>(sample) / maxval;
            }
        }
    }
    return img;
}

void write_pnm(const std::string& path, const PnmImage& image, bool ascii)
{
    const std::size_t channels = image.channels.size();
    if (channels != 1 && channels != 3) throw FormatError("PNM images need 1 or 3 channels");
    const int width = image.width();
    const int height = image.height();
    for (const auto& ch : image.channels) {
        ch.validate();
        if (ch.width != width || ch.height != height) throw SizeMismatch("channels differ in size");
    }
    if (image.maxval < 1 || image.maxval > 65535) throw FormatError("maxval must lie in 1..65535");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    const char* magic = channels == 1 ? (ascii ? "P2" : "P5") : (ascii ? "P3" : "P6");
    out << magic << "\n" << width << " " << height << "\n" << image.maxval << "\n";
    const int bytes = image.maxval > 255 ? 2 : 1;
    for (int row = 0; row < height; ++row) {
        for (int col = 0; col < width; ++col) {
            for (std::size_t c = 0; c < channels; ++c) {
                const double v = std::clamp(image.channels[c].at(col, height - 1 - row), 0.0, 1.0);
                const int sample = static_cast<int>(std::lround(v * image.maxval));
                if (ascii) {
                    out << sample << ((col + 1 == width && c + 1 == channels) ? '\n' : ' ');
                } else if (bytes == 2) {
                    out.put(static_cast<char>(sample >> 8));
                    out.put(static_cast<char>(sample & 0xff));
                } else {
                    out.put(static_cast<char>(sample));
                }
            }
        }
    }
    if (!out) throw FormatError("write failed for '" + path + "'");
}

} // namespace fetgv
