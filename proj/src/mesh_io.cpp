#include <fetgv/mesh_io.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fetgv {

namespace {

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split_words(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

double parse_real(const std::string& token, std::size_t line)
{
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size()) throw FormatError("line " + std::to_string(line) + ": bad number '" + token + "'");
    return value;
}

long parse_int(const std::string& token, std::size_t line)
{
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size()) throw FormatError("line " + std::to_string(line) + ": bad integer '" + token + "'");
    return value;
}

} // namespace

std::vector<bool> MeshSignal::mask() const
{
    if (payload != Payload::mask || channels.size() != 1) throw FormatError("file does not carry a mask payload");
    std::vector<bool> out(static_cast<std::size_t>(channels[0].size()));
    for (Eigen::Index t = 0; t < channels[0].size(); ++t) out[static_cast<std::size_t>(t)] = channels[0][t] != 0.0;
    return out;
}

MeshSignal MeshSignal::with_channels(Payload kind, std::vector<Eigen::VectorXd> values) const
{
    MeshSignal out = *this;
    out.payload = kind;
    out.channels = std::move(values);
    return out;
}

void write_mesh_signal(std::ostream& out, const MeshSignal& s)
{
    const std::size_t expected = s.payload == Payload::rgb ? 3 : (s.payload == Payload::none ? 0 : 1);
    if (s.channels.size() != expected) throw FormatError("channel count does not match the payload kind");
    for (const auto& c : s.channels) {
        if (static_cast<std::size_t>(c.size()) != s.triangles.size()) {
            throw FormatError("payload length does not match the triangle count");
        }
    }

    out << "ply\nformat ascii 1.0\n";
    out << "comment dimension " << s.dimension << "\n";
    if (s.pixel_grid) out << "comment pixel_grid " << (*s.pixel_grid)[0] << " " << (*s.pixel_grid)[1] << "\n";
    out << "element vertex " << s.vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << s.triangles.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    switch (s.payload) {
    case Payload::none: break;
    case Payload::scalar: out << "property double value\n"; break;
    case Payload::rgb: out << "property double red\nproperty double green\nproperty double blue\n"; break;
    case Payload::mask: out << "property int mask\n"; break;
    }
    out << "end_header\n";
    for (const Vec3& v : s.vertices) out << fmt(v.x()) << " " << fmt(v.y()) << " " << fmt(v.z()) << "\n";
    for (std::size_t t = 0; t < s.triangles.size(); ++t) {
        const Triangle& tri = s.triangles[t];
        out << "3 " << tri[0] << " " << tri[1] << " " << tri[2];
        const auto ti = static_cast<Eigen::Index>(t);
        if (s.payload == Payload::mask) {
            out << " " << (s.channels[0][ti] != 0.0 ? 1 : 0);
        } else {
            for (const auto& c : s.channels) out << " " << fmt(c[ti]);
        }
        out << "\n";
    }
    if (!out) throw FormatError("write failed");
}

void write_mesh_signal(const std::string& path, const MeshSignal& signal)
{
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_mesh_signal(out, signal);
}

MeshSignal read_mesh_signal(std::istream& in)
{
    MeshSignal s;
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line() || line != "ply") throw FormatError("missing 'ply' magic line");
    if (!next_line() || split_words(line) != std::vector<std::string>{"format", "ascii", "1.0"}) {
        throw FormatError("only 'format ascii 1.0' is supported");
    }

    std::size_t nv = 0;
    std::size_t nf = 0;
    std::string element;
    std::vector<std::string> vertex_props;
    std::vector<std::string> face_props;
    bool have_dimension = false;
    for (;;) {
        if (!next_line()) throw FormatError("header ended before end_header");
        const auto words = split_words(line);
        if (words.empty()) continue;
        if (words[0] == "end_header") break;
        if (words[0] == "comment") {
            if (words.size() == 3 && words[1] == "dimension") {
                s.dimension = static_cast<int>(parse_int(words[2], lineno));
                have_dimension = true;
            } else if (words.size() == 4 && words[1] == "pixel_grid") {
                s.pixel_grid = std::array<int, 2>{static_cast<int>(parse_int(words[2], lineno)),
                                                  static_cast<int>(parse_int(words[3], lineno))};
            }
            continue;
        }
        if (words[0] == "element" && words.size() == 3) {
            element = words[1];
            const long count = parse_int(words[2], lineno);
            if (count < 0) throw FormatError("negative element count");
            if (element == "vertex") nv = static_cast<std::size_t>(count);
            else if (element == "face") nf = static_cast<std::size_t>(count);
            else throw FormatError("unsupported element '" + element + "'");
            continue;
        }
        if (words[0] == "property") {
            if (element == "vertex" && words.size() == 3) {
                vertex_props.push_back(words[2]);
            } else if (element == "face" && words.size() == 5 && words[1] == "list") {
                if (words[4] != "vertex_indices" && words[4] != "vertex_index") {
                    throw FormatError("face list must be vertex_indices");
                }
                face_props.push_back("@list");
            } else if (element == "face" && words.size() == 3) {
                face_props.push_back(words[2]);
            } else {
                throw FormatError("line " + std::to_string(lineno) + ": unsupported property");
            }
            continue;
        }
        throw FormatError("line " + std::to_string(lineno) + ": unexpected header line");
    }

    if (vertex_props.size() < 2 || vertex_props[0] != "x" || vertex_props[1] != "y" ||
        (vertex_props.size() > 2 && vertex_props[2] != "z") || vertex_props.size() > 3) {
        throw FormatError("vertex properties must be x y [z]");
    }
    if (face_props.empty() || face_props[0] != "@list") throw FormatError("face element needs vertex_indices first");
    const std::vector<std::string> extra(face_props.begin() + 1, face_props.end());
    if (extra.empty()) s.payload = Payload::none;
    else if (extra == std::vector<std::string>{"value"}) s.payload = Payload::scalar;
    else if (extra == std::vector<std::string>{"red", "green", "blue"}) s.payload = Payload::rgb;
    else if (extra == std::vector<std::string>{"mask"}) s.payload = Payload::mask;
    else throw FormatError("unsupported face payload");
    if (!have_dimension) s.dimension = vertex_props.size() == 3 ? 3 : 2;

    s.vertices.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        if (!next_line()) throw FormatError("file ended inside the vertex list");
        const auto words = split_words(line);
        if (words.size() != vertex_props.size()) throw FormatError("line " + std::to_string(lineno) + ": bad vertex");
        Vec3 p = Vec3::Zero();
        for (std::size_t k = 0; k < words.size(); ++k) p[static_cast<Eigen::Index>(k)] = parse_real(words[k], lineno);
        s.vertices.push_back(p);
    }

    s.channels.assign(extra.size(), Eigen::VectorXd(static_cast<Eigen::Index>(nf)));
    s.triangles.reserve(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        if (!next_line()) throw FormatError("file ended inside the face list");
        const auto words = split_words(line);
        if (words.size() != 4 + extra.size() || words[0] != "3") {
            throw FormatError("line " + std::to_string(lineno) + ": faces must be triangles with their payload");
        }
        Triangle tri;
        for (int k = 0; k < 3; ++k) {
            const long idx = parse_int(words[static_cast<std::size_t>(k) + 1], lineno);
            if (idx < 0 || static_cast<std::size_t>(idx) >= nv) {
                throw FormatError("line " + std::to_string(lineno) + ": vertex index out of range");
            }
            tri[static_cast<std::size_t>(k)] = static_cast<int>(idx);
        }
        s.triangles.push_back(tri);
        for (std::size_t c = 0; c < extra.size(); ++c) {
            const double value = s.payload == Payload::mask ? static_cast<double>(parse_int(words[4 + c], lineno))
                                                            : parse_real(words[4 + c], lineno);
            if (s.payload == Payload::mask && value != 0.0 && value != 1.0) throw FormatError("mask values must be 0 or 1");
            s.channels[c][static_cast<Eigen::Index>(f)] = value;
        }
    }
    return s;
}

MeshSignal read_mesh_signal(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_mesh_signal(in);
}

} // namespace fetgv
