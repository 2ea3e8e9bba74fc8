#include "mobmap/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mobmap/image.hpp"

namespace mobmap {

namespace {

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

void append_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

std::uint32_t pack_rgb(const Rgb8& c) {
    return (static_cast<std::uint32_t>(c.r) << 16) | (static_cast<std::uint32_t>(c.g) << 8) |
           static_cast<std::uint32_t>(c.b);
}

Rgb8 unpack_rgb(float packed) {
    const auto bits = std::bit_cast<std::uint32_t>(packed);
    return {static_cast<std::uint8_t>((bits >> 16) & 0xff),
            static_cast<std::uint8_t>((bits >> 8) & 0xff),
            static_cast<std::uint8_t>(bits & 0xff)};
}

}  // namespace

PointCloud load_pcd(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::vector<std::string> fields;
    std::size_t count = 0;
    bool ascii = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "FIELDS") {
            std::string f;
            while (ls >> f) fields.push_back(f);
        } else if (key == "POINTS") {
            ls >> count;
        } else if (key == "DATA") {
            std::string mode;
            ls >> mode;
            ascii = (mode == "ascii");
            break;
        }
    }
    if (!ascii) throw IoError(path + ": only ASCII PCD data is supported");

    int xi = -1, yi = -1, zi = -1, rgbi = -1;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "x") xi = static_cast<int>(i);
        else if (fields[i] == "y") yi = static_cast<int>(i);
        else if (fields[i] == "z") zi = static_cast<int>(i);
        else if (fields[i] == "rgb") rgbi = static_cast<int>(i);
    }
    if (xi < 0 || yi < 0 || zi < 0) throw IoError(path + ": PCD lacks x y z fields");

    PointCloud cloud;
    cloud.points.reserve(count);
    std::vector<double> row(fields.size());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        bool ok = true;
        for (double& v : row) {
            if (!(ls >> v)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        const Vec3 p{row[xi], row[yi], row[zi]};
        if (!p.finite()) continue;  // sensor holes
        if (rgbi >= 0) cloud.push_back(p, unpack_rgb(static_cast<float>(row[rgbi])));
        else cloud.push_back(p);
    }
    if (rgbi >= 0 && cloud.colors.size() != cloud.points.size()) {
        throw IoError(path + ": inconsistent color data");
    }
    return cloud;
}

void save_pcd(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    const bool colored = cloud.has_colors();

    std::string buf;
    buf += "# .PCD v0.7 - Point Cloud Data file format\nVERSION 0.7\n";
    buf += colored ? "FIELDS x y z rgb\nSIZE 8 8 8 4\nTYPE F F F F\nCOUNT 1 1 1 1\n"
                   : "FIELDS x y z\nSIZE 8 8 8\nTYPE F F F\nCOUNT 1 1 1\n";
    buf += "WIDTH " + std::to_string(cloud.size()) + "\nHEIGHT 1\n";
    buf += "VIEWPOINT 0 0 0 1 0 0 0\nPOINTS " + std::to_string(cloud.size()) + "\nDATA ascii\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.points[i];
        append_double(buf, p.x);
        buf += ' ';
        append_double(buf, p.y);
        buf += ' ';
        append_double(buf, p.z);
        if (colored) {
            buf += ' ';
            const float packed = std::bit_cast<float>(pack_rgb(cloud.colors[i]));
            char tmp[24];
            std::snprintf(tmp, sizeof(tmp), "%.9g", static_cast<double>(packed));
            buf += tmp;
        }
        buf += '\n';
    }
    out << buf;
    if (!out) throw IoError("failed writing " + path);
}

PointCloud load_ply(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line) || line.rfind("ply", 0) != 0) {
        throw IoError(path + ": not a PLY file");
    }

    struct Element {
        std::string name;
        std::size_t count = 0;
        std::vector<std::string> properties;
    };
    std::vector<Element> elements;
    bool ascii = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "format") {
            std::string fmt;
            ls >> fmt;
            ascii = (fmt == "ascii");
        } else if (key == "element") {
            Element e;
            ls >> e.name >> e.count;
            elements.push_back(e);
        } else if (key == "property") {
            if (elements.empty()) throw IoError(path + ": property before element");
            std::string type, name;
            ls >> type;
            if (type == "list") {
                // two extra type tokens precede the name
                ls >> name >> name;
            }
            ls >> name;
            elements.back().properties.push_back(name);
        } else if (key == "end_header") {
            break;
        }
    }
    if (!ascii) throw IoError(path + ": only ASCII PLY is supported");

    PointCloud cloud;
    for (const Element& e : elements) {
        if (e.name != "vertex") {
            for (std::size_t i = 0; i < e.count && std::getline(in, line); ++i) {}
            continue;
        }
        int xi = -1, yi = -1, zi = -1, ri = -1, gi = -1, bi = -1;
        for (std::size_t i = 0; i < e.properties.size(); ++i) {
            const std::string& n = e.properties[i];
            if (n == "x") xi = static_cast<int>(i);
            else if (n == "y") yi = static_cast<int>(i);
            else if (n == "z") zi = static_cast<int>(i);
            else if (n == "red") ri = static_cast<int>(i);
            else if (n == "green") gi = static_cast<int>(i);
            else if (n == "blue") bi = static_cast<int>(i);
        }
        if (xi < 0 || yi < 0 || zi < 0) throw IoError(path + ": vertex lacks x y z");
        const bool colored = ri >= 0 && gi >= 0 && bi >= 0;

        std::vector<double> row(e.properties.size());
        for (std::size_t i = 0; i < e.count && std::getline(in, line); ++i) {
            std::istringstream ls(line);
            bool ok = true;
            for (double& v : row) {
                if (!(ls >> v)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            const Vec3 p{row[xi], row[yi], row[zi]};
            if (!p.finite()) continue;
            if (colored) {
                cloud.push_back(p, {static_cast<std::uint8_t>(row[ri]),
                                    static_cast<std::uint8_t>(row[gi]),
                                    static_cast<std::uint8_t>(row[bi])});
            } else {
                cloud.push_back(p);
            }
        }
    }
    return cloud;
}

void save_ply(const PointCloud& cloud, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    const bool colored = cloud.has_colors();

    std::string buf;
    buf += "ply\nformat ascii 1.0\n";
    buf += "element vertex " + std::to_string(cloud.size()) + "\n";
    buf += "property double x\nproperty double y\nproperty double z\n";
    if (colored) buf += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    buf += "end_header\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.points[i];
        append_double(buf, p.x);
        buf += ' ';
        append_double(buf, p.y);
        buf += ' ';
        append_double(buf, p.z);
        if (colored) {
            const Rgb8& c = cloud.colors[i];
            buf += ' ' + std::to_string(c.r) + ' ' + std::to_string(c.g) + ' ' +
                   std::to_string(c.b);
        }
        buf += '\n';
    }
    out << buf;
    if (!out) throw IoError("failed writing " + path);
}

PointCloud load_cloud(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "pcd") return load_pcd(path);
    if (ext == "ply") return load_ply(path);
    throw IoError(path + ": unsupported cloud format (expected .pcd or .ply)");
}

void save_cloud(const PointCloud& cloud, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "pcd") return save_pcd(cloud, path);
    if (ext == "ply") return save_ply(cloud, path);
    throw IoError(path + ": unsupported cloud format (expected .pcd or .ply)");
}

void save_labels_csv(const std::vector<int>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "index,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
    if (!out) throw IoError("failed writing " + path);
}

std::vector<int> load_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<int> labels;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        labels.push_back(std::stoi(line.substr(comma + 1)));
    }
    return labels;
}

}  // namespace mobmap
