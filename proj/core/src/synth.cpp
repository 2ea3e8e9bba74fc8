#include "mobmap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mobmap {
namespace synth {

namespace {

struct Face {
    std::string name;
    Vec3 origin;      // world
    Vec3 edge_u;      // world, spans the face
    Vec3 edge_v;
    bool corrugated = false;
    double amplitude = 0.0;
    double period = 1.0;
    double density = 0.0;
};

Vec3 face_normal(const Face& f) { return f.edge_u.cross(f.edge_v).normalized(); }

double face_area(const Face& f) { return f.edge_u.cross(f.edge_v).norm(); }

double slope_vs_up(const Vec3& n_world) {
    double deg = angle_between(n_world, {0, 0, 1}) * 180.0 / M_PI;
    if (deg > 90.0) deg = 180.0 - deg;
    return deg;
}

// Right-handed sensor basis: +Z forward, +X right, +Y down.
struct Frame {
    Vec3 x, y, z, origin;
    Vec3 to_local(const Vec3& p) const {
        const Vec3 d = p - origin;
        return {x.dot(d), y.dot(d), z.dot(d)};
    }
    Vec3 rotate(const Vec3& v) const { return {x.dot(v), y.dot(v), z.dot(v)}; }
};

Frame make_frame(const CameraPose& pose) {
    Frame f;
    f.origin = pose.position;
    f.z = (pose.target - pose.position).normalized();
    Vec3 up{0, 0, 1};
    if (std::abs(f.z.dot(up)) > 0.999) up = {0, 1, 0};  // looking straight up/down
    f.x = f.z.cross(up).normalized();
    f.y = f.z.cross(f.x);
    return f;
}

void add_box_faces(const Primitive& p, const Vec3& camera, std::vector<Face>& faces) {
    const double hw = p.width / 2.0;
    const double hd = p.depth / 2.0;
    const double z0 = p.base_z;
    const double z1 = p.base_z + p.height;
    const double cx = p.center.x;
    const double cy = p.center.y;

    struct Candidate {
        const char* name;
        Face face;
    };
    // Normals (edge_u x edge_v) face outward.
    const Candidate candidates[] = {
        {"top", {{}, {cx - hw, cy - hd, z1}, {p.width, 0, 0}, {0, p.depth, 0}}},
        {"side-y", {{}, {cx - hw, cy - hd, z0}, {p.width, 0, 0}, {0, 0, p.height}}},
        {"side+y", {{}, {cx + hw, cy + hd, z0}, {-p.width, 0, 0}, {0, 0, p.height}}},
        {"side-x", {{}, {cx - hw, cy + hd, z0}, {0, -p.depth, 0}, {0, 0, p.height}}},
        {"side+x", {{}, {cx + hw, cy - hd, z0}, {0, p.depth, 0}, {0, 0, p.height}}},
    };
    for (const Candidate& c : candidates) {
        Face f = c.face;
        const Vec3 center = f.origin + f.edge_u * 0.5 + f.edge_v * 0.5;
        if (face_normal(f).dot(camera - center) <= 0.0) continue;  // back face
        f.name = c.name;
        f.density = p.density;
        faces.push_back(f);
    }
}

std::vector<Face> faces_of(const Primitive& p, const Vec3& camera) {
    std::vector<Face> faces;
    switch (p.kind) {
        case Primitive::Kind::floor: {
            Face f{"floor",
                   {p.center.x - p.width / 2, p.center.y - p.depth / 2, p.base_z},
                   {p.width, 0, 0},
                   {0, p.depth, 0}};
            f.density = p.density;
            faces.push_back(f);
            break;
        }
        case Primitive::Kind::wall: {
            // Vertical rectangle in the y = center.y plane, normal -y.
            Face f{"wall",
                   {p.center.x - p.width / 2, p.center.y, p.base_z},
                   {p.width, 0, 0},
                   {0, 0, p.height}};
            f.density = p.density;
            faces.push_back(f);
            break;
        }
        case Primitive::Kind::ramp: {
            const double rad = p.angle_deg * M_PI / 180.0;
            Face f{"ramp",
                   {p.center.x - p.width / 2, p.center.y, p.base_z},
                   {p.width, 0, 0},
                   {0, p.depth * std::cos(rad), p.depth * std::sin(rad)}};
            f.density = p.density;
            faces.push_back(f);
            break;
        }
        case Primitive::Kind::box:
            add_box_faces(p, camera, faces);
            break;
        case Primitive::Kind::corrugation: {
            Face f{"corrugation",
                   {p.center.x - p.width / 2, p.center.y - p.depth / 2, p.base_z},
                   {p.width, 0, 0},
                   {0, p.depth, 0}};
            f.corrugated = true;
            f.amplitude = p.amplitude;
            f.period = p.period;
            f.density = p.density;
            faces.push_back(f);
            break;
        }
        case Primitive::Kind::step: {
            Face lower{"step-lower",
                       {p.center.x - p.width / 2, p.center.y - p.depth / 2, p.base_z},
                       {p.width, 0, 0},
                       {0, p.depth / 2, 0}};
            Face riser{"step-riser",
                       {p.center.x - p.width / 2, p.center.y, p.base_z},
                       {p.width, 0, 0},
                       {0, 0, p.height}};
            Face upper{"step-upper",
                       {p.center.x - p.width / 2, p.center.y, p.base_z + p.height},
                       {p.width, 0, 0},
                       {0, p.depth / 2, 0}};
            lower.density = riser.density = upper.density = p.density;
            faces.push_back(lower);
            faces.push_back(riser);
            faces.push_back(upper);
            break;
        }
    }
    return faces;
}

}  // namespace

double corrugation_roughness(double amplitude, double period) {
    if (!(period > 0.0)) throw ParameterError("corrugation_roughness: period must be > 0");
    const double k = 2.0 * M_PI * amplitude / period;
    // Simpson quadrature over one period of sqrt(1 + k^2 cos^2).
    const int n = 20000;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n * 2.0 * M_PI;
        const double f = std::sqrt(1.0 + k * k * std::cos(t) * std::cos(t));
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += w * f;
    }
    return sum / (3.0 * n);
}

LabeledCloud generate(const SceneSpec& spec) {
    if (!(spec.density > 0.0)) throw ParameterError("generate: density must be > 0");
    if (spec.noise_sigma < 0.0) throw ParameterError("generate: noise sigma must be >= 0");

    std::vector<Face> faces;
    for (const Primitive& p : spec.primitives) {
        for (Face& f : faces_of(p, spec.camera.position)) faces.push_back(std::move(f));
    }

    // Per-face sample counts, optionally rescaled to an exact total.
    std::vector<std::size_t> counts(faces.size());
    double weight_total = 0.0;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const double density = faces[i].density > 0.0 ? faces[i].density : spec.density;
        const double weight = face_area(faces[i]) * density;
        counts[i] = static_cast<std::size_t>(std::llround(weight));
        weight_total += weight;
    }
    if (spec.target_points > 0 && weight_total > 0.0) {
        std::size_t assigned = 0;
        std::size_t heaviest = 0;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            const double density = faces[i].density > 0.0 ? faces[i].density : spec.density;
            const double weight = face_area(faces[i]) * density;
            counts[i] = static_cast<std::size_t>(
                std::floor(weight / weight_total * static_cast<double>(spec.target_points)));
            assigned += counts[i];
            if (counts[i] > counts[heaviest]) heaviest = i;
        }
        counts[heaviest] += spec.target_points - assigned;  // largest face absorbs rounding
    }

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    LabeledCloud out;
    const Frame frame = make_frame(spec.camera);

    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const Face& f = faces[fi];
        const int label = static_cast<int>(fi);

        FaceTruth truth;
        truth.label = label;
        truth.name = f.name;
        Vec3 n_world = face_normal(f);
        if (f.corrugated) {
            n_world = {0, 0, 1};
            truth.roughness = corrugation_roughness(f.amplitude, f.period);
        }
        truth.normal = spec.world_frame ? n_world : frame.rotate(n_world);
        truth.slope_deg = slope_vs_up(n_world);
        out.faces.push_back(truth);

        const Vec3 u_dir = f.edge_u.normalized();
        for (std::size_t s = 0; s < counts[fi]; ++s) {
            const double a = unit(rng);
            const double b = unit(rng);
            Vec3 p = f.origin + f.edge_u * a + f.edge_v * b;
            Vec3 local_normal = n_world;
            if (f.corrugated) {
                const double along = f.edge_u.norm() * a;
                const double phase = 2.0 * M_PI * along / f.period;
                p += Vec3{0, 0, 1} * (f.amplitude * std::sin(phase));
                const double slope = 2.0 * M_PI * f.amplitude / f.period * std::cos(phase);
                local_normal = (Vec3{0, 0, 1} - u_dir * slope).normalized();
            }
            if (spec.noise_sigma > 0.0) p += local_normal * (gauss(rng) * spec.noise_sigma);
            out.cloud.push_back(spec.world_frame ? p : frame.to_local(p));
            out.labels.push_back(label);
        }
    }

    if (spec.outlier_count > 0 && !out.cloud.empty()) {
        Vec3 lo = out.cloud.points[0];
        Vec3 hi = lo;
        for (const Vec3& p : out.cloud.points) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
        }
        const Vec3 span = hi - lo;
        for (std::size_t i = 0; i < spec.outlier_count; ++i) {
            const Vec3 p{lo.x + span.x * unit(rng), lo.y + span.y * unit(rng),
                         lo.z + span.z * unit(rng)};
            out.cloud.push_back(p);
            out.labels.push_back(-1);
        }
    }

    out.viewpoint = spec.world_frame ? spec.camera.position : Vec3{0, 0, 0};
    return out;
}

Primitive parse_primitive(const std::string& descriptor) {
    const auto colon = descriptor.find(':');
    const std::string kind = descriptor.substr(0, colon);

    Primitive p;
    if (kind == "floor") p.kind = Primitive::Kind::floor;
    else if (kind == "wall") p.kind = Primitive::Kind::wall, p.height = 1.0;
    else if (kind == "ramp") p.kind = Primitive::Kind::ramp, p.width = 1.0, p.depth = 1.0;
    else if (kind == "box") p.kind = Primitive::Kind::box, p.width = 0.3, p.depth = 0.3;
    else if (kind == "corrugation") p.kind = Primitive::Kind::corrugation, p.width = 1.0, p.depth = 1.0;
    else if (kind == "step") p.kind = Primitive::Kind::step, p.width = 1.0, p.depth = 1.0, p.height = 0.1;
    else throw ParameterError("unknown primitive kind: " + kind);

    if (colon == std::string::npos) return p;
    std::istringstream rest(descriptor.substr(colon + 1));
    std::string kv;
    while (std::getline(rest, kv, ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParameterError("bad primitive option: " + kv);
        const std::string key = kv.substr(0, eq);
        const double value = std::stod(kv.substr(eq + 1));
        if (key == "cx") p.center.x = value;
        else if (key == "cy") p.center.y = value;
        else if (key == "w") p.width = value;
        else if (key == "d") p.depth = value;
        else if (key == "h") p.height = value;
        else if (key == "angle") p.angle_deg = value;
        else if (key == "amp") p.amplitude = value;
        else if (key == "period") p.period = value;
        else if (key == "z0") p.base_z = value;
        else if (key == "density") p.density = value;
        else throw ParameterError("unknown primitive option: " + key);
    }
    return p;
}

}  // namespace synth
}  // namespace mobmap
