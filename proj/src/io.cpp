#include "lawson/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace lawson {
namespace io {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json complex_to_json(const Complex& z) { return json{z.real(), z.imag()}; }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw Error("invalid net file: complex value must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

void require(bool cond, const std::string& msg) {
    if (!cond)
        throw Error(msg);
}

double sample(std::mt19937_64& rng, const Range& r) {
    return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

} // namespace

CauchyData RunConfig::cauchy() const {
    require(width >= 2 && height >= 2, "invalid config: dims must be at least 2x2 (no faces to verify)");
    if (preset == "constant") {
        CauchyData c;
        c.row0.assign(static_cast<size_t>(width) - 1, UEdgeData{const_a, const_u});
        c.col0.assign(static_cast<size_t>(height) - 1, VEdgeData{const_b, const_v});
        return c;
    }
    if (preset == "random")
        return random_cauchy(width, height, seed, a_re, a_im, u_range, b_re, b_im, v_range);
    if (preset == "explicit") {
        require(static_cast<int>(row0.size()) == width - 1,
                "invalid config: row0 must have width-1 entries");
        require(static_cast<int>(col0.size()) == height - 1,
                "invalid config: col0 must have height-1 entries");
        return CauchyData{row0, col0};
    }
    throw Error("invalid config: unknown preset '" + preset + "'");
}

std::string RunConfig::hash() const { return hex64(fnv1a(to_json().dump())); }

json RunConfig::to_json() const {
    json j;
    j["width"] = width;
    j["height"] = height;
    j["preset"] = preset;
    if (preset == "constant") {
        j["constant"] = {{"a", complex_to_json(const_a)},
                         {"u", const_u},
                         {"b", complex_to_json(const_b)},
                         {"v", const_v}};
    } else if (preset == "random") {
        j["random"] = {{"seed", seed},
                       {"a_re", json{a_re.lo, a_re.hi}},
                       {"a_im", json{a_im.lo, a_im.hi}},
                       {"u", json{u_range.lo, u_range.hi}},
                       {"b_re", json{b_re.lo, b_re.hi}},
                       {"b_im", json{b_im.lo, b_im.hi}},
                       {"v", json{v_range.lo, v_range.hi}}};
    } else if (preset == "explicit") {
        json row = json::array(), col = json::array();
        for (const UEdgeData& e : row0)
            row.push_back({{"a", complex_to_json(e.a)}, {"u", e.u}});
        for (const VEdgeData& e : col0)
            col.push_back({{"b", complex_to_json(e.b)}, {"v", e.v}});
        j["explicit"] = {{"row0", row}, {"col0", col}};
    }
    if (!gamma1.empty())
        j["gamma1"] = gamma1;
    if (!ambients.empty())
        j["ambients"] = ambients;
    if (tolerance)
        j["tolerance"] = *tolerance;
    return j;
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    try {
        cfg.width = j.at("width").get<int>();
        cfg.height = j.at("height").get<int>();
        cfg.preset = j.at("preset").get<std::string>();
        if (cfg.preset == "constant") {
            const json& c = j.at("constant");
            cfg.const_a = complex_from_json(c.at("a"));
            cfg.const_u = c.at("u").get<double>();
            cfg.const_b = complex_from_json(c.at("b"));
            cfg.const_v = c.at("v").get<double>();
        } else if (cfg.preset == "random") {
            const json& r = j.at("random");
            cfg.seed = r.at("seed").get<std::uint64_t>();
            auto range = [&](const char* key, Range fallback) {
                if (!r.contains(key))
                    return fallback;
                const json& a = r.at(key);
                return Range{a.at(0).get<double>(), a.at(1).get<double>()};
            };
            cfg.a_re = range("a_re", cfg.a_re);
            cfg.a_im = range("a_im", cfg.a_im);
            cfg.u_range = range("u", cfg.u_range);
            cfg.b_re = range("b_re", cfg.b_re);
            cfg.b_im = range("b_im", cfg.b_im);
            cfg.v_range = range("v", cfg.v_range);
        } else if (cfg.preset == "explicit") {
            const json& e = j.at("explicit");
            for (const json& r : e.at("row0"))
                cfg.row0.push_back({complex_from_json(r.at("a")), r.at("u").get<double>()});
            for (const json& c : e.at("col0"))
                cfg.col0.push_back({complex_from_json(c.at("b")), c.at("v").get<double>()});
        } else {
            throw Error("invalid config: unknown preset '" + cfg.preset + "'");
        }
        if (j.contains("gamma1"))
            cfg.gamma1 = j.at("gamma1").get<std::vector<double>>();
        if (j.contains("ambients"))
            cfg.ambients = j.at("ambients").get<std::vector<std::string>>();
        if (j.contains("tolerance"))
            cfg.tolerance = j.at("tolerance").get<double>();
    } catch (const json::exception& e) {
        throw Error(std::string("invalid config: ") + e.what());
    }
    for (const std::string& a : cfg.ambients)
        require(a == "r3" || a == "s3" || a == "sphere",
                "invalid config: unknown ambient '" + a + "'");
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(std::string("invalid config: ") + e.what());
    }
    return from_json(j);
}

CauchyData random_cauchy(int width, int height, std::uint64_t seed, const Range& a_re,
                         const Range& a_im, const Range& u_range, const Range& b_re,
                         const Range& b_im, const Range& v_range) {
    if (width < 2 || height < 2)
        throw Error("invalid config: dims must be at least 2x2 (no faces to verify)");
    std::mt19937_64 rng(seed);
    CauchyData c;
    for (int m = 0; m + 1 < width; ++m)
        c.row0.push_back({Complex(sample(rng, a_re), sample(rng, a_im)), sample(rng, u_range)});
    for (int n = 0; n + 1 < height; ++n) {
        // Resample until beta(1)^2 = |b|^2 - 2 + v^2 + v^{-2} is safely positive.
        for (int attempt = 0;; ++attempt) {
            VEdgeData e{Complex(sample(rng, b_re), sample(rng, b_im)), sample(rng, v_range)};
            double beta2 = std::norm(e.b) - 2.0 + e.v * e.v + 1.0 / (e.v * e.v);
            if (beta2 > 0.05) {
                c.col0.push_back(e);
                break;
            }
            if (attempt > 1000)
                throw Error("invalid config: random ranges cannot produce beta(1)^2 > 0");
        }
    }
    return c;
}

CauchyData random_cauchy(int width, int height, std::uint64_t seed) {
    RunConfig defaults;
    return random_cauchy(width, height, seed, defaults.a_re, defaults.a_im, defaults.u_range,
                         defaults.b_re, defaults.b_im, defaults.v_range);
}

namespace {

void pack_lax(NetFile& f, const LatticeLax* lax) {
    if (!lax)
        return;
    f.has_lax = true;
    for (int n = 0; n < lax->height(); ++n)
        for (int m = 0; m + 1 < lax->width(); ++m)
            f.lax_h.push_back(lax->horizontal(m, n));
    for (int n = 0; n + 1 < lax->height(); ++n)
        for (int m = 0; m < lax->width(); ++m)
            f.lax_v.push_back(lax->vertical(m, n));
}

template <class V> void pack_grid(std::vector<double>& out, const std::vector<V>& grid, int dim) {
    out.reserve(grid.size() * dim);
    for (const V& p : grid) {
        out.push_back(p.x1);
        out.push_back(p.x2);
        out.push_back(p.x3);
        if constexpr (std::is_same_v<V, Vec4>)
            out.push_back(p.x4);
    }
}

} // namespace

NetFile to_netfile(const NetR3& net, const LatticeLax* lax, const std::string& config_hash) {
    NetFile f;
    f.ambient = "r3";
    f.width = net.width;
    f.height = net.height;
    f.dim = 3;
    f.gamma = 0.0;
    pack_grid(f.vertices, net.F, 3);
    pack_grid(f.normals, net.N, 3);
    pack_grid(f.dual, net.Fdual, 3);
    f.faces = net.faces;
    f.config_hash = config_hash;
    f.lattice_hash = net.lattice_hash;
    pack_lax(f, lax);
    return f;
}

NetFile to_netfile(const NetS3& net, const LatticeLax* lax, const std::string& config_hash) {
    NetFile f;
    f.ambient = "s3";
    f.width = net.width;
    f.height = net.height;
    f.dim = 4;
    f.gamma = net.gamma1;
    pack_grid(f.vertices, net.F, 4);
    pack_grid(f.normals, net.N, 4);
    f.faces = net.faces;
    f.config_hash = config_hash;
    f.lattice_hash = net.lattice_hash;
    pack_lax(f, lax);
    return f;
}

NetFile to_netfile(const SphereNet& net, const LatticeLax* lax, const std::string& config_hash) {
    NetFile f;
    f.ambient = "sphere";
    f.width = net.width;
    f.height = net.height;
    f.dim = 4;
    f.gamma = net.gamma1;
    f.kappa = net.kappa;
    f.radius = net.radius;
    pack_grid(f.vertices, net.F, 4);
    pack_grid(f.normals, net.N, 4);
    f.faces = net.faces;
    f.config_hash = config_hash;
    f.lattice_hash = net.lattice_hash;
    pack_lax(f, lax);
    return f;
}

namespace {

std::vector<Vec3> unpack3(const std::vector<double>& v) {
    std::vector<Vec3> out(v.size() / 3);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = Vec3{v[3 * i], v[3 * i + 1], v[3 * i + 2]};
    return out;
}

std::vector<Vec4> unpack4(const std::vector<double>& v) {
    std::vector<Vec4> out(v.size() / 4);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = Vec4{v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]};
    return out;
}

} // namespace

NetR3 netfile_to_r3(const NetFile& f) {
    require(f.ambient == "r3", "net file is not an r3 net");
    NetR3 net;
    net.width = f.width;
    net.height = f.height;
    net.F = unpack3(f.vertices);
    net.N = unpack3(f.normals);
    if (!f.dual.empty())
        net.Fdual = unpack3(f.dual);
    net.faces = f.faces;
    net.lattice_hash = f.lattice_hash;
    return net;
}

NetS3 netfile_to_s3(const NetFile& f) {
    require(f.ambient == "s3" || f.ambient == "sphere", "net file is not an s3 net");
    NetS3 net;
    net.width = f.width;
    net.height = f.height;
    net.gamma1 = f.gamma;
    net.F = unpack4(f.vertices);
    net.N = unpack4(f.normals);
    if (f.ambient == "sphere" && f.radius != 1.0)
        for (Vec4& p : net.F)
            p = p * (1.0 / f.radius);
    net.faces = f.faces;
    net.lattice_hash = f.lattice_hash;
    return net;
}

SphereNet netfile_to_sphere(const NetFile& f) {
    require(f.ambient == "sphere", "net file is not a sphere net");
    SphereNet net;
    net.width = f.width;
    net.height = f.height;
    net.gamma1 = f.gamma;
    net.kappa = f.kappa;
    net.radius = f.radius;
    net.F = unpack4(f.vertices);
    net.N = unpack4(f.normals);
    net.faces = f.faces;
    net.lattice_hash = f.lattice_hash;
    return net;
}

std::optional<LatticeLax> netfile_lax(const NetFile& f) {
    if (!f.has_lax)
        return std::nullopt;
    LatticeLax lax(f.width, f.height);
    size_t i = 0;
    for (int n = 0; n < f.height; ++n)
        for (int m = 0; m + 1 < f.width; ++m)
            lax.horizontal(m, n) = f.lax_h[i++];
    i = 0;
    for (int n = 0; n + 1 < f.height; ++n)
        for (int m = 0; m < f.width; ++m)
            lax.vertical(m, n) = f.lax_v[i++];
    return lax;
}

json lax_to_json(const LatticeLax& lax) {
    json h = json::array(), v = json::array();
    for (int n = 0; n < lax.height(); ++n)
        for (int m = 0; m + 1 < lax.width(); ++m) {
            const UEdgeData& e = lax.horizontal(m, n);
            h.push_back({{"a", complex_to_json(e.a)}, {"u", e.u}});
        }
    for (int n = 0; n + 1 < lax.height(); ++n)
        for (int m = 0; m < lax.width(); ++m) {
            const VEdgeData& e = lax.vertical(m, n);
            v.push_back({{"b", complex_to_json(e.b)}, {"v", e.v}});
        }
    return json{{"width", lax.width()},
                {"height", lax.height()},
                {"horizontal", h},
                {"vertical", v}};
}

LatticeLax lax_from_json(const json& j) {
    try {
        int w = j.at("width").get<int>(), h = j.at("height").get<int>();
        require(w >= 1 && h >= 1, "invalid lax data: bad dims");
        LatticeLax lax(w, h);
        const json& jh = j.at("horizontal");
        const json& jv = j.at("vertical");
        require(static_cast<int>(jh.size()) == (w - 1) * h, "invalid lax data: horizontal count");
        require(static_cast<int>(jv.size()) == w * (h - 1), "invalid lax data: vertical count");
        size_t i = 0;
        for (int n = 0; n < h; ++n)
            for (int m = 0; m + 1 < w; ++m, ++i)
                lax.horizontal(m, n) = {complex_from_json(jh[i].at("a")),
                                        jh[i].at("u").get<double>()};
        i = 0;
        for (int n = 0; n + 1 < h; ++n)
            for (int m = 0; m < w; ++m, ++i)
                lax.vertical(m, n) = {complex_from_json(jv[i].at("b")),
                                      jv[i].at("v").get<double>()};
        return lax;
    } catch (const json::exception& e) {
        throw Error(std::string("invalid lax data: ") + e.what());
    }
}

json netfile_to_json(const NetFile& f) {
    json j;
    j["format_version"] = f.format_version;
    j["ambient"] = f.ambient;
    j["dims"] = {{"width", f.width}, {"height", f.height}};
    j["dim"] = f.dim;

    auto grid = [&](const std::vector<double>& flat, int dim) {
        json rows = json::array();
        for (size_t i = 0; i + dim <= flat.size(); i += dim) {
            json row = json::array();
            for (int k = 0; k < dim; ++k)
                row.push_back(flat[i + k]);
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["vertices"] = grid(f.vertices, f.dim);
    j["normals"] = grid(f.normals, f.dim);
    if (!f.dual.empty())
        j["dual"] = grid(f.dual, f.dim);

    json faces = json::array();
    for (const Face& face : f.faces)
        faces.push_back({face[0], face[1], face[2], face[3]});
    j["faces"] = faces;

    if (f.ambient == "sphere") {
        j["kappa"] = f.kappa;
        j["radius"] = f.radius;
    }

    if (f.has_lax) {
        json h = json::array(), v = json::array();
        for (const UEdgeData& e : f.lax_h)
            h.push_back({{"a", complex_to_json(e.a)}, {"u", e.u}});
        for (const VEdgeData& e : f.lax_v)
            v.push_back({{"b", complex_to_json(e.b)}, {"v", e.v}});
        j["lax"] = {{"horizontal", h}, {"vertical", v}};
    }

    j["provenance"] = {{"config_hash", f.config_hash},
                       {"lattice_hash", hex64(f.lattice_hash)},
                       {"gamma", f.gamma}};
    return j;
}

NetFile netfile_from_json(const json& j) {
    NetFile f;
    try {
        f.format_version = j.at("format_version").get<int>();
        require(f.format_version == 1, "invalid net file: unsupported format version");
        f.ambient = j.at("ambient").get<std::string>();
        require(f.ambient == "r3" || f.ambient == "s3" || f.ambient == "sphere",
                "invalid net file: unknown ambient '" + f.ambient + "'");
        f.width = j.at("dims").at("width").get<int>();
        f.height = j.at("dims").at("height").get<int>();
        require(f.width >= 1 && f.height >= 1, "invalid net file: bad dims");
        f.dim = j.at("dim").get<int>();
        require(f.dim == (f.ambient == "r3" ? 3 : 4), "invalid net file: dim/ambient mismatch");

        auto grid = [&](const json& rows) {
            std::vector<double> flat;
            require(static_cast<int>(rows.size()) == f.width * f.height,
                    "invalid net file: vertex count does not match dims");
            for (const json& row : rows) {
                require(static_cast<int>(row.size()) == f.dim,
                        "invalid net file: wrong component count");
                for (const json& x : row)
                    flat.push_back(x.get<double>());
            }
            return flat;
        };
        f.vertices = grid(j.at("vertices"));
        f.normals = grid(j.at("normals"));
        if (j.contains("dual"))
            f.dual = grid(j.at("dual"));

        for (const json& face : j.at("faces")) {
            require(face.size() == 4, "invalid net file: faces must be quads");
            Face fc;
            for (int k = 0; k < 4; ++k) {
                fc[k] = face[k].get<int>();
                require(fc[k] >= 0 && fc[k] < f.width * f.height,
                        "invalid net file: face index out of bounds");
            }
            f.faces.push_back(fc);
        }

        if (f.ambient == "sphere") {
            f.kappa = j.at("kappa").get<double>();
            f.radius = j.at("radius").get<double>();
        }

        if (j.contains("lax")) {
            f.has_lax = true;
            const json& h = j.at("lax").at("horizontal");
            const json& v = j.at("lax").at("vertical");
            require(static_cast<int>(h.size()) == (f.width - 1) * f.height,
                    "invalid net file: lax horizontal count");
            require(static_cast<int>(v.size()) == f.width * (f.height - 1),
                    "invalid net file: lax vertical count");
            for (const json& e : h)
                f.lax_h.push_back({complex_from_json(e.at("a")), e.at("u").get<double>()});
            for (const json& e : v)
                f.lax_v.push_back({complex_from_json(e.at("b")), e.at("v").get<double>()});
        }

        const json& p = j.at("provenance");
        f.config_hash = p.at("config_hash").get<std::string>();
        f.lattice_hash = std::stoull(p.at("lattice_hash").get<std::string>(), nullptr, 16);
        f.gamma = p.at("gamma").get<double>();
    } catch (const json::exception& e) {
        throw Error(std::string("invalid net file: ") + e.what());
    }
    return f;
}

NetFile load_netfile(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open net file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(std::string("invalid net file: ") + e.what());
    }
    return netfile_from_json(j);
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

json report_to_json(const VerificationReport& rep) {
    json criteria = json::array();
    for (const CriterionResult& c : rep.criteria)
        criteria.push_back({{"name", c.name},
                            {"max_deviation", c.max_deviation},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass}});
    return json{{"criteria", criteria},
                {"pass", rep.all_pass()},
                {"faces",
                 {{"H", rep.face_h},
                  {"K", rep.face_k},
                  {"planarity", rep.face_planarity},
                  {"circularity", rep.face_circularity},
                  {"cross_ratio", rep.face_cross_ratio}}},
                {"edges",
                 {{"products_horizontal", rep.edge_products_h},
                  {"products_vertical", rep.edge_products_v},
                  {"labeling_A", rep.labeling_a},
                  {"labeling_B", rep.labeling_b}}}};
}

std::string export_obj(const NetFile& f, const std::string& mode) {
    std::ostringstream out;
    char buf[32];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return std::string(buf);
    };

    const int count = f.width * f.height;
    if (mode == "r3") {
        require(f.dim == 3, "export mode r3 requires a 3-component net");
        for (int i = 0; i < count; ++i)
            out << "v " << num(f.vertices[3 * i]) << ' ' << num(f.vertices[3 * i + 1]) << ' '
                << num(f.vertices[3 * i + 2]) << '\n';
    } else if (mode == "s3-stereographic") {
        require(f.dim == 4, "export mode s3-stereographic requires a 4-component net");
        for (int i = 0; i < count; ++i) {
            double x4 = f.vertices[4 * i + 3];
            double denom = 1.0 + x4 / (f.ambient == "sphere" ? f.radius : 1.0);
            // For sphere nets project the direction F/|F|.
            double scale = (f.ambient == "sphere") ? f.radius : 1.0;
            if (std::abs(denom) < 1e-9)
                throw Error("stereographic projection pole hit at vertex " + std::to_string(i));
            out << "v " << num(f.vertices[4 * i] / scale / denom) << ' '
                << num(f.vertices[4 * i + 1] / scale / denom) << ' '
                << num(f.vertices[4 * i + 2] / scale / denom) << '\n';
        }
    } else {
        throw Error("unknown export mode: " + mode);
    }
    for (const Face& face : f.faces)
        out << "f " << face[0] + 1 << ' ' << face[1] + 1 << ' ' << face[2] + 1 << ' '
            << face[3] + 1 << '\n';
    return out.str();
}

} // namespace io
} // namespace lawson
