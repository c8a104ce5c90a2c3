#ifndef LAWSON_IO_HPP
#define LAWSON_IO_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "lawson/correspondence.hpp"
#include "lawson/reconstruct.hpp"
#include "lawson/verify.hpp"

namespace lawson {
namespace io {

using nlohmann::json;

/// Inclusive sampling range for the random Cauchy-data preset.
struct Range {
    double lo = 0.0, hi = 0.0;
};

struct RunConfig {
    int width = 0, height = 0;
    std::string preset; // "constant" | "random" | "explicit"

    // constant preset
    Complex const_a{0.0, 0.0}, const_b{0.0, 0.0};
    double const_u = 1.0, const_v = 1.0;

    // random preset
    std::uint64_t seed = 0;
    Range a_re{-0.5, 0.5}, a_im{-0.5, 0.5}, u_range{0.7, 1.4};
    Range b_re{-0.5, 0.5}, b_im{-0.5, 0.5}, v_range{0.7, 1.4};

    // explicit preset
    std::vector<UEdgeData> row0;
    std::vector<VEdgeData> col0;

    std::vector<double> gamma1;        // spectral angles for s3/sphere targets
    std::vector<std::string> ambients; // subset of {"r3", "s3", "sphere"}
    std::optional<double> tolerance;   // uniform override of every tolerance

    CauchyData cauchy() const;
    std::string hash() const; // FNV-1a over the canonical JSON form, hex

    json to_json() const;
    static RunConfig from_json(const json& j);
    static RunConfig load(const std::string& path);
};

/// Random admissible Cauchy data (also used by tests). Each edge is sampled
/// until beta(1)^2 > 0.05 so the Euclidean evaluation stays well-conditioned.
CauchyData random_cauchy(int width, int height, std::uint64_t seed, const Range& a_re,
                         const Range& a_im, const Range& u_range, const Range& b_re,
                         const Range& b_im, const Range& v_range);
CauchyData random_cauchy(int width, int height, std::uint64_t seed);

/// On-disk net document. Vertices are row-major over (m, n), m fastest.
struct NetFile {
    int format_version = 1;
    std::string ambient; // "r3" | "s3" | "sphere"
    int width = 0, height = 0, dim = 3;
    double gamma = 0.0;  // construction spectral angle (0 for r3)
    double kappa = 0.0;  // sphere only
    double radius = 1.0; // sphere only
    std::vector<double> vertices; // dim * width * height
    std::vector<double> normals;  // same layout (dim components, r3 uses 3)
    std::vector<double> dual;     // r3 only, may be empty
    std::vector<Face> faces;
    bool has_lax = false;
    std::vector<UEdgeData> lax_h; // (M-1) x N row-major
    std::vector<VEdgeData> lax_v; // M x (N-1) row-major
    std::string config_hash;
    std::uint64_t lattice_hash = 0;
};

NetFile to_netfile(const NetR3& net, const LatticeLax* lax, const std::string& config_hash);
NetFile to_netfile(const NetS3& net, const LatticeLax* lax, const std::string& config_hash);
NetFile to_netfile(const SphereNet& net, const LatticeLax* lax, const std::string& config_hash);

NetR3 netfile_to_r3(const NetFile& f);
NetS3 netfile_to_s3(const NetFile& f);
SphereNet netfile_to_sphere(const NetFile& f);
std::optional<LatticeLax> netfile_lax(const NetFile& f);

json netfile_to_json(const NetFile& f);
NetFile netfile_from_json(const json& j);
NetFile load_netfile(const std::string& path);
void save_json(const json& j, const std::string& path);

json report_to_json(const VerificationReport& rep);
json lax_to_json(const LatticeLax& lax);
LatticeLax lax_from_json(const json& j);

/// OBJ export; mode is "r3" (pass-through 3D vertices) or "s3-stereographic"
/// (projection from (0,0,0,-1), (X1,X2,X3)/(1+X4)).
std::string export_obj(const NetFile& f, const std::string& mode);

/// Subcommand drivers shared by the CLI and the tests. Return process exit
/// codes: 0 pass, 1 input error, 2 verification failure.
int run_generate(const RunConfig& cfg, const std::string& out_dir);
int run_lawson(const RunConfig& cfg, const std::string& out_dir);
int run_verify(const std::string& net_path, const std::string& out_dir,
               std::optional<double> tolerance = std::nullopt);
int run_reconstruct(const std::string& net_path, const std::string& out_dir);
int run_export(const std::string& net_path, const std::string& out_path,
               const std::string& mode);

/// Log line gated on LAWSON_FORGE_LOG (any non-empty value enables info,
/// "debug" enables debug lines).
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace io
} // namespace lawson

#endif
