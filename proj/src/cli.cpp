#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lawson/io.hpp"

namespace lawson {
namespace io {

namespace {

namespace fs = std::filesystem;

int log_level() {
    const char* env = std::getenv("LAWSON_FORGE_LOG");
    if (!env || !*env)
        return 0;
    return std::string(env) == "debug" ? 2 : 1;
}

VerifyTolerances tolerances_from(const std::optional<double>& override_tol) {
    VerifyTolerances tol;
    if (override_tol) {
        tol.face_defect = tol.mean_curvature = tol.dual_mixed_area = tol.cross_ratio =
            tol.edge_length = tol.unit_norm = tol.labeling_spread = *override_tol;
    }
    return tol;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write file: " + path);
    out << text;
}

std::string gamma_suffix(const std::vector<double>& gammas, size_t i) {
    return gammas.size() > 1 ? "_g" + std::to_string(i) : "";
}

} // namespace

void log_info(const std::string& msg) {
    if (log_level() >= 1)
        std::cerr << "[lawson-forge] " << msg << '\n';
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2)
        std::cerr << "[lawson-forge:debug] " << msg << '\n';
}

static int generate_impl(const RunConfig& cfg, const std::string& out_dir) {
    CauchyData cauchy = cfg.cauchy(); // validates dims and preset
    std::vector<std::string> ambients = cfg.ambients.empty()
                                            ? std::vector<std::string>{"r3"}
                                            : cfg.ambients;
    std::vector<double> gammas = cfg.gamma1.empty() ? std::vector<double>{M_PI / 4.0} : cfg.gamma1;

    LatticeLax lax = propagate(cauchy);
    log_info("propagated " + std::to_string(cfg.width) + "x" + std::to_string(cfg.height) +
             " lattice");

    fs::create_directories(out_dir);
    VerifyTolerances tol = tolerances_from(cfg.tolerance);
    std::string cfg_hash = cfg.hash();

    json report;
    report["config_hash"] = cfg_hash;
    report["nets"] = json::array();
    bool all_pass = true;

    auto emit = [&](const NetFile& nf, const VerificationReport& vr, const std::string& name) {
        save_json(netfile_to_json(nf), (fs::path(out_dir) / (name + ".json")).string());
        json entry = report_to_json(vr);
        entry["file"] = name + ".json";
        entry["ambient"] = nf.ambient;
        entry["gamma"] = nf.gamma;
        report["nets"].push_back(std::move(entry));
        all_pass = all_pass && vr.all_pass();
        log_info("wrote " + name + ".json (" + (vr.all_pass() ? "pass" : "FAIL") + ")");
    };

    for (const std::string& ambient : ambients) {
        if (ambient == "r3") {
            NetR3 net = immerse_r3(lax);
            emit(to_netfile(net, &lax, cfg_hash), verify_net(net, &lax, tol), "net_r3");
        } else if (ambient == "s3") {
            for (size_t i = 0; i < gammas.size(); ++i) {
                NetS3 net = immerse_s3(lax, gammas[i]);
                emit(to_netfile(net, &lax, cfg_hash), verify_net(net, &lax, tol),
                     "net_s3" + gamma_suffix(gammas, i));
            }
        } else { // sphere
            for (size_t i = 0; i < gammas.size(); ++i) {
                SphereNet net = scale_to_sphere(immerse_s3(lax, gammas[i]));
                emit(to_netfile(net, &lax, cfg_hash), verify_net(net, &lax, tol),
                     "net_sphere" + gamma_suffix(gammas, i));
            }
        }
    }

    report["pass"] = all_pass;
    save_json(report, (fs::path(out_dir) / "report.json").string());
    return all_pass ? 0 : 2;
}

static int lawson_impl(const RunConfig& cfg, const std::string& out_dir) {
    CauchyData cauchy = cfg.cauchy();
    fs::create_directories(out_dir);
    std::string cfg_hash = cfg.hash();
    double tol = cfg.tolerance.value_or(1e-8);

    LawsonPair pair = lawson_pair(cauchy);
    save_json(netfile_to_json(to_netfile(pair.r3, &pair.lax, cfg_hash)),
              (fs::path(out_dir) / "net_r3.json").string());
    save_json(netfile_to_json(to_netfile(pair.s3, &pair.lax, cfg_hash)),
              (fs::path(out_dir) / "net_s3.json").string());

    json report;
    report["config_hash"] = cfg_hash;
    bool all_pass = pair.max_metric_mismatch <= tol;
    report["isometry"] = {{"max_metric_mismatch", pair.max_metric_mismatch},
                          {"tolerance", tol},
                          {"pass", pair.max_metric_mismatch <= tol}};

    if (cfg.gamma1.size() >= 2) {
        std::vector<FamilyMember> family = sphere_family(cauchy, cfg.gamma1);
        json rows = json::array();
        double worst_family = 0.0;
        for (const FamilyMember& mem : family) {
            double expected_h = std::cos(2.0 * mem.gamma1);
            double conservation = std::abs(mem.measured_h * mem.measured_h + mem.kappa - 1.0);
            worst_family = std::max({worst_family, conservation,
                                     std::abs(mem.measured_h - expected_h)});
            rows.push_back({{"gamma1", mem.gamma1},
                            {"measured_H", mem.measured_h},
                            {"expected_H", expected_h},
                            {"kappa", mem.kappa},
                            {"H2_plus_kappa", mem.measured_h * mem.measured_h + mem.kappa}});
        }
        // Cross-member invariance of the normalized products (ss_i)/H.
        double worst_products = 0.0;
        for (size_t i = 1; i < family.size(); ++i) {
            const auto& p0 = family[0].normalized_products;
            const auto& pi = family[i].normalized_products;
            for (size_t k = 0; k < p0.horizontal.size(); ++k)
                worst_products = std::max(worst_products,
                                          std::abs(pi.horizontal[k] - p0.horizontal[k]) /
                                              (1.0 + std::abs(p0.horizontal[k])));
            for (size_t k = 0; k < p0.vertical.size(); ++k)
                worst_products =
                    std::max(worst_products, std::abs(pi.vertical[k] - p0.vertical[k]) /
                                                 (1.0 + std::abs(p0.vertical[k])));
        }
        bool family_pass = worst_family <= tol && worst_products <= tol;
        all_pass = all_pass && family_pass;
        report["family"] = {{"rows", rows},
                            {"max_conservation_deviation", worst_family},
                            {"max_product_mismatch", worst_products},
                            {"pass", family_pass}};

        json calapso = json::array();
        double worst_calapso = 0.0;
        for (size_t i = 0; i < cfg.gamma1.size(); ++i)
            for (size_t k = i + 1; k < cfg.gamma1.size(); ++k) {
                CalapsoReport cr = calapso_labeling_check(pair.lax, cfg.gamma1[i], cfg.gamma1[k]);
                double worst = std::max({cr.max_alpha_shift_residual, cr.max_beta_shift_residual,
                                         cr.max_labeling_map_residual});
                worst_calapso = std::max(worst_calapso, worst);
                calapso.push_back({{"gamma", cfg.gamma1[i]},
                                   {"gamma_prime", cfg.gamma1[k]},
                                   {"alpha_shift_residual", cr.max_alpha_shift_residual},
                                   {"beta_shift_residual", cr.max_beta_shift_residual},
                                   {"labeling_map_residual", cr.max_labeling_map_residual}});
            }
        bool calapso_pass = worst_calapso <= tol;
        all_pass = all_pass && calapso_pass;
        report["calapso"] = {{"pairs", calapso}, {"pass", calapso_pass}};

        // Euclidean limit over the decreasing gammas within (0, pi/4].
        std::vector<double> limit_gammas;
        for (double g : cfg.gamma1)
            if (g > 0.0 && g <= M_PI / 4.0)
                limit_gammas.push_back(g);
        std::sort(limit_gammas.begin(), limit_gammas.end(), std::greater<>());
        limit_gammas.erase(std::unique(limit_gammas.begin(), limit_gammas.end()),
                           limit_gammas.end());
        if (limit_gammas.size() >= 2) {
            std::vector<LimitRow> rows_l = euclidean_limit(cauchy, limit_gammas);
            json jl = json::array();
            bool monotone = true;
            for (size_t i = 0; i < rows_l.size(); ++i) {
                if (i > 0 && !(rows_l[i].deviation < rows_l[i - 1].deviation))
                    monotone = false;
                jl.push_back({{"gamma", rows_l[i].gamma},
                              {"deviation", rows_l[i].deviation},
                              {"ratio", rows_l[i].ratio}});
            }
            all_pass = all_pass && monotone;
            report["euclidean_limit"] = {{"rows", jl}, {"monotone", monotone}, {"pass", monotone}};
        }
    }

    report["pass"] = all_pass;
    save_json(report, (fs::path(out_dir) / "lawson_report.json").string());
    log_info(std::string("lawson report: ") + (all_pass ? "pass" : "FAIL"));
    return all_pass ? 0 : 2;
}

static int verify_impl(const std::string& net_path, const std::string& out_dir,
                       std::optional<double> tolerance) {
    NetFile nf = load_netfile(net_path);
    std::optional<LatticeLax> lax = netfile_lax(nf);
    const LatticeLax* lax_ptr = lax ? &*lax : nullptr;
    VerifyTolerances tol = tolerances_from(tolerance);

    VerificationReport rep;
    if (nf.ambient == "r3") {
        NetR3 net = netfile_to_r3(nf);
        if (net.Fdual.empty())
            throw Error("invalid net file: r3 verification requires the dual net");
        rep = verify_net(net, lax_ptr, tol);
    } else if (nf.ambient == "s3") {
        rep = verify_net(netfile_to_s3(nf), lax_ptr, tol);
    } else {
        rep = verify_net(netfile_to_sphere(nf), lax_ptr, tol);
    }

    fs::create_directories(out_dir);
    save_json(report_to_json(rep), (fs::path(out_dir) / "verify_report.json").string());
    for (const CriterionResult& c : rep.criteria)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " (max " << c.max_deviation
                  << ", tol " << c.tolerance << ")\n";
    return rep.all_pass() ? 0 : 2;
}

static int reconstruct_impl(const std::string& net_path, const std::string& out_dir) {
    NetFile nf = load_netfile(net_path);
    fs::create_directories(out_dir);

    std::optional<ReconstructionReport> maybe_rec;
    try {
        if (nf.ambient == "r3") {
            NetR3 net = netfile_to_r3(nf);
            maybe_rec = reconstruct_net_r3(net.width, net.height, net.F, net.N);
        } else {
            NetS3 net = netfile_to_s3(nf);
            maybe_rec = reconstruct_net_s3(net.width, net.height, net.F, net.N);
        }
    } catch (const Error& e) {
        std::cerr << "reconstruction failed: " << e.what() << '\n';
        return 2;
    }
    ReconstructionReport& rec = *maybe_rec;

    save_json(lax_to_json(rec.lax), (fs::path(out_dir) / "lax.json").string());

    json report;
    report["gamma1"] = rec.gamma1;
    report["transposed"] = rec.transposed;
    report["max_commutation_residual"] = rec.max_commutation_residual;
    report["max_shared_edge_disagreement"] = rec.max_shared_edge_disagreement;
    report["max_labeling_deviation"] = rec.max_labeling_deviation;

    bool pass = true;
    if (nf.has_lax) {
        std::optional<LatticeLax> original = netfile_lax(nf);
        double worst = 0.0;
        for (int n = 0; n < original->height(); ++n)
            for (int m = 0; m + 1 < original->width(); ++m) {
                const UEdgeData& o = original->horizontal(m, n);
                const UEdgeData& r = rec.lax.horizontal(m, n);
                worst = std::max({worst, std::abs(o.a - r.a), std::abs(o.u - r.u)});
            }
        for (int n = 0; n + 1 < original->height(); ++n)
            for (int m = 0; m < original->width(); ++m) {
                const VEdgeData& o = original->vertical(m, n);
                const VEdgeData& r = rec.lax.vertical(m, n);
                worst = std::max({worst, std::abs(o.b - r.b), std::abs(o.v - r.v)});
            }
        pass = worst <= 1e-8;
        report["round_trip"] = {{"max_deviation", worst}, {"tolerance", 1e-8}, {"pass", pass}};
    }
    report["pass"] = pass;
    save_json(report, (fs::path(out_dir) / "reconstruct_report.json").string());
    log_info(std::string("reconstruction: ") + (pass ? "pass" : "FAIL"));
    return pass ? 0 : 2;
}

static int export_impl(const std::string& net_path, const std::string& out_path,
                       const std::string& mode) {
    NetFile nf = load_netfile(net_path);
    std::string effective = mode;
    if (effective.empty())
        effective = (nf.dim == 3) ? "r3" : "s3-stereographic";
    std::string obj = export_obj(nf, effective);
    write_text(out_path, obj);
    log_info("wrote " + out_path);
    return 0;
}

// Public drivers: map input and configuration errors to exit code 1, keeping
// the verification-failure code 2 produced inside the implementations.
namespace {

template <typename Fn>
int guard_input_errors(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int run_generate(const RunConfig& cfg, const std::string& out_dir) {
    return guard_input_errors([&] { return generate_impl(cfg, out_dir); });
}

int run_lawson(const RunConfig& cfg, const std::string& out_dir) {
    return guard_input_errors([&] { return lawson_impl(cfg, out_dir); });
}

int run_verify(const std::string& net_path, const std::string& out_dir,
               std::optional<double> tolerance) {
    return guard_input_errors([&] { return verify_impl(net_path, out_dir, tolerance); });
}

int run_reconstruct(const std::string& net_path, const std::string& out_dir) {
    return guard_input_errors([&] { return reconstruct_impl(net_path, out_dir); });
}

int run_export(const std::string& net_path, const std::string& out_path,
               const std::string& mode) {
    return guard_input_errors([&] { return export_impl(net_path, out_path, mode); });
}

} // namespace io
} // namespace lawson

