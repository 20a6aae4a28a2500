#pragma once

// Subcommand implementations. Each takes a parsed config plus a log stream
// and returns a process exit code: 0 ok, 1 failed check or guard, 2 bad
// config or missing input, 3 unexpected. File outputs land in the config's
// out directory and are byte-deterministic.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "skewlab/chain.hpp"
#include "skewlab/config.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/halton.hpp"
#include "skewlab/json_io.hpp"
#include "skewlab/rpk.hpp"
#include "skewlab/skew_spec.hpp"
#include "skewlab/subsequence.hpp"
#include "skewlab/verify.hpp"

namespace skewlab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInternal = 3;

// Residual thresholds for checks that hold as identities at any truncation.
inline constexpr double kIdentityThreshold = 1e-9;

inline SkewSpec build_system_from_config(const ExperimentConfig& cfg, const SparseSeries& f) {
    const auto& s = cfg.system;
    if (s.kind == "plain-tower") return build_plain_tower(s.k, cfg.alpha);
    if (s.kind == "series-tower" || s.kind == "shift-family")
        return build_series_tower(s.k, s.j, f, cfg.alpha);
    if (s.kind == "twisted-tower") return build_twisted_tower(s.dim, f, cfg.alpha, cfg.beta);
    if (s.kind == "plain-twisted-tower")
        return build_plain_twisted_tower(s.dim, cfg.alpha, cfg.beta);
    if (s.kind == "double-series-tower")
        return build_double_series_tower(s.dim, s.l, f, cfg.alpha, cfg.beta);
    if (s.kind == "interleaved-product")
        return build_interleaved_product(s.k, s.j, s.l, f, f, cfg.alpha, cfg.beta);
    throw ConfigError("unknown system kind: " + s.kind);
}

inline std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

inline int cmd_build(const ExperimentConfig& cfg, std::ostream& log) {
    std::filesystem::create_directories(cfg.out_dir);
    const Subsequence subseq = select_subsequence(cfg.alpha, cfg.eps, cfg.count, cfg.n_max);
    const CoboundaryChain chain = build_chain(subseq, cfg.alpha, cfg.L);
    const SkewSpec spec = build_system_from_config(cfg, chain.f);

    jsonio::write_file(out_path(cfg, "chain.json"), jsonio::to_json(chain) + "\n");
    jsonio::write_file(out_path(cfg, "spec.json"), jsonio::to_json(spec) + "\n");
    if (cfg.system.kind == "shift-family") {
        std::string fam = "{\"schema\":1,\"members\":[";
        const auto members = build_shift_family(spec, cfg.system.constants);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i) fam += ",";
            fam += jsonio::to_json(members[i]);
        }
        jsonio::write_file(out_path(cfg, "family.json"), fam + "]}\n");
    }

    log << "label: " << cfg.label << "\n";
    log << "r0: " << subseq.r0 << "  entries: " << subseq.entries.size() << "\n";
    const double rec = recommended_eps(cfg.L);
    log << "eps: " << cfg.eps << "  recommended for L=" << cfg.L << ": " << rec << "\n";
    if (cfg.eps > rec)
        log << "warning: eps exceeds the recommended bound for this chain length; "
               "square-summability of the deepest element is not guaranteed\n";
    log << "abs coefficient sum of f: " << abs_coeff_sum(chain.f) << "\n";
    for (std::size_t i = 0; i < chain.G.size(); ++i)
        log << "l2 norm of G" << (i + 1) << ": " << l2_norm(chain.G[i]) << "\n";
    const std::int64_t probe = 1000;
    log << "coboundary identity residual (" << probe
        << " samples): " << coboundary_residual(chain, probe) << "\n";
    log << "wrote " << out_path(cfg, "chain.json") << ", " << out_path(cfg, "spec.json") << "\n";
    return kExitOk;
}

struct CheckResult {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = false;
    bool hard = false;
};

inline std::string checks_to_json(const std::vector<CheckResult>& checks) {
    std::string out = "[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        if (i) out += ",";
        out += "{\"name\":" + jsonio::quote(c.name) + ",\"value\":" + jsonio::fmt_double(c.value) +
               ",\"threshold\":" + jsonio::fmt_double(c.threshold) +
               ",\"pass\":" + (c.pass ? "true" : "false") +
               ",\"hard\":" + (c.hard ? "true" : "false") + "}";
    }
    return out + "]";
}

inline int cmd_verify(const ExperimentConfig& cfg, std::ostream& log) {
    std::filesystem::create_directories(cfg.out_dir);
    const CoboundaryChain chain =
        jsonio::chain_from_json(jsonio::load_json_file(out_path(cfg, "chain.json")));
    const SkewSpec spec =
        jsonio::spec_from_json(jsonio::load_json_file(out_path(cfg, "spec.json")));
    const std::string system_id = cfg.label + "/" + cfg.system.kind;

    std::vector<CheckResult> checks;
    auto add_check = [&](const std::string& name, double value, double threshold, bool hard) {
        checks.push_back({name, value, threshold, value < threshold, hard});
        log << name << ": " << value << (value < threshold ? "  (pass, < " : "  (FAIL, >= ")
            << threshold << ")\n";
    };

    if (cfg.coboundary_samples > 0)
        add_check("coboundary_residual", coboundary_residual(chain, cfg.coboundary_samples),
                  kIdentityThreshold, true);

    if (cfg.conjugacy.enabled) {
        const int need = cfg.conjugacy.k - cfg.conjugacy.j;
        if (need < 1 || static_cast<std::size_t>(need) > chain.G.size())
            throw ConfigError("conjugacy: chain length L must be at least k-j");
        const SkewSpec specT =
            build_series_tower(cfg.conjugacy.k, cfg.conjugacy.j, chain.f, chain.alpha);
        const SkewSpec specS = build_plain_tower(cfg.conjugacy.k, chain.alpha);
        TriangularConjugacy pi;
        pi.j = static_cast<std::size_t>(cfg.conjugacy.j);
        pi.G_list.assign(chain.G.begin(), chain.G.begin() + need);
        add_check("conjugacy_residual",
                  conjugacy_residual(specT, specS, pi, cfg.conjugacy.samples), kIdentityThreshold,
                  true);
    }

    if (cfg.eigenfunction.enabled) {
        const SkewSpec specR =
            build_twisted_tower(cfg.eigenfunction.dim, chain.f, chain.alpha, cfg.beta);
        add_check("eigenfunction_residual",
                  eigenfunction_residual(specR, cfg.eigenfunction.n, cfg.eigenfunction.m,
                                         chain.G[0], cfg.beta, cfg.eigenfunction.samples),
                  kIdentityThreshold, true);
    }

    if (cfg.commutation.enabled) {
        const auto family = build_shift_family(spec, {Frac128{}, cfg.commutation.c});
        add_check("commutation_residual",
                  commutation_residual(family[0], family[1], cfg.commutation.samples),
                  kIdentityThreshold, true);
    }

    std::string ergodicity_json = "null";
    if (cfg.ergodicity.enabled) {
        if (cfg.ergodicity.starts < 2) throw ConfigError("ergodicity: need at least 2 starts");
        std::vector<TorusPoint> starts;
        for (int i = 1; i <= cfg.ergodicity.starts; ++i)
            starts.emplace_back(halton_point(static_cast<std::uint64_t>(i),
                                             static_cast<int>(spec.dim())));
        const ErgodicityReport rep = unique_ergodicity_probe(spec, cfg.ergodicity.chars, starts,
                                                             cfg.ergodicity.checkpoints);
        ergodicity_json = jsonio::to_json(rep);
        jsonio::write_file(out_path(cfg, "birkhoff_decay.csv"), jsonio::ergodicity_csv(system_id, rep));
        log << "ergodicity probe: max |avg| at final N = " << rep.max_abs_final
            << ", max spread = " << rep.max_spread << "\n";
    } else {
        jsonio::write_file(out_path(cfg, "birkhoff_decay.csv"), "system-id,char,start,N,re,im,abs\n");
    }

    {
        std::string csv = "M,value\n";
        if (!cfg.sup_growth_truncations.empty())
            for (const auto& [m, v] : sup_growth_probe(chain, cfg.sup_growth_truncations))
                csv += jsonio::fmt_int(m) + "," + jsonio::fmt_double(v) + "\n";
        jsonio::write_file(out_path(cfg, "sup_growth.csv"), csv);
    }
    {
        std::string csv = "N,value\n";
        for (const auto n : cfg.cesaro_checkpoints)
            csv += jsonio::fmt_int(n) + "," + jsonio::fmt_double(cesaro_at_zero(chain, n)) + "\n";
        jsonio::write_file(out_path(cfg, "cesaro.csv"), csv);
    }

    bool all_hard = true;
    for (const auto& c : checks)
        if (c.hard && !c.pass) all_hard = false;
    const std::string report = "{\"schema\":1,\"label\":" + jsonio::quote(cfg.label) +
                               ",\"system\":" + jsonio::quote(cfg.system.kind) +
                               ",\"checks\":" + checks_to_json(checks) +
                               ",\"all_hard_passed\":" + (all_hard ? "true" : "false") +
                               ",\"ergodicity\":" + ergodicity_json + "}";
    jsonio::write_file(out_path(cfg, "report.json"), report + "\n");
    log << "wrote " << out_path(cfg, "report.json") << "\n";
    return all_hard ? kExitOk : kExitCheckFailed;
}

inline int cmd_rpk(const ExperimentConfig& cfg, std::ostream& log) {
    if (!cfg.rpk) throw ConfigError("rpk: config block is required");
    std::filesystem::create_directories(cfg.out_dir);
    const SkewSpec spec =
        jsonio::spec_from_json(jsonio::load_json_file(out_path(cfg, "spec.json")));
    const auto& rc = *cfg.rpk;
    std::string out = "{\"schema\":1,\"results\":[";
    for (std::size_t i = 0; i < rc.pairs.size(); ++i) {
        if (i) out += ",";
        const auto res = rp_certify_torus(spec, rc.pairs[i].x, rc.pairs[i].y, rc.k, rc.delta,
                                          rc.n_bound, rc.grid);
        out += jsonio::to_json(res);
        log << "pair " << i << ": "
            << (res.certificate ? "certificate found"
                                : (res.impossible ? "impossible (conserved quantity)"
                                                  : "no witness found in bounds"))
            << "\n";
    }
    out += "]";
    if (rc.finite) {
        const FiniteSystem sys =
            jsonio::finite_system_from_json(jsonio::load_json_file(rc.finite->file));
        const auto pairs = rp_bruteforce_finite(sys, rc.finite->k, rc.finite->delta,
                                                rc.finite->n_bound);
        out += ",\"finite_pairs\":[";
        bool first = true;
        for (const auto& p : pairs) {
            if (!first) out += ",";
            first = false;
            out += "[" + std::to_string(p.first) + "," + std::to_string(p.second) + "]";
        }
        out += "]";
        log << "finite system: " << pairs.size() << " pairs certified\n";
    }
    jsonio::write_file(out_path(cfg, "certificates.json"), out + "}\n");
    log << "wrote " << out_path(cfg, "certificates.json") << "\n";
    return kExitOk;
}

// Rewrites the stored ergodicity rows as the flat CSV table.
inline int cmd_report(const ExperimentConfig& cfg, std::ostream& log) {
    const auto rep = jsonio::load_json_file(out_path(cfg, "report.json"));
    const std::string system_id = rep.at("label").get<std::string>() + "/" +
                                  rep.at("system").get<std::string>();
    std::string csv = "system-id,char,start,N,re,im,abs\n";
    if (rep.contains("ergodicity") && !rep.at("ergodicity").is_null()) {
        for (const auto& row : rep.at("ergodicity").at("rows")) {
            std::string chi, start;
            for (const auto& m : row.at("char")) {
                if (!chi.empty()) chi += ":";
                chi += std::to_string(m.get<std::int64_t>());
            }
            for (const auto& c : row.at("start")) {
                if (!start.empty()) start += ":";
                start += jsonio::fmt_double(
                    Frac128::from_decimal(c.get<std::string>()).to_double());
            }
            for (const auto& avg : row.at("averages")) {
                csv += system_id + "," + chi + "," + start + "," +
                       std::to_string(avg.at("N").get<std::int64_t>()) + "," +
                       jsonio::fmt_double(avg.at("re").get<double>()) + "," +
                       jsonio::fmt_double(avg.at("im").get<double>()) + "," +
                       jsonio::fmt_double(avg.at("abs").get<double>()) + "\n";
            }
        }
    }
    jsonio::write_file(out_path(cfg, "report.csv"), csv);
    log << "wrote " << out_path(cfg, "report.csv") << "\n";
    return kExitOk;
}

}  // namespace skewlab
