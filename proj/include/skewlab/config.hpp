#pragma once

// Experiment configuration: one JSON file drives build, verify, and rpk.
// Fractions are decimal strings; "golden" and "sqrt2m1" name the two
// built-in irrationals. Absent blocks mean the probe is skipped; unknown
// keys are rejected rather than ignored so a typo cannot disable a check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"
#include "skewlab/json_io.hpp"
#include "skewlab/torus_point.hpp"
#include "skewlab/verify.hpp"

namespace skewlab {

struct SystemSelector {
    std::string kind = "series-tower";  // plain-tower | series-tower | twisted-tower |
                                        // plain-twisted-tower | double-series-tower |
                                        // interleaved-product | shift-family
    int k = 2;
    int j = 1;
    int l = 1;
    int dim = 3;                       // twisted and double-series towers
    std::vector<Frac128> constants;    // shift-family offsets
};

struct ConjugacyCfg {
    bool enabled = false;
    int k = 3;
    int j = 1;
    std::int64_t samples = 10000;
};

struct EigenfunctionCfg {
    bool enabled = false;
    int dim = 3;
    std::int64_t n = 1;
    std::int64_t m = 1;
    std::int64_t samples = 10000;
};

struct CommutationCfg {
    bool enabled = false;
    std::int64_t samples = 10000;
    Frac128 c;  // second family member's offset; the first uses 0
};

struct ErgodicityCfg {
    bool enabled = false;
    std::vector<Character> chars;
    int starts = 5;
    std::vector<std::int64_t> checkpoints;
};

struct RpkPairCfg {
    TorusPoint x, y;
};

struct RpkFiniteCfg {
    std::string file;
    int k = 1;
    double delta = 0.05;
    std::int64_t n_bound = 16;
};

struct RpkCfg {
    int k = 1;
    double delta = 0.05;
    std::int64_t n_bound = 16;
    std::int64_t grid = 40;
    std::vector<RpkPairCfg> pairs;
    std::optional<RpkFiniteCfg> finite;
};

struct ExperimentConfig {
    std::string label = "experiment";
    Frac128 alpha;
    bool alpha_is_golden = false;
    Frac128 beta;
    double eps = 0.0625;
    std::int64_t count = 50;
    int L = 3;
    std::int64_t n_max = 100000000;
    SystemSelector system;
    std::int64_t coboundary_samples = 0;  // 0 skips the check
    ConjugacyCfg conjugacy;
    EigenfunctionCfg eigenfunction;
    CommutationCfg commutation;
    ErgodicityCfg ergodicity;
    std::vector<std::int64_t> sup_growth_truncations;
    std::vector<std::int64_t> cesaro_checkpoints;
    std::optional<RpkCfg> rpk;
    std::string out_dir = "out";
};

namespace detail {

inline Frac128 named_fraction(const std::string& s, const std::string& what) {
    if (s == "golden") return Frac128::golden();
    if (s == "sqrt2m1") return Frac128::sqrt2m1();
    try {
        return Frac128::from_decimal(s);
    } catch (const ParseError& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

// A misspelled or misplaced key would otherwise be dropped silently, which can
// turn a fully configured verify run into one that checks nothing. Reject any
// key we do not recognize instead.
inline void reject_unknown_keys(const nlohmann::json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known) throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
    }
}

inline const std::vector<std::string>& system_kinds() {
    static const std::vector<std::string> kinds = {
        "plain-tower",         "series-tower",       "twisted-tower",
        "plain-twisted-tower", "double-series-tower", "interleaved-product",
        "shift-family"};
    return kinds;
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    detail::reject_unknown_keys(
        j, {"label", "alpha", "beta", "eps", "count", "L", "n_max", "out", "system",
            "verify", "rpk"},
        "config");
    ExperimentConfig cfg;
    if (j.contains("label")) cfg.label = j.at("label").get<std::string>();
    if (!j.contains("alpha")) throw ConfigError("config: alpha is required");
    const std::string alpha_text = j.at("alpha").get<std::string>();
    cfg.alpha = detail::named_fraction(alpha_text, "alpha");
    cfg.alpha_is_golden = (alpha_text == "golden");
    // beta defaults to the second built-in irrational so twisted systems get
    // a rotation number rationally independent of the golden base
    cfg.beta = j.contains("beta")
                   ? detail::named_fraction(j.at("beta").get<std::string>(), "beta")
                   : Frac128::sqrt2m1();
    if (j.contains("eps")) cfg.eps = j.at("eps").get<double>();
    if (j.contains("count")) cfg.count = j.at("count").get<std::int64_t>();
    if (j.contains("L")) cfg.L = j.at("L").get<int>();
    if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<std::int64_t>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();

    if (j.contains("system")) {
        const auto& s = j.at("system");
        detail::reject_unknown_keys(s, {"kind", "k", "j", "l", "dim", "constants"},
                                    "system");
        cfg.system.kind = s.at("kind").get<std::string>();
        bool known_kind = false;
        for (const auto& kind : detail::system_kinds())
            if (cfg.system.kind == kind) {
                known_kind = true;
                break;
            }
        if (!known_kind)
            throw ConfigError("system.kind: unknown kind \"" + cfg.system.kind + "\"");
        if (s.contains("k")) cfg.system.k = s.at("k").get<int>();
        if (s.contains("j")) cfg.system.j = s.at("j").get<int>();
        if (s.contains("l")) cfg.system.l = s.at("l").get<int>();
        if (s.contains("dim")) cfg.system.dim = s.at("dim").get<int>();
        if (s.contains("constants"))
            for (const auto& c : s.at("constants"))
                cfg.system.constants.push_back(
                    detail::named_fraction(c.get<std::string>(), "system.constants"));
    }

    if (j.contains("verify")) {
        const auto& v = j.at("verify");
        detail::reject_unknown_keys(v,
                                    {"coboundary_samples", "conjugacy", "eigenfunction",
                                     "commutation", "ergodicity",
                                     "sup_growth_truncations", "cesaro_checkpoints"},
                                    "verify");
        if (v.contains("coboundary_samples"))
            cfg.coboundary_samples = v.at("coboundary_samples").get<std::int64_t>();
        if (v.contains("conjugacy")) {
            const auto& c = v.at("conjugacy");
            detail::reject_unknown_keys(c, {"k", "j", "samples"}, "verify.conjugacy");
            cfg.conjugacy.enabled = true;
            if (c.contains("k")) cfg.conjugacy.k = c.at("k").get<int>();
            if (c.contains("j")) cfg.conjugacy.j = c.at("j").get<int>();
            if (c.contains("samples")) cfg.conjugacy.samples = c.at("samples").get<std::int64_t>();
        }
        if (v.contains("eigenfunction")) {
            const auto& e = v.at("eigenfunction");
            detail::reject_unknown_keys(e, {"dim", "n", "m", "samples"},
                                        "verify.eigenfunction");
            cfg.eigenfunction.enabled = true;
            if (e.contains("dim")) cfg.eigenfunction.dim = e.at("dim").get<int>();
            if (e.contains("n")) cfg.eigenfunction.n = e.at("n").get<std::int64_t>();
            if (e.contains("m")) cfg.eigenfunction.m = e.at("m").get<std::int64_t>();
            if (e.contains("samples"))
                cfg.eigenfunction.samples = e.at("samples").get<std::int64_t>();
        }
        if (v.contains("commutation")) {
            const auto& c = v.at("commutation");
            detail::reject_unknown_keys(c, {"c", "samples"}, "verify.commutation");
            cfg.commutation.enabled = true;
            cfg.commutation.c = c.contains("c")
                                    ? detail::named_fraction(c.at("c").get<std::string>(),
                                                             "commutation.c")
                                    : Frac128::from_decimal("0.25");
            if (c.contains("samples"))
                cfg.commutation.samples = c.at("samples").get<std::int64_t>();
        }
        if (v.contains("ergodicity")) {
            const auto& e = v.at("ergodicity");
            detail::reject_unknown_keys(e, {"chars", "starts", "checkpoints"},
                                        "verify.ergodicity");
            cfg.ergodicity.enabled = true;
            if (!e.contains("chars")) throw ConfigError("ergodicity: chars is required");
            for (const auto& ch : e.at("chars")) {
                Character chi;
                for (const auto& m : ch) chi.m.push_back(m.get<std::int64_t>());
                cfg.ergodicity.chars.push_back(std::move(chi));
            }
            if (e.contains("starts")) cfg.ergodicity.starts = e.at("starts").get<int>();
            if (!e.contains("checkpoints")) throw ConfigError("ergodicity: checkpoints required");
            for (const auto& n : e.at("checkpoints"))
                cfg.ergodicity.checkpoints.push_back(n.get<std::int64_t>());
        }
        if (v.contains("sup_growth_truncations"))
            for (const auto& m : v.at("sup_growth_truncations"))
                cfg.sup_growth_truncations.push_back(m.get<std::int64_t>());
        if (v.contains("cesaro_checkpoints"))
            for (const auto& n : v.at("cesaro_checkpoints"))
                cfg.cesaro_checkpoints.push_back(n.get<std::int64_t>());
    }

    if (j.contains("rpk")) {
        const auto& r = j.at("rpk");
        detail::reject_unknown_keys(r, {"k", "delta", "n_bound", "grid", "pairs", "finite"},
                                    "rpk");
        RpkCfg rc;
        if (r.contains("k")) rc.k = r.at("k").get<int>();
        if (r.contains("delta")) rc.delta = r.at("delta").get<double>();
        if (r.contains("n_bound")) rc.n_bound = r.at("n_bound").get<std::int64_t>();
        if (r.contains("grid")) rc.grid = r.at("grid").get<std::int64_t>();
        if (r.contains("pairs")) {
            for (const auto& p : r.at("pairs")) {
                detail::reject_unknown_keys(p, {"x", "y"}, "rpk.pairs");
                RpkPairCfg pair;
                pair.x = jsonio::point_from_json(p.at("x"));
                pair.y = jsonio::point_from_json(p.at("y"));
                rc.pairs.push_back(std::move(pair));
            }
        }
        if (r.contains("finite")) {
            const auto& f = r.at("finite");
            detail::reject_unknown_keys(f, {"file", "k", "delta", "n_bound"},
                                        "rpk.finite");
            RpkFiniteCfg fc;
            fc.file = f.at("file").get<std::string>();
            if (f.contains("k")) fc.k = f.at("k").get<int>();
            if (f.contains("delta")) fc.delta = f.at("delta").get<double>();
            if (f.contains("n_bound")) fc.n_bound = f.at("n_bound").get<std::int64_t>();
            rc.finite = std::move(fc);
        }
        cfg.rpk = std::move(rc);
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    try {
        return config_from_json(jsonio::load_json_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace skewlab
