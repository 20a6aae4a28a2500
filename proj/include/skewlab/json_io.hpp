#pragma once

// Serialization. Writing is done by hand so output is byte-deterministic:
// fixed key order, floats at 17 significant digits, exact fractions as
// decimal strings. Reading goes through nlohmann::json.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewlab/chain.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/frac128.hpp"
#include "skewlab/rpk.hpp"
#include "skewlab/skew_spec.hpp"
#include "skewlab/sparse_series.hpp"
#include "skewlab/subsequence.hpp"
#include "skewlab/torus_point.hpp"
#include "skewlab/verify.hpp"

namespace skewlab {
namespace jsonio {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_int(std::int64_t v) { return std::to_string(v); }

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

inline std::string to_json(const Frac128& v) { return quote(v.to_decimal()); }

inline std::string to_json(const SparseSeries& s) {
    std::string out = "[";
    bool first = true;
    for (const auto& t : s.terms()) {
        if (!first) out += ",";
        first = false;
        out += "{\"n\":" + fmt_int(t.n) + ",\"re\":" + fmt_double(t.c.real()) +
               ",\"im\":" + fmt_double(t.c.imag()) + "}";
    }
    return out + "]";
}

inline std::string to_json(const TorusPoint& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) out += ",";
        out += to_json(p.x[i]);
    }
    return out + "]";
}

inline std::string entries_to_json(const Subsequence& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        if (i) out += ",";
        const auto& e = s.entries[i];
        out += "{\"r\":" + quote(fmt_int(e.r)) + ",\"n_r\":" + quote(fmt_int(e.n)) +
               ",\"dist\":" + quote(fmt_double(e.dist)) + "}";
    }
    return out + "]";
}

inline std::string to_json(const Subsequence& s) {
    return "{\"schema\":1,\"eps\":" + fmt_double(s.eps) + ",\"r0\":" + fmt_int(s.r0) +
           ",\"entries\":" + entries_to_json(s) + "}";
}

inline std::string to_json(const CoboundaryChain& chain) {
    std::string out = "{\"schema\":1,\"alpha\":" + to_json(chain.alpha) +
                      ",\"eps\":" + fmt_double(chain.subseq.eps) +
                      ",\"r0\":" + fmt_int(chain.subseq.r0) +
                      ",\"entries\":" + entries_to_json(chain.subseq) +
                      ",\"f\":" + to_json(chain.f) + ",\"G\":[";
    for (std::size_t i = 0; i < chain.G.size(); ++i) {
        if (i) out += ",";
        out += to_json(chain.G[i]);
    }
    return out + "]}";
}

inline std::string to_json(const SkewSpec& spec) {
    std::string out = "{\"schema\":1,\"dim\":" + std::to_string(spec.dim()) + ",\"updates\":[";
    for (std::size_t i = 1; i <= spec.dim(); ++i) {
        const auto& u = spec.updates[i - 1];
        if (i > 1) out += ",";
        out += "{\"constant\":" + to_json(u.constant) + ",\"prev\":" + (u.prev ? "true" : "false");
        if (u.prev && u.prev_index != i - 1) out += ",\"prev_index\":" + std::to_string(u.prev_index);
        out += ",\"series\":";
        out += u.series ? to_json(*u.series) : "null";
        if (u.series && u.series_arg != 1) out += ",\"series_arg\":" + std::to_string(u.series_arg);
        out += "}";
    }
    return out + "]}";
}

inline std::string to_json(const RPCertificate& c) {
    std::string out = "{\"x\":" + to_json(c.x) + ",\"y\":" + to_json(c.y) +
                      ",\"delta\":" + fmt_double(c.delta) + ",\"witness_x\":" + to_json(c.xp) +
                      ",\"witness_y\":" + to_json(c.yp) + ",\"n\":[";
    for (std::size_t i = 0; i < c.n.size(); ++i) {
        if (i) out += ",";
        out += fmt_int(c.n[i]);
    }
    return out + "]}";
}

inline std::string to_json(const RPTorusResult& r) {
    std::string out = "{\"schema\":1,\"found\":";
    out += r.certificate ? "true" : "false";
    out += ",\"certificate\":";
    out += r.certificate ? to_json(*r.certificate) : "null";
    out += ",\"bounds\":{\"k\":" + std::to_string(r.bounds.k) +
           ",\"delta\":" + fmt_double(r.bounds.delta) + ",\"n_bound\":" + fmt_int(r.bounds.n_bound) +
           ",\"grid\":" + fmt_int(r.bounds.grid) + "}";
    out += ",\"impossible\":";
    out += r.impossible ? "true" : "false";
    out += ",\"note\":" + quote(r.note) + "}";
    return out;
}

inline std::string to_json(const Character& chi) {
    std::string out = "[";
    for (std::size_t i = 0; i < chi.m.size(); ++i) {
        if (i) out += ",";
        out += fmt_int(chi.m[i]);
    }
    return out + "]";
}

inline std::string to_json(const ErgodicityReport& rep) {
    std::string out = "{\"checkpoints\":[";
    for (std::size_t i = 0; i < rep.checkpoints.size(); ++i) {
        if (i) out += ",";
        out += fmt_int(rep.checkpoints[i]);
    }
    out += "],\"rows\":[";
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        if (i) out += ",";
        out += "{\"char\":" + to_json(row.chi) + ",\"start\":" + to_json(row.start) +
               ",\"averages\":[";
        for (std::size_t a = 0; a < row.averages.size(); ++a) {
            if (a) out += ",";
            out += "{\"N\":" + fmt_int(rep.checkpoints[a]) +
                   ",\"re\":" + fmt_double(row.averages[a].real()) +
                   ",\"im\":" + fmt_double(row.averages[a].imag()) +
                   ",\"abs\":" + fmt_double(std::abs(row.averages[a])) + "}";
        }
        out += "],\"slope\":" + fmt_double(row.slope) + "}";
    }
    out += "],\"spread\":[";
    for (std::size_t i = 0; i < rep.spread.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(rep.spread[i]);
    }
    out += "],\"max_abs_final\":" + fmt_double(rep.max_abs_final) +
           ",\"max_spread\":" + fmt_double(rep.max_spread) + "}";
    return out;
}

// ---- parsing ----

inline nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON in " + what);
    return j;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("write failed for " + path);
}

inline Frac128 frac_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_string()) throw ParseError(what + ": expected a decimal string");
    return Frac128::from_decimal(j.get<std::string>());
}

inline SparseSeries series_from_json(const nlohmann::json& j, const std::string& label = "") {
    if (!j.is_array()) throw ParseError("series: expected an array");
    SparseSeries s(label);
    for (const auto& t : j) {
        const std::int64_t n = t.at("n").get<std::int64_t>();
        const double re = t.at("re").get<double>();
        const double im = t.at("im").get<double>();
        s.set_coeff(n, {re, im});
    }
    return s;
}

inline Subsequence subsequence_from_json(const nlohmann::json& j) {
    Subsequence s;
    s.eps = j.at("eps").get<double>();
    s.r0 = j.at("r0").get<std::int64_t>();
    for (const auto& e : j.at("entries")) {
        SubsequenceEntry entry;
        entry.r = std::stoll(e.at("r").get<std::string>());
        entry.n = std::stoll(e.at("n_r").get<std::string>());
        entry.dist = std::stod(e.at("dist").get<std::string>());
        s.entries.push_back(entry);
    }
    return s;
}

inline CoboundaryChain chain_from_json(const nlohmann::json& j) {
    CoboundaryChain chain;
    chain.alpha = frac_from_json(j.at("alpha"), "chain.alpha");
    chain.subseq = subsequence_from_json(j);
    chain.f = series_from_json(j.at("f"), "f");
    std::size_t gi = 1;
    for (const auto& g : j.at("G"))
        chain.G.push_back(series_from_json(g, "G" + std::to_string(gi++)));
    return chain;
}

inline SkewSpec spec_from_json(const nlohmann::json& j) {
    SkewSpec spec;
    const auto dim = j.at("dim").get<std::size_t>();
    std::size_t i = 1;
    for (const auto& u : j.at("updates")) {
        CoordUpdate upd;
        upd.constant = frac_from_json(u.at("constant"), "update.constant");
        upd.prev = u.at("prev").get<bool>();
        if (upd.prev)
            upd.prev_index = u.contains("prev_index") ? u.at("prev_index").get<std::size_t>() : i - 1;
        if (!u.at("series").is_null()) {
            upd.series = series_from_json(u.at("series"));
            upd.series_arg = u.contains("series_arg") ? u.at("series_arg").get<std::size_t>() : 1;
        }
        spec.updates.push_back(std::move(upd));
        ++i;
    }
    if (spec.dim() != dim) throw ParseError("spec: dim does not match updates length");
    spec.validate();
    return spec;
}

inline TorusPoint point_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("point: expected an array of decimal strings");
    TorusPoint p;
    for (const auto& c : j) p.x.push_back(frac_from_json(c, "point coordinate"));
    return p;
}

inline FiniteSystem finite_system_from_json(const nlohmann::json& j) {
    FiniteSystem sys;
    sys.size = j.at("size").get<int>();
    for (const auto& v : j.at("map")) sys.map.push_back(v.get<int>());
    for (const auto& row : j.at("metric")) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(v.get<double>());
        sys.metric.push_back(std::move(r));
    }
    sys.validate();
    return sys;
}

// ---- CSV ----

inline std::string csv_join_ints(const std::vector<std::int64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ":";
        out += fmt_int(v[i]);
    }
    return out;
}

inline std::string csv_point(const TorusPoint& p) {
    std::string out;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) out += ":";
        out += fmt_double(p.x[i].to_double());
    }
    return out;
}

// One row per (character, start, checkpoint). Multi-component fields use ':'
// so the table stays plain CSV.
inline std::string ergodicity_csv(const std::string& system_id, const ErgodicityReport& rep) {
    std::string out = "system-id,char,start,N,re,im,abs\n";
    for (const auto& row : rep.rows) {
        for (std::size_t a = 0; a < row.averages.size(); ++a) {
            out += system_id + "," + csv_join_ints(row.chi.m) + "," + csv_point(row.start) + "," +
                   fmt_int(rep.checkpoints[a]) + "," + fmt_double(row.averages[a].real()) + "," +
                   fmt_double(row.averages[a].imag()) + "," + fmt_double(std::abs(row.averages[a])) +
                   "\n";
        }
    }
    return out;
}

}  // namespace jsonio
}  // namespace skewlab
