#pragma once

// JSON form of an RDPoint. Symbols are written by label so a file stays readable next to
// its spec. Rates are rounded to 9 significant digits; the channel is kept at full
// precision, so re-evaluating it reproduces the stored numbers.
//
//   { "distortion": D, "rate_bits": R, "lambda": l | "inf", "converged": b, "iterations": k,
//     "support_size": s,
//     "atoms": [ { "subset": ["1","2"] | null, "recovery": ["0","1","0"] | null,
//                  "p_given_x": [p(u|x_0), p(u|x_1), ...] }, ... ],
//     "decoder": [ ["0","1","0"], ... ] }   // atoms x |Y|, zhat labels

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <json.hpp>

#include "lossycomp/solver.hpp"
#include "lossycomp/spec_io.hpp"

namespace lossycomp {

inline double round_significant(double v, int digits = 9) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
}

inline nlohmann::json lambda_to_json(double lambda) {
    if (std::isinf(lambda)) return "inf";
    return lambda;
}

inline nlohmann::json to_json(const ProblemSpec& spec, const RDPoint& pt) {
    nlohmann::json atoms = nlohmann::json::array();
    for (std::size_t u = 0; u < pt.channel.num_atoms(); ++u) {
        const auto& l = pt.channel.label(u);
        nlohmann::json a;
        if (l.subset) {
            nlohmann::json s = nlohmann::json::array();
            for (std::size_t x : l.subset->members()) s.push_back(spec.x_alphabet().label(x));
            a["subset"] = s;
        } else {
            a["subset"] = nullptr;
        }
        if (l.recovery) {
            nlohmann::json r = nlohmann::json::array();
            for (std::size_t y = 0; y < l.recovery->size(); ++y) r.push_back(spec.zhat_alphabet().label((*l.recovery)[y]));
            a["recovery"] = r;
        } else {
            a["recovery"] = nullptr;
        }
        std::vector<double> col(pt.channel.num_inputs());
        for (std::size_t x = 0; x < col.size(); ++x) col[x] = pt.channel(u, x);
        a["p_given_x"] = col;
        atoms.push_back(std::move(a));
    }
    nlohmann::json dec = nlohmann::json::array();
    for (std::size_t u = 0; u < pt.decoder.num_atoms(); ++u) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t y = 0; y < pt.decoder.num_side(); ++y) row.push_back(spec.zhat_alphabet().label(pt.decoder(u, y)));
        dec.push_back(std::move(row));
    }
    return nlohmann::json{{"distortion", pt.distortion},
                          {"rate_bits", round_significant(pt.rate)},
                          {"lambda", lambda_to_json(pt.lambda)},
                          {"converged", pt.converged},
                          {"iterations", pt.iterations},
                          {"support_size", pt.support_size()},
                          {"atoms", std::move(atoms)},
                          {"decoder", std::move(dec)}};
}

/// Rebuilds a point against `spec`. Rate and distortion are recomputed from the channel.
inline RDPoint point_from_json(const ProblemSpec& spec, const nlohmann::json& j) {
    if (!j.is_object()) throw Error(Errc::ParseError, "point must be a JSON object");
    const auto atoms = detail::required<nlohmann::json>(j, "atoms");
    if (!atoms.is_array() || atoms.empty()) throw Error(Errc::ParseError, "'atoms' must be a nonempty array");
    Matrix<double> cond(atoms.size(), spec.nx(), 0.0);
    std::vector<AtomLabel> labels(atoms.size());
    for (std::size_t u = 0; u < atoms.size(); ++u) {
        const auto& a = atoms[u];
        const auto col = detail::required<std::vector<double>>(a, "p_given_x");
        if (col.size() != spec.nx()) throw Error(Errc::DimensionMismatch, "p_given_x length differs from |X|");
        for (std::size_t x = 0; x < col.size(); ++x) cond(u, x) = col[x];
        if (a.contains("subset") && !a["subset"].is_null()) {
            std::uint64_t mask = 0;
            for (const auto& s : detail::required<std::vector<std::string>>(a, "subset"))
                mask |= std::uint64_t{1} << spec.x_alphabet().index_of(s);
            if (mask == 0) throw Error(Errc::ParseError, "atom subset is empty");
            labels[u].subset = Hyperedge(mask);
        }
        if (a.contains("recovery") && !a["recovery"].is_null()) {
            const auto r = detail::required<std::vector<std::string>>(a, "recovery");
            if (r.size() != spec.ny()) throw Error(Errc::DimensionMismatch, "recovery length differs from |Y|");
            CandidateRecovery rec;
            for (const auto& s : r) rec.per_y.push_back(spec.zhat_alphabet().index_of(s));
            labels[u].recovery = rec;
        }
    }
    RDPoint pt;
    pt.channel = AuxChannel(std::move(cond), std::move(labels));
    if (j.contains("decoder")) {
        const auto rows = detail::required<std::vector<std::vector<std::string>>>(j, "decoder");
        if (rows.size() != pt.channel.num_atoms()) throw Error(Errc::DimensionMismatch, "decoder must have one row per atom");
        Matrix<std::size_t> t(rows.size(), spec.ny());
        for (std::size_t u = 0; u < rows.size(); ++u) {
            if (rows[u].size() != spec.ny()) throw Error(Errc::DimensionMismatch, "decoder row length differs from |Y|");
            for (std::size_t y = 0; y < spec.ny(); ++y) t(u, y) = spec.zhat_alphabet().index_of(rows[u][y]);
        }
        pt.decoder = DecoderMap(std::move(t));
    } else {
        pt.decoder = DecoderMap::from_recoveries(pt.channel);
    }
    pt.rate = conditional_mutual_information(spec, pt.channel);
    pt.distortion = expected_distortion(spec, pt.channel, pt.decoder);
    if (j.contains("lambda")) {
        const auto& l = j["lambda"];
        pt.lambda = l.is_string() ? std::numeric_limits<double>::infinity() : l.get<double>();
    }
    pt.converged = j.value("converged", true);
    pt.iterations = j.value("iterations", 0L);
    return pt;
}

}  // namespace lossycomp
