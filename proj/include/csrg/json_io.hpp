#pragma once

#include <json.hpp>

#include "csrg/construct.hpp"
#include "csrg/relgauss.hpp"
#include "csrg/verify.hpp"

namespace csrg {

using json = nlohmann::json;

inline constexpr const char* kSchema = "csrg/1";

inline i64 coeff_to_i64(const Int& c) {
    if (c > Int(std::numeric_limits<i64>::max()) || c < Int(std::numeric_limits<i64>::min()))
        fail(err::too_large, "coefficient exceeds the JSON integer range");
    return i64(c);
}

inline json cyc_to_json(const CycInt& a) {
    json coeffs = json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(coeff_to_i64(c));
    return json{{"conductor", a.conductor()}, {"coeffs", coeffs}};
}

inline json spec_to_json(const ConnectionSpec& s) {
    json params = json::object();
    for (auto& [k, v] : s.params) params[k] = v;
    return json{{"schema", kSchema},
                {"p", s.p},
                {"f", s.f},
                {"k", s.k},
                {"I", s.I},
                {"symbolic", s.symbolic},
                {"meta", json{{"source", s.source}, {"params", params}}}};
}

inline ConnectionSpec spec_from_json(const json& j) {
    std::map<std::string, std::string> params;
    std::string source = "manual";
    if (j.contains("meta")) {
        const auto& m = j.at("meta");
        if (m.contains("source")) source = m.at("source").get<std::string>();
        if (m.contains("params"))
            for (auto& [k, v] : m.at("params").items()) params[k] = v.get<std::string>();
    }
    return make_spec(j.at("p").get<u64>(), j.at("f").get<u64>(), j.at("k").get<u64>(),
                     j.at("I").get<std::vector<u64>>(), source, params);
}

inline json srg_params_to_json(const SrgParams& P) {
    json out{{"v", P.v},       {"k", P.degree},      {"lambda", P.lambda},
             {"mu", P.mu},     {"eig_sum", P.eig_sum}, {"eig_prod", P.eig_prod}};
    if (P.integral_eigenvalues) {
        out["r"] = P.r;
        out["s"] = P.s;
    }
    return out;
}

inline json verdict_to_json(const Verdict& V, bool with_timings = false) {
    json out{{"schema", kSchema}, {"kind", verdict_kind_name(V.kind)}, {"method", V.method}};
    if (V.srg) out["params"] = srg_params_to_json(*V.srg);
    json prof = json::array();
    for (const auto& x : V.profile) prof.push_back(cyc_to_json(x));
    out["profile"] = prof;
    if (!V.reason.empty()) out["reason"] = V.reason;
    if (with_timings) out["elapsed_ms"] = V.elapsed_ms;
    return out;
}

inline std::string profile_to_csv(const std::vector<CycInt>& prof) {
    std::string out = "class,conductor,value\n";
    for (size_t a = 0; a < prof.size(); ++a)
        out += std::to_string(a) + "," + std::to_string(prof[a].conductor()) + ",\"" +
               display_text(prof[a]) + "\"\n";
    return out;
}

}  // namespace csrg
