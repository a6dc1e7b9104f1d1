#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "xmjacobi/errors.hpp"
#include "xmjacobi/polynomial.hpp"

namespace xmjacobi {

/// 17 significant digits: enough to round-trip an IEEE double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Coefficient array, lowest degree first. The zero polynomial is [].
inline nlohmann::json polynomial_to_json(const Polynomial& p) {
    return nlohmann::json(p.coeffs());
}

inline Polynomial polynomial_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParameterError("polynomial_from_json: expected an array");
    std::vector<double> c;
    c.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ParameterError("polynomial_from_json: non-numeric coefficient");
        c.push_back(v.get<double>());
    }
    return Polynomial{std::move(c)};
}

}  // namespace xmjacobi
