#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "quermass/bodies.hpp"
#include "quermass/orlicz.hpp"

namespace quermass::harness {

/// Malformed input files or infeasible settings. Messages name the file and
/// the offending line or field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse JSON text; syntax errors report `source:line:column`.
nlohmann::json parse_json(const std::string& text, const std::string& source);
nlohmann::json read_json_file(const std::string& path);

/// {"type":"polytope","vertices":[[...],...]} | {"type":"ellipsoid","shape":[[...],...]}
/// | {"type":"ball","radius":r,"dim":n}. `where` prefixes field diagnostics.
ConvexBody body_from_json(const nlohmann::json& j, const std::string& where);
ConvexBody load_body(const std::string& path);
nlohmann::json body_to_json(const ConvexBody& body);

/// {"family":"power","p":2} | {"family":"exp","alpha":1.5}, optionally wrapped
/// as {"phi":{...}}.
OrliczFunction phi_from_json(const nlohmann::json& j, const std::string& where);
/// JSON text or the shorthands "power:2", "exp:1.5".
OrliczFunction parse_phi(const std::string& text);
nlohmann::json phi_to_json(const OrliczFunction& phi);

} // namespace quermass::harness
