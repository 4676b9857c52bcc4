#include "quermass/harness/io.hpp"

#include <fstream>
#include <sstream>

namespace quermass::harness {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& where, const std::string& field, const std::string& what)
{
    throw ConfigError(where + ": field '" + field + "': " + what);
}

const json& field(const json& j, const std::string& name, const std::string& where)
{
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) field_error(where, name, "missing");
    return *it;
}

double number(const json& j, const std::string& name, const std::string& where)
{
    if (!j.is_number()) field_error(where, name, "expected a number");
    return j.get<double>();
}

Mat matrix(const json& j, const std::string& name, const std::string& where, bool square)
{
    if (!j.is_array() || j.empty()) field_error(where, name, "expected a nonempty array of rows");
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0 || cols > static_cast<std::size_t>(kMaxDim))
        field_error(where, name, "rows must have between 1 and 4 entries");
    if (square && j.size() != cols) field_error(where, name, "expected a square matrix");
    Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string at = name + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols)
            field_error(where, at, "expected an array of " + std::to_string(cols) + " numbers");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(j[r][c], at, where);
    }
    return m;
}

template <typename F>
auto rethrow_as_config(const std::string& where, F&& f)
{
    try {
        return f();
    } catch (const InvalidInput& e) {
        throw ConfigError(where + ": " + e.what());
    } catch (const ComputationError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

} // namespace

json parse_json(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                          ": JSON syntax error: " + e.what());
    }
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

ConvexBody body_from_json(const json& j, const std::string& where)
{
    const json& type = field(j, "type", where);
    if (!type.is_string()) field_error(where, "type", "expected a string");
    const std::string t = type.get<std::string>();
    if (t == "polytope") {
        const Mat v = matrix(field(j, "vertices", where), "vertices", where, false);
        PointList pts;
        for (Eigen::Index r = 0; r < v.rows(); ++r) pts.push_back(v.row(r).transpose());
        return rethrow_as_config(where, [&] { return ConvexBody::polytope(pts); });
    }
    if (t == "ellipsoid") {
        const Mat m = matrix(field(j, "shape", where), "shape", where, true);
        return rethrow_as_config(where, [&] { return ConvexBody::ellipsoid(m); });
    }
    if (t == "ball") {
        const double r = number(field(j, "radius", where), "radius", where);
        const json& d = field(j, "dim", where);
        if (!d.is_number_integer()) field_error(where, "dim", "expected an integer");
        return rethrow_as_config(where, [&] { return ConvexBody::ball(r, d.get<int>()); });
    }
    field_error(where, "type", "unknown body type '" + t + "' (polytope, ellipsoid, ball)");
}

ConvexBody load_body(const std::string& path) { return body_from_json(read_json_file(path), path); }

json body_to_json(const ConvexBody& body)
{
    auto rows = [](const Mat& m) {
        json out = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
            out.push_back(row);
        }
        return out;
    };
    if (body.is_polytope()) {
        json verts = json::array();
        for (const auto& v : body.as_polytope().vertices()) verts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
        return {{"type", "polytope"}, {"vertices", verts}};
    }
    if (body.is_ellipsoid()) return {{"type", "ellipsoid"}, {"shape", rows(body.as_ellipsoid().shape())}};
    throw InvalidInput("body_to_json: support oracles have no file representation");
}

OrliczFunction phi_from_json(const json& j_in, const std::string& where)
{
    const json& j = j_in.is_object() && j_in.contains("phi") ? j_in.at("phi") : j_in;
    const json& fam = field(j, "family", where);
    if (!fam.is_string()) field_error(where, "family", "expected a string");
    const std::string f = fam.get<std::string>();
    if (f == "power") {
        const double p = number(field(j, "p", where), "p", where);
        return rethrow_as_config(where, [&] { return make_power(p); });
    }
    if (f == "exp") {
        const double a = number(field(j, "alpha", where), "alpha", where);
        return rethrow_as_config(where, [&] { return make_normalized_exp(a); });
    }
    field_error(where, "family", "unknown family '" + f + "' (power, exp)");
}

OrliczFunction parse_phi(const std::string& text)
{
    const auto colon = text.find(':');
    if (!text.empty() && text.front() != '{' && colon != std::string::npos) {
        const std::string fam = text.substr(0, colon);
        double x = 0.0;
        try {
            x = std::stod(text.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("--phi: cannot parse parameter in '" + text + "'");
        }
        if (fam == "power") return phi_from_json({{"family", "power"}, {"p", x}}, "--phi");
        if (fam == "exp") return phi_from_json({{"family", "exp"}, {"alpha", x}}, "--phi");
        throw ConfigError("--phi: unknown family '" + fam + "'");
    }
    return phi_from_json(parse_json(text, "--phi"), "--phi");
}

json phi_to_json(const OrliczFunction& phi)
{
    switch (phi.family()) {
    case OrliczFunction::Family::Power: return {{"family", "power"}, {"p", phi.parameter()}};
    case OrliczFunction::Family::Exp: return {{"family", "exp"}, {"alpha", phi.parameter()}};
    default: return {{"family", "custom"}, {"name", phi.name()}};
    }
}

} // namespace quermass::harness
