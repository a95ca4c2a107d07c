#include "normord/sequence.hpp"

#include "normord/error.hpp"

#include <json.hpp>

#include <sstream>

namespace normord {

using nlohmann::ordered_json;

std::optional<std::string> oeis_id(unsigned r, unsigned M) {
    if (r == 1 && M == 1) return "A002720";
    if (r == 1 && M == 2) return "A069948";
    if (r == 2 && M == 1) return "A121629";
    return std::nullopt;
}

std::string to_bfile(const std::vector<BigInt>& values) {
    std::string out;
    for (std::size_t n = 0; n < values.size(); ++n) out += std::to_string(n) + " " + values[n].get_str() + "\n";
    return out;
}

std::vector<BigInt> parse_bfile(const std::string& text) {
    std::istringstream in(text);
    std::vector<BigInt> values;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t sp = line.find(' ');
        if (sp == std::string::npos || line.find(' ', sp + 1) != std::string::npos)
            throw ParseError("b-file line needs 'n a(n)'", values.size());
        if (line.substr(0, sp) != std::to_string(values.size()))
            throw ParseError("b-file index out of sequence", values.size());
        const BigInt v = parse_int(line.substr(sp + 1));
        if (v < 0) throw ParseError("b-file value must be non-negative", values.size());
        values.push_back(v);
    }
    return values;
}

namespace {

ordered_json metadata(unsigned r, unsigned M) {
    ordered_json m;
    m["quantity"] = "B_r^(M)(n) = sum_k S_r^(M)(n,k)";
    m["offset"] = 0;
    if (auto id = oeis_id(r, M)) m["oeis"] = *id;
    else m["oeis"] = nullptr;
    return m;
}

ordered_json parse_object(const std::string& text, const char* kind) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(std::string("sequence JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object() || j.value("kind", "") != kind) throw ParseError(std::string("expected kind '") + kind + "'", 0);
    return j;
}

std::vector<BigInt> int_array(const ordered_json& a) {
    if (!a.is_array()) throw ParseError("expected an array of decimal strings", 0);
    std::vector<BigInt> out;
    for (const auto& v : a) {
        if (!v.is_string()) throw ParseError("values must be decimal strings", out.size());
        out.push_back(parse_int(v.get<std::string>()));
    }
    return out;
}

}  // namespace

std::string bell_numbers_to_json(unsigned r, unsigned M, const std::vector<BigInt>& values, int indent) {
    ordered_json j;
    j["r"] = r;
    j["M"] = M;
    j["n_max"] = values.empty() ? 0 : values.size() - 1;
    j["kind"] = "numbers";
    ordered_json arr = ordered_json::array();
    for (const auto& v : values) arr.push_back(v.get_str());
    j["values"] = arr;
    j["metadata"] = metadata(r, M);
    return j.dump(indent);
}

std::vector<BigInt> bell_numbers_from_json(const std::string& text) {
    return int_array(parse_object(text, "numbers").at("values"));
}

std::string triangle_to_json(const StirlingTriangle& t, int indent) {
    ordered_json j;
    j["r"] = t.r();
    j["M"] = t.M();
    j["n_max"] = t.n_max();
    j["kind"] = "polynomials";
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows()) {
        ordered_json a = ordered_json::array();
        for (const auto& v : row) a.push_back(v.get_str());
        rows.push_back(a);
    }
    j["rows"] = rows;
    j["metadata"] = metadata(t.r(), t.M());
    return j.dump(indent);
}

StirlingTriangle triangle_from_json(const std::string& text) {
    const ordered_json j = parse_object(text, "polynomials");
    std::vector<std::vector<BigInt>> rows;
    try {
        for (const auto& row : j.at("rows")) rows.push_back(int_array(row));
        return StirlingTriangle(j.at("r").get<unsigned>(), j.at("M").get<unsigned>(), std::move(rows));
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("triangle JSON: ") + e.what(), 0);
    } catch (const RangeError& e) {
        throw ParseError(e.what(), 0);
    }
}

std::string triangle_to_table(const StirlingTriangle& t) {
    std::size_t width = 1;
    for (const auto& row : t.rows())
        for (const auto& v : row) width = std::max(width, v.get_str().size());
    std::ostringstream os;
    for (unsigned n = 0; n <= t.n_max(); ++n) {
        os << "n=" << n << ':';
        for (const auto& v : t.row(n)) {
            const std::string s = v.get_str();
            os << ' ' << std::string(width - s.size(), ' ') << s;
        }
        os << '\n';
    }
    return os.str();
}

std::string triangle_to_bfile(const StirlingTriangle& t) {
    std::vector<BigInt> flat;
    for (const auto& row : t.rows()) flat.insert(flat.end(), row.begin(), row.end());
    return to_bfile(flat);
}

}  // namespace normord
