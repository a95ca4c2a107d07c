#include "normord/boson.hpp"
#include "normord/error.hpp"

#include <json.hpp>

namespace normord {

using nlohmann::json;

std::string nf_to_json(const NormalForm& f, int indent) {
    json terms = json::array();
    for (const auto& [key, c] : f.terms())
        terms.push_back({{"dag", key.dag}, {"ann", key.ann}, {"coeff", to_string(c)}});
    json doc = {{"terms", std::move(terms)}, {"sorted", "dag desc, ann desc"}};
    return doc.dump(indent);
}

NormalForm nf_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("NormalForm JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw ParseError("NormalForm JSON needs a \"terms\" array", 0);
    NormalForm out;
    std::size_t index = 0;
    for (const auto& t : doc["terms"]) {
        if (!t.is_object() || !t.contains("dag") || !t.contains("ann") || !t.contains("coeff") ||
            !t["dag"].is_number_unsigned() || !t["ann"].is_number_unsigned() || !t["coeff"].is_string())
            throw ParseError("malformed NormalForm term #" + std::to_string(index), index);
        out.add(t["dag"].get<unsigned long>(), t["ann"].get<unsigned long>(), parse_rat(t["coeff"].get<std::string>()));
        ++index;
    }
    return out;
}

}  // namespace normord
