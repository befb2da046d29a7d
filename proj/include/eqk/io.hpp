#ifndef EQK_IO_HPP
#define EQK_IO_HPP

// JSON exchange formats.
//
// Fan document:
//     { "rank": n, "rays": [[...]], "max_cones": [[ray indices]],
//       "divisor": { "<ray index>": a } }
// Result document:
//     { "command": ..., "result_terms": [["coeff", [weight]] ...],
//       "checks": [{ "name": ..., "status": ... }] }
// Coefficients are decimal strings so that no value passes through floating point.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include <eqk/error.hpp>
#include <eqk/fan.hpp>
#include <eqk/laurent.hpp>

namespace eqk::io
{

using json = nlohmann::json;

struct fan_input {
    fan toric_fan;
    divisor div;
    json document; // canonical re-serialization of the input
};

inline json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw error(errc::parse_error, "cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw error(errc::parse_error, path + ": " + e.what());
    }
}

inline json fan_to_json(const fan &f, const divisor &d)
{
    const auto raw = f.to_raw();
    json doc;
    doc["rank"] = raw.rank;
    doc["rays"] = raw.rays;
    doc["max_cones"] = raw.max_cones;
    json dj = json::object();
    for (std::size_t i = 0; i < f.rays().size(); ++i) {
        if (d[i] != 0) {
            dj[std::to_string(i)] = d[i];
        }
    }
    doc["divisor"] = dj;
    return doc;
}

// Accepts a fan document, or a result document that embeds one under "input".
inline fan_input fan_from_json(const json &doc_in)
{
    const json &doc = doc_in.contains("input") ? doc_in.at("input") : doc_in;
    raw_fan raw;
    try {
        raw.rank = doc.at("rank").get<std::int64_t>();
        raw.rays = doc.at("rays").get<std::vector<std::vector<std::int64_t>>>();
        raw.max_cones = doc.at("max_cones").get<std::vector<std::vector<std::int64_t>>>();
    } catch (const json::exception &e) {
        throw error(errc::parse_error, std::string("fan document: ") + e.what());
    }
    fan f = validate_fan(raw);
    divisor d = divisor::zero(f);
    if (doc.contains("divisor")) {
        const auto &dj = doc.at("divisor");
        if (!dj.is_object()) {
            throw error(errc::parse_error, "divisor must be an object mapping ray index to coefficient");
        }
        for (const auto &[key, val] : dj.items()) {
            std::size_t used = 0;
            long long idx = -1;
            try {
                idx = std::stoll(key, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != key.size() || idx < 0 || static_cast<std::size_t>(idx) >= f.rays().size()) {
                throw error(errc::parse_error, "divisor key '" + key + "' is not a ray index");
            }
            if (!val.is_number_integer()) {
                throw error(errc::parse_error, "divisor coefficient for ray " + key + " is not an integer");
            }
            d.coeffs[static_cast<std::size_t>(idx)] = val.get<std::int64_t>();
        }
    }
    json canon = fan_to_json(f, d);
    return {std::move(f), std::move(d), std::move(canon)};
}

inline fan_input read_fan_file(const std::string &path)
{
    return fan_from_json(read_json_file(path));
}

inline json terms_to_json(const laurent &a)
{
    json arr = json::array();
    for (const auto &[m, c] : a.terms()) {
        arr.push_back(json::array({c.str(), std::vector<std::int64_t>(m.begin(), m.end())}));
    }
    return arr;
}

inline laurent terms_from_json(std::size_t rank, const json &arr)
{
    laurent r(rank);
    for (const auto &t : arr) {
        const auto w = t.at(1).get<std::vector<std::int64_t>>();
        r.add_term(weight(std::span<const std::int64_t>(w)), integer(t.at(0).get<std::string>()));
    }
    return r;
}

} // namespace eqk::io

#endif
