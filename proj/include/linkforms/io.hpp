#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "linkforms/knot.hpp"
#include "linkforms/linking.hpp"
#include "linkforms/module.hpp"

namespace lf {

using json = nlohmann::ordered_json;

inline json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw error("file " + path + " is not valid JSON: " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

inline base_ring parse_base_ring(const std::string& s)
{
    if (s == "z") return {base_ring::kind_t::integers, 0};
    if (s == "q") return {base_ring::kind_t::rationals, 0};
    if (s.rfind("fp:", 0) == 0) {
        std::int64_t p = 0;
        try {
            p = std::stoll(s.substr(3));
        } catch (const std::exception&) {
            throw error("malformed base ring: \"" + s + "\"");
        }
        return {base_ring::kind_t::prime_field, p};
    }
    throw error("unknown base ring \"" + s + "\" (expected z, q, or fp:<p>)");
}

// ----- modules: {"base": "q"|"z"|"fp:<p>", "presentation": [[poly strings]]} -----

template <class R>
poly_mat<R> poly_mat_from_json(const json& rows, const R& ring, const std::string& what)
{
    if (!rows.is_array()) throw error(what + " must be an array of rows");
    std::size_t nrows = rows.size();
    std::size_t ncols = nrows == 0 ? 0 : rows.at(0).size();
    poly_mat<R> m(nrows, ncols, laurent_poly<R>::zero(ring));
    for (std::size_t i = 0; i < nrows; ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array() || row.size() != ncols)
            throw error(what + ": row " + std::to_string(i) + " has the wrong length");
        for (std::size_t j = 0; j < ncols; ++j)
            m.at(i, j) = parse_poly(ring, row.at(j).template get<std::string>());
    }
    return m;
}

template <class R>
json poly_mat_to_json(const poly_mat<R>& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class R>
torsion_module<R> module_from_json(const json& j, const R& ring)
{
    if (!j.contains("base") || !j.contains("presentation"))
        throw error("module object needs \"base\" and \"presentation\" fields");
    base_ring declared = parse_base_ring(j.at("base").get<std::string>());
    if (!(declared == ring.descriptor()))
        throw error("module base \"" + declared.str() + "\" does not match the "
                    "requested coefficient ring \"" + ring.descriptor().str() + "\"");
    return torsion_module<R>(
        poly_mat_from_json(j.at("presentation"), ring, "presentation"));
}

template <class R>
json module_to_json(const torsion_module<R>& m)
{
    json j;
    j["base"] = m.ring().descriptor().str();
    j["presentation"] = poly_mat_to_json(m.presentation());
    return j;
}

// ----- pairings: {"module": {...}, "gram": [[fraction strings]]} -----

template <class R>
linking_pairing<R> pairing_from_json(const json& j, const R& ring)
{
    if (!j.contains("module") || !j.contains("gram"))
        throw error("pairing object needs \"module\" and \"gram\" fields");
    torsion_module<R> module = module_from_json(j.at("module"), ring);
    const auto& rows = j.at("gram");
    const std::size_t n = module.generators();
    if (!rows.is_array() || rows.size() != n)
        throw error("gram table size does not match the module");
    typename linking_pairing<R>::gram_table gram(
        n, std::vector<fraction_class<R>>(n, fraction_class<R>::zero(ring)));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows.at(i);
        if (!row.is_array() || row.size() != n)
            throw error("gram row " + std::to_string(i) + " has the wrong length");
        for (std::size_t k = 0; k < n; ++k)
            gram[i][k] = reduce_mod_ring(
                parse_fraction(ring, row.at(k).template get<std::string>()));
    }
    return linking_pairing<R>(std::move(module), std::move(gram));
}

template <class R>
json pairing_to_json(const linking_pairing<R>& b)
{
    json j;
    j["module"] = module_to_json(b.module());
    json rows = json::array();
    for (std::size_t i = 0; i < b.generators(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < b.generators(); ++k)
            row.push_back(to_string(b.gram_at(i, k)));
        rows.push_back(std::move(row));
    }
    j["gram"] = std::move(rows);
    return j;
}

// ----- knots: {"name", "seifert"?, "pd"?, "rep"?} -----

inline knot_input knot_from_json(const json& j)
{
    knot_input k;
    if (!j.contains("name")) throw error("knot file needs a \"name\" field");
    k.name = j.at("name").get<std::string>();
    if (j.contains("seifert")) {
        std::vector<std::vector<std::int64_t>> rows;
        for (const auto& row : j.at("seifert"))
            rows.push_back(row.get<std::vector<std::int64_t>>());
        k.seifert = seifert_matrix(std::move(rows));
    }
    if (j.contains("pd")) {
        pd_code pd;
        for (const auto& x : j.at("pd")) {
            auto v = x.get<std::vector<std::int64_t>>();
            if (v.size() != 4)
                throw error("pd entry of knot \"" + k.name + "\" is not a 4-tuple");
            pd.crossings.push_back({v[0], v[1], v[2], v[3]});
        }
        k.pd = std::move(pd);
    }
    if (j.contains("rep")) {
        const auto& r = j.at("rep");
        representation_data rep;
        rep.p = r.at("p").get<std::int64_t>();
        rep.k = r.at("k").get<std::size_t>();
        const auto& images = r.at("images");
        rep.images.resize(images.size());
        for (const auto& [key, val] : images.items()) {
            std::size_t g = 0;
            try {
                g = static_cast<std::size_t>(std::stoull(key));
            } catch (const std::exception&) {
                throw error("rep image key \"" + key + "\" is not a generator index");
            }
            if (g >= rep.images.size())
                throw error("rep image index " + key + " out of range");
            representation::fp_matrix m;
            for (const auto& row : val) m.push_back(row.get<std::vector<std::int64_t>>());
            rep.images[g] = std::move(m);
        }
        k.rep = std::move(rep);
    }
    if (!k.seifert && !k.pd)
        throw error("knot \"" + k.name + "\" has neither seifert nor pd data");
    return k;
}

inline json knot_to_json(const knot_input& k)
{
    json j;
    j["name"] = k.name;
    if (k.seifert) {
        json rows = json::array();
        for (const auto& row : k.seifert->entries()) rows.push_back(row);
        j["seifert"] = std::move(rows);
    }
    if (k.pd) {
        json rows = json::array();
        for (const auto& x : k.pd->crossings)
            rows.push_back(json::array({x[0], x[1], x[2], x[3]}));
        j["pd"] = std::move(rows);
    }
    if (k.rep) {
        json r;
        r["p"] = k.rep->p;
        r["k"] = k.rep->k;
        json images;
        for (std::size_t g = 0; g < k.rep->images.size(); ++g) {
            json m = json::array();
            for (const auto& row : k.rep->images[g]) m.push_back(row);
            images[std::to_string(g)] = std::move(m);
        }
        r["images"] = std::move(images);
        j["rep"] = std::move(r);
    }
    return j;
}

/// The validated representation of a knot file, bound to its own
/// PD-derived presentation.
inline representation representation_from_data(const representation_data& data,
                                               const wirtinger_presentation& pres)
{
    return representation(data.p, data.k, data.images, pres);
}

}  // namespace lf
