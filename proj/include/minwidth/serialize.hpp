#pragma once

// Network document (de)serialization.
//
// Schema: {"version":1, "dx":int, "dy":int, "numeric":"float64"|"dyadic",
//          "layers":[{"weights":[[...]], "bias":[...], "activations":[...]}]}
// float64 mode stores plain JSON numbers (shortest round-trip form, so a
// serialize -> deserialize -> serialize cycle is byte-identical); dyadic mode
// stores exact "p/q" strings.

#include "minwidth/network.hpp"
#include "minwidth/rational.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace minwidth {

using Json = nlohmann::ordered_json;

inline Json serialize(const Network& net, NumericMode mode = NumericMode::float64) {
    net.validate();
    const bool dyadic = (mode == NumericMode::dyadic_exact);
    auto encode_number = [&](double v) -> Json {
        if (!std::isfinite(v)) throw std::invalid_argument("serialize: non-finite weight");
        if (dyadic) return rat_to_fraction_string(rat_from_double(v));
        return v;
    };
    Json doc;
    doc["version"] = 1;
    doc["dx"] = net.dx;
    doc["dy"] = net.dy;
    doc["numeric"] = dyadic ? "dyadic" : "float64";
    doc["layers"] = Json::array();
    for (const Layer& l : net.layers) {
        Json jl;
        jl["weights"] = Json::array();
        for (const auto& row : l.weights) {
            Json jrow = Json::array();
            for (double v : row) jrow.push_back(encode_number(v));
            jl["weights"].push_back(std::move(jrow));
        }
        jl["bias"] = Json::array();
        for (double v : l.bias) jl["bias"].push_back(encode_number(v));
        jl["activations"] = Json::array();
        for (Activation a : l.activations) jl["activations"].push_back(activation_name(a));
        doc["layers"].push_back(std::move(jl));
    }
    return doc;
}

inline Network deserialize(const Json& doc) {
    if (!doc.is_object() || !doc.contains("version") || doc["version"] != 1)
        throw std::invalid_argument("deserialize: bad or missing version");
    for (const char* key : {"dx", "dy", "numeric", "layers"})
        if (!doc.contains(key)) throw std::invalid_argument(std::string("deserialize: missing ") + key);
    const std::string numeric = doc["numeric"].get<std::string>();
    if (numeric != "float64" && numeric != "dyadic")
        throw std::invalid_argument("deserialize: bad numeric mode");
    auto decode_number = [&](const Json& j) -> double {
        if (j.is_string()) {
            double v = rat_to_double(rat_from_fraction_string(j.get<std::string>()));
            if (!std::isfinite(v)) throw std::invalid_argument("deserialize: non-finite weight");
            return v;
        }
        if (!j.is_number()) throw std::invalid_argument("deserialize: weight is neither number nor fraction");
        double v = j.get<double>();
        if (!std::isfinite(v)) throw std::invalid_argument("deserialize: non-finite weight");
        return v;
    };
    Network net;
    net.dx = doc["dx"].get<int>();
    net.dy = doc["dy"].get<int>();
    for (const Json& jl : doc["layers"]) {
        Layer l;
        for (const Json& jrow : jl.at("weights")) {
            std::vector<double> row;
            for (const Json& v : jrow) row.push_back(decode_number(v));
            l.weights.push_back(std::move(row));
        }
        for (const Json& v : jl.at("bias")) l.bias.push_back(decode_number(v));
        for (const Json& v : jl.at("activations")) l.activations.push_back(activation_from_name(v.get<std::string>()));
        net.layers.push_back(std::move(l));
    }
    net.validate();
    return net;
}

inline void save_network(const Network& net, const std::string& path,
                         NumericMode mode = NumericMode::float64) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_network: cannot write " + path);
    out << serialize(net, mode).dump(2) << "\n";
}

inline Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_network: cannot read " + path);
    Json doc = Json::parse(in);
    return deserialize(doc);
}

}  // namespace minwidth
