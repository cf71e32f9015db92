// Copyright 2026 The qperc developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Network persistence. Weights are written as hexadecimal float text
// ("%a"), which round-trips every finite double bit for bit through
// strtod — the save/load contract is exact equality, not closeness.
//
// Error taxonomy, kept deliberately distinct:
//   unreadable or syntactically broken file  -> IoError
//   right syntax, wrong format_version       -> ConfigError
//   right version, inconsistent shapes       -> DomainError

#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qperc/baseline.hpp"
#include "qperc/config.hpp"
#include "qperc/dfree.hpp"
#include "qperc/errors.hpp"

namespace qperc {

inline constexpr int kNetworkFormatVersion = 1;

namespace detail {

inline std::string double_to_hex(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

inline double hex_to_double(const std::string &s, const char *context) {
    const char *begin = s.c_str();
    char *end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size()) {
        throw IoError(std::string("load_network: malformed number '") + s + "' in " +
                      context);
    }
    return v;
}

inline nlohmann::json read_json_file(const std::string &path, const char *op) {
    std::ifstream in(path);
    if (!in) throw IoError(std::string(op) + ": cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string(op) + ": malformed file '" + path + "': " + e.what());
    }
    return j;
}

inline void check_version(const nlohmann::json &j, const char *op) {
    if (!j.contains("format_version") || !j.at("format_version").is_number_integer()) {
        throw IoError(std::string(op) + ": malformed file: missing format_version");
    }
    const int v = j.at("format_version").get<int>();
    if (v != kNetworkFormatVersion) {
        throw ConfigError(std::string(op) + ": format version mismatch: file has " +
                          std::to_string(v) + ", this build reads " +
                          std::to_string(kNetworkFormatVersion));
    }
}

} // namespace detail

inline void save_network(const LayeredNetwork &net, const std::string &path) {
    nlohmann::json j;
    j["format_version"] = kNetworkFormatVersion;
    j["kind"] = "layered";
    j["width"] = net.width;
    j["unitarize_mode"] = to_string(net.unitarize_mode);
    j["operator_mode"] = to_string(net.operator_mode);
    j["interpretation"] = to_string(net.interpretation);
    j["eta"] = detail::double_to_hex(net.eta);
    nlohmann::json layers = nlohmann::json::array();
    for (const DenseMatrix &w : net.layers) {
        nlohmann::json entries = nlohmann::json::array();
        for (int r = 0; r < w.rows; ++r) {
            for (int c = 0; c < w.cols; ++c) {
                const cdouble v = w.at(r, c);
                entries.push_back(detail::double_to_hex(v.real()) + " " +
                                  detail::double_to_hex(v.imag()));
            }
        }
        layers.push_back(std::move(entries));
    }
    j["layers"] = std::move(layers);

    std::ofstream out(path);
    if (!out) throw IoError("save_network: cannot open '" + path + "' for writing");
    out << j.dump(1) << "\n";
    if (!out) throw IoError("save_network: write to '" + path + "' failed");
}

inline LayeredNetwork load_network(const std::string &path) {
    const nlohmann::json j = detail::read_json_file(path, "load_network");
    detail::check_version(j, "load_network");

    LayeredNetwork net;
    try {
        if (j.at("kind").get<std::string>() != "layered") {
            throw IoError("load_network: file '" + path + "' does not hold a layered network");
        }
        net.width = j.at("width").get<int>();
        net.unitarize_mode =
            detail::parse_unitarize_mode(j.at("unitarize_mode").get<std::string>());
        net.operator_mode =
            detail::parse_operator_mode(j.at("operator_mode").get<std::string>());
        net.interpretation =
            detail::parse_interpretation(j.at("interpretation").get<std::string>());
        net.eta = detail::hex_to_double(j.at("eta").get<std::string>(), "eta");

        if (net.width < 1) throw DomainError("load_network: non-positive width");
        const nlohmann::json &layers = j.at("layers");
        if (!layers.is_array() || layers.empty()) {
            throw DomainError("load_network: network must have at least one layer");
        }
        for (const nlohmann::json &entries : layers) {
            const std::size_t expected = static_cast<std::size_t>(net.width) *
                                         static_cast<std::size_t>(net.width);
            if (!entries.is_array() || entries.size() != expected) {
                throw DomainError("load_network: layer has " +
                                  std::to_string(entries.size()) + " entries, width " +
                                  std::to_string(net.width) + " needs " +
                                  std::to_string(expected));
            }
            DenseMatrix w = DenseMatrix::zero(net.width, net.width);
            std::size_t idx = 0;
            for (const nlohmann::json &entry : entries) {
                const std::string text = entry.get<std::string>();
                const std::size_t split = text.find(' ');
                if (split == std::string::npos) {
                    throw IoError("load_network: malformed entry '" + text + "'");
                }
                const double re = detail::hex_to_double(text.substr(0, split), "layer entry");
                const double im = detail::hex_to_double(text.substr(split + 1), "layer entry");
                w.at(static_cast<int>(idx) / net.width,
                     static_cast<int>(idx) % net.width) = cdouble{re, im};
                ++idx;
            }
            net.layers.push_back(std::move(w));
        }
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string("load_network: malformed file '") + path + "': " + e.what());
    }
    return net;
}

/// The classical arm uses the same container format with kind "mlp".
inline void save_mlp(const MlpParams &params, const std::string &path) {
    nlohmann::json j;
    j["format_version"] = kNetworkFormatVersion;
    j["kind"] = "mlp";
    j["widths"] = params.widths;
    nlohmann::json weights = nlohmann::json::array();
    for (const std::vector<double> &w : params.weights) {
        nlohmann::json layer = nlohmann::json::array();
        for (const double v : w) layer.push_back(detail::double_to_hex(v));
        weights.push_back(std::move(layer));
    }
    j["weights"] = std::move(weights);
    nlohmann::json biases = nlohmann::json::array();
    for (const std::vector<double> &b : params.biases) {
        nlohmann::json layer = nlohmann::json::array();
        for (const double v : b) layer.push_back(detail::double_to_hex(v));
        biases.push_back(std::move(layer));
    }
    j["biases"] = std::move(biases);

    std::ofstream out(path);
    if (!out) throw IoError("save_mlp: cannot open '" + path + "' for writing");
    out << j.dump(1) << "\n";
    if (!out) throw IoError("save_mlp: write to '" + path + "' failed");
}

inline MlpParams load_mlp(const std::string &path) {
    const nlohmann::json j = detail::read_json_file(path, "load_mlp");
    detail::check_version(j, "load_mlp");

    MlpParams params;
    try {
        if (j.at("kind").get<std::string>() != "mlp") {
            throw IoError("load_mlp: file '" + path + "' does not hold an mlp");
        }
        params.widths = j.at("widths").get<std::vector<int>>();
        if (params.widths.size() < 2) throw DomainError("load_mlp: too few layer widths");
        const nlohmann::json &weights = j.at("weights");
        const nlohmann::json &biases = j.at("biases");
        const std::size_t layer_count = params.widths.size() - 1;
        if (weights.size() != layer_count || biases.size() != layer_count) {
            throw DomainError("load_mlp: layer count mismatch with widths");
        }
        for (std::size_t l = 0; l < layer_count; ++l) {
            const std::size_t rows = static_cast<std::size_t>(params.widths[l + 1]);
            const std::size_t cols = static_cast<std::size_t>(params.widths[l]);
            if (weights.at(l).size() != rows * cols || biases.at(l).size() != rows) {
                throw DomainError("load_mlp: layer " + std::to_string(l) +
                                  " shape does not match widths");
            }
            std::vector<double> w;
            for (const nlohmann::json &entry : weights.at(l)) {
                w.push_back(detail::hex_to_double(entry.get<std::string>(), "weight"));
            }
            std::vector<double> b;
            for (const nlohmann::json &entry : biases.at(l)) {
                b.push_back(detail::hex_to_double(entry.get<std::string>(), "bias"));
            }
            params.weights.push_back(std::move(w));
            params.biases.push_back(std::move(b));
        }
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string("load_mlp: malformed file '") + path + "': " + e.what());
    }
    return params;
}

} // namespace qperc
