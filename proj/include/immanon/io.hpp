#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "immanon/matrix.hpp"
#include "immanon/state.hpp"

namespace immanon {

using Json = nlohmann::json;

/// Matrix wire format: {"n": int, "re": [[...]], "im": [[...]]}, row-major.
inline Json matrix_to_json(const ComplexMatrix& m) {
    const int n = m.dim();
    Json re = Json::array();
    Json im = Json::array();
    for (int i = 0; i < n; ++i) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (int j = 0; j < n; ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

/// Parses the matrix wire format; "im" may be omitted for a real matrix.
inline ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
        throw std::invalid_argument("matrix json: missing integer field 'n'");
    }
    const int n = j["n"].get<int>();
    if (n < 1) {
        throw std::invalid_argument("matrix json: 'n' must be >= 1");
    }
    const bool has_im = j.contains("im");
    auto read_plane = [&](const char* key) {
        const auto& plane = j.at(key);
        if (!plane.is_array() || static_cast<int>(plane.size()) != n) {
            throw std::invalid_argument(std::string("matrix json: '") + key +
                                        "' must hold n rows");
        }
        std::vector<std::vector<double>> rows;
        for (const auto& row : plane) {
            if (!row.is_array() || static_cast<int>(row.size()) != n) {
                throw std::invalid_argument(std::string("matrix json: '") + key +
                                            "' rows must hold n numbers");
            }
            std::vector<double> values;
            for (const auto& v : row) {
                if (!v.is_number()) {
                    throw std::invalid_argument("matrix json: entries must be numbers");
                }
                values.push_back(v.get<double>());
            }
            rows.push_back(std::move(values));
        }
        return rows;
    };
    const auto re = read_plane("re");
    std::vector<std::vector<double>> im;
    if (has_im) im = read_plane("im");

    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            m(i, k) = Complex(re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                              has_im ? im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                                     : 0.0);
        }
    }
    return m;
}

inline ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open matrix file: " + path);
    }
    return matrix_from_json(Json::parse(in));
}

inline void write_matrix_file(const std::string& path, const Json& payload) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << payload.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("failed writing: " + path);
    }
}

/// Debug dump: amplitudes above the threshold as a list of
/// {"digits": [per-particle basis indices], "re": ..., "im": ...}.
inline Json state_dump(const DenseState& state, double threshold = 1e-14) {
    Json out = Json::array();
    const int n = state.particles();
    const int d = state.space().dim();
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        const Complex a = state.amplitude(idx);
        if (std::abs(a) <= threshold) continue;
        Json digits = Json::array();
        std::size_t rest = idx;
        for (int q = 0; q < n; ++q) {
            digits.push_back(static_cast<int>(rest % static_cast<std::size_t>(d)));
            rest /= static_cast<std::size_t>(d);
        }
        out.push_back(Json{{"digits", std::move(digits)}, {"re", a.real()}, {"im", a.imag()}});
    }
    return out;
}

}  // namespace immanon
