#include "derange/instance.hpp"

#include "derange/error.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace derange {

CostMatrix::CostMatrix(int n, std::vector<Cost> row_major) : n_(n), costs_(std::move(row_major)) {
    if (n_ < 3) {
        throw SizeError("instance needs at least 3 vertices, got " + std::to_string(n_));
    }
    if (costs_.size() != static_cast<std::size_t>(n_) * n_) {
        throw SizeError("expected " + std::to_string(n_ * n_) + " matrix entries, got " +
                        std::to_string(costs_.size()));
    }
    const Cost limit = max_abs_cost(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (i == j) continue;
            const Cost c = (*this)(i, j);
            if (c > limit || c < -limit) {
                throw RangeError("cost(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 ") = " + std::to_string(c) + " exceeds the overflow-safe bound " +
                                 std::to_string(limit));
            }
            if (j > i && c != (*this)(j, i)) {
                throw AsymmetryError("cost(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                     ") = " + std::to_string(c) + " but cost(" +
                                     std::to_string(j + 1) + "," + std::to_string(i + 1) +
                                     ") = " + std::to_string((*this)(j, i)));
            }
        }
    }
}

Cost CostMatrix::max_abs_cost(int n) {
    // Reduced-matrix entries are differences of two costs and cycle values sum
    // up to n of them; keep that comfortably inside int64.
    return std::numeric_limits<Cost>::max() / (4 * static_cast<Cost>(std::max(n, 1)));
}

bool CostMatrix::operator==(const CostMatrix& other) const {
    if (n_ != other.n_) return false;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && (*this)(i, j) != other(i, j)) return false;
    return true;
}

Cost euc2d_distance(double x1, double y1, double x2, double y2) {
    const double dx = x1 - x2;
    const double dy = y1 - y2;
    return static_cast<Cost>(std::sqrt(dx * dx + dy * dy) + 0.5);
}

namespace {

CostMatrix load_json(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON instance: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("costs")) {
        throw ParseError("JSON instance must be an object with \"n\" and \"costs\"");
    }
    if (!doc["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
    const int n = doc["n"].get<int>();
    if (n < 3) throw SizeError("instance needs at least 3 vertices, got " + std::to_string(n));
    const auto& rows = doc["costs"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
        throw ParseError("\"costs\" must be an array of " + std::to_string(n) + " rows");
    }
    std::vector<Cost> costs;
    costs.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
            throw ParseError("every row of \"costs\" must hold " + std::to_string(n) + " entries");
        }
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw ParseError("costs must be integers");
            costs.push_back(v.get<Cost>());
        }
    }
    return CostMatrix(n, std::move(costs));
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

Cost read_cost(std::istream& body) {
    Cost v = 0;
    if (!(body >> v)) throw ParseError("TSPLIB EDGE_WEIGHT_SECTION ended early or holds a non-integer");
    return v;
}

CostMatrix load_tsplib(std::istream& in, std::vector<std::string>* warnings) {
    auto warn = [&](std::string msg) {
        if (warnings) warnings->push_back(std::move(msg));
    };

    int n = -1;
    std::string type, weight_type, weight_format;
    std::string line;
    std::string section;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        std::string key = line;
        std::string value;
        if (const auto colon = line.find(':'); colon != std::string::npos) {
            key = trim(line.substr(0, colon));
            value = trim(line.substr(colon + 1));
        }
        key = upper(key);
        if (key == "EOF") break;
        if (key == "EDGE_WEIGHT_SECTION" || key == "NODE_COORD_SECTION") {
            section = key;
            break;
        }
        if (key == "NAME" || key == "COMMENT") continue;
        if (key == "TYPE") {
            type = upper(value);
        } else if (key == "DIMENSION") {
            try {
                n = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError("bad DIMENSION: " + value);
            }
        } else if (key == "EDGE_WEIGHT_TYPE") {
            weight_type = upper(value);
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            weight_format = upper(value);
        } else {
            warn("ignoring TSPLIB field " + key);
        }
    }

    if (type != "TSP") throw ParseError("unsupported TSPLIB TYPE '" + type + "' (only TSP)");
    if (n < 0) throw ParseError("TSPLIB DIMENSION missing");
    if (n < 3) throw SizeError("instance needs at least 3 vertices, got " + std::to_string(n));
    if (section.empty()) throw ParseError("TSPLIB data section missing");

    const auto nn = static_cast<std::size_t>(n);
    std::vector<Cost> costs(nn * nn, 0);

    if (weight_type == "EXPLICIT") {
        if (section != "EDGE_WEIGHT_SECTION") throw ParseError("EXPLICIT weights need EDGE_WEIGHT_SECTION");
        if (weight_format == "FULL_MATRIX") {
            for (auto& c : costs) c = read_cost(in);
        } else if (weight_format == "UPPER_ROW") {
            for (std::size_t i = 0; i < nn; ++i) {
                for (std::size_t j = i + 1; j < nn; ++j) {
                    const Cost c = read_cost(in);
                    costs[i * nn + j] = c;
                    costs[j * nn + i] = c;
                }
            }
        } else {
            throw ParseError("unsupported EDGE_WEIGHT_FORMAT '" + weight_format + "'");
        }
    } else if (weight_type == "EUC_2D") {
        if (section != "NODE_COORD_SECTION") throw ParseError("EUC_2D needs NODE_COORD_SECTION");
        std::vector<double> xs(nn), ys(nn);
        std::vector<bool> seen(nn, false);
        for (std::size_t k = 0; k < nn; ++k) {
            long id = 0;
            double x = 0, y = 0;
            if (!(in >> id >> x >> y)) throw ParseError("NODE_COORD_SECTION ended early");
            if (id < 1 || id > n || seen[id - 1]) throw ParseError("bad node id " + std::to_string(id));
            seen[id - 1] = true;
            xs[id - 1] = x;
            ys[id - 1] = y;
        }
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = 0; j < nn; ++j)
                if (i != j) costs[i * nn + j] = euc2d_distance(xs[i], ys[i], xs[j], ys[j]);
    } else {
        throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + weight_type + "'");
    }

    std::string rest;
    while (in >> rest) {
        if (upper(rest) == "EOF") break;
        if (upper(rest) == "DISPLAY_DATA_SECTION") {
            warn("ignoring TSPLIB section DISPLAY_DATA_SECTION");
            break;
        }
        throw ParseError("unexpected trailing token '" + rest + "' in TSPLIB data");
    }
    return CostMatrix(n, std::move(costs));
}

} // namespace

CostMatrix load_instance(std::istream& in, InstanceFormat format, std::vector<std::string>* warnings) {
    switch (format) {
    case InstanceFormat::json: return load_json(in);
    case InstanceFormat::tsplib: return load_tsplib(in, warnings);
    }
    throw ParseError("unknown instance format");
}

CostMatrix load_instance_file(const std::string& path, InstanceFormat format,
                              std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file " + path);
    return load_instance(in, format, warnings);
}

CostMatrix random_instance(int n, Cost lo, Cost hi, std::uint64_t seed) {
    if (n < 3) throw SizeError("instance needs at least 3 vertices, got " + std::to_string(n));
    const Cost limit = CostMatrix::max_abs_cost(n);
    if (lo > hi) throw RangeError("empty cost range [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    if (lo < -limit || hi > limit) throw RangeError("cost range exceeds the overflow-safe bound");

    std::mt19937_64 gen(seed);
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    // 2^64 mod span; draws below it are rejected so x % span is unbiased.
    const std::uint64_t reject_below = (0 - span) % span;
    auto draw = [&]() -> Cost {
        std::uint64_t x = gen();
        while (x < reject_below) x = gen();
        return lo + static_cast<Cost>(x % span);
    };

    const auto nn = static_cast<std::size_t>(n);
    std::vector<Cost> costs(nn * nn, 0);
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t j = i + 1; j < nn; ++j) {
            const Cost c = draw();
            costs[i * nn + j] = c;
            costs[j * nn + i] = c;
        }
    }
    return CostMatrix(n, std::move(costs));
}

std::string serialize_instance(const CostMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(i == j ? Cost{0} : m(i, j));
        rows.push_back(std::move(row));
    }
    nlohmann::json doc;
    doc["n"] = m.size();
    doc["costs"] = std::move(rows);
    return doc.dump() + "\n";
}

} // namespace derange
