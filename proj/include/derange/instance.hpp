#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace derange {

using Vertex = int;          // 0-based internally, printed 1-based
using Cost = std::int64_t;

/// Dense symmetric integer cost matrix. The diagonal is stored but never read
/// by any algorithm in this library.
class CostMatrix {
public:
    /// `row_major` holds n*n entries. Throws SizeError for n < 3 or a wrong
    /// element count, AsymmetryError if cost(i,j) != cost(j,i), RangeError if
    /// a sum of n entries could leave the signed 63-bit range.
    CostMatrix(int n, std::vector<Cost> row_major);

    int size() const { return n_; }

    Cost operator()(Vertex i, Vertex j) const { return costs_[static_cast<std::size_t>(i) * n_ + j]; }

    /// Largest magnitude accepted for any single entry of an n-vertex matrix.
    static Cost max_abs_cost(int n);

    bool operator==(const CostMatrix& other) const;

private:
    int n_;
    std::vector<Cost> costs_;
};

enum class InstanceFormat { tsplib, json };

/// Parses a matrix from `in`. Unsupported TSPLIB keywords are skipped and a
/// message is appended to `warnings` when it is non-null.
CostMatrix load_instance(std::istream& in, InstanceFormat format,
                         std::vector<std::string>* warnings = nullptr);

CostMatrix load_instance_file(const std::string& path, InstanceFormat format,
                              std::vector<std::string>* warnings = nullptr);

/// Uniform costs in [lo, hi] for every i < j, mirrored below the diagonal.
/// Uses std::mt19937_64 seeded with `seed` and rejection sampling for the
/// range reduction, so the output is identical across standard libraries.
CostMatrix random_instance(int n, Cost lo, Cost hi, std::uint64_t seed);

/// JSON instance text: {"n": n, "costs": [[...], ...]}, diagonal written as 0.
std::string serialize_instance(const CostMatrix& m);

/// Euclidean distance rounded to the nearest integer, TSPLIB `nint` style.
Cost euc2d_distance(double x1, double y1, double x2, double y2);

} // namespace derange
