#pragma once

#include <optional>
#include <vector>

#include "equidist/rational.hpp"

namespace equidist {

using RatMatrix = std::vector<std::vector<Rational>>;

Rational determinant(RatMatrix m);
int rank(RatMatrix m);

// Row echelon form in place; returns pivot columns.
std::vector<int> row_reduce(RatMatrix& m);

// Some solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const RatMatrix& a, const std::vector<Rational>& b);

}  // namespace equidist
