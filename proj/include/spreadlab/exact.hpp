#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "spreadlab/matrix.hpp"

namespace spreadlab {

// Arbitrary-precision integers keep every certificate exact regardless of
// the requested dimension; the constructions never touch floating point.
using BigInt = boost::multiprecision::cpp_int;
using ExactMatrix = Matrix<BigInt>;

inline DenseMatrix to_dense(const ExactMatrix& m) {
    DenseMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            r(i, j) = m(i, j).convert_to<double>();
    return r;
}

} // namespace spreadlab
