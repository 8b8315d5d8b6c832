#pragma once

#include <complex>
#include <Eigen/Dense>

namespace sqz {

template <typename Scalar> using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using VectorX = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <typename Scalar> using ArrayX  = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using Mat   = MatrixX<double>;
using Vec   = VectorX<double>;
using Arr   = ArrayX<double>;
using CMat  = MatrixX<std::complex<double>>;
using CVec  = VectorX<std::complex<double>>;
using Index = Eigen::Index;

} // namespace sqz
