#pragma once

#include <complex>
#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace nhc {

using Complex = std::complex<double>;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;
using MatrixXcd = Eigen::MatrixXcd;
using MatrixXd = Eigen::MatrixXd;
using SparseCd = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// hbar in eV*fs, used only when converting simulation times to femtoseconds.
inline constexpr double kHbarEvFs = 0.6582119569;

}  // namespace nhc
