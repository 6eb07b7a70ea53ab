#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>

#include "nhc/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include <lapacke.h>

namespace nhc {

std::vector<Complex> dense_eigenvalues(MatrixXcd a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("dense_eigenvalues: matrix must be square");
  const int n = static_cast<int>(a.rows());
  VectorXcd w(n);
  const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n,
                                 w.data(), nullptr, 1, nullptr, 1);
  if (info < 0)
    throw std::invalid_argument("zgeev: illegal argument " + std::to_string(-info));
  if (info > 0)
    throw std::runtime_error(
        "zgeev failed to converge; eigenvalues " + std::to_string(info + 1) +
        ".." + std::to_string(n) + " converged, QR stalled on the rest");
  return {w.data(), w.data() + n};
}

namespace {

void check_dense_size(const HamiltonianOperator& h) {
  if (h.dimension() > 4096)
    throw std::invalid_argument(
        "eigensolve limited to dimension 4096, got " +
        std::to_string(h.dimension()));
}

}  // namespace

std::vector<Complex> eigenvalues(const HamiltonianOperator& h) {
  check_dense_size(h);
  std::vector<Complex> block = dense_eigenvalues(MatrixXcd(h.spatial()));
  std::vector<Complex> out;
  out.reserve(2 * block.size());
  out.insert(out.end(), block.begin(), block.end());
  out.insert(out.end(), block.begin(), block.end());
  return out;
}

EigenSystem eigensystem(const HamiltonianOperator& h) {
  check_dense_size(h);
  MatrixXcd a = MatrixXcd(h.spatial());
  const int n = static_cast<int>(a.rows());
  VectorXcd w(n);
  MatrixXcd vr(n, n);
  const int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n,
                                 w.data(), nullptr, 1, vr.data(), n);
  if (info != 0)
    throw std::runtime_error("zgeev failed, info=" + std::to_string(info));

  EigenSystem sys;
  sys.values.resize(2 * n);
  sys.vectors = MatrixXcd::Zero(2 * n, 2 * n);
  sys.values.head(n) = w;
  sys.values.tail(n) = w;
  sys.vectors.topLeftCorner(n, n) = vr;      // spin-up sector
  sys.vectors.bottomRightCorner(n, n) = vr;  // spin-down sector
  return sys;
}

SpectrumResult spectrum_for_g(const LatticeSpec& spec,
                              const std::vector<HatanoRegion>& region_template,
                              double g) {
  std::vector<HatanoRegion> regions = region_template;
  for (auto& reg : regions) reg.g *= g;
  const HamiltonianOperator h = build_hamiltonian(spec, regions, {});
  SpectrumResult out;
  out.g = g;
  out.eigenvalues = eigenvalues(h);
  out.max_imag = 0.0;
  bool first = true;
  for (const Complex& ev : out.eigenvalues) {
    if (first || ev.imag() > out.max_imag) out.max_imag = ev.imag();
    first = false;
  }
  return out;
}

std::vector<SpectrumResult> max_imag_vs_g(
    const LatticeSpec& spec, const std::vector<HatanoRegion>& region_template,
    const std::vector<double>& g_values, int jobs) {
  std::vector<SpectrumResult> out(g_values.size());
  if (g_values.empty()) return out;
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 0) jobs = std::max(1, hw);
  jobs = std::min<int>(jobs, static_cast<int>(g_values.size()));

  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < g_values.size();
         i = next.fetch_add(1)) {
      try {
        out[i] = spectrum_for_g(spec, region_template, g_values[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace nhc
