#pragma once

#include <vector>

#include "nhc/lattice.hpp"
#include "nhc/types.hpp"

namespace nhc {

/// All eigenvalues of the operator (dense general eigensolve of the spatial
/// block; each eigenvalue appears twice, once per spin sector).
/// Requires dimension <= 4096. Throws on QR convergence failure.
std::vector<Complex> eigenvalues(const HamiltonianOperator& h);

struct EigenSystem {
  VectorXcd values;   // full dimension 2N
  MatrixXcd vectors;  // right eigenvectors as columns, unit norm
};

/// Eigenvalues with right eigenvectors over the full (site x spin) space.
EigenSystem eigensystem(const HamiltonianOperator& h);

/// zgeev on an arbitrary dense complex matrix (values only).
std::vector<Complex> dense_eigenvalues(MatrixXcd a);

struct SpectrumResult {
  std::vector<Complex> eigenvalues;
  double max_imag = 0.0;
  double g = 0.0;
};

SpectrumResult spectrum_for_g(const LatticeSpec& spec,
                              const std::vector<HatanoRegion>& region_template,
                              double g);

/// Spectra over a g grid. Each template region's g field acts as a scale
/// multiplied by the swept value (1 = swept, 0 = stays Hermitian).
/// Solves for distinct g run in parallel; output order follows g_values.
std::vector<SpectrumResult> max_imag_vs_g(
    const LatticeSpec& spec, const std::vector<HatanoRegion>& region_template,
    const std::vector<double>& g_values, int jobs = 0);

}  // namespace nhc
