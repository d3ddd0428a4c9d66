// Copyright 2026 The qaoaforge Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qaoaforge/trotter.hpp"

#include <complex>

namespace qaoaforge {

namespace {

using Mat = dense::Matrix<double>;
using CVec = Eigen::VectorXcd;

void check_inputs(const Eigen::VectorXd &hf_diag, std::size_t n, std::size_t p) {
    dense::check_size(n);
    if (hf_diag.size() != (Eigen::Index{1} << n)) {
        throw InvalidArgument("H_f diagonal length does not match 2^n");
    }
    if (p < 1) {
        throw InvalidArgument("slice count must be at least 1");
    }
}

/// exp(-i tau H_i) from one eigendecomposition of the mixer.
class MixerExp {
  public:
    explicit MixerExp(std::size_t n) : es_(dense::mixer<double>(n)) {}

    [[nodiscard]] Mat operator()(double tau) const {
        CVec ph(es_.eigenvalues().size());
        for (Eigen::Index k = 0; k < ph.size(); ++k) {
            ph(k) = std::polar(1.0, -tau * es_.eigenvalues()(k));
        }
        return es_.eigenvectors() * ph.asDiagonal() * es_.eigenvectors().adjoint();
    }

  private:
    Eigen::SelfAdjointEigenSolver<Mat> es_;
};

} // namespace

Mat trotter_product(const Eigen::VectorXd &hf_diag, std::size_t n, std::size_t p,
                    TimeSampling sampling) {
    check_inputs(hf_diag, n, p);
    const MixerExp mix(n);
    const double dt = 1.0 / static_cast<double>(p);
    Mat U = dense::identity<double>(n);
    for (std::size_t k = 1; k <= p; ++k) {
        const double t = sampling == TimeSampling::RightEndpoint
                             ? static_cast<double>(k) * dt
                             : (static_cast<double>(k) - 0.5) * dt;
        CVec uf(hf_diag.size());
        for (Eigen::Index z = 0; z < uf.size(); ++z) {
            uf(z) = std::polar(1.0, -t * dt * hf_diag(z));
        }
        U = mix((1.0 - t) * dt) * uf.asDiagonal() * U;
    }
    return U;
}

Mat adiabatic_reference(const Eigen::VectorXd &hf_diag, std::size_t n, std::size_t steps) {
    check_inputs(hf_diag, n, steps);
    const Mat Hi = dense::mixer<double>(n);
    const Mat Hf = dense::diagonal<double>(hf_diag);
    const double dt = 1.0 / static_cast<double>(steps);
    Mat U = dense::identity<double>(n);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * dt;
        const Mat H = (1.0 - t) * Hi + t * Hf;
        U = dense::expm_hermitian<double>(H, dt) * U;
    }
    return U;
}

double trotter_error(const Eigen::VectorXd &hf_diag, std::size_t n, std::size_t p,
                     const Mat &reference, TimeSampling sampling) {
    const Mat U = trotter_product(hf_diag, n, p, sampling);
    if (U.rows() != reference.rows()) {
        throw InvalidArgument("reference unitary has the wrong dimension");
    }
    return dense::spectral_norm<double>(U - reference);
}

double trotter_compare(const SpinHamiltonian &H_f, std::size_t p, const TrotterOptions &options) {
    dense::check_size(H_f.n);
    const Eigen::VectorXd diag = diagonalize(H_f);
    const Mat ref = adiabatic_reference(diag, H_f.n, options.steps_exact);
    return trotter_error(diag, H_f.n, p, ref, options.sampling);
}

} // namespace qaoaforge
