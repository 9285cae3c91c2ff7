#pragma once

#include <vector>

#include "surftex/heightfield.hpp"
#include "surftex/random.hpp"

namespace surftex {

/// Hermitian-consistent random phase over a width x height frequency grid,
/// stored like SpectralField coefficients (index r * width + q).
struct PhaseField {
  int width = 0;
  int height = 0;
  std::vector<double> theta;

  double at(int q, int r) const {
    return theta[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(q)];
  }
};

/// Frequencies are visited in row-major order; each unvisited conjugate pair
/// {xi, -xi} takes one draw from (-pi, pi] (theta(-xi) = -theta(xi), with
/// -pi folded to pi). Self-conjugate frequencies (2 xi == 0 mod size) take a
/// coin flip in {0, pi}, except DC which is fixed to 0 and draws nothing.
PhaseField sample_phase(int width, int height, RandomStream& rng);

/// Random phase noise: keeps the Fourier modulus of `input` (and therefore
/// its mean and autocorrelation), replaces the phase.
HeightField rpn(const HeightField& input, RandomStream& rng);

/// Same as rpn() with a caller-supplied phase.
HeightField apply_phase(const HeightField& input, const PhaseField& phase);

/// Asymptotic discrete spot noise: mean(input) plus the circular convolution
/// of (input - mean)/sqrt(M*N) with unit Gaussian white noise.
HeightField adsn(const HeightField& input, RandomStream& rng);

struct ExtendOptions {
  /// Width in pixels of the sigmoid ramp along padded sides; 0 disables it.
  int blend_band = 8;
};

/// Embeds `input` centred in a target_w x target_h canvas of its mean.
///
/// Sides that receive padding are faded to the mean by a logistic ramp that
/// runs from 0.01 to 0.99 across the band. The embedded deviation is then
/// shifted inside the band so the output mean equals the input mean, and
/// rescaled so the output variance equals the input variance (the
/// sqrt(MT*NT / MI*NI) gain for an unblended pad). Axes without padding are
/// left unblended, so a same-size target returns the input unchanged.
HeightField extend_input(const HeightField& input, int target_w, int target_h,
                         const ExtendOptions& options = {});

/// Ramp value for distance d (pixels from the padded edge) and band width.
double blend_ramp(int distance, int band);

}  // namespace surftex
