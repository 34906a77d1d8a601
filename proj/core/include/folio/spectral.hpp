#pragma once

#include <cstdint>

#include "folio/rng.hpp"
#include "folio/tensor.hpp"

namespace folio {

/// Persistent power-iteration state for one normalized kernel.
struct SpectralState {
    Tensor u;  // left singular vector estimate, unit norm
    std::int64_t iterations = 0;
    bool last_degenerate = false;
};

/// Fresh state with a random unit-norm u of length `rows`.
SpectralState make_spectral_state(int rows, Rng& rng);

/// One power-iteration update of `state`; returns the top singular value
/// estimate sigma_hat = u'Wv. The kernel is viewed as a rows x cols matrix
/// over its contiguous storage with rows = shape[0].
double spectral_estimate(const Tensor& w, SpectralState& state);

/// spectral_estimate followed by the hard projection w <- w / sigma_hat.
/// A zero kernel is left unchanged and flagged via state.last_degenerate.
double spectral_normalize(Tensor& w, SpectralState& state);

} // namespace folio
