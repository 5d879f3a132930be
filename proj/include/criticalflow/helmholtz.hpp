#pragma once

#include "criticalflow/field.hpp"

namespace criticalflow {

/// Potential part: (k k^T / |k|^2) v_hat per mode; zero mode sent to zero.
SpectralField project_Q(const SpectralField& v);
/// Divergence-free part v - Qv; carries the mean of v.
SpectralField project_P(const SpectralField& v);

}  // namespace criticalflow
