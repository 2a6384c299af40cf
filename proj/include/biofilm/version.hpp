#pragma once

#include <string>

namespace biofilm {

/// Library version, e.g. "0.1.0".
std::string version();
/// Version string reported by the FFT backend.
std::string fft_backend_version();

}  // namespace biofilm
