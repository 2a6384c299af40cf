#include "biofilm/version.hpp"

#include "fft.hpp"

namespace biofilm {

std::string version() { return BIOFILM_VERSION; }

std::string fft_backend_version() { return detail::fft_backend_version(); }

}  // namespace biofilm
