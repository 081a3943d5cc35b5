#pragma once

// Umbrella header: pulls in the whole library.

#include "oddfft/bench.hpp"
#include "oddfft/common.hpp"
#include "oddfft/direct_dft.hpp"
#include "oddfft/number_theory.hpp"
#include "oddfft/phase_space.hpp"
#include "oddfft/prime_factor_fft.hpp"
#include "oddfft/radix_fft.hpp"
#include "oddfft/state_vector.hpp"
#include "oddfft/verify.hpp"
