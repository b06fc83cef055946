#pragma once

#include "rarewave/eos.hpp"
#include "rarewave/verification.hpp"

#include <cstdint>

namespace rarewave {

/// EOS structure battery: junction smoothness, monotone decay of P(Z)/Z^{5/3}
/// to its limit, entropy decay and sign, energy/entropy domination fits,
/// analytic-vs-FD derivatives, inversion round-trips, and the acoustic bound.
VerificationReport certify_eos(const EosParams& par, int samples = 1000,
                               std::uint64_t seed = 0x5eede05cULL);

} // namespace rarewave
