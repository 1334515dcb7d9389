#ifndef CERTIPLAN_MUTATE_H
#define CERTIPLAN_MUTATE_H

#include <random>
#include <string>

namespace certiplan {

// Text-level certificate mutations for the adversarial battery: bound bumps,
// coefficient and degree flips, literal polarity flips, deleted lines,
// rewired circuit edges, qed retargets and declaration tweaks. The result may
// be unparsable; that counts as a rejection downstream.
std::string mutate_certificate_text(const std::string &text, std::mt19937_64 &rng);

} // namespace certiplan

#endif
