#pragma once

#include <string>
#include <vector>

#include "orchestra/synth.hpp"

namespace orchestra {

// Built-in domains: travel (15 tools), finance (22), medicine (19),
// ecommerce (15), restaurant (23). Default table sizes add up to the
// entry counts of the reference domains.
std::vector<std::string> builtin_domains();
DomainTemplate builtin_template(std::string_view domain);

PricingTable domain_pricing();
LatencyTable domain_latency();

}  // namespace orchestra
