#include <algorithm>

#include "patrol/fsm.hpp"
#include "patrol/kpingpong.hpp"
#include "patrol/pingpong.hpp"
#include "patrol/place_and_swipe.hpp"
#include "patrol/spread.hpp"

namespace patrol {

ProtocolPtr make_protocol(const std::string& name) {
  if (name == "pingpong") return std::make_shared<PingPongProtocol>();
  if (name == "kpingpong") return std::make_shared<KPingPongProtocol>();
  if (name == "place-and-swipe") return std::make_shared<PlaceAndSwipeProtocol>();
  if (name == "spread") return std::make_shared<SpreadProtocol>();
  const auto machines = fsm_names();
  if (std::find(machines.begin(), machines.end(), name) != machines.end())
    return std::make_shared<FsmProtocol>(fsm_of(name));
  throw AlgorithmError("unknown algorithm '" + name + "'");
}

std::vector<std::string> protocol_names() {
  std::vector<std::string> names{"pingpong", "kpingpong", "place-and-swipe", "spread"};
  for (auto& m : fsm_names()) names.push_back(m);
  return names;
}

}  // namespace patrol
