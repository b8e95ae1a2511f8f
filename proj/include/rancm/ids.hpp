#pragma once

#include <compare>
#include <string>

namespace rancm {

// Dense index wrapper for one entity kind. Indices run 0..count-1 within a
// system model; the display name is derived from the index and never feeds
// back into any logic.
template <char Prefix>
struct EntityId {
  int v = -1;

  constexpr EntityId() = default;
  constexpr explicit EntityId(int value) : v(value) {}

  constexpr bool valid() const { return v >= 0; }
  std::string name() const { return std::string(1, Prefix) + std::to_string(v); }

  friend constexpr auto operator<=>(EntityId, EntityId) = default;
};

using XAppId = EntityId<'x'>;
using IcpId = EntityId<'p'>;
using KpiId = EntityId<'k'>;

}  // namespace rancm
