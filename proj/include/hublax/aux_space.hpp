#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hublax/types.hpp"

namespace hublax {

enum class Sign { Plus, Minus };

// Vertex k^+- or (k+1/2)^+- of the auxiliary graph. Levels are stored doubled
// so that half-integer levels stay integral.
struct AuxVertex {
  int twice_level = 0;
  Sign sign = Sign::Plus;

  bool half_integer() const { return twice_level % 2 != 0; }
  // "0+", "1/2-", "3/2+", "2-", ...
  std::string label() const;
  static AuxVertex parse(const std::string& label);

  friend bool operator==(const AuxVertex&, const AuxVertex&) = default;
};

inline AuxVertex vtx(int twice_level, Sign sign) { return AuxVertex{twice_level, sign}; }

// Auxiliary space truncated at integer level `cutoff`: 0^+ followed by one
// plaquette block (k+1/2)^+, (k+1/2)^-, (k+1)^-, (k+1)^+ for every k < cutoff.
class AuxSpace {
 public:
  explicit AuxSpace(int cutoff);

  int cutoff() const { return cutoff_; }
  Index dim() const { return 4 * static_cast<Index>(cutoff_) + 1; }
  const std::vector<AuxVertex>& vertices() const { return vertices_; }
  const AuxVertex& vertex(Index i) const { return vertices_.at(static_cast<std::size_t>(i)); }
  int twice_level(Index i) const { return vertex(i).twice_level; }

  bool contains(const AuxVertex& v) const;
  std::optional<Index> find(const AuxVertex& v) const;
  // Throws std::out_of_range for vertices outside the truncation.
  Index index(const AuxVertex& v) const;

  // Indices of all vertices with level <= twice_level / 2.
  std::vector<Index> indices_up_to(int twice_level) const;

 private:
  int cutoff_;
  std::vector<AuxVertex> vertices_;
};

AuxSpace build_aux_space(int cutoff);

// Diagonal reflection G: fixes integer levels, swaps the sign of half-integer ones.
AuxOperator spin_flip_aux(const AuxSpace& space);

}  // namespace hublax
