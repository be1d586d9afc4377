#include "hublax/aux_space.hpp"

#include <stdexcept>

namespace hublax {

std::string AuxVertex::label() const {
  std::string s = half_integer() ? std::to_string(twice_level) + "/2" : std::to_string(twice_level / 2);
  s += sign == Sign::Plus ? "+" : "-";
  return s;
}

AuxVertex AuxVertex::parse(const std::string& label) {
  if (label.size() < 2) throw std::invalid_argument("bad vertex label '" + label + "'");
  const char sc = label.back();
  if (sc != '+' && sc != '-') throw std::invalid_argument("bad vertex sign in '" + label + "'");
  const std::string body = label.substr(0, label.size() - 1);
  AuxVertex v;
  v.sign = sc == '+' ? Sign::Plus : Sign::Minus;
  const auto slash = body.find('/');
  try {
    if (slash == std::string::npos) {
      v.twice_level = 2 * std::stoi(body);
    } else {
      if (body.substr(slash + 1) != "2") throw std::invalid_argument("denominator");
      v.twice_level = std::stoi(body.substr(0, slash));
      if (v.twice_level % 2 == 0) throw std::invalid_argument("even numerator");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("bad vertex label '" + label + "'");
  }
  if (v.twice_level < 0) throw std::invalid_argument("negative level in '" + label + "'");
  return v;
}

AuxSpace::AuxSpace(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 1) throw DomainError("aux space cutoff must be >= 1, got " + std::to_string(cutoff));
  vertices_.reserve(static_cast<std::size_t>(dim()));
  vertices_.push_back(vtx(0, Sign::Plus));
  for (int k = 0; k < cutoff; ++k) {
    vertices_.push_back(vtx(2 * k + 1, Sign::Plus));
    vertices_.push_back(vtx(2 * k + 1, Sign::Minus));
    vertices_.push_back(vtx(2 * k + 2, Sign::Minus));
    vertices_.push_back(vtx(2 * k + 2, Sign::Plus));
  }
}

bool AuxSpace::contains(const AuxVertex& v) const {
  if (v.twice_level < 0 || v.twice_level > 2 * cutoff_) return false;
  return !(v.twice_level == 0 && v.sign == Sign::Minus);
}

std::optional<Index> AuxSpace::find(const AuxVertex& v) const {
  if (!contains(v)) return std::nullopt;
  if (v.twice_level == 0) return 0;
  if (v.half_integer()) {
    const Index k = (v.twice_level - 1) / 2;
    return 1 + 4 * k + (v.sign == Sign::Plus ? 0 : 1);
  }
  const Index k = v.twice_level / 2 - 1;
  return 1 + 4 * k + (v.sign == Sign::Minus ? 2 : 3);
}

Index AuxSpace::index(const AuxVertex& v) const {
  if (auto i = find(v)) return *i;
  throw std::out_of_range("vertex " + v.label() + " outside aux space with cutoff " + std::to_string(cutoff_));
}

std::vector<Index> AuxSpace::indices_up_to(int twice_level) const {
  std::vector<Index> out;
  for (Index i = 0; i < dim(); ++i) {
    if (vertices_[static_cast<std::size_t>(i)].twice_level <= twice_level) out.push_back(i);
  }
  return out;
}

AuxSpace build_aux_space(int cutoff) { return AuxSpace(cutoff); }

AuxOperator spin_flip_aux(const AuxSpace& space) {
  std::vector<Triplet> trips;
  for (Index i = 0; i < space.dim(); ++i) {
    AuxVertex image = space.vertex(i);
    if (image.half_integer()) image.sign = image.sign == Sign::Plus ? Sign::Minus : Sign::Plus;
    trips.emplace_back(space.index(image), i, 1.0);
  }
  AuxOperator g(space.dim(), space.dim());
  g.setFromTriplets(trips.begin(), trips.end());
  return g;
}

}  // namespace hublax
