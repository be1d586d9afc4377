#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "hublax/aux_space.hpp"
#include "hublax/lindblad_oracle.hpp"
#include "hublax/observables.hpp"
#include "hublax/residual.hpp"

namespace hublax {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::ordered_json;

json complex_json(Complex z);
void to_json(json& j, const LaxParams& p);
void to_json(json& j, const ResidualReport& r);
void to_json(json& j, const DrivingConfig& c);
void to_json(json& j, const NessDiagnostics& d);
void to_json(json& j, const ObservableSet& o);
void to_json(json& j, const ScalingFit& f);
void to_json(json& j, const CosineFit& f);

// [[row_label, col_label, re, im], ...] in column-major storage order.
json operator_entries(const AuxSpace& space, const AuxOperator& op);

// Binary density matrix: 8-byte magic "HUBRHO01", uint64 dim, dim*dim (re, im)
// doubles in row-major order, uint64 FNV-1a checksum of the payload bytes.
// Integers and doubles use host byte order.
inline constexpr char kRhoMagic[8] = {'H', 'U', 'B', 'R', 'H', 'O', '0', '1'};

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t state = 0xcbf29ce484222325ULL);
void write_rho_binary(const std::string& path, const DenseMatrix& rho);
DenseMatrix read_rho_binary(const std::string& path);

}  // namespace hublax
