#include "hublax/report_io.hpp"

#include <fstream>
#include <vector>

namespace hublax {

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void to_json(json& j, const LaxParams& p) {
  j = json{{"lambda", complex_json(p.lambda)}, {"omega", complex_json(p.omega)}, {"u", p.u}};
  if (p.gauge_xi != Complex(1.0, 0.0)) j["gauge_xi"] = complex_json(p.gauge_xi);
}

void to_json(json& j, const ResidualReport& r) {
  j = json{{"identity_name", r.name}, {"tier", r.tier}, {"params", r.params}};
  if (r.partner) j["partner_params"] = *r.partner;
  j["cutoff_K"] = r.cutoff_K;
  j["residual_fro"] = r.residual_fro;
  j["residual_max"] = r.residual_max;
  j["operand_scale"] = r.operand_scale;
  j["relative"] = r.relative();
  j["tol"] = r.tol;
  j["passed"] = r.passed;
}

void to_json(json& j, const DrivingConfig& c) {
  j = json{{"gammaL", c.gamma_L}, {"gammaR", c.gamma_R}, {"muL", c.mu_L},
           {"muR", c.mu_R},       {"u", c.u},             {"n", c.n_sites}};
}

void to_json(json& j, const NessDiagnostics& d) {
  j = json{{"hermiticity", d.hermiticity},
           {"min_eigenvalue", d.min_eigenvalue},
           {"trace_error", d.trace_error},
           {"m_commutator", d.m_commutator},
           {"sector_leakage", d.sector_leakage}};
  j["lindblad_residual"] = d.lindblad_residual ? json(*d.lindblad_residual) : json(nullptr);
}

void to_json(json& j, const ObservableSet& o) {
  j = json{{"driving", o.cfg}, {"route", o.route}};
  json dens = json::array(), cur = json::array();
  for (std::size_t i = 0; i < o.densities.size(); ++i)
    dens.push_back({{"site", i + 1}, {"sigma_z", o.densities[i][0]}, {"tau_z", o.densities[i][1]}});
  for (std::size_t i = 0; i < o.currents.size(); ++i)
    cur.push_back({{"bond", i + 1}, {"J_sigma", o.currents[i][0]}, {"J_tau", o.currents[i][1]}});
  j["densities"] = dens;
  j["currents"] = cur;
  j["max_imag"] = o.max_imag;
  j["current_uniformity"] = o.current_uniformity;
}

void to_json(json& j, const ScalingFit& f) {
  j = json{{"exponent", f.exponent}, {"log_prefactor", f.log_prefactor}, {"r_squared", f.r_squared}, {"points", f.points}};
}

void to_json(json& j, const CosineFit& f) {
  j = json{{"amplitude", f.amplitude}, {"offset", f.offset}, {"r_squared", f.r_squared}};
}

json operator_entries(const AuxSpace& space, const AuxOperator& op) {
  json out = json::array();
  for (Index c = 0; c < op.outerSize(); ++c) {
    for (AuxOperator::InnerIterator it(op, c); it; ++it) {
      out.push_back({space.vertex(it.row()).label(), space.vertex(it.col()).label(), it.value().real(),
                     it.value().imag()});
    }
  }
  return out;
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t state) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    state ^= p[i];
    state *= 0x100000001b3ULL;
  }
  return state;
}

void write_rho_binary(const std::string& path, const DenseMatrix& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("rho dump: matrix must be square");
  const auto dim = static_cast<std::uint64_t>(rho.rows());
  std::vector<double> payload;
  payload.reserve(static_cast<std::size_t>(2 * dim * dim));
  for (Index i = 0; i < rho.rows(); ++i) {
    for (Index j = 0; j < rho.cols(); ++j) {
      payload.push_back(rho(i, j).real());
      payload.push_back(rho(i, j).imag());
    }
  }
  const std::size_t bytes = payload.size() * sizeof(double);
  const std::uint64_t sum = fnv1a(payload.data(), bytes);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os.write(kRhoMagic, sizeof kRhoMagic);
  os.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  os.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(bytes));
  os.write(reinterpret_cast<const char*>(&sum), sizeof sum);
  if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

DenseMatrix read_rho_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  char magic[8];
  std::uint64_t dim = 0, sum = 0;
  is.read(magic, sizeof magic);
  if (!is || !std::equal(magic, magic + 8, kRhoMagic)) throw std::runtime_error("'" + path + "': bad magic");
  is.read(reinterpret_cast<char*>(&dim), sizeof dim);
  if (!is || dim == 0 || dim > (std::uint64_t{1} << 16)) throw std::runtime_error("'" + path + "': bad dimension");
  std::vector<double> payload(static_cast<std::size_t>(2 * dim * dim));
  const std::size_t bytes = payload.size() * sizeof(double);
  is.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(bytes));
  is.read(reinterpret_cast<char*>(&sum), sizeof sum);
  if (!is) throw std::runtime_error("'" + path + "': truncated file");
  if (fnv1a(payload.data(), bytes) != sum) throw std::runtime_error("'" + path + "': checksum mismatch");
  const auto n = static_cast<Index>(dim);
  DenseMatrix rho(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const auto k = static_cast<std::size_t>(2 * (i * n + j));
      rho(i, j) = Complex(payload[k], payload[k + 1]);
    }
  return rho;
}

}  // namespace hublax
