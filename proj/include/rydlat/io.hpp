#ifndef RYDLAT_IO_HPP
#define RYDLAT_IO_HPP

#include <json.hpp>
#include <string>

#include "rydlat/budget.hpp"
#include "rydlat/cluster.hpp"
#include "rydlat/lattice.hpp"
#include "rydlat/ramps.hpp"

namespace rydlat::io {

using nlohmann::json;

json to_json(const lattice::LatticeParams& p);
json to_json(const lattice::BandStructure& bs); // metadata + energy summary
json to_json(const lattice::WannierSet& ws);    // summary (widths, weights)
json to_json(const ramps::RetentionReport& r);
json to_json(const noblockade::GateOutcome& g);
json to_json(const blockade::ThetaCondition& c);
json to_json(const budget::ErrorBudget& b);
json to_json(const budget::TimingBudget& t);
json to_json(const cluster::ProtocolResult& r);

lattice::LatticeParams lattice_params_from_json(const json& j);

/// CSV payloads: full double precision, scientific notation, comma delimiter,
/// one header row. Complex-valued columns are split into _re/_im pairs.
std::string band_energies_csv(const lattice::BandStructure& bs);
std::string wannier_csv(const lattice::WannierSet& ws);
std::string retention_csv(const ramps::RetentionReport& r);
std::string scan_csv(const std::vector<std::pair<double, double>>& scan);

void write_file(const std::string& path, const std::string& contents);

} // namespace rydlat::io

#endif
