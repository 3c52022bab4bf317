#ifndef NOISEMAX_REPORT_IO_HPP
#define NOISEMAX_REPORT_IO_HPP

// JSON and CSV forms of the reports. Doubles are written in their shortest
// round-trip form so that equal results give byte-identical files.

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "noisemax/covar.hpp"
#include "noisemax/extremes.hpp"

namespace noisemax {

/// Ordered key/value pairs describing the run that produced a file.
using Provenance = std::vector<std::pair<std::string, std::string>>;

using Json = nlohmann::ordered_json;

Json to_json(const GumbelReport& r);
/// {condition, n, alpha, family, sup_value, achieving_t, pass, details, note}
Json to_json(const ConditionReport& r);
Json to_json(const Provenance& p);

void write_gumbel_json(std::ostream& out, const std::vector<GumbelReport>& reports,
                       const Provenance& prov);
/// One row per quantile plus one summary row per report.
void write_gumbel_csv(std::ostream& out, const std::vector<GumbelReport>& reports,
                      const Provenance& prov);

void write_conditions_json(std::ostream& out, const std::vector<ConditionReport>& reports,
                           const Provenance& prov);
void write_conditions_csv(std::ostream& out, const std::vector<ConditionReport>& reports,
                          const Provenance& prov);

/// Columns t, rho; comment header with provenance, sigma_sq and c_n.
void write_covariance_csv(std::ostream& out, const CovarianceProfile& p, const Provenance& prov);
void write_covariance_json(std::ostream& out, const CovarianceProfile& p, const Provenance& prov);

}  // namespace noisemax

#endif  // NOISEMAX_REPORT_IO_HPP
