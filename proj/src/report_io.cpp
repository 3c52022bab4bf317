#include "noisemax/report_io.hpp"

#include <ostream>

#include "noisemax/format.hpp"

namespace noisemax {

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

void write_csv_provenance(std::ostream& out, const Provenance& prov) {
  for (const auto& [k, v] : prov) out << "# " << k << '=' << v << '\n';
}

}  // namespace

Json to_json(const Provenance& p) {
  Json j = Json::object();
  for (const auto& [k, v] : p) j[k] = v;
  return j;
}

Json to_json(const GumbelReport& r) {
  Json j;
  j["n"] = r.n;
  j["replicates"] = r.replicates;
  j["seed"] = r.seed;
  j["normalization"] = {{"sigma_n", r.norm.sigma_n},
                        {"a_n", r.norm.a_n},
                        {"c", r.norm.c},
                        {"shift", r.norm.shift}};
  j["ks_distance"] = r.ks.distance;
  j["p_value"] = r.ks.p_value;
  j["sample_mean"] = r.sample_mean;
  j["sample_var"] = r.sample_var;
  j["gumbel_mean"] = kEulerGamma;
  j["gumbel_var"] = std::numbers::pi * std::numbers::pi / 6.0;
  Json q = Json::array();
  for (const auto& row : r.quantiles) {
    q.push_back({{"p", row.p}, {"empirical", row.empirical}, {"gumbel", row.gumbel}});
  }
  j["quantiles"] = std::move(q);
  j["fitted"] = {{"location", number_or_null(r.fitted.location)},
                 {"scale", number_or_null(r.fitted.scale)},
                 {"converged", r.fitted.converged}};
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = r.condition;
  j["n"] = r.n;
  j["alpha"] = r.alpha;
  j["family"] = r.family;
  j["sup_value"] = r.sup_value ? number_or_null(*r.sup_value) : Json(nullptr);
  j["achieving_t"] = r.achieving_t;
  j["pass"] = r.pass;
  Json d = Json::object();
  for (const auto& [k, v] : r.details) d[k] = number_or_null(v);
  j["details"] = std::move(d);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

void write_gumbel_json(std::ostream& out, const std::vector<GumbelReport>& reports,
                       const Provenance& prov) {
  Json j;
  j["config"] = to_json(prov);
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  j["reports"] = std::move(arr);
  out << j.dump(2) << '\n';
}

void write_gumbel_csv(std::ostream& out, const std::vector<GumbelReport>& reports,
                      const Provenance& prov) {
  write_csv_provenance(out, prov);
  out << "kind,n,replicates,p,empirical,gumbel,ks_distance,p_value,sample_mean,sample_var\n";
  for (const auto& r : reports) {
    for (const auto& q : r.quantiles) {
      out << "quantile," << r.n << ',' << r.replicates << ',' << shortest(q.p) << ','
          << shortest(q.empirical) << ',' << shortest(q.gumbel) << ",,,,\n";
    }
    out << "summary," << r.n << ',' << r.replicates << ",,,," << shortest(r.ks.distance) << ','
        << shortest(r.ks.p_value) << ',' << shortest(r.sample_mean) << ','
        << shortest(r.sample_var) << '\n';
  }
}

void write_conditions_json(std::ostream& out, const std::vector<ConditionReport>& reports,
                           const Provenance& prov) {
  Json j;
  j["config"] = to_json(prov);
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  j["records"] = std::move(arr);
  out << j.dump(2) << '\n';
}

void write_conditions_csv(std::ostream& out, const std::vector<ConditionReport>& reports,
                          const Provenance& prov) {
  write_csv_provenance(out, prov);
  out << "condition,n,alpha,family,sup_value,achieving_t,pass\n";
  for (const auto& r : reports) {
    out << r.condition << ',' << r.n << ',' << shortest(r.alpha) << ',' << r.family << ','
        << (r.sup_value ? shortest(*r.sup_value) : std::string()) << ','
        << shortest(r.achieving_t) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

void write_covariance_csv(std::ostream& out, const CovarianceProfile& p, const Provenance& prov) {
  write_csv_provenance(out, prov);
  out << "# sigma_sq=" << shortest(p.sigma_sq) << " c_n=" << shortest(p.c_n) << '\n';
  out << "t,rho\n";
  for (Eigen::Index j = 0; j < p.table.size(); ++j) {
    out << shortest(p.table.t(j)) << ',' << shortest(p.table.values[j]) << '\n';
  }
}

void write_covariance_json(std::ostream& out, const CovarianceProfile& p, const Provenance& prov) {
  Json j;
  j["config"] = to_json(prov);
  j["n"] = p.n;
  j["sigma_sq"] = p.sigma_sq;
  j["c_n"] = p.c_n;
  Json t = Json::array(), rho = Json::array();
  for (Eigen::Index i = 0; i < p.table.size(); ++i) {
    t.push_back(p.table.t(i));
    rho.push_back(p.table.values[i]);
  }
  j["t"] = std::move(t);
  j["rho"] = std::move(rho);
  out << j.dump(2) << '\n';
}

}  // namespace noisemax
