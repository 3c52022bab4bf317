#include "noisemax/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "noisemax/errors.hpp"
#include "noisemax/format.hpp"
#include "noisemax/summation.hpp"

namespace noisemax {

std::string_view to_string(SlowFamily f) {
  switch (f) {
    case SlowFamily::constant:
      return "constant";
    case SlowFamily::logpower:
      return "logpower";
  }
  return "unknown";
}

SlowFamily parse_family(std::string_view name) {
  if (name == "constant") return SlowFamily::constant;
  if (name == "logpower") return SlowFamily::logpower;
  throw DomainError("unknown slowly varying family '" + std::string(name) +
                    "' (expected constant or logpower)");
}

double default_cut(SlowFamily f) {
  return f == SlowFamily::logpower ? std::numbers::e : 1.0;
}

CoefficientModel CoefficientModel::constant(double alpha, double c0) {
  CoefficientModel m{alpha, SlowFamily::constant, c0, 0.0, default_cut(SlowFamily::constant)};
  m.validate();
  return m;
}

CoefficientModel CoefficientModel::logpower(double alpha, double c0, double beta) {
  CoefficientModel m{alpha, SlowFamily::logpower, c0, beta, default_cut(SlowFamily::logpower)};
  m.validate();
  return m;
}

void CoefficientModel::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(c0) || !std::isfinite(beta) ||
      !std::isfinite(cut)) {
    throw DomainError("coefficient model parameters must be finite");
  }
  if (alpha >= 1.0) {
    throw DomainError("alpha must satisfy alpha < 1 (the Gumbel limit for the "
                      "maximum of 1/f^alpha noise requires alpha < 1), got " +
                      shortest(alpha));
  }
  if (c0 <= 0.0) throw DomainError("c0 must be positive");
  if (cut <= 0.0) throw DomainError("monotonization cut must be positive");
}

std::string to_string(const CoefficientModel& m) {
  std::string s = "alpha=" + shortest(m.alpha) + " family=" + std::string(to_string(m.family)) +
                  " c0=" + shortest(m.c0);
  if (m.family == SlowFamily::logpower) s += " beta=" + shortest(m.beta);
  s += " cut=" + shortest(m.cut);
  return s;
}

CoefficientModel parse_model(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw DomainError("malformed model token '" + token + "' (expected key=value)");
    }
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }

  auto number = [&](std::string_view key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    double x = 0;
    if (!parse_number(it->second, x)) {
      throw DomainError("model key '" + std::string(key) + "' is not a number: " + it->second);
    }
    return x;
  };

  for (const auto& [key, _] : kv) {
    if (key != "alpha" && key != "family" && key != "c0" && key != "beta" && key != "cut") {
      throw DomainError("unknown model key '" + key + "'");
    }
  }
  if (!kv.contains("alpha")) throw DomainError("model is missing alpha");

  CoefficientModel m;
  m.family = kv.contains("family") ? parse_family(kv.at("family")) : SlowFamily::constant;
  m.alpha = number("alpha", 0.0);
  m.c0 = number("c0", 1.0);
  m.beta = number("beta", 0.0);
  m.cut = number("cut", default_cut(m.family));
  m.validate();
  return m;
}

double slowly_varying(const CoefficientModel& m, double t) {
  switch (m.family) {
    case SlowFamily::constant:
      return m.c0;
    case SlowFamily::logpower:
      return m.c0 * std::pow(std::log(std::numbers::e + t), m.beta);
  }
  return m.c0;
}

double raw_weight(const CoefficientModel& m, double t) {
  return slowly_varying(m, t) * std::pow(t, -m.alpha);
}

double weight(const CoefficientModel& m, std::int64_t k) {
  if (k < 1) throw DomainError("weight index must be >= 1, got " + std::to_string(k));
  const auto x = static_cast<double>(k);
  return x < m.cut ? raw_weight(m, m.cut) : raw_weight(m, x);
}

double sigma_sq(const CoefficientModel& m, std::int64_t n) {
  if (n < 1) throw DomainError("degree n must be >= 1");
  return compensated_sum(1, n, [&](std::int64_t k) { return weight(m, k); });
}

double karamata_ratio(const CoefficientModel& m, std::int64_t n, int power) {
  if (n < 1) throw DomainError("degree n must be >= 1");
  if (power < 0) throw DomainError("power must be non-negative");
  if (power - m.alpha <= -1.0) {
    throw PreconditionError("karamata_ratio needs power - alpha > -1");
  }
  const double sum = compensated_sum(1, n, [&](std::int64_t k) {
    return std::pow(static_cast<double>(k), power) * weight(m, k);
  });
  const double nd = static_cast<double>(n);
  return sum * (1.0 + power - m.alpha) / (std::pow(nd, power + 1) * weight(m, n));
}

double regular_variation_ratio(const CoefficientModel& m, double lambda, double x) {
  if (lambda <= 0 || x <= 0) throw DomainError("regular_variation_ratio needs lambda, x > 0");
  return raw_weight(m, lambda * x) / raw_weight(m, x);
}

double potter_envelope(const CoefficientModel& m, double delta,
                       std::span<const double> x_grid, std::span<const double> y_grid) {
  if (!(delta > 0)) throw DomainError("Potter delta must be positive");
  if (x_grid.empty() || y_grid.empty()) throw DomainError("Potter grids must be nonempty");
  auto positive = [](double v) { return v > 0 && std::isfinite(v); };
  if (!std::ranges::all_of(x_grid, positive) || !std::ranges::all_of(y_grid, positive)) {
    throw DomainError("Potter grid entries must be positive");
  }
  // The bound must also hold on the diagonal x = y, so C >= 1 regardless of
  // which pairs the grids happen to contain.
  double c = 1.0;
  for (double x : x_grid) {
    const double lx = slowly_varying(m, x);
    for (double y : y_grid) {
      const double envelope = std::pow(std::max(x / y, y / x), delta);
      c = std::max(c, lx / slowly_varying(m, y) / envelope);
    }
  }
  // The quotient above can round down by an ulp; lift C until every pair
  // satisfies the product form of the inequality as evaluated in floating point.
  for (bool ok = false; !ok;) {
    ok = true;
    for (double x : x_grid) {
      const double lx = slowly_varying(m, x);
      for (double y : y_grid) {
        if (lx / slowly_varying(m, y) > c * std::pow(std::max(x / y, y / x), delta)) {
          c = std::nextafter(c, HUGE_VAL);
          ok = false;
        }
      }
    }
  }
  return c;
}

double cut_mass(const CoefficientModel& m) {
  CompensatedSum<double> acc;
  for (std::int64_t k = 1; static_cast<double>(k) < m.cut; ++k) {
    acc += std::abs(raw_weight(m, static_cast<double>(k)) - weight(m, k));
  }
  return acc.value();
}

}  // namespace noisemax
