#ifndef NOISEMAX_SYNTH_HPP
#define NOISEMAX_SYNTH_HPP

// Realizations of the random trigonometric polynomial
//   X_n(t) = sum_{k=1}^n w_k (u_k sin(kt) + v_k cos(kt)),   w_k = sqrt(R(k)),
// and their evaluation pointwise and on equispaced grids over [-pi, pi).

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "noisemax/coeffs.hpp"
#include "noisemax/errors.hpp"

namespace noisemax {

/// One immutable draw of X_n. Index i of each vector holds frequency k = i+1.
class NoiseDraw {
 public:
  NoiseDraw(Eigen::VectorXd u, Eigen::VectorXd v, Eigen::VectorXd w,
            std::string model_id = {}, SeedPath seed_path = {});

  Eigen::Index degree() const { return u_.size(); }
  const Eigen::VectorXd& u() const { return u_; }
  const Eigen::VectorXd& v() const { return v_; }
  const Eigen::VectorXd& w() const { return w_; }
  const std::string& model_id() const { return model_id_; }
  const SeedPath& seed_path() const { return seed_path_; }

  /// -X_n: both coefficient vectors negated.
  NoiseDraw negated() const;
  /// t -> X_n(-t): sine coefficients negated.
  NoiseDraw reflected() const;
  /// lambda X_n via the weights.
  NoiseDraw scaled(double lambda) const;

 private:
  Eigen::VectorXd u_, v_, w_;
  std::string model_id_;
  SeedPath seed_path_;
};

/// Draws u_k, v_k from the counter-based stream of `path`; (u_k, v_k) is
/// Gaussian pair k-1, so degree-n draws are prefixes of degree-n' draws.
NoiseDraw draw(const CoefficientModel& model, std::int64_t n, SeedPath path);

/// Direct compensated summation.
double eval_at(const NoiseDraw& d, double t);

/// order 1: sum k w (u cos - v sin); order 2: -sum k^2 w (u sin + v cos).
double deriv_at(const NoiseDraw& d, double t, int order);

/// Value and first two derivatives at one point.
struct Jet {
  double value = 0;
  double first = 0;
  double second = 0;
};

/// O(n) joint evaluation by a rotation recurrence re-anchored every
/// 32 frequencies with exact sin/cos. Used in the inner polishing loop.
Jet jet_at(const NoiseDraw& d, double t);

struct GridEvaluation {
  Eigen::VectorXd values;  ///< X_n(t_j), t_j = -pi + 2 pi j / N
  std::string draw_ref;

  Eigen::Index size() const { return values.size(); }
  static double point(Eigen::Index j, Eigen::Index N);
};

/// Grid values together with X_n'' on the same grid.
struct GridWithCurvature {
  Eigen::VectorXd values;
  Eigen::VectorXd second;
};

/// All N equispaced values in O(N log N). N must be a power of two with
/// N >= 2n + 1; otherwise AliasingError (too small) or DomainError.
GridEvaluation eval_grid(const NoiseDraw& d, Eigen::Index N);

/// eval_grid plus second derivative, both from a single complex transform.
GridWithCurvature eval_grid_with_curvature(const NoiseDraw& d, Eigen::Index N);

/// Debug dump, columns k,u,v,w. Not a stable format.
void write_draw_csv(const NoiseDraw& d, std::ostream& out);

/// Smallest power of two >= x (x >= 1).
Eigen::Index next_pow2(Eigen::Index x);

}  // namespace noisemax

#endif  // NOISEMAX_SYNTH_HPP
