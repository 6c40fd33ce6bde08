#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lemniscate/polynomial.hpp"
#include "lemniscate/potential.hpp"

namespace lemniscate {

/// Closed-form critical data attached to a generated family.
struct ReferenceData {
  std::vector<Vec> local_minima;  // non-pole minima
  std::vector<Vec> saddles;       // saddles known in closed form (possibly a subset)
  std::vector<Vec> degenerate;
  std::optional<int> h;
  std::optional<int> saddle_count;
  std::map<std::string, double> scalars;
  std::vector<std::string> notes;
};

struct Construction {
  std::string family;
  std::map<std::string, std::vector<double>> parameters;
  PointConfiguration config;
  ReferenceData reference;
};

Construction hypercube_midpoints(int N);
Construction simplex_vertices(int N);
Construction tetrahedron();
Construction cube();
Construction octa_six();
Construction triangular_prism(double a);

struct AuxFactor {
  double a;
  double b;  // > 0
};

/// Monic P of degree 2h with P' proportional to prod (X-r_j)(X-s_j) * (X-r_h)
/// and min over R of P equal to 1 (scale^{2h} when the inputs were rescaled).
struct AuxPolynomial {
  int h = 0;
  std::vector<double> r_values;
  std::vector<double> s_values;
  Polynomial P;
  std::vector<AuxFactor> factors;  // sorted by a
  double scale = 1.0;              // input rescaling factor (1 unless spread > 1e3)
  double min_value = 1.0;

  /// prod ((x - a_j)^2 + b_j^2)
  double factored(double x) const;
};

AuxPolynomial build_aux_polynomial(const std::vector<double>& r_values,
                                   const std::vector<double>& s_values);

/// 3h points (b_j cos(2 pi i/3), b_j sin(2 pi i/3), a_j), i = 1..3, grouped by j.
Construction preassigned_minima(const std::vector<double>& r_values,
                                const std::vector<double>& s_values);

/// Rotation by 120 degrees about the x_3 axis.
Mat rotation120();

/// Dispatch by family name; parameters as in Construction::parameters
/// ("n", "a", "minima", "saddles").
Construction construct_family(const std::string& name,
                              const std::map<std::string, std::vector<double>>& params);

const std::vector<std::string>& family_names();

}  // namespace lemniscate
