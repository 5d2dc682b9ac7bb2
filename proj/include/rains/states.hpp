#pragma once

// State families, the explicit non-additivity pair, and symmetrizing twirls.

#include <array>
#include <span>
#include <vector>

#include "rains/density_matrix.hpp"

namespace rains {

// Finite abelian group Z_{n1} x ... x Z_{nk}. Elements are residue tuples,
// enumerated lexicographically (last component fastest); the element with
// index h labels the basis vector |h> of V_G.
struct AbelianGroupSpec {
  std::vector<int> cyclic_orders;

  int order() const;
  std::vector<int> element(int index) const;
  int index(std::span<const int> residues) const;
};

AbelianGroupSpec cyclic_group(int n);

// Generalized Bell label: group element g and character exponent tuple chi,
// where chi(h) = exp(2 pi i sum_j chi_j h_j / n_j).
struct BellLabel {
  std::vector<int> g;
  std::vector<int> chi;
};

// All |G|^2 labels, lexicographic in (g, chi).
std::vector<BellLabel> bell_labels(const AbelianGroupSpec& group);

// v_{g,chi} = |G|^{-1/2} sum_h conj(chi(h)) |h, h - g>, in bell_labels order.
std::vector<ComplexVector> generalized_bell_basis(const AbelianGroupSpec& group);

// |Phi+><Phi+| with Phi+ = K^{-1/2} sum_i |ii>.
ComplexMatrix maximally_entangled_projector(int k);

// F P+ + (1 - F)(I - P+)/(K^2 - 1): the U (x) conj(U) invariant state with
// fidelity F.
DensityMatrix isotropic(int k, double f);

// sum_i p_i v_i v_i^dagger over the Z_2 Bell basis in the order
// (g, chi) = (0,0), (0,1), (1,0), (1,1).
DensityMatrix bell_diagonal(const std::array<double, 4>& p);

// Mixture of generalized Bell projectors with weights in bell_labels order.
DensityMatrix bell_mixture(const AbelianGroupSpec& group, std::span<const double> weights);

// sum_ij alpha_ij |ii><jj| for a Hermitian, trace-one, PSD alpha.
DensityMatrix max_correlated(const ComplexMatrix& alpha);

// Projector onto sum_i sqrt(schmidt_i) |ii>.
DensityMatrix pure_state(std::span<const double> schmidt);

struct StatePair {
  DensityMatrix rho;
  DensityMatrix sigma;
};

// The explicit 4x4 pair for which sigma is PPT-optimal for rho while
// sigma (x) sigma is not optimal for rho (x) rho. The constant
// x = 1 / ln(73/23) is evaluated at run time.
StatePair counterexample_pair();

// Projection onto isotropic states, preserving the fidelity.
DensityMatrix isotropic_twirl(const DensityMatrix& m);

// Average over the group generated by X(g)(x)X(g) and Z(chi)(x)Z(conj chi):
// the dephasing of m in the generalized Bell basis.
DensityMatrix bell_twirl(const DensityMatrix& m, const AbelianGroupSpec& group);
ComplexMatrix bell_twirl(const ComplexMatrix& m, const AbelianGroupSpec& group);

// <v|m|v> for every generalized Bell vector, in bell_labels order.
std::vector<double> bell_weights(const ComplexMatrix& m, const AbelianGroupSpec& group);

// Validates a probability vector: entries >= -1e-12, sum within 1e-9 of 1.
void require_probability_vector(std::span<const double> p, const char* what);

// Validates alpha for the maximally correlated embedding.
void require_density_operator(const ComplexMatrix& alpha, const char* what);

}  // namespace rains
