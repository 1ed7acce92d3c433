#pragma once

// Symbolic forms of the geodesic equations and their point-symmetry
// generators. The dispersion coefficient is the parameter `eps`; general
// generators carry the free constants c1..c4.

#include "geoflow/geodesic.hpp"
#include "geoflow/jet.hpp"

#include <string>
#include <vector>

namespace geoflow::jet {

/// a^2 u_t - b^2 u_txx + 3a^2 u u_x - 2b^2 u_x u_xx - b^2 u u_xxx + eps u_xxx for
/// the equation's metric; Hopf is u_t + 3 u u_x.
JetPoly equation_delta(Equation eq);
PdeForm equation_pde(Equation eq);

/// u_t + u u_x, the normalisation used when listing Hopf coefficients.
PdeForm hopf_transport_pde();

enum class SymmetryKind { Scaling, TimeTranslation, SpaceTranslation, GalileanBoost, GeneralisedGalileanBoost };

std::string to_string(SymmetryKind k);

struct NamedGenerator {
    std::string label;  // v1, v2, ...
    SymmetryKind kind;
    PointVectorField field;
};

/// Spanning generators. F1, F2 are polynomials in t used by the Hunter-Saxton
/// families (ignored elsewhere). Throws Error(Unsupported) for Hopf.
std::vector<NamedGenerator> spanning_generators(Equation eq, const JetPoly& F1 = JetPoly::t(),
                                                const JetPoly& F2 = JetPoly(1));

/// Generic generator in c1..c4 (F1 = t, F2 = 1 for the Hunter-Saxton
/// families). Throws Error(Unsupported) for Hopf.
PointVectorField general_generator(Equation eq);

/// Copies of v with the sign of one term flipped, taken only from terms that
/// share their c-monomial with another term, so each copy changes the
/// relative sign inside one coupled group of coefficients.
std::vector<PointVectorField> sign_flip_mutants(const PointVectorField& v);

}  // namespace geoflow::jet
