#pragma once

#include <functional>

#include "maxsurf/integrate.hpp"

namespace maxsurf {

enum class FamilyKind { ScherkType, RiemannType, DoublyPeriodic };

const char* family_name(FamilyKind k);

struct FamilySpec {
  FamilyKind family = FamilyKind::ScherkType;
  double b = 0.5;              // family 1: b in (0,1); family 2: second parameter
  double a = 0.5;              // family 2: b < a < 1, a > 0, b != 0, |b| < 1
  double a1 = 0.5;             // family 3: nonzero, |a1| < 1
  double a2 = 1.0 / 3.0;       // family 3: nonzero, |a2| < 1, |a2| != |a1|
};

struct BuiltFamily {
  FamilySpec spec;
  WeierstrassData data;
  SurfacePoint base;
  // Closed-form translation vectors where the construction gives one
  // (families 1 and 2; family 2 up to the branch of sqrt(ab)).
  std::vector<LorentzVec> closed_form_translations;
  // Numerically computed primitive lattice generators.
  std::vector<LorentzVec> lattice;
  // Homology loops whose real periods generate the lattice.
  std::vector<PathSpec> lattice_loops;
};

// Populates the Weierstrass data of the requested family and computes its
// translation lattice. Throws ParamOutOfRange outside the stated ranges.
BuiltFamily build_family(const FamilySpec& spec, const Tolerances& tol = {});

// Antiholomorphic or holomorphic self-map of the domain that lifts to an
// isometry of L^3.
struct DomainInvolution {
  std::string name;
  bool defined = true;
  Mat3 expected_linear = Mat3::Identity();
  std::function<SurfacePoint(const SurfacePoint&)> map;
};

// The involutions used by the construction of each family (family 2 only in
// the symmetric sub-case b = -a).
std::vector<DomainInvolution> family_involutions(const FamilySpec& spec);

struct SymmetryLift {
  Isometry lift;
  double max_deviation = 0.0;
};

// Checks immerse(A(p)) = L * immerse(p) + c at sample points, modulo the
// period lattice, and returns the verified isometry. Throws SymmetryFailed
// (carrying the worst deviation) when the identity does not hold within tol.
SymmetryLift verify_symmetry_lift(const WeierstrassData& data, const SurfacePoint& base,
                                  const DomainInvolution& A, const std::vector<LorentzVec>& lattice,
                                  int samples, double tol, const Tolerances& tols = {});

// Reduces a set of (possibly redundant) period vectors to a primitive basis
// of the lattice they generate; vectors below drop_tol are discarded.
std::vector<LorentzVec> reduce_lattice(std::vector<LorentzVec> periods, double drop_tol = 1e-8);

// Deviation of v from the lattice: min over small integer combinations of
// |v - sum n_i gens_i|.
double lattice_distance(const LorentzVec& v, const std::vector<LorentzVec>& gens, int range = 3);

}  // namespace maxsurf
