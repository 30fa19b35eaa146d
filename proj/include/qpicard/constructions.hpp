#pragma once

#include <vector>

#include "qpicard/quaternion.hpp"
#include "qpicard/slice_function.hpp"

namespace qpicard {

/// The function with stem J(x)sin z + K(x)cos z. Its image is H minus C_I.
SliceFunction trig_example();

/// True if f has exactly the coefficients of trig_example().
bool is_trig_example(const SliceFunction& f);

/// A point q with trig_example(q) = c.
///
/// x = atan2(c3, c4) kills Im Q_c and makes c3 sin x + c4 cos x positive,
/// cosh y = (1 + |c|^2) / (2 sqrt(c3^2 + c4^2)) kills Re Q_c, and H comes from
/// the fiber. Throws Error(Unreachable) for c in C_I.
Quaternion trig_preimage(const Quaternion& c);

/// g = transform(trig_example(), aut, lambda, p) together with the data that
/// certifies which values it avoids.
struct AvoidanceReport {
  SliceFunction g;
  /// The prescribed values (for a plane: p0, p0 + u, p0 + v).
  std::vector<Quaternion> avoided;
  Automorphism aut;
  Quaternion lambda;
  Quaternion p;
  /// aut^{-1}((c - p) lambda^{-1}) for each avoided c; each lies in C_I.
  std::vector<Quaternion> transformed_targets;
};

/// aut^{-1}((c - p) lambda^{-1}): g attains c iff trig_example attains this.
Quaternion pull_back_target(const AvoidanceReport& report, const Quaternion& c);

/// Largest |J| or |K| component among the transformed targets.
double max_off_slice(const AvoidanceReport& report);

/// q with g(q) = c via g(aut(q')) = aut(f(q')) lambda + p. Throws
/// Error(Unreachable) when c lies in the avoided plane.
Quaternion transformed_preimage(const AvoidanceReport& report, const Quaternion& c);

/// Non-constant entire g avoiding c1, c2, c3. Throws Error(DuplicatePoints)
/// if two of them coincide.
AvoidanceReport avoid_three(const Quaternion& c1, const Quaternion& c2, const Quaternion& c3);

/// Entire g whose image is H minus the plane p0 + span_R{u, v}. Throws
/// Error(DegeneratePlane) if u, v are linearly dependent.
AvoidanceReport plane_avoider(const Quaternion& p0, const Quaternion& u, const Quaternion& v);

/// The plane p0 + span_R{u, v}.
struct AffinePlane {
  Quaternion p0;
  Quaternion u;
  Quaternion v;

  /// Euclidean distance from q to the plane. Throws Error(DegeneratePlane)
  /// if u, v are dependent.
  double distance(const Quaternion& q) const;
};

}  // namespace qpicard
