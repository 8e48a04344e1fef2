#ifndef ARSURJ_KATO_FAN_HPP
#define ARSURJ_KATO_FAN_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "arsurj/rational.hpp"

namespace arsurj {

/// A smooth monoidal fan embedded in a fixed lattice Z^dim: primitive ray
/// vectors plus a list of cones as sets of ray indices. Faces are implicit
/// (every subset of a listed cone is a cone); the empty set is the vertex.
/// Smoothness means every cone's rays extend to a basis of the lattice.
struct SmoothKatoFan {
  int dim = 0;
  std::vector<std::vector<long long>> rays;
  std::vector<std::vector<int>> cones;  // each sorted ascending
};

/// An N-point of a fan: nonnegative integer coordinates on the rays of its
/// minimal support cone. Normalized: every stored coordinate is >= 1 and the
/// zero point lives on the vertex (empty cone).
struct FanPoint {
  std::vector<int> cone;           // sorted ray indices
  std::vector<long long> coords;   // parallel to cone

  friend bool operator==(const FanPoint&, const FanPoint&) = default;
  friend auto operator<=>(const FanPoint&, const FanPoint&) = default;
};

/// Sum of the point's coordinates (the image of the sum of the canonical
/// generators under the dual map).
long long height(const FanPoint& p);

/// The point's vector in the ambient lattice.
std::vector<long long> point_vector(const SmoothKatoFan& fan, const FanPoint& p);

/// True when the point is supported on at most one ray.
bool single_ray_support(const FanPoint& p);

struct FanValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Checks primitivity and distinctness of rays, unimodularity of every cone,
/// and that distinct cones have disjoint relative interiors (equivalently,
/// any two cones meet in a common face).
FanValidationReport validate_smooth_fan(const SmoothKatoFan& fan);

/// Every cone of the fan (all subsets of listed cones, vertex included),
/// deduplicated, ordered by (size, lexicographic content).
std::vector<std::vector<int>> all_cones(const SmoothKatoFan& fan);

/// All normalized points of height <= max_height in canonical order.
std::vector<FanPoint> enumerate_points(const SmoothKatoFan& fan, long long max_height);

/// A fan morphism in matrix form: each listed source cone is assigned a
/// listed target cone and a nonnegative integer matrix with rows indexed by
/// the target cone's rays and columns by the source cone's rays. A source
/// point with coordinates a maps to target coordinates r_i = sum_j m_ij a_j.
struct FanMorphism {
  SmoothKatoFan source;
  SmoothKatoFan target;
  std::vector<int> cone_map;  // listed source cone -> listed target cone index
  std::vector<std::vector<std::vector<long long>>> matrices;
};

FanMorphism identity_morphism(const SmoothKatoFan& fan);

/// Structural validation: shapes, nonnegativity, and agreement of the ray
/// images across cones sharing a face. Throws Error on violation.
void validate_morphism(const FanMorphism& m);

/// Image of a point, normalized to its minimal support cone.
FanPoint apply_morphism(const FanMorphism& m, const FanPoint& p);

/// A subdivision: refined fan over the same lattice support, with the
/// structural morphism expressing refined points in base coordinates. The
/// induced map on N-points is bijective.
struct Subdivision {
  SmoothKatoFan refined;
  SmoothKatoFan base;
  FanMorphism structural;  // refined -> base
};

/// Inserts the barycenter ray of the given cone (dimension >= 2) and
/// replaces every cone containing it by the standard star pattern.
Subdivision star_subdivision(const SmoothKatoFan& fan, const std::vector<int>& cone);

/// Star subdivision of each cone along its barycenter, in decreasing order
/// of dimension.
Subdivision barycentric_subdivision(const SmoothKatoFan& fan);

/// Composite of (m-1) barycentric subdivisions; the identity when m = 1.
Subdivision iterated_barycentric(const SmoothKatoFan& fan, int m);

/// The unique refined point pushing forward to the given base point.
FanPoint pullback_point(const Subdivision& s, const FanPoint& base_point);

struct HeightBoundEntry {
  bool is_source = false;         // false: an m_t row; true: an m_{s,t} row
  std::vector<int> cone;          // the stratum's cone
  std::vector<int> target_cone;   // for source rows, the image stratum
  long long value = 0;
  bool complete = true;           // m_t rows: witness found or vertex; m_{s,t}: always
  std::optional<FanPoint> witness;  // a least-height non-image point, when found
};

struct HeightBoundResult {
  long long m = 0;
  std::vector<HeightBoundEntry> table;
  bool complete = true;  // false when some m_t = 0 is only "verified up to cap"
  long long search_cap = 0;
};

/// The height bound of the surjectivity criterion: per target cone t, m_t is
/// the least height of a full-support point of t not in the image of the
/// point map (searched up to the cap; 0 with complete = false if none found);
/// per source cone s, m_{s,t} is the least height of the image of a
/// full-support point of s, attained at the all-ones tuple. m is the maximum.
HeightBoundResult height_bound_m(const FanMorphism& phi, long long search_cap);

/// Exact membership of a normalized target point in the image of the point
/// map, decided by solving the cone systems over nonnegative integers.
bool in_point_image(const FanMorphism& phi, const FanPoint& target_point);

} // namespace arsurj

#endif
