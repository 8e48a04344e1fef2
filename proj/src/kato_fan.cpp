#include "arsurj/kato_fan.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "arsurj/error.hpp"

namespace arsurj {

namespace {

using Vec = std::vector<long long>;

// ---- exact linear algebra on small matrices ----

// Determinant of a square integer matrix, Bareiss fraction-free scheme.
__int128 bareiss_det(std::vector<Vec> m) {
  std::size_t n = m.size();
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return n == 0 ? 1 : sign * a[n - 1][n - 1];
}

// gcd of all k x k minors of the dim x k column matrix formed by the cone's
// ray vectors; equals 1 exactly when they extend to a lattice basis.
long long minor_gcd(const SmoothKatoFan& fan, const std::vector<int>& cone) {
  std::size_t k = cone.size();
  if (k == 0) return 1;
  if (k > static_cast<std::size_t>(fan.dim)) return 0;
  std::vector<int> rows(k);
  std::iota(rows.begin(), rows.end(), 0);
  long long g = 0;
  while (true) {
    std::vector<Vec> sub(k, Vec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = fan.rays[cone[j]][rows[i]];
    __int128 det = bareiss_det(std::move(sub));
    long long d = static_cast<long long>(det < 0 ? -det : det);
    g = std::gcd(g, d);
    if (g == 1) return 1;
    // next row combination
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && rows[i] == fan.dim - static_cast<int>(k) + i) --i;
    if (i < 0) break;
    ++rows[i];
    for (std::size_t j = i + 1; j < k; ++j) rows[j] = rows[j - 1] + 1;
  }
  return g;
}

// Unique solution of sum_j x_j * ray[cone[j]] = w when w lies in the cone as
// a nonnegative integer combination; nullopt otherwise.
std::optional<Vec> coords_in_cone(const SmoothKatoFan& fan, const std::vector<int>& cone,
                                  const Vec& w) {
  std::size_t k = cone.size();
  if (k == 0) {
    for (long long v : w)
      if (v != 0) return std::nullopt;
    return Vec{};
  }
  std::size_t d = static_cast<std::size_t>(fan.dim);
  std::vector<std::vector<Rational>> aug(d, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t j = 0; j < k; ++j) aug[r][j] = Rational(fan.rays[cone[j]][r]);
    aug[r][k] = Rational(w[r]);
  }
  std::vector<std::size_t> pivot_row(k, SIZE_MAX);
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < d; ++col) {
    std::size_t pr = row;
    while (pr < d && aug[pr][col].is_zero()) ++pr;
    if (pr == d) continue;
    std::swap(aug[row], aug[pr]);
    Rational inv = Rational(1) / aug[row][col];
    for (auto& v : aug[row]) v *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == row || aug[r][col].is_zero()) continue;
      Rational f = aug[r][col];
      for (std::size_t c = col; c <= k; ++c) aug[r][c] -= f * aug[row][c];
    }
    pivot_row[col] = row;
    ++row;
  }
  for (std::size_t col = 0; col < k; ++col)
    if (pivot_row[col] == SIZE_MAX)
      throw Error("fan: cone rays are linearly dependent");
  for (std::size_t r = row; r < d; ++r)
    if (!aug[r][k].is_zero()) return std::nullopt;  // w outside the span
  Vec coords(k);
  for (std::size_t col = 0; col < k; ++col) {
    const Rational& v = aug[pivot_row[col]][k];
    if (v.den() != 1 || v.num() < 0) return std::nullopt;
    coords[col] = v.num();
  }
  return coords;
}

// ---- Fourier-Motzkin feasibility for relative-interior intersection ----

struct IneqRow {
  std::vector<Rational> coeff;  // sum coeff_i * x_i >= rhs
  Rational rhs;
};

// Feasibility of { E x = 0, x_i >= 1 } over the rationals.
bool positive_kernel_nonempty(std::vector<std::vector<Rational>> eq, std::size_t nvars) {
  // row-reduce the equality system
  std::size_t rows = eq.size(), row = 0;
  std::vector<std::size_t> pivot_of_col(nvars, SIZE_MAX);
  for (std::size_t col = 0; col < nvars && row < rows; ++col) {
    std::size_t pr = row;
    while (pr < rows && eq[pr][col].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(eq[row], eq[pr]);
    Rational inv = Rational(1) / eq[row][col];
    for (auto& v : eq[row]) v *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || eq[r][col].is_zero()) continue;
      Rational f = eq[r][col];
      for (std::size_t c = 0; c < nvars; ++c) eq[r][c] -= f * eq[row][c];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t col = 0; col < nvars; ++col)
    if (pivot_of_col[col] == SIZE_MAX) free_cols.push_back(col);

  // express x_v >= 1 in the free variables
  std::vector<IneqRow> sys;
  for (std::size_t v = 0; v < nvars; ++v) {
    IneqRow r{std::vector<Rational>(free_cols.size()), Rational(1)};
    if (pivot_of_col[v] == SIZE_MAX) {
      for (std::size_t f = 0; f < free_cols.size(); ++f)
        if (free_cols[f] == v) r.coeff[f] = Rational(1);
    } else {
      // pivot var: x_v = -sum over free cols of eq[pivot][f] * x_f
      std::size_t pr = pivot_of_col[v];
      for (std::size_t f = 0; f < free_cols.size(); ++f)
        r.coeff[f] = -eq[pr][free_cols[f]];
    }
    sys.push_back(std::move(r));
  }

  // eliminate free variables one by one
  for (std::size_t var = free_cols.size(); var-- > 0;) {
    std::vector<IneqRow> pos, neg, rest;
    for (auto& r : sys) {
      if (r.coeff[var] > Rational(0)) pos.push_back(std::move(r));
      else if (r.coeff[var] < Rational(0)) neg.push_back(std::move(r));
      else rest.push_back(std::move(r));
    }
    std::vector<IneqRow> next = std::move(rest);
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        // p: c_p*x + ... >= b_p (c_p > 0), n: c_n*x + ... >= b_n (c_n < 0)
        IneqRow combined{std::vector<Rational>(var), Rational(0)};
        Rational cp = p.coeff[var], cn = -n.coeff[var];
        for (std::size_t c = 0; c < var; ++c)
          combined.coeff[c] = p.coeff[c] * cn + n.coeff[c] * cp;
        combined.rhs = p.rhs * cn + n.rhs * cp;
        next.push_back(std::move(combined));
      }
    }
    for (auto& r : next) r.coeff.resize(var);
    sys = std::move(next);
  }
  for (const auto& r : sys)
    if (r.rhs > Rational(0)) return false;  // 0 >= positive constant
  return true;
}

bool relint_intersect(const SmoothKatoFan& fan, const std::vector<int>& a,
                      const std::vector<int>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  std::size_t n = a.size() + b.size();
  std::vector<std::vector<Rational>> eq(static_cast<std::size_t>(fan.dim),
                                        std::vector<Rational>(n));
  for (std::size_t r = 0; r < static_cast<std::size_t>(fan.dim); ++r) {
    for (std::size_t j = 0; j < a.size(); ++j) eq[r][j] = Rational(fan.rays[a[j]][r]);
    for (std::size_t j = 0; j < b.size(); ++j)
      eq[r][a.size() + j] = Rational(-fan.rays[b[j]][r]);
  }
  return positive_kernel_nonempty(std::move(eq), n);
}

std::string cone_string(const std::vector<int>& cone) {
  std::string s = "{";
  for (std::size_t i = 0; i < cone.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(cone[i]);
  }
  return s + "}";
}

void compositions(int parts, long long total,
                  const std::function<void(const Vec&)>& emit) {
  Vec cur(parts);
  auto rec = [&](auto&& self, int idx, long long rest) -> void {
    if (idx == parts - 1) {
      cur[idx] = rest;
      emit(cur);
      return;
    }
    for (long long v = 1; v <= rest - (parts - 1 - idx); ++v) {
      cur[idx] = v;
      self(self, idx + 1, rest - v);
    }
  };
  if (parts == 0) {
    if (total == 0) emit(cur);
    return;
  }
  if (total >= parts) rec(rec, 0, total);
}

} // namespace

long long height(const FanPoint& p) {
  long long h = 0;
  for (long long c : p.coords) h += c;
  return h;
}

std::vector<long long> point_vector(const SmoothKatoFan& fan, const FanPoint& p) {
  Vec w(static_cast<std::size_t>(fan.dim), 0);
  for (std::size_t j = 0; j < p.cone.size(); ++j)
    for (std::size_t r = 0; r < w.size(); ++r)
      w[r] += p.coords[j] * fan.rays[p.cone[j]][r];
  return w;
}

bool single_ray_support(const FanPoint& p) { return p.cone.size() <= 1; }

std::vector<std::vector<int>> all_cones(const SmoothKatoFan& fan) {
  std::set<std::vector<int>> out;
  out.insert({});
  for (const auto& cone : fan.cones) {
    std::size_t k = cone.size();
    for (std::size_t mask = 1; mask < (1ull << k); ++mask) {
      std::vector<int> sub;
      for (std::size_t j = 0; j < k; ++j)
        if (mask & (1ull << j)) sub.push_back(cone[j]);
      out.insert(std::move(sub));
    }
  }
  std::vector<std::vector<int>> cones(out.begin(), out.end());
  std::stable_sort(cones.begin(), cones.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  return cones;
}

FanValidationReport validate_smooth_fan(const SmoothKatoFan& fan) {
  FanValidationReport report;
  auto flag = [&](std::string msg) {
    report.valid = false;
    report.violations.push_back(std::move(msg));
  };
  if (fan.dim < 0) flag("negative ambient dimension");
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& ray = fan.rays[i];
    if (ray.size() != static_cast<std::size_t>(fan.dim)) {
      flag("ray " + std::to_string(i) + " has the wrong length");
      continue;
    }
    long long g = 0;
    for (long long v : ray) g = std::gcd(g, v < 0 ? -v : v);
    if (g == 0) flag("ray " + std::to_string(i) + " is zero");
    else if (g != 1) flag("ray " + std::to_string(i) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j)
      if (fan.rays[j] == ray)
        flag("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  if (!report.valid) return report;

  for (const auto& cone : fan.cones) {
    if (!std::is_sorted(cone.begin(), cone.end()) ||
        std::adjacent_find(cone.begin(), cone.end()) != cone.end()) {
      flag("cone " + cone_string(cone) + " is not a sorted set of ray indices");
      continue;
    }
    if (!cone.empty() && (cone.front() < 0 ||
                          cone.back() >= static_cast<int>(fan.rays.size()))) {
      flag("cone " + cone_string(cone) + " references a missing ray");
      continue;
    }
    long long g = minor_gcd(fan, cone);
    if (g != 1)
      flag("cone " + cone_string(cone) + " is not unimodular (minor gcd " +
           std::to_string(g) + ")");
  }
  if (!report.valid) return report;

  auto cones = all_cones(fan);
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = i + 1; j < cones.size(); ++j)
      if (relint_intersect(fan, cones[i], cones[j]))
        flag("cones " + cone_string(cones[i]) + " and " + cone_string(cones[j]) +
             " overlap beyond a common face");
  return report;
}

std::vector<FanPoint> enumerate_points(const SmoothKatoFan& fan, long long max_height) {
  if (max_height < 0) throw Error("fan points: negative height bound");
  std::vector<FanPoint> points;
  for (const auto& cone : all_cones(fan)) {
    if (cone.empty()) {
      points.push_back(FanPoint{{}, {}});
      continue;
    }
    for (long long h = static_cast<long long>(cone.size()); h <= max_height; ++h)
      compositions(static_cast<int>(cone.size()), h,
                   [&](const Vec& coords) { points.push_back(FanPoint{cone, coords}); });
  }
  std::sort(points.begin(), points.end(), [](const FanPoint& a, const FanPoint& b) {
    long long ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return std::tie(a.cone, a.coords) < std::tie(b.cone, b.coords);
  });
  return points;
}

FanMorphism identity_morphism(const SmoothKatoFan& fan) {
  FanMorphism m{fan, fan, {}, {}};
  for (std::size_t i = 0; i < fan.cones.size(); ++i) {
    std::size_t k = fan.cones[i].size();
    std::vector<Vec> mat(k, Vec(k, 0));
    for (std::size_t j = 0; j < k; ++j) mat[j][j] = 1;
    m.cone_map.push_back(static_cast<int>(i));
    m.matrices.push_back(std::move(mat));
  }
  return m;
}

namespace {

// Ambient image vector of one source ray under the matrix of a listed cone.
Vec ray_image(const FanMorphism& m, std::size_t cone_idx, std::size_t col) {
  const auto& target_cone = m.target.cones[m.cone_map[cone_idx]];
  const auto& mat = m.matrices[cone_idx];
  Vec w(static_cast<std::size_t>(m.target.dim), 0);
  for (std::size_t i = 0; i < target_cone.size(); ++i)
    for (std::size_t r = 0; r < w.size(); ++r)
      w[r] += mat[i][col] * m.target.rays[target_cone[i]][r];
  return w;
}

} // namespace

void validate_morphism(const FanMorphism& m) {
  if (m.cone_map.size() != m.source.cones.size() ||
      m.matrices.size() != m.source.cones.size())
    throw Error("morphism: need one target cone and one matrix per source cone");
  for (std::size_t c = 0; c < m.source.cones.size(); ++c) {
    int t = m.cone_map[c];
    if (t < 0 || t >= static_cast<int>(m.target.cones.size()))
      throw Error("morphism: cone map entry out of range");
    const auto& mat = m.matrices[c];
    std::size_t rows = m.target.cones[t].size();
    std::size_t cols = m.source.cones[c].size();
    if (mat.size() != rows)
      throw Error("morphism: matrix for cone " + cone_string(m.source.cones[c]) +
                  " has the wrong number of rows");
    for (const auto& row : mat) {
      if (row.size() != cols)
        throw Error("morphism: matrix for cone " + cone_string(m.source.cones[c]) +
                    " has the wrong number of columns");
      for (long long v : row)
        if (v < 0) throw Error("morphism: negative matrix entry");
    }
  }
  // a ray shared by several cones must have one well-defined image
  std::map<int, Vec> seen;
  for (std::size_t c = 0; c < m.source.cones.size(); ++c) {
    for (std::size_t j = 0; j < m.source.cones[c].size(); ++j) {
      int ray = m.source.cones[c][j];
      Vec w = ray_image(m, c, j);
      auto [it, fresh] = seen.emplace(ray, w);
      if (!fresh && it->second != w)
        throw Error("morphism: ray " + std::to_string(ray) +
                    " has inconsistent images across cones");
    }
  }
}

FanPoint apply_morphism(const FanMorphism& m, const FanPoint& p) {
  if (p.cone.empty()) return FanPoint{{}, {}};
  std::size_t cone_idx = SIZE_MAX;
  for (std::size_t c = 0; c < m.source.cones.size(); ++c) {
    if (std::includes(m.source.cones[c].begin(), m.source.cones[c].end(),
                      p.cone.begin(), p.cone.end())) {
      cone_idx = c;
      break;
    }
  }
  if (cone_idx == SIZE_MAX)
    throw Error("morphism: point cone " + cone_string(p.cone) + " is not on the source fan");
  const auto& source_cone = m.source.cones[cone_idx];
  const auto& target_cone = m.target.cones[m.cone_map[cone_idx]];
  const auto& mat = m.matrices[cone_idx];
  Vec a(source_cone.size(), 0);
  for (std::size_t j = 0; j < p.cone.size(); ++j) {
    auto it = std::lower_bound(source_cone.begin(), source_cone.end(), p.cone[j]);
    a[static_cast<std::size_t>(it - source_cone.begin())] = p.coords[j];
  }
  FanPoint out;
  for (std::size_t i = 0; i < target_cone.size(); ++i) {
    long long v = 0;
    for (std::size_t j = 0; j < a.size(); ++j) v += mat[i][j] * a[j];
    if (v > 0) {
      out.cone.push_back(target_cone[i]);
      out.coords.push_back(v);
    }
  }
  return out;
}

namespace {

FanMorphism make_structural(const SmoothKatoFan& refined, const SmoothKatoFan& base) {
  // assign each refined cone the smallest listed base cone containing it
  std::vector<std::size_t> order(base.cones.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return base.cones[x].size() < base.cones[y].size();
  });
  FanMorphism m{refined, base, {}, {}};
  for (const auto& cone : refined.cones) {
    bool assigned = false;
    for (std::size_t bi : order) {
      const auto& bc = base.cones[bi];
      std::vector<Vec> cols;
      cols.reserve(cone.size());
      bool ok = true;
      for (int ray : cone) {
        auto coords = coords_in_cone(base, bc, refined.rays[ray]);
        if (!coords) { ok = false; break; }
        cols.push_back(std::move(*coords));
      }
      if (!ok) continue;
      std::vector<Vec> mat(bc.size(), Vec(cone.size(), 0));
      for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < bc.size(); ++i) mat[i][j] = cols[j][i];
      m.cone_map.push_back(static_cast<int>(bi));
      m.matrices.push_back(std::move(mat));
      assigned = true;
      break;
    }
    if (!assigned)
      throw Error("subdivision: refined cone " + cone_string(cone) +
                  " is not contained in any base cone");
  }
  return m;
}

} // namespace

Subdivision star_subdivision(const SmoothKatoFan& fan, const std::vector<int>& cone_in) {
  std::vector<int> cone = cone_in;
  std::sort(cone.begin(), cone.end());
  if (cone.size() < 2)
    throw Error("star subdivision: requires a cone of dimension at least 2");
  bool is_cone = std::any_of(fan.cones.begin(), fan.cones.end(), [&](const auto& c) {
    return std::includes(c.begin(), c.end(), cone.begin(), cone.end());
  });
  if (!is_cone)
    throw Error("star subdivision: " + cone_string(cone) + " is not a cone of the fan");

  SmoothKatoFan refined;
  refined.dim = fan.dim;
  refined.rays = fan.rays;
  Vec barycenter(static_cast<std::size_t>(fan.dim), 0);
  for (int r : cone)
    for (std::size_t i = 0; i < barycenter.size(); ++i) barycenter[i] += fan.rays[r][i];
  int new_ray = static_cast<int>(refined.rays.size());
  refined.rays.push_back(std::move(barycenter));

  std::set<std::vector<int>> cones;
  for (const auto& sigma : fan.cones) {
    if (!std::includes(sigma.begin(), sigma.end(), cone.begin(), cone.end())) {
      cones.insert(sigma);
      continue;
    }
    for (int drop : cone) {
      std::vector<int> piece;
      for (int r : sigma)
        if (r != drop) piece.push_back(r);
      piece.push_back(new_ray);
      std::sort(piece.begin(), piece.end());
      cones.insert(std::move(piece));
    }
  }
  refined.cones.assign(cones.begin(), cones.end());
  return Subdivision{refined, fan, make_structural(refined, fan)};
}

Subdivision barycentric_subdivision(const SmoothKatoFan& fan) {
  // star-subdivide every cone of the original fan, largest dimension first
  std::vector<std::vector<int>> to_star;
  for (const auto& cone : all_cones(fan))
    if (cone.size() >= 2) to_star.push_back(cone);
  std::stable_sort(to_star.begin(), to_star.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  SmoothKatoFan current = fan;
  for (const auto& cone : to_star) current = star_subdivision(current, cone).refined;
  if (to_star.empty())
    return Subdivision{fan, fan, identity_morphism(fan)};
  return Subdivision{current, fan, make_structural(current, fan)};
}

Subdivision iterated_barycentric(const SmoothKatoFan& fan, int m) {
  if (m < 1) throw Error("iterated barycentric: m must be positive");
  SmoothKatoFan current = fan;
  for (int i = 1; i < m; ++i) current = barycentric_subdivision(current).refined;
  if (m == 1) return Subdivision{fan, fan, identity_morphism(fan)};
  return Subdivision{current, fan, make_structural(current, fan)};
}

FanPoint pullback_point(const Subdivision& s, const FanPoint& base_point) {
  Vec w = point_vector(s.base, base_point);
  if (std::all_of(w.begin(), w.end(), [](long long v) { return v == 0; }))
    return FanPoint{{}, {}};
  for (const auto& cone : s.refined.cones) {
    auto coords = coords_in_cone(s.refined, cone, w);
    if (!coords) continue;
    FanPoint out;
    for (std::size_t j = 0; j < cone.size(); ++j) {
      if ((*coords)[j] > 0) {
        out.cone.push_back(cone[j]);
        out.coords.push_back((*coords)[j]);
      }
    }
    return out;
  }
  throw Error("subdivision: point has no preimage on the refined fan");
}

namespace {

// Does M a = c admit a nonnegative integer solution? Columns whose entries
// are all zero never change the residual and are left at zero.
bool solve_nonneg(const std::vector<Vec>& mat, const Vec& c) {
  std::size_t rows = c.size(), cols = mat.empty() ? 0 : mat[0].size();
  if (mat.empty())
    return std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; });
  Vec residual = c;
  auto rec = [&](auto&& self, std::size_t col) -> bool {
    if (col == cols)
      return std::all_of(residual.begin(), residual.end(),
                         [](long long v) { return v == 0; });
    long long bound = -1;  // -1: unbounded (zero column)
    for (std::size_t i = 0; i < rows; ++i) {
      if (mat[i][col] > 0) {
        long long b = residual[i] / mat[i][col];
        bound = bound < 0 ? b : std::min(bound, b);
      }
    }
    if (bound < 0) return self(self, col + 1);  // zero column, keep a_col = 0
    for (long long v = 0; v <= bound; ++v) {
      if (v > 0)
        for (std::size_t i = 0; i < rows; ++i) residual[i] -= mat[i][col];
      if (self(self, col + 1)) {
        for (std::size_t i = 0; i < rows; ++i) residual[i] += v * mat[i][col];
        return true;
      }
    }
    for (std::size_t i = 0; i < rows; ++i) residual[i] += bound * mat[i][col];
    return false;
  };
  return rec(rec, 0);
}

} // namespace

bool in_point_image(const FanMorphism& phi, const FanPoint& target_point) {
  if (target_point.cone.empty()) return true;  // the source vertex maps to zero
  Vec w = point_vector(phi.target, target_point);
  for (std::size_t c = 0; c < phi.source.cones.size(); ++c) {
    const auto& target_cone = phi.target.cones[phi.cone_map[c]];
    auto coords = coords_in_cone(phi.target, target_cone, w);
    if (!coords) continue;
    if (solve_nonneg(phi.matrices[c], *coords)) return true;
  }
  return false;
}

HeightBoundResult height_bound_m(const FanMorphism& phi, long long search_cap) {
  if (search_cap < 1) throw Error("height bound: search cap must be positive");
  validate_morphism(phi);
  HeightBoundResult result;
  result.search_cap = search_cap;

  for (const auto& t : all_cones(phi.target)) {
    HeightBoundEntry entry;
    entry.cone = t;
    if (t.empty()) {
      result.table.push_back(std::move(entry));
      continue;
    }
    bool found = false;
    for (long long h = static_cast<long long>(t.size()); h <= search_cap && !found; ++h) {
      compositions(static_cast<int>(t.size()), h, [&](const Vec& coords) {
        if (found) return;
        FanPoint r{t, coords};
        if (!in_point_image(phi, r)) {
          entry.value = h;
          entry.witness = std::move(r);
          found = true;
        }
      });
    }
    entry.complete = found;
    if (!found) entry.value = 0;
    result.table.push_back(std::move(entry));
  }

  for (const auto& s : all_cones(phi.source)) {
    HeightBoundEntry entry;
    entry.is_source = true;
    entry.cone = s;
    if (s.empty()) {
      result.table.push_back(std::move(entry));
      continue;
    }
    std::size_t cone_idx = SIZE_MAX;
    for (std::size_t c = 0; c < phi.source.cones.size(); ++c)
      if (std::includes(phi.source.cones[c].begin(), phi.source.cones[c].end(),
                        s.begin(), s.end())) {
        cone_idx = c;
        break;
      }
    const auto& sigma = phi.source.cones[cone_idx];
    const auto& tau = phi.target.cones[phi.cone_map[cone_idx]];
    const auto& mat = phi.matrices[cone_idx];
    std::vector<std::size_t> col_of;
    for (int ray : s) {
      auto it = std::lower_bound(sigma.begin(), sigma.end(), ray);
      col_of.push_back(static_cast<std::size_t>(it - sigma.begin()));
    }
    long long total = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
      long long row_sum = 0;
      for (std::size_t j : col_of) row_sum += mat[i][j];
      if (row_sum > 0) entry.target_cone.push_back(tau[i]);
      total += row_sum;
    }
    entry.value = total;
    result.table.push_back(std::move(entry));
  }

  for (const auto& entry : result.table) {
    result.m = std::max(result.m, entry.value);
    if (!entry.complete) result.complete = false;
  }
  return result;
}

} // namespace arsurj
