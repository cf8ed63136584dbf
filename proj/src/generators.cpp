#include "systl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

namespace systl {
namespace {

constexpr double kPi = std::numbers::pi;

// Target edge length of the base grids; one midpoint refinement round halves
// it. Hole/tube cell counts derive from it so every family shares a texture.
constexpr double kGridStep = 0.18;

// Revolution-patch constants: domain radius of the removed disk, vertical gap
// bridged by the collar, ring counts, and boundary samples (8 * kRingQ).
constexpr double kHoleRho = 0.35;
constexpr double kCollarGap = 0.25;
constexpr int kCollarRings = 4;
constexpr int kTorusRings = 6;
constexpr int kRingQ = 3;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Sorted grid covering the anchor range, containing every anchor exactly and
// splitting each anchor span into near-`h` uniform steps.
std::vector<double> fill_axis(std::vector<double> anchors, double h) {
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  std::vector<double> out{anchors.front()};
  for (size_t s = 0; s + 1 < anchors.size(); ++s) {
    const double u = anchors[s], v = anchors[s + 1];
    const int k = std::max(1, static_cast<int>(std::ceil((v - u) / h - 1e-12)));
    for (int t = 1; t < k; ++t) out.push_back(u + (v - u) * t / k);
    out.push_back(v);
  }
  return out;
}

int index_of(const std::vector<double>& axis, double value) {
  const auto it = std::lower_bound(axis.begin(), axis.end(), value);
  if (it == axis.end() || *it != value)
    throw ConstructionError("internal: grid anchor lost during axis fill");
  return static_cast<int>(it - axis.begin());
}

// Takes [-1,1]^2 onto the unit disk, carrying the square boundary onto the
// unit circle (renormalized there so boundary vertices are exact).
void square_to_disk(double x, double y, bool boundary, double out[2]) {
  double u = x * std::sqrt(1.0 - 0.5 * y * y);
  double v = y * std::sqrt(1.0 - 0.5 * x * x);
  if (boundary) {
    const double n = std::hypot(u, v);
    u /= n;
    v /= n;
  }
  out[0] = u;
  out[1] = v;
}

struct Hole {
  double cx = 0.0, cy = 0.0;                   // center in the square domain
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // anchored span values
  int a0 = 0, a1 = 0, b0 = 0, b1 = 0;          // grid index ranges
};

// Unit disk with side-`eps` square holes at the bridge endpoints and one
// square tube of girth 4*eps arching in +x3 along each bridge. `bridges`
// lists axis-aligned center pairs {x0, y0, x1, y1}; empty gives the plain
// disk. The caller refines and stamps provenance.
EmbeddedMesh build_disk_family(double eps,
                               const std::vector<std::array<double, 4>>& bridges,
                               std::string comment) {
  std::vector<Hole> holes;
  for (const auto& b : bridges)
    for (int end = 0; end < 2; ++end) {
      Hole h;
      h.cx = b[2 * end];
      h.cy = b[2 * end + 1];
      h.x0 = h.cx - 0.5 * eps;
      h.x1 = h.cx + 0.5 * eps;
      h.y0 = h.cy - 0.5 * eps;
      h.y1 = h.cy + 0.5 * eps;
      holes.push_back(h);
    }

  std::vector<double> ax{-1.0, 1.0}, ay{-1.0, 1.0};
  for (const auto& h : holes) {
    ax.insert(ax.end(), {h.x0, h.x1});
    ay.insert(ay.end(), {h.y0, h.y1});
  }
  const std::vector<double> xs = fill_axis(std::move(ax), kGridStep);
  const std::vector<double> ys = fill_axis(std::move(ay), kGridStep);
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  for (auto& h : holes) {
    h.a0 = index_of(xs, h.x0);
    h.a1 = index_of(xs, h.x1);
    h.b0 = index_of(ys, h.y0);
    h.b1 = index_of(ys, h.y1);
    if (h.a1 - h.a0 != h.b1 - h.b0)
      throw ConstructionError("internal: hole block is not square");
  }

  auto in_hole_interior = [&](int i, int j) {
    for (const auto& h : holes)
      if (i > h.a0 && i < h.a1 && j > h.b0 && j < h.b1) return true;
    return false;
  };
  auto in_hole_cell = [&](int i, int j) {  // cell with lower corner (i, j)
    for (const auto& h : holes)
      if (i >= h.a0 && i < h.a1 && j >= h.b0 && j < h.b1) return true;
    return false;
  };

  std::vector<std::vector<int>> vid(ny, std::vector<int>(nx, -1));
  std::vector<double> coords;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (in_hole_interior(i, j)) continue;
      double p[2];
      square_to_disk(xs[i], ys[j],
                     i == 0 || i == nx - 1 || j == 0 || j == ny - 1, p);
      vid[j][i] = static_cast<int>(coords.size()) / 3;
      coords.insert(coords.end(), {p[0], p[1], 0.0});
    }

  std::vector<std::array<int, 3>> faces;
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      if (in_hole_cell(i, j)) continue;
      const int v00 = vid[j][i], v10 = vid[j][i + 1];
      const int v11 = vid[j + 1][i + 1], v01 = vid[j + 1][i];
      if ((i + j) % 2 == 0) {
        faces.push_back({v00, v10, v11});
        faces.push_back({v00, v11, v01});
      } else {
        faces.push_back({v00, v10, v01});
        faces.push_back({v10, v11, v01});
      }
    }

  // Hole rim in ccw order from the min corner, with centered block offsets
  // (ci, cj) in [-k, k] marking the position on the square perimeter.
  struct RingVertex {
    int id;
    int ci, cj;
  };
  auto hole_ring = [&](const Hole& h) {
    std::vector<RingVertex> ring;
    const int k = h.a1 - h.a0;
    for (int t = 0; t < k; ++t)
      ring.push_back({vid[h.b0][h.a0 + t], 2 * t - k, -k});
    for (int t = 0; t < k; ++t)
      ring.push_back({vid[h.b0 + t][h.a1], k, 2 * t - k});
    for (int t = 0; t < k; ++t)
      ring.push_back({vid[h.b1][h.a1 - t], k - 2 * t, k});
    for (int t = 0; t < k; ++t)
      ring.push_back({vid[h.b1 - t][h.a0], -k, k - 2 * t});
    return ring;
  };

  // Tube per bridge: rings 0 and T are the hole rims; interior rings are
  // exact side-eps squares centered on the arch, so the girth away from the
  // welds is exactly 4*eps. A longitude keeps its cross-section offset, which
  // lands it on the far rim at the mirrored perimeter position.
  const double lift = std::max(0.12, 0.55 * eps);
  for (size_t bi = 0; bi < bridges.size(); ++bi) {
    const Hole& A = holes[2 * bi];
    const Hole& B = holes[2 * bi + 1];
    const double dx = B.cx - A.cx, dy = B.cy - A.cy;
    const double span = std::hypot(dx, dy), half = 0.5 * span;
    const double ux = dx / span, uy = dy / span;
    const int iux = static_cast<int>(std::lround(ux));
    const int iuy = static_cast<int>(std::lround(uy));
    const int ihx = -iuy, ihy = iux;  // in-plane normal to the bridge
    const double mx = 0.5 * (A.cx + B.cx), my = 0.5 * (A.cy + B.cy);

    const auto ring_a = hole_ring(A), ring_b = hole_ring(B);
    const int k = A.a1 - A.a0;
    const int nring = 4 * k;
    const double scale = eps / (2.0 * k);
    auto frame = [&](const RingVertex& rv) {
      return std::pair<int, int>(rv.ci * iux + rv.cj * iuy,
                                 rv.ci * ihx + rv.cj * ihy);
    };
    std::map<std::pair<int, int>, int> far_rim;
    for (const auto& rv : ring_b) far_rim[frame(rv)] = rv.id;

    // Arch C(s) = M - u*half*cos(pi s) + z*lift*sin(pi s); its length sets
    // the segment count so tube cells keep the target edge length.
    double arc = 0.0;
    for (int t = 0; t < 256; ++t) {
      const double s = (t + 0.5) / 256.0;
      arc += kPi *
             std::hypot(half * std::sin(kPi * s), lift * std::cos(kPi * s)) /
             256.0;
    }
    const int T = std::max(4, static_cast<int>(std::ceil(arc / kGridStep)));

    std::vector<std::vector<int>> rings(T + 1, std::vector<int>(nring, -1));
    std::vector<std::pair<int, int>> fr(nring);
    for (int i = 0; i < nring; ++i) {
      fr[i] = frame(ring_a[i]);
      rings[0][i] = ring_a[i].id;
      rings[T][i] = far_rim.at({-fr[i].first, fr[i].second});
    }
    for (int t = 1; t < T; ++t) {
      const double s = static_cast<double>(t) / T;
      const double cs = std::cos(kPi * s), sn = std::sin(kPi * s);
      const double cx = mx - ux * half * cs, cy = my - uy * half * cs;
      const double cz = lift * sn;
      double tu = half * kPi * sn, tz = lift * kPi * cs;  // tangent in (u, z)
      const double tn = std::hypot(tu, tz);
      tu /= tn;
      tz /= tn;
      // cross-section frame: n = -tz*u + tu*z, h = in-plane normal
      for (int i = 0; i < nring; ++i) {
        const double p = -fr[i].first * scale, q = fr[i].second * scale;
        rings[t][i] = static_cast<int>(coords.size()) / 3;
        coords.insert(coords.end(), {cx + p * (-tz * ux) + q * ihx,
                                     cy + p * (-tz * uy) + q * ihy,
                                     cz + p * tu});
      }
    }
    for (int t = 0; t < T; ++t)
      for (int i = 0; i < nring; ++i) {
        const int i1 = (i + 1) % nring;
        const int a = rings[t][i], b = rings[t][i1];
        const int c = rings[t + 1][i1], d = rings[t + 1][i];
        if ((i + t) % 2 == 0) {
          faces.push_back({a, b, c});
          faces.push_back({a, c, d});
        } else {
          faces.push_back({a, b, d});
          faces.push_back({b, c, d});
        }
      }
  }

  orient_faces(static_cast<int>(coords.size()) / 3, faces);
  return EmbeddedMesh(3, std::move(coords), std::move(faces),
                      std::move(comment));
}

}  // namespace

std::string FamilySpec::to_comment() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "familyspec: family=%s eps=%.17g R=%.17g r=%.17g n=%d "
                "refine=%d seed=%llu",
                family.c_str(), eps, R, r, n, refine,
                static_cast<unsigned long long>(seed));
  return buf;
}

FamilySpec FamilySpec::parse(const std::string& line) {
  std::istringstream in(line);
  std::string tok;
  FamilySpec s;
  while (in >> tok) {
    if (tok == "familyspec:") continue;
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw ParseError("familyspec: expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "family")
        s.family = val;
      else if (key == "eps")
        s.eps = std::stod(val);
      else if (key == "R")
        s.R = std::stod(val);
      else if (key == "r")
        s.r = std::stod(val);
      else if (key == "n")
        s.n = std::stoi(val);
      else if (key == "refine")
        s.refine = std::stoi(val);
      else if (key == "seed")
        s.seed = std::stoull(val);
      else
        throw ParseError("familyspec: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ParseError("familyspec: bad value for '" + key + "': " + val);
    } catch (const std::out_of_range&) {
      throw ParseError("familyspec: value out of range for '" + key + "'");
    }
  }
  if (s.family.empty()) throw ParseError("familyspec: missing family name");
  return s;
}

EmbeddedMesh gen_unit_disk(int refine_rounds) {
  if (refine_rounds < 0) throw ParamError("refine rounds must be >= 0");
  FamilySpec spec;
  spec.family = "disk";
  spec.refine = refine_rounds;
  EmbeddedMesh m = build_disk_family(0.0, {}, spec.to_comment());
  return refine_rounds > 0 ? refine(m, refine_rounds) : m;
}

EmbeddedMesh gen_handle_disk(double eps, int refine_rounds) {
  if (!(eps > 0.0 && eps <= 0.5))
    throw ParamError("handle-disk eps must lie in (0, 1/2], got " + fmt(eps));
  if (refine_rounds < 0) throw ParamError("refine rounds must be >= 0");
  FamilySpec spec;
  spec.family = "handle-disk";
  spec.eps = eps;
  spec.refine = refine_rounds;
  EmbeddedMesh m =
      build_disk_family(eps, {{{-0.5, 0.0, 0.5, 0.0}}}, spec.to_comment());
  return refine_rounds > 0 ? refine(m, refine_rounds) : m;
}

EmbeddedMesh gen_genus2_disk(double eps, int refine_rounds) {
  if (!(eps > 0.0 && eps <= 0.5))
    throw ParamError("genus2-disk eps must lie in (0, 1/2], got " + fmt(eps));
  if (refine_rounds < 0) throw ParamError("refine rounds must be >= 0");
  FamilySpec spec;
  spec.family = "genus2-disk";
  spec.eps = eps;
  spec.refine = refine_rounds;
  EmbeddedMesh m = build_disk_family(eps,
                                     {{{-0.5, -0.35, -0.5, 0.35}},
                                      {{0.5, -0.35, 0.5, 0.35}}},
                                     spec.to_comment());
  return refine_rounds > 0 ? refine(m, refine_rounds) : m;
}

EmbeddedMesh gen_clifford_torus(int n) {
  if (n < 3) throw ParamError("clifford grid size must be >= 3, got " +
                              std::to_string(n));
  FamilySpec spec;
  spec.family = "clifford";
  spec.n = n;
  const double inv = 1.0 / std::sqrt(2.0);
  std::vector<double> coords;
  coords.reserve(static_cast<size_t>(n) * n * 4);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double u = 2.0 * kPi * i / n, v = 2.0 * kPi * j / n;
      coords.insert(coords.end(), {std::cos(u) * inv, std::sin(u) * inv,
                                   std::cos(v) * inv, std::sin(v) * inv});
    }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(static_cast<size_t>(n) * n * 2);
  auto id = [n](int i, int j) { return (j % n) * n + (i % n); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = id(i, j), v10 = id(i + 1, j);
      const int v11 = id(i + 1, j + 1), v01 = id(i, j + 1);
      if ((i + j) % 2 == 0) {
        faces.push_back({v00, v10, v11});
        faces.push_back({v00, v11, v01});
      } else {
        faces.push_back({v00, v10, v01});
        faces.push_back({v10, v11, v01});
      }
    }
  return EmbeddedMesh(4, std::move(coords), std::move(faces),
                      spec.to_comment());
}

EmbeddedMesh gen_revolution_torus_patch(double R, double r, int refine_rounds) {
  if (!(R > r && r > 0.0))
    throw ParamError("revolution radii must satisfy R > r > 0, got R=" +
                     fmt(R) + " r=" + fmt(r));
  if (refine_rounds < 0) throw ParamError("refine rounds must be >= 0");
  const int q = kRingQ, nphi = 8 * q, mr = kTorusRings, mc = kCollarRings;
  const double rho0 = kHoleRho;
  const double h = R + r + kCollarGap;  // torus center height

  // Torus about the x-axis through (0, 0, h); the lowest point (a = b = 0)
  // sits at height kCollarGap right above the boundary plane, and the disk
  // removed around it leaves a rim that winds once about the x3-axis -- which
  // is what lets the collar meet the unit circle without twisting.
  auto emb = [&](double a, double b, double out[3]) {
    const double w = R + r * std::cos(b);
    out[0] = r * std::sin(b);
    out[1] = w * std::sin(a);
    out[2] = h - w * std::cos(a);
  };
  // Domain radius of torus ring t in direction theta: linear grading from the
  // hole circle to the seam square |a|, |b| = pi.
  auto rho_of = [&](int t, double ct, double st) {
    const double sq = kPi / std::max(std::abs(ct), std::abs(st));
    return rho0 + (sq - rho0) * t / mr;
  };

  std::vector<double> coords;
  std::vector<std::array<int, 3>> faces;
  auto push = [&](double x, double y, double z) {
    coords.insert(coords.end(), {x, y, z});
  };

  // Vertex layout: collar rings c = 0..mc-1 (ring 0 = unit circle), torus
  // rings t = 0..mr-1 (ring 0 = hole rim), then the identified seam.
  std::vector<std::array<double, 3>> rim(nphi);
  for (int j = 0; j < nphi; ++j) {
    const double th = 2.0 * kPi * j / nphi;
    emb(rho0 * std::cos(th), rho0 * std::sin(th), rim[j].data());
  }
  for (int c = 0; c < mc; ++c) {
    const double lam = static_cast<double>(c) / mc;
    const double sig = lam * lam * (3.0 - 2.0 * lam);  // smoothstep profile
    for (int j = 0; j < nphi; ++j) {
      const double th = 2.0 * kPi * j / nphi;
      // circle point azimuth-aligned with rim[j] (both start on +x2, run cw)
      const double bx = std::sin(th), by = std::cos(th);
      push((1.0 - sig) * bx + sig * rim[j][0],
           (1.0 - sig) * by + sig * rim[j][1], sig * rim[j][2]);
    }
  }
  for (int t = 0; t < mr; ++t)
    for (int j = 0; j < nphi; ++j) {
      const double th = 2.0 * kPi * j / nphi;
      const double ct = std::cos(th), st = std::sin(th);
      const double rho = rho_of(t, ct, st);
      double p[3];
      emb(rho * ct, rho * st, p);
      push(p[0], p[1], p[2]);
    }

  // Seam: sample j lies on the square |a|,|b| = pi; the torus identification
  // glues a = +-pi (samples j and 4q-j) and b = +-pi (j and 8q-j), and the
  // four square corners {q, 3q, 5q, 7q} become one vertex.
  const int seam_base = (mc + mr) * nphi;
  std::vector<int> seam(nphi, -1);
  int next_id = seam_base;
  auto push_seam = [&](int j) {
    const double th = 2.0 * kPi * j / nphi;
    const double ct = std::cos(th), st = std::sin(th);
    const double sq = kPi / std::max(std::abs(ct), std::abs(st));
    double p[3];
    emb(sq * ct, sq * st, p);
    push(p[0], p[1], p[2]);
    return next_id++;
  };
  const int corner = push_seam(q);
  for (int j = 0; j < nphi; ++j)
    if (j % (2 * q) == q) seam[j] = corner;
  for (int j = 0; j < nphi; ++j) {
    if (seam[j] >= 0) continue;
    const bool leftright = (j < q) || (j > 3 * q && j < 5 * q) || (j > 7 * q);
    const int partner = leftright ? (4 * q - j + nphi) % nphi : nphi - j;
    seam[j] = seam[partner] >= 0 ? seam[partner] : push_seam(j);
  }

  auto quad = [&](int a, int b, int c, int d, int parity) {
    if (parity == 0) {
      faces.push_back({a, b, c});
      faces.push_back({a, c, d});
    } else {
      faces.push_back({a, b, d});
      faces.push_back({b, c, d});
    }
  };
  for (int l = 0; l + 1 < mc + mr; ++l)
    for (int j = 0; j < nphi; ++j) {
      const int j1 = (j + 1) % nphi;
      quad(l * nphi + j, l * nphi + j1, (l + 1) * nphi + j1, (l + 1) * nphi + j,
           (l + j) % 2);
    }
  const int last = (mc + mr - 1) * nphi;
  for (int j = 0; j < nphi; ++j) {
    const int j1 = (j + 1) % nphi;
    quad(last + j, last + j1, seam[j1], seam[j], (mc + mr - 1 + j) % 2);
  }

  orient_faces(static_cast<int>(coords.size()) / 3, faces);
  FamilySpec spec;
  spec.family = "revolution";
  spec.R = R;
  spec.r = r;
  spec.refine = refine_rounds;
  const std::string comment =
      spec.to_comment() +
      "\ncollar: profile sigma(t)=3t^2-2t^3 over " +
      std::to_string(mc) + " rings; gap " + fmt(kCollarGap) +
      "; domain hole radius " + fmt(rho0);
  EmbeddedMesh m(3, std::move(coords), std::move(faces), comment);
  return refine_rounds > 0 ? refine(m, refine_rounds) : m;
}

EmbeddedMesh gen_csaszar() {
  FamilySpec spec;
  spec.family = "csaszar";
  std::vector<double> coords = {3,  -3, 0, -3, 3,  0, -3, -3, 1, 3, 3,
                                1,  -1, -2, 3, 1,  2,  3, 0,  0, 15};
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({(i + 3) % 7, (i + 2) % 7, i});
  }
  return EmbeddedMesh(3, std::move(coords), std::move(faces),
                      spec.to_comment());
}

EmbeddedMesh gen_from_spec(const FamilySpec& spec) {
  EmbeddedMesh m = [&]() -> EmbeddedMesh {
    if (spec.family == "disk") return gen_unit_disk(spec.refine);
    if (spec.family == "handle-disk")
      return gen_handle_disk(spec.eps, spec.refine);
    if (spec.family == "clifford") {
      EmbeddedMesh t = gen_clifford_torus(spec.n);
      return spec.refine > 0 ? refine(t, spec.refine) : t;
    }
    if (spec.family == "revolution")
      return gen_revolution_torus_patch(spec.R, spec.r, spec.refine);
    if (spec.family == "genus2-disk")
      return gen_genus2_disk(spec.eps, spec.refine);
    if (spec.family == "csaszar") {
      EmbeddedMesh t = gen_csaszar();
      return spec.refine > 0 ? refine(t, spec.refine) : t;
    }
    throw ParamError("unknown family '" + spec.family + "'");
  }();
  if (spec.seed != 0)
    m = jitter_interior(m, JITTER_FRACTION * m.info().min_edge, spec.seed);
  // Re-stamp the provenance line so it reflects the requested spec exactly
  // (seed included); extra comment lines are kept.
  const std::string& c = m.comment();
  const auto nl = c.find('\n');
  m.set_comment(spec.to_comment() +
                (nl == std::string::npos ? "" : c.substr(nl)));
  return m;
}

EmbeddedMesh jitter_interior(const EmbeddedMesh& m, double amplitude,
                             std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw ParamError("jitter amplitude must be >= 0");
  std::mt19937_64 rng(seed);
  // raw 53-bit draws rather than uniform_real_distribution: the stream is
  // then identical across standard libraries
  auto offset = [&]() {
    return amplitude * (2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0);
  };
  std::vector<double> coords = m.coords();
  const int n = m.ambient_dim();
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (m.vertex_on_boundary(v)) continue;
    for (int k = 0; k < n; ++k)
      coords[static_cast<size_t>(v) * n + k] += offset();
  }
  return EmbeddedMesh(n, std::move(coords), m.faces(), m.comment());
}

void orient_faces(int num_vertices, std::vector<std::array<int, 3>>& faces) {
  const std::int64_t nv = num_vertices;
  std::unordered_map<std::int64_t, std::vector<int>> edge_faces;
  edge_faces.reserve(faces.size() * 2);
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (int k = 0; k < 3; ++k) {
      const int a = faces[f][k], b = faces[f][(k + 1) % 3];
      edge_faces[std::min(a, b) * nv + std::max(a, b)].push_back(f);
    }
  auto traverses = [&](int f, int a, int b) {  // f contains directed a->b?
    for (int k = 0; k < 3; ++k)
      if (faces[f][k] == a && faces[f][(k + 1) % 3] == b) return true;
    return false;
  };
  std::vector<char> visited(faces.size(), 0);
  std::deque<int> queue;
  for (int f0 = 0; f0 < static_cast<int>(faces.size()); ++f0) {
    if (visited[f0]) continue;
    visited[f0] = 1;
    queue.push_back(f0);
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      for (int k = 0; k < 3; ++k) {
        const int a = faces[f][k], b = faces[f][(k + 1) % 3];
        for (int g : edge_faces[std::min(a, b) * nv + std::max(a, b)]) {
          if (g == f) continue;
          if (!visited[g]) {
            // neighbor must traverse the shared edge in the other direction
            if (traverses(g, a, b)) std::swap(faces[g][0], faces[g][1]);
            visited[g] = 1;
            queue.push_back(g);
          } else if (traverses(g, a, b)) {
            throw TopologyError(
                "faces do not admit a consistent orientation");
          }
        }
      }
    }
  }
}

}  // namespace systl
