#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "webgeom/combinat.hpp"
#include "webgeom/matrix.hpp"
#include "webgeom/ratfunc.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

enum class Variant { Plain, Closed };

// Tautological connection on E = ker M_{k-1} (k = k0, or k1 for the closed variant), in the
// frame s_1..s_rho:  nabla_l s_j = sum_m eta[l](m, j) s_m.
struct ConnectionData {
  int p = 0;
  Variant variant = Variant::Closed;
  unsigned k = 0;
  std::vector<VarId> vars;
  // Coordinates on the columns of M_{k-1} (Koszul-basis coordinates for the closed variant).
  std::vector<std::vector<RatFunc>> frame;
  // Same sections in derivative coordinates (plain columns up to order k-1).
  std::vector<std::vector<RatFunc>> frame_jet;
  std::vector<Matrix<RatFunc>> eta;  // one rho x rho matrix per variable
  // Curvature coefficient on dx_l ^ dx_m, l < m: d_l eta_m - d_m eta_l + eta_l eta_m - eta_m eta_l.
  std::vector<std::pair<int, int>> omega_index;
  std::vector<Matrix<RatFunc>> omega;
  bool flat = false;
  // nabla_l s_j in derivative coordinates, and the plain M_{k-1} acting on them.
  std::vector<std::vector<std::vector<RatFunc>>> nabla_jet;
  Matrix<RatFunc> m_plain;

  std::size_t rank() const { return frame.size(); }
  const Matrix<RatFunc>& omega_at(int l, int m) const;
};

// Rational webs only (TranscendentalUnsupported). Throws NotCalibrated unless the order-k system
// is square by count, NotOrdinary when the top matrix loses rank. p = q always uses the closed
// variant. A custom frame must consist of independent sections of E.
ConnectionData build_connection(const Web& web, int p, Variant variant,
                                const std::optional<std::vector<std::vector<RatFunc>>>& frame = std::nullopt);

// Template check: n = 3, q = 2, d = 4, first three foliations (x,y), (y,z), (z,x). Throws
// TemplateMismatch otherwise.
void require_curve_template(const Web& web);

// eta = H dphi + K dpsi from the general construction, frame normalized to h_4 = 1.
std::pair<RatFunc, RatFunc> connection_form_components(const Web& web);

// H = (p A C'_z - r A'_x C) / (ABC), K = (c A'_x C - a A C'_z) / (ABC) with a,b,c and p,q,r the
// gradients of phi and psi, A = br - qc, B = cp - ar, C = aq - pb.
std::pair<RatFunc, RatFunc> template_closed_forms(const Web& web);

struct FlatnessVerdict {
  bool max_rank = false;
  combinat::Int pi = 0;
};
FlatnessVerdict flatness_verdict(const ConnectionData& cd);

}  // namespace webgeom
