#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "webgeom/expr.hpp"
#include "webgeom/jets.hpp"
#include "webgeom/multi_index.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

// Per foliation, the components f_{i,A} of omega_i = sum_A (f_{i,A} o u_i) du_{i,A}, written in
// the slot variables u1..uq. Missing components are zero.
struct RelationSpec {
  int p = 0;
  std::vector<std::map<Subset, Expr>> forms;  // one map per foliation
};

// Slot variables u1..uq.
std::vector<VarId> slot_vars(int q);
std::vector<std::string> slot_names(int q);

// {"p": int, "forms": [{"foliation": 1-based, "components": {"a1,a2,...": expr}}]}.
// Throws ParseError on malformed JSON or expressions, InvalidArgument on shape mismatch with web.
RelationSpec parse_relation(std::string_view json_text, const Web& web);
RelationSpec load_relation(const std::string& path, const Web& web);

// Exterior derivative in slot variables: (p+1)-form components.
std::map<Subset, Expr> exterior_derivative(const std::map<Subset, Expr>& form, int q);

struct ZeroTestOptions {
  unsigned digits = 50;
  double threshold = 1e-30;  // relative to the magnitude of the summands
  std::size_t points = 5;
  std::uint64_t seed = 0;
};

struct Residual {
  std::string label;
  bool zero = true;
  bool numeric = false;  // decided by point sampling rather than exact algebra
  std::string value;     // canonical form, or the largest sampled magnitude
};

// Exact for rational expressions; otherwise sampled at opt.points points. Evaluation failures
// trigger resampling; exhaustion throws CompositionDomainError.
Residual test_zero(const Expr& e, const std::vector<VarId>& vars, const ZeroTestOptions& opt, std::string label = {});

struct RelationVerdict {
  bool is_abelian = true;
  bool is_closed = true;
  bool heuristic = false;  // some decision used point sampling
  std::vector<Residual> trace;    // one per B
  std::vector<Residual> closure;  // one per (foliation, C) with |C| = p+1
};

RelationVerdict verify_relation(const Web& web, const RelationSpec& rel, const ZeroTestOptions& opt = {});

struct CobordVerdict {
  bool ok = false;
  bool derivative_matches = true;
  std::vector<Residual> mismatches;  // d(eta_i) - omega_i components
  RelationVerdict eta;
  RelationVerdict omega;
};

CobordVerdict verify_cobord(const Web& web, const RelationSpec& eta, const RelationSpec& omega,
                            const ZeroTestOptions& opt = {});

// Composition f_{i,A} o u_i.
Expr compose(const Web& web, int i, const Expr& f);

// Derivative coordinates (f_{i,A})'_K o u_i at pt, ordered as the plain columns of sys up to
// order. Exact arithmetic: requires rational data.
std::vector<mpq_class> relation_jet(const Web& web, const RelationSpec& rel, const JetSystem<Expr>& sys,
                                    unsigned order, const Point& pt);

}  // namespace webgeom
