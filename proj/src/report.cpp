#include "webgeom/report.hpp"

#include <sstream>

namespace webgeom::report {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

std::string opt_text(const std::optional<combinat::Int>& v) { return v ? std::to_string(*v) : "none"; }

}  // namespace

Json to_json(const combinat::BoundProfile& b) {
  Json j;
  j["n"] = b.n;
  j["d"] = b.d;
  j["q"] = b.q;
  j["p"] = b.p;
  j["k0"] = optional_json(b.k0);
  j["k1"] = optional_json(b.k1);
  j["pi0"] = b.pi0;
  j["pi_prime"] = b.pi_prime;
  j["pi_henaut"] = optional_json(b.pi_henaut);
  j["calibrated"] = b.calibrated;
  j["strongly_calibrated"] = b.strongly_calibrated;
  j["excess_ok"] = b.excess_ok;
  return j;
}

combinat::BoundProfile bound_profile_from_json(const Json& j) {
  combinat::BoundProfile b;
  b.n = j.at("n").get<combinat::Int>();
  b.d = j.at("d").get<combinat::Int>();
  b.q = j.at("q").get<combinat::Int>();
  b.p = j.at("p").get<combinat::Int>();
  b.k0 = optional_from<combinat::Int>(j.at("k0"));
  b.k1 = optional_from<combinat::Int>(j.at("k1"));
  b.pi0 = j.at("pi0").get<combinat::Int>();
  b.pi_prime = j.at("pi_prime").get<combinat::Int>();
  b.pi_henaut = optional_from<combinat::Int>(j.at("pi_henaut"));
  b.calibrated = j.at("calibrated").get<bool>();
  b.strongly_calibrated = j.at("strongly_calibrated").get<bool>();
  b.excess_ok = j.at("excess_ok").get<bool>();
  return b;
}

Json to_json(const OrderRecord& r) {
  Json j;
  j["k"] = r.k;
  j["rows"] = r.rows;
  j["cols"] = r.cols;
  j["max_rank"] = r.max_rank;
  j["ranks"] = r.ranks;
  j["attained"] = r.attained;
  j["m_rows"] = r.m_rows;
  j["m_cols"] = r.m_cols;
  j["m_ranks"] = r.m_ranks;
  j["rho"] = optional_json(r.rho);
  return j;
}

OrderRecord order_record_from_json(const Json& j) {
  OrderRecord r;
  r.k = j.at("k").get<unsigned>();
  r.rows = j.at("rows").get<std::size_t>();
  r.cols = j.at("cols").get<std::size_t>();
  r.max_rank = j.at("max_rank").get<std::size_t>();
  r.ranks = j.at("ranks").get<std::vector<long>>();
  r.attained = j.at("attained").get<bool>();
  r.m_rows = j.at("m_rows").get<std::size_t>();
  r.m_cols = j.at("m_cols").get<std::size_t>();
  r.m_ranks = j.at("m_ranks").get<std::vector<long>>();
  r.rho = optional_from<long>(j.at("rho"));
  return r;
}

Json to_json(const OrdinarityReport& r) {
  Json j;
  j["p"] = r.p;
  j["variant"] = r.closed ? "closed" : "plain";
  j["verdict"] = verdict_name(r.verdict);
  j["horizon"] = r.horizon;
  j["top_square"] = r.top_square;
  j["bracket"] = optional_json(r.bracket);
  j["routed_to_closed"] = r.routed_to_closed;
  j["points"] = r.points;
  j["orders"] = Json::array();
  for (const auto& o : r.orders) j["orders"].push_back(to_json(o));
  return j;
}

OrdinarityReport ordinarity_from_json(const Json& j) {
  OrdinarityReport r;
  r.p = j.at("p").get<int>();
  r.closed = j.at("variant").get<std::string>() == "closed";
  r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  r.horizon = j.at("horizon").get<int>();
  r.top_square = j.at("top_square").get<bool>();
  r.bracket = optional_from<bool>(j.at("bracket"));
  r.routed_to_closed = j.at("routed_to_closed").get<bool>();
  r.points = j.at("points").get<std::vector<std::string>>();
  for (const auto& o : j.at("orders")) r.orders.push_back(order_record_from_json(o));
  return r;
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.valid;
  j["issues"] = Json::array();
  for (const auto& i : r.issues) {
    Json e;
    e["kind"] = i.kind;
    e["i"] = i.i + 1;
    e["j"] = i.j >= 0 ? Json(i.j + 1) : Json(nullptr);
    e["point"] = i.point;
    e["rank"] = i.rank;
    e["expected"] = i.expected;
    j["issues"].push_back(e);
  }
  return j;
}

Json to_json(const Residual& r) {
  Json j;
  j["label"] = r.label;
  j["zero"] = r.zero;
  j["numeric"] = r.numeric;
  j["value"] = r.value;
  return j;
}

Json to_json(const RelationVerdict& v) {
  Json j;
  j["is_abelian"] = v.is_abelian;
  j["is_closed"] = v.is_closed;
  j["heuristic"] = v.heuristic;
  j["trace"] = Json::array();
  for (const auto& r : v.trace) j["trace"].push_back(to_json(r));
  j["closure"] = Json::array();
  for (const auto& r : v.closure) j["closure"].push_back(to_json(r));
  return j;
}

Json to_json(const CobordVerdict& v) {
  Json j;
  j["ok"] = v.ok;
  j["derivative_matches"] = v.derivative_matches;
  j["mismatches"] = Json::array();
  for (const auto& r : v.mismatches) j["mismatches"].push_back(to_json(r));
  j["eta"] = to_json(v.eta);
  j["omega"] = to_json(v.omega);
  return j;
}

Json to_json(const ConnectionData& cd) {
  Json j;
  j["p"] = cd.p;
  j["variant"] = cd.variant == Variant::Closed ? "closed" : "plain";
  j["k"] = cd.k;
  j["rank"] = cd.rank();
  j["frame"] = Json::array();
  for (const auto& s : cd.frame) {
    Json v = Json::array();
    for (const auto& e : s) v.push_back(e.to_string());
    j["frame"].push_back(v);
  }
  j["eta"] = Json::object();
  for (std::size_t l = 0; l < cd.eta.size(); ++l) {
    Json m = Json::array();
    for (std::size_t a = 0; a < cd.eta[l].rows(); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < cd.eta[l].cols(); ++b) row.push_back(cd.eta[l](a, b).to_string());
      m.push_back(row);
    }
    j["eta"]["d" + symbol_name(cd.vars[l])] = m;
  }
  j["omega"] = Json::object();
  for (std::size_t t = 0; t < cd.omega.size(); ++t) {
    Json m = Json::array();
    for (std::size_t a = 0; a < cd.omega[t].rows(); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < cd.omega[t].cols(); ++b) row.push_back(cd.omega[t](a, b).to_string());
      m.push_back(row);
    }
    auto [l, mm] = cd.omega_index[t];
    j["omega"]["d" + symbol_name(cd.vars[l]) + "^d" + symbol_name(cd.vars[mm])] = m;
  }
  j["flat"] = cd.flat;
  return j;
}

std::string text(const combinat::BoundProfile& b) {
  std::ostringstream os;
  os << "n=" << b.n << " d=" << b.d << " q=" << b.q << " p=" << b.p << "\n"
     << "  k0=" << opt_text(b.k0) << " k1=" << opt_text(b.k1) << "\n"
     << "  pi0=" << b.pi0 << " pi_prime=" << b.pi_prime << " pi_henaut=" << opt_text(b.pi_henaut) << "\n"
     << "  calibrated=" << b.calibrated << " strongly_calibrated=" << b.strongly_calibrated
     << " excess_ok=" << b.excess_ok << "\n";
  return os.str();
}

std::string text(const OrdinarityReport& r) {
  std::ostringstream os;
  os << (r.closed ? "strong " : "") << r.p << "-ordinarity: " << verdict_name(r.verdict) << " (horizon k<=" << r.horizon
     << (r.routed_to_closed ? ", p=q routed to closed system" : "") << ")\n";
  if (r.bracket) os << "  bracket criterion: " << (*r.bracket ? "fires (cannot be p-ordinary)" : "does not fire") << "\n";
  for (std::size_t k = 0; k < r.points.size(); ++k) os << "  point " << k << ": " << r.points[k] << "\n";
  for (const auto& o : r.orders) {
    os << "  k=" << o.k << " " << (r.closed ? "P~" : "P") << " " << o.rows << "x" << o.cols << " max " << o.max_rank
       << " ranks";
    for (long x : o.ranks) os << " " << x;
    if (o.rho) os << "  rho=" << *o.rho;
    os << (o.attained ? "" : "  [deficient]") << "\n";
  }
  return os.str();
}

std::string text(const RelationVerdict& v) {
  std::ostringstream os;
  os << "trace-zero: " << (v.is_abelian ? "yes" : "no") << "  closed: " << (v.is_closed ? "yes" : "no")
     << (v.heuristic ? "  (numeric zero test)" : "") << "\n";
  for (const auto& r : v.trace)
    if (!r.zero) os << "  residual " << r.label << ": " << r.value << "\n";
  for (const auto& r : v.closure)
    if (!r.zero) os << "  d(form) " << r.label << ": " << r.value << "\n";
  return os.str();
}

std::string text(const CobordVerdict& v) {
  std::ostringstream os;
  os << "cobord: " << (v.ok ? "yes" : "no") << "\n";
  os << "eta   " << text(v.eta);
  os << "omega " << text(v.omega);
  for (const auto& r : v.mismatches)
    if (!r.zero) os << "  d(eta)-omega " << r.label << ": " << r.value << "\n";
  return os.str();
}

std::string text(const ConnectionData& cd) {
  std::ostringstream os;
  os << (cd.variant == Variant::Closed ? "closed" : "plain") << " connection, p=" << cd.p << ", k=" << cd.k
     << ", rank " << cd.rank() << "\n";
  for (std::size_t l = 0; l < cd.eta.size(); ++l)
    for (std::size_t a = 0; a < cd.eta[l].rows(); ++a)
      for (std::size_t b = 0; b < cd.eta[l].cols(); ++b)
        if (!cd.eta[l](a, b).is_zero())
          os << "  eta[" << a + 1 << "," << b + 1 << "] d" << symbol_name(cd.vars[l]) << ": " << cd.eta[l](a, b).to_string()
             << "\n";
  for (std::size_t t = 0; t < cd.omega.size(); ++t) {
    auto [l, m] = cd.omega_index[t];
    for (std::size_t a = 0; a < cd.omega[t].rows(); ++a)
      for (std::size_t b = 0; b < cd.omega[t].cols(); ++b)
        if (!cd.omega[t](a, b).is_zero())
          os << "  Omega[" << a + 1 << "," << b + 1 << "] d" << symbol_name(cd.vars[l]) << "^d" << symbol_name(cd.vars[m])
             << ": " << cd.omega[t](a, b).to_string() << "\n";
  }
  os << "flat: " << (cd.flat ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace webgeom::report
