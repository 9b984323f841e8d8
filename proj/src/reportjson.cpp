#include "davies/reportjson.hpp"

namespace davies {

OrderedJson to_json(const IntervalValue& v) {
  return OrderedJson{{"lo", to_string(v.lo)}, {"hi", to_string(v.hi)}};
}

OrderedJson to_json(const PairCertificate& c) {
  OrderedJson j;
  j["i"] = c.i;
  j["j"] = c.j;
  j["cutoff"] = c.cutoff;
  j["expected"] = to_string(c.expected);
  j["sum"] = to_string(c.sum);
  j["horizon"] = c.horizon;
  j["ok"] = c.ok;
  if (!c.ok) j["failure"] = c.failure;
  return j;
}

OrderedJson to_json(const VerifyReport& r) {
  OrderedJson j;
  j["ok"] = r.ok;
  j["horizon"] = r.horizon;
  j["pairs_checked"] = r.pairs_checked;
  j["certificates"] = OrderedJson::array();
  for (const auto& c : r.certificates) j["certificates"].push_back(to_json(c));
  return j;
}

OrderedJson to_json(const RunReport& r) {
  OrderedJson j;
  j["ok"] = r.ok;
  j["horizon"] = r.horizon;
  j["stages_checked"] = r.stages_checked;
  j["issues"] = OrderedJson::array();
  for (const auto& issue : r.issues) {
    j["issues"].push_back(OrderedJson{{"conclusion", issue.conclusion}, {"detail", issue.detail}});
  }
  return j;
}

OrderedJson to_json(const SReport& r) {
  OrderedJson j;
  j["ok"] = r.ok;
  j["required_stages"] = r.required_stages;
  j["overlaps"] = OrderedJson::array();
  for (const auto& ov : r.overlaps) {
    j["overlaps"].push_back(OrderedJson{{"first", ov.first},
                                        {"second", ov.second},
                                        {"bound", ov.bound},
                                        {"shared_support", ov.shared_support}});
  }
  j["issues"] = OrderedJson::array();
  for (const auto& issue : r.issues) j["issues"].push_back(issue.detail);
  return j;
}

OrderedJson to_json(const Certificate& c) {
  OrderedJson j;
  j["verdict"] = c.verdict == CertVerdict::kNonsingularCertified ? "nonsingular_certified"
                                                                 : "indeterminate";
  j["eps_used"] = to_string(c.eps_used);
  j["refinements"] = c.refinements;
  j["det"] = c.det ? to_json(*c.det) : OrderedJson(nullptr);
  return j;
}

OrderedJson to_json(const LowerBoundReport& r) {
  OrderedJson j;
  j["active_count"] = r.active_count;
  j["grid_rank"] = r.grid_rank;
  j["ok"] = r.ok;
  j["active_indices"] = r.active_indices;
  return j;
}

std::string to_json_string(const OrderedJson& j) { return j.dump(2) + "\n"; }

}  // namespace davies
