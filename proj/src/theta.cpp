#include "davies/theta.hpp"

#include "davies/adfamily.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace davies {

namespace {

// Safety net for inputs that break the support discipline; a well-formed
// family always terminates the stage searches long before this.
constexpr std::size_t kSearchCap = 1u << 22;

std::string rational_text(const Rational& r) { return to_string(r); }

}  // namespace

Row::Row(std::vector<Rational> f, std::vector<RowPtr> g, std::vector<RowPtr> h,
         std::string label)
    : f_(std::move(f)),
      g_args_(std::move(g)),
      h_args_(std::move(h)),
      label_(std::move(label)) {
  if (h_args_.size() != f_.size()) {
    throw std::invalid_argument("run requires lh(h) == lh(f), got lh(h) = " +
                                std::to_string(h_args_.size()) + ", lh(f) = " +
                                std::to_string(f_.size()));
  }
  for (const auto& r : g_args_) {
    if (!r) throw std::invalid_argument("null g argument row");
  }
  for (const auto& r : h_args_) {
    if (!r) throw std::invalid_argument("null h argument row");
  }
}

RowPtr theta_new(std::vector<Rational> f, std::vector<RowPtr> g,
                 std::vector<RowPtr> h, std::string label) {
  return RowPtr(new Row(std::move(f), std::move(g), std::move(h), std::move(label)));
}

bool Row::collides(std::size_t p, std::size_t bound_count) {
  if (bound_count > 0 && cantor_unpair(p).first < bound_count) return true;
  const std::size_t gb = std::min(bound_count, g_args_.size());
  for (std::size_t m = 0; m < gb; ++m) {
    if (g_args_[m]->value(p) != 0) return true;
  }
  const std::size_t hb = std::min(bound_count, h_args_.size());
  for (std::size_t m = 0; m < hb; ++m) {
    if (h_args_[m]->value(p) != 0) return true;
  }
  return false;
}

void Row::advance_stage() {
  const std::size_t stage = milestones_.size();
  const std::size_t start = values_.size();  // previous milestone + 1

  if (stage >= f_.size()) {
    // No target value at this stage: place a single 1 at the least free
    // index and make it the milestone.
    std::size_t p = start;
    while (collides(p, stage)) {
      if (++p > start + kSearchCap) throw std::runtime_error("stage search exceeded cap");
    }
    for (std::size_t i = start; i < p; ++i) values_.emplace_back(0);
    values_.emplace_back(1);
    milestones_.push_back(p);
    return;
  }

  // Target stage: place the correcting value at the least free index where
  // h(stage) equals 1, then a 1 at the next free index.
  Row& h_row = *h_args_[stage];
  std::size_t p = start;
  while (collides(p, stage) || h_row.value(p) != 1) {
    if (++p > start + kSearchCap) throw std::runtime_error("stage search exceeded cap");
  }
  std::size_t q = p + 1;
  while (collides(q, stage + 1)) {
    if (++q > p + kSearchCap) throw std::runtime_error("stage search exceeded cap");
  }

  Rational correction = f_[stage];
  for (std::size_t m = 0; m < start; ++m) {
    if (values_[m] != 0) correction -= values_[m] * h_row.value(m);
  }

  values_.resize(q + 1, Rational(0));
  values_[p] = correction;
  values_[q] = 1;
  milestones_.push_back(q);
}

const Rational& Row::value(std::size_t i) {
  while (values_.size() <= i) advance_stage();
  return values_[i];
}

void Row::ensure_stages(std::size_t count) {
  while (milestones_.size() < count) advance_stage();
}

void Row::ensure_length(std::size_t length) {
  while (values_.size() < length) advance_stage();
}

std::size_t Row::milestone(std::size_t k) {
  while (milestones_.size() <= k) advance_stage();
  return milestones_[k];
}

void Row::corrupt_value(std::size_t i, const Rational& v) { values_.at(i) = v; }

std::size_t canonical_stage_count(const Row& row) {
  return std::max({row.target().size(), row.g_args().size(), row.h_args().size()}) + 1;
}

RunReport check_run_conclusions(Row& row, std::size_t horizon, std::size_t min_stages) {
  RunReport rep;
  rep.horizon = horizon;
  const std::size_t want = min_stages == 0 ? canonical_stage_count(row) : min_stages;
  row.ensure_stages(want);
  row.ensure_length(horizon + 1);
  rep.stages_checked = row.stage_count();

  auto issue = [&rep](int conclusion, std::string detail) {
    rep.issues.push_back({conclusion, std::move(detail)});
  };

  // (1) target identities and vanishing products beyond each cutoff
  for (std::size_t k = 0; k < row.target().size(); ++k) {
    const std::size_t nk = row.milestone(k);
    Row& hk = *row.h_args()[k];
    Rational sum = 0;
    for (std::size_t l = 0; l <= nk; ++l) {
      if (row.value(l) != 0) sum += row.value(l) * hk.value(l);
    }
    if (sum != row.target()[k]) {
      issue(1, "target " + std::to_string(k) + ": sum up to milestone " +
                   std::to_string(nk) + " is " + rational_text(sum) + ", expected " +
                   rational_text(row.target()[k]));
    }
    for (std::size_t l = nk + 1; l <= horizon; ++l) {
      if (row.value(l) != 0 && hk.value(l) != 0) {
        issue(1, "target " + std::to_string(k) + ": nonzero product at index " +
                     std::to_string(l) + " beyond milestone " + std::to_string(nk));
        break;
      }
    }
  }

  // (2)/(3) support separation from the argument rows
  auto check_args = [&](const std::vector<RowPtr>& args, int conclusion, const char* side) {
    for (std::size_t m = 0; m < args.size(); ++m) {
      const std::size_t nm = row.milestone(m);
      Row& arg = *args[m];
      for (std::size_t l = nm + 1; l <= horizon; ++l) {
        if (row.value(l) != 0 && arg.value(l) != 0) {
          issue(conclusion, std::string(side) + "(" + std::to_string(m) +
                                "): support overlap at index " + std::to_string(l) +
                                " beyond milestone " + std::to_string(nm));
          break;
        }
      }
    }
  };
  check_args(row.h_args(), 2, "h");
  check_args(row.g_args(), 3, "g");

  // (4) support separation from the pairing columns
  for (std::size_t l = 0; l <= horizon; ++l) {
    if (row.value(l) == 0) continue;
    const std::size_t n = cantor_unpair(l).first;
    if (n < row.stage_count() && l > row.milestones()[n]) {
      issue(4, "column x_" + std::to_string(n) + ": support overlap at index " +
                   std::to_string(l) + " beyond milestone " +
                   std::to_string(row.milestones()[n]));
      break;
    }
  }

  // (5) milestones increase and carry value 1
  for (std::size_t k = 0; k < row.stage_count(); ++k) {
    const std::size_t nk = row.milestones()[k];
    if (k > 0 && nk <= row.milestones()[k - 1]) {
      issue(5, "milestone " + std::to_string(k) + " does not increase");
    }
    if (row.value(nk) != 1) {
      issue(5, "milestone " + std::to_string(k) + " at index " + std::to_string(nk) +
                   " has value " + rational_text(row.value(nk)) + ", expected 1");
    }
  }

  rep.ok = rep.issues.empty();
  return rep;
}

namespace {

std::optional<std::size_t> constructive_bound(const RowPtr& a, const RowPtr& b) {
  std::optional<std::size_t> best;
  const auto consider = [&best](const RowPtr& owner, const std::vector<RowPtr>& args,
                                const RowPtr& other) {
    for (std::size_t m = 0; m < args.size(); ++m) {
      if (args[m] == other) {
        const std::size_t nm = owner->milestone(m);
        if (!best || nm < *best) best = nm;
      }
    }
  };
  consider(b, b->g_args(), a);
  consider(b, b->h_args(), a);
  consider(a, a->g_args(), b);
  consider(a, a->h_args(), b);
  return best;
}

}  // namespace

SReport check_spair(const SPair& pair, std::size_t required_stages) {
  SReport rep;
  rep.required_stages = required_stages;

  std::vector<RowPtr> rows;
  std::vector<std::string> names;
  const auto collect = [&](const std::vector<RowPtr>& list, const char* prefix) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i]) throw std::invalid_argument("null row in pair");
      rows.push_back(list[i]);
      names.push_back(list[i]->label().empty()
                          ? std::string(prefix) + "[" + std::to_string(i) + "]"
                          : list[i]->label());
    }
  };
  collect(pair.g_rows, "g");
  collect(pair.h_rows, "h");

  auto issue = [&rep](std::string detail) { rep.issues.push_back({std::move(detail)}); };

  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row& r = *rows[i];
    r.ensure_stages(required_stages);
    for (std::size_t k = 0; k < r.stage_count(); ++k) {
      if (r.value(r.milestones()[k]) != 1) {
        issue("row " + names[i] + ": milestone " + std::to_string(k) + " at index " +
              std::to_string(r.milestones()[k]) + " has value " +
              rational_text(r.value(r.milestones()[k])) + ", expected 1");
      }
    }
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[i] == rows[j]) {
        issue("rows " + names[i] + " and " + names[j] + " are the same run");
        continue;
      }
      const auto bound = constructive_bound(rows[i], rows[j]);
      if (!bound) {
        issue("rows " + names[i] + " and " + names[j] +
              " have no constructive disjointness bound: neither run received the "
              "other as an argument");
        continue;
      }
      rows[i]->ensure_length(*bound + 1);
      rows[j]->ensure_length(*bound + 1);
      // beyond the bound, inspect only what both rows have already computed;
      // extending rows here would grow them past every verification horizon
      const std::size_t cap =
          std::min(rows[i]->cached_length(), rows[j]->cached_length());
      const std::size_t horizon = std::max(cap == 0 ? 0 : cap - 1, *bound);

      SPairOverlap ov{names[i], names[j], *bound, {}};
      for (std::size_t l = 0; l <= *bound; ++l) {
        if (rows[i]->value(l) != 0 && rows[j]->value(l) != 0) ov.shared_support.push_back(l);
      }
      for (std::size_t l = *bound + 1; l <= horizon; ++l) {
        if (rows[i]->value(l) != 0 && rows[j]->value(l) != 0) {
          issue("rows " + names[i] + " and " + names[j] + " overlap at index " +
                std::to_string(l) + " beyond bound " + std::to_string(*bound));
          break;
        }
      }
      rep.overlaps.push_back(std::move(ov));
    }
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row& r = *rows[i];
    for (std::size_t l = 0; l < r.cached_length(); ++l) {
      if (r.value(l) == 0) continue;
      const std::size_t n = cantor_unpair(l).first;
      if (n < r.stage_count() && l > r.milestones()[n]) {
        issue("row " + names[i] + ": support meets column x_" + std::to_string(n) +
              " at index " + std::to_string(l) + " beyond milestone " +
              std::to_string(r.milestones()[n]));
        break;
      }
    }
  }

  rep.ok = rep.issues.empty();
  return rep;
}

}  // namespace davies
