#include "davies/builder.hpp"

#include <stdexcept>
#include <utility>

namespace davies {

Representation::Representation(PairFunction f) : f_(std::move(f)) {}

void Representation::add_point(Point point) {
  if (index_.count(point.label)) {
    throw std::invalid_argument("duplicate point label '" + point.label + "'");
  }
  const std::size_t t = points_.size();
  points_.push_back(std::move(point));
  try {
    // g row of the new point: targets f(x_t, x_m) for the prior points,
    // arguments all rows built so far.
    std::vector<Rational> targets_g(t);
    for (std::size_t m = 0; m < t; ++m) targets_g[m] = f_.eval(points_, t, m);
    RowPtr g_new = theta_new(std::move(targets_g), g_rows_, h_rows_,
                             "g" + std::to_string(t));

    // h row: targets f(x_m, x_t) including the diagonal, with the fresh g
    // row appended to the argument list so the pair (t, t) gets a cutoff.
    std::vector<RowPtr> g_with_new = g_rows_;
    g_with_new.push_back(g_new);
    std::vector<Rational> targets_h(t + 1);
    for (std::size_t m = 0; m <= t; ++m) targets_h[m] = f_.eval(points_, m, t);
    RowPtr h_new = theta_new(std::move(targets_h), h_rows_, std::move(g_with_new),
                             "h" + std::to_string(t));

    g_rows_.push_back(std::move(g_new));
    h_rows_.push_back(std::move(h_new));
  } catch (...) {
    index_.erase(points_.back().label);
    points_.pop_back();
    throw;
  }
  index_[points_[t].label] = t;
}

void Representation::add_point(const std::string& label) { add_point(Point{label, {}}); }

void Representation::add_point(const std::string& label, const Rational& payload) {
  add_point(Point{label, payload});
}

void Representation::add_point(const std::string& label, E0Point payload) {
  add_point(Point{label, std::move(payload)});
}

std::optional<std::size_t> Representation::position_of(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Representation::require_position(std::size_t i) const {
  if (i >= points_.size()) {
    throw std::out_of_range("point position " + std::to_string(i) + " out of range (have " +
                            std::to_string(points_.size()) + " points)");
  }
}

Rational Representation::eval_g(std::size_t i, std::size_t n) {
  require_position(i);
  return g_rows_[i]->value(n);
}

Rational Representation::eval_h(std::size_t i, std::size_t n) {
  require_position(i);
  return h_rows_[i]->value(n);
}

const RowPtr& Representation::g_row(std::size_t i) const {
  require_position(i);
  return g_rows_[i];
}

const RowPtr& Representation::h_row(std::size_t i) const {
  require_position(i);
  return h_rows_[i];
}

std::size_t Representation::pair_cutoff(std::size_t i, std::size_t j) {
  require_position(i);
  require_position(j);
  // For j >= i the h row of point j received the g row of point i at
  // argument position i; for j < i the g row of point i received the h
  // row of point j. The recorded milestone bounds the shared support.
  return j >= i ? h_rows_[j]->milestone(i) : g_rows_[i]->milestone(j);
}

PairCertificate Representation::verify_pair(std::size_t i, std::size_t j,
                                            std::size_t stress_horizon) {
  require_position(i);
  require_position(j);
  PairCertificate cert;
  cert.i = i;
  cert.j = j;
  cert.horizon = stress_horizon;
  cert.cutoff = pair_cutoff(i, j);
  cert.expected = f_.eval(points_, i, j);

  Row& g = *g_rows_[i];
  Row& h = *h_rows_[j];
  Rational sum = 0;
  for (std::size_t n = 0; n <= cert.cutoff; ++n) {
    if (g.value(n) != 0) sum += g.value(n) * h.value(n);
  }
  cert.sum = sum;
  if (sum != cert.expected) {
    cert.ok = false;
    cert.failure = "sum up to cutoff " + std::to_string(cert.cutoff) + " is " +
                   to_string(sum) + ", expected " + to_string(cert.expected);
    return cert;
  }
  for (std::size_t n = cert.cutoff + 1; n <= stress_horizon; ++n) {
    if (g.value(n) != 0 && h.value(n) != 0) {
      cert.ok = false;
      cert.failure = "nonzero product at index " + std::to_string(n) +
                     " beyond cutoff " + std::to_string(cert.cutoff) + ": g = " +
                     to_string(g.value(n)) + ", h = " + to_string(h.value(n));
      return cert;
    }
  }
  cert.ok = true;
  return cert;
}

VerifyReport Representation::verify_all(std::size_t stress_horizon) {
  VerifyReport report;
  report.horizon = stress_horizon;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = 0; j < points_.size(); ++j) {
      PairCertificate cert = verify_pair(i, j, stress_horizon);
      report.ok = report.ok && cert.ok;
      report.certificates.push_back(std::move(cert));
      ++report.pairs_checked;
    }
  }
  return report;
}

SReport Representation::check_S(std::size_t required_stages) {
  return check_spair(SPair{g_rows_, h_rows_}, required_stages);
}

std::optional<std::size_t> Representation::last_nonzero_index(std::size_t i, std::size_t j) {
  const std::size_t cutoff = pair_cutoff(i, j);
  Row& g = *g_rows_[i];
  Row& h = *h_rows_[j];
  for (std::size_t n = cutoff + 1; n-- > 0;) {
    if (g.value(n) != 0 && h.value(n) != 0) return n;
  }
  return std::nullopt;
}

std::set<std::size_t> Representation::active_index_set(const std::vector<std::size_t>& rows,
                                                       const std::vector<std::size_t>& cols) {
  std::set<std::size_t> active;
  for (const std::size_t i : rows) {
    for (const std::size_t j : cols) {
      const std::size_t cutoff = pair_cutoff(i, j);
      Row& g = *g_rows_[i];
      Row& h = *h_rows_[j];
      for (std::size_t n = 0; n <= cutoff; ++n) {
        if (g.value(n) != 0 && h.value(n) != 0) active.insert(n);
      }
    }
  }
  return active;
}

std::size_t Representation::max_recorded_milestone() const {
  // read milestones at the canonical stage counts so the answer does not
  // depend on how far past queries have already driven the lazy rows
  std::size_t best = 0;
  for (const auto& r : g_rows_) {
    best = std::max(best, r->milestone(canonical_stage_count(*r) - 1));
  }
  for (const auto& r : h_rows_) {
    best = std::max(best, r->milestone(canonical_stage_count(*r) - 1));
  }
  return best;
}

std::size_t Representation::default_stress_horizon() const {
  return 4 * max_recorded_milestone();
}

void Representation::canonicalize() {
  for (const auto& r : g_rows_) r->ensure_stages(canonical_stage_count(*r));
  for (const auto& r : h_rows_) r->ensure_stages(canonical_stage_count(*r));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = 0; j < points_.size(); ++j) pair_cutoff(i, j);
  }
}

}  // namespace davies
