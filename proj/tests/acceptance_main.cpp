// Acceptance gate for the library: seven end-to-end checks, one line of
// output each, exit code 0 only if every one of them holds.

#include "davies/builder.hpp"
#include "davies/funcio.hpp"
#include "davies/rank.hpp"
#include "davies/theta.hpp"

#include "testutil.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

using davies::canonical_stage_count;
using davies::certify_exp_matrix_nonsingular;
using davies::CertVerdict;
using davies::check_run_conclusions;
using davies::exact_rank;
using davies::lowerbound_check;
using davies::PairFunction;
using davies::Rational;
using davies::RationalMatrix;
using davies::Representation;
using davies::representation_from_json;
using davies::representation_to_json;
using davies::RowPtr;
using davies::theta_new;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
  return static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

struct PipelineOutcome {
  bool hand_trace_ok = false;
  bool runs_ok = false;
  bool growth_ok = false;
  long hand_trace_ms = 0;
  long runs_ms = 0;
  long growth_ms = 0;
  std::vector<std::string> rep_texts;   // the 1x1 hand-trace rep, then one per table size
  std::vector<fs::path> rep_files;
  std::vector<Representation> reps;     // final representation per table size
};

// --- the construction pipeline (shared by the first three checks and the
// --- determinism rerun, which must reproduce every emitted file)

bool hand_trace(std::vector<std::string>& texts) {
  bool ok = true;

  const RowPtr base = theta_new({}, {}, {});
  const std::vector<Rational> base_expect{1, 1, 0, 1, 0, 0, 1};
  for (std::size_t i = 0; i < base_expect.size(); ++i) {
    ok = ok && base->value(i) == base_expect[i];
  }
  const std::vector<std::size_t> milestone_expect{0, 1, 3, 6};
  for (std::size_t k = 0; k < milestone_expect.size(); ++k) {
    ok = ok && base->milestone(k) == milestone_expect[k];
  }

  Representation rep(PairFunction::from_table({{Rational(5)}}));
  rep.add_point("x0");
  for (std::size_t i = 0; i < base_expect.size(); ++i) {
    ok = ok && rep.eval_g(0, i) == base_expect[i];
  }
  const std::vector<Rational> h_expect{5, 0, 0, 0, 1};
  for (std::size_t i = 0; i < h_expect.size(); ++i) {
    ok = ok && rep.eval_h(0, i) == h_expect[i];
  }
  ok = ok && rep.pair_cutoff(0, 0) == 4;
  const auto cert = rep.verify_pair(0, 0, rep.default_stress_horizon());
  ok = ok && cert.ok && cert.sum == 5 && cert.expected == 5;

  texts.push_back(representation_to_json(rep));
  return ok;
}

bool randomized_runs() {
  testutil::SplitMix rng(2026);
  std::vector<RowPtr> pool;
  for (int run = 0; run < 200; ++run) {
    if (run % 8 == 0) pool.clear();

    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::swap(order[i], order[i + rng.below(order.size() - i)]);
    }

    const std::size_t target_len = std::min<std::size_t>(rng.below(7), pool.size());  // length <= 6
    std::vector<Rational> targets;
    std::vector<RowPtr> h_args;
    for (std::size_t i = 0; i < target_len; ++i) {
      targets.push_back(testutil::rand_rational(rng));
      h_args.push_back(pool[order[i]]);
    }
    // every pooled run becomes an argument, so each new run is chained to
    // all of them; rows the construction never received could share support
    // with an h argument everywhere and stall the stage search
    std::vector<RowPtr> g_args;
    for (std::size_t i = target_len; i < order.size(); ++i) {
      g_args.push_back(pool[order[i]]);
    }

    const RowPtr row = theta_new(std::move(targets), std::move(g_args), std::move(h_args));
    row->ensure_stages(canonical_stage_count(*row));
    const std::size_t horizon = 4 * row->milestones().back();
    if (!check_run_conclusions(*row, horizon).ok) return false;
    pool.push_back(row);
  }
  return true;
}

bool incremental_growth(std::vector<std::string>& texts, std::vector<Representation>* keep) {
  for (std::size_t m = 1; m <= 10; ++m) {
    Representation rep(PairFunction::rand_table(1000 + m, m));
    for (std::size_t t = 0; t < m; ++t) {
      rep.add_point("x" + std::to_string(t));
      if (!rep.verify_all(rep.default_stress_horizon()).ok) return false;
      if (!rep.check_S(1).ok) return false;
    }

    const std::string text = representation_to_json(rep);
    try {
      Representation loaded = representation_from_json(text);
      if (representation_to_json(loaded) != text) return false;
    } catch (const std::exception&) {
      return false;
    }
    texts.push_back(text);
    if (keep) keep->push_back(std::move(rep));
  }
  return true;
}

PipelineOutcome run_pipeline(const std::string& suffix, bool keep_reps) {
  PipelineOutcome out;

  auto start = Clock::now();
  out.hand_trace_ok = hand_trace(out.rep_texts);
  out.hand_trace_ms = ms_since(start);

  start = Clock::now();
  out.runs_ok = randomized_runs();
  out.runs_ms = ms_since(start);

  start = Clock::now();
  out.growth_ok = incremental_growth(out.rep_texts, keep_reps ? &out.reps : nullptr);
  out.growth_ms = ms_since(start);

  for (std::size_t i = 0; i < out.rep_texts.size(); ++i) {
    const fs::path path = fs::temp_directory_path() /
                          ("davies_accept_rep_" + suffix + "_" + std::to_string(i) + ".json");
    davies::write_text_file(path, out.rep_texts[i]);
    out.rep_files.push_back(path);
  }
  return out;
}

// --- the remaining checks

bool rank_lower_bounds(std::vector<Representation>& reps) {
  for (auto& rep : reps) {
    std::vector<std::size_t> all(rep.point_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (!lowerbound_check(rep, all, all).ok) return false;
  }

  testutil::SplitMix rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng.below(4);
    const std::size_t inner = 1 + rng.below(4);
    const std::size_t cols = 1 + rng.below(4);
    RationalMatrix a(rows, inner);
    RationalMatrix b(inner, cols);
    for (auto& v : a.data) v = rng.below(3) == 0 ? Rational(0) : testutil::rand_rational(rng);
    for (auto& v : b.data) v = rng.below(3) == 0 ? Rational(0) : testutil::rand_rational(rng);
    RationalMatrix prod(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        Rational sum = 0;
        for (std::size_t k = 0; k < inner; ++k) sum += a.at(r, k) * b.at(k, c);
        prod.at(r, c) = sum;
      }
    }
    if (exact_rank(prod) > inner) return false;
  }
  return true;
}

std::vector<Rational> distinct_nodes(testutil::SplitMix& rng, std::size_t n) {
  // sixteenths in [-4, 4]
  std::vector<Rational> nodes;
  while (nodes.size() < n) {
    const long num = static_cast<long>(rng.below(129)) - 64;
    const Rational candidate(num, 16);
    if (std::find(nodes.begin(), nodes.end(), candidate) == nodes.end()) {
      nodes.push_back(candidate);
    }
  }
  return nodes;
}

bool exp_certifications() {
  testutil::SplitMix rng(505);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const std::vector<Rational> a = distinct_nodes(rng, n);
    const std::vector<Rational> b = distinct_nodes(rng, n);

    Rational eps = 1;
    for (std::size_t i = 0; i < 40 * n; ++i) eps /= 10;

    const auto cert = certify_exp_matrix_nonsingular(a, b, eps, 20);
    if (cert.verdict != CertVerdict::kNonsingularCertified) return false;
    if (cert.refinements > 20) return false;
  }
  return true;
}

bool rank_oracle_agreement() {
  testutil::SplitMix rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng.below(4);
    const std::size_t cols = 1 + rng.below(4);
    RationalMatrix m(rows, cols);
    for (auto& v : m.data) v = rng.below(3) == 0 ? Rational(0) : testutil::rand_rational(rng);
    if (exact_rank(m) != testutil::rank_reference(m)) return false;
  }
  return true;
}

bool reruns_match(const PipelineOutcome& first, const PipelineOutcome& second) {
  if (!(second.hand_trace_ok && second.runs_ok && second.growth_ok)) return false;
  if (first.rep_texts != second.rep_texts) return false;
  if (first.rep_files.size() != second.rep_files.size()) return false;
  for (std::size_t i = 0; i < first.rep_files.size(); ++i) {
    if (davies::read_text_file(first.rep_files[i]) !=
        davies::read_text_file(second.rep_files[i])) {
      return false;
    }
  }
  return true;
}

bool report(int number, const std::string& summary, bool ok, long ms) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << summary
            << " (" << ms << " ms)\n";
  return ok;
}

}  // namespace

int main() {
  bool all = true;

  PipelineOutcome first = run_pipeline("a", true);
  all &= report(1, "hand-trace conformance", first.hand_trace_ok && first.hand_trace_ms < 1000,
                first.hand_trace_ms);
  all &= report(2, "200 randomized runs satisfy the run conclusions",
                first.runs_ok && first.runs_ms < 30000, first.runs_ms);
  all &= report(3, "incremental growth verifies and round-trips at sizes 1..10",
                first.growth_ok && first.growth_ms < 60000, first.growth_ms);

  auto start = Clock::now();
  const bool c4 = rank_lower_bounds(first.reps);
  all &= report(4, "active index sets bound grid ranks", c4, ms_since(start));

  start = Clock::now();
  const bool c5 = exp_certifications();
  const long c5_ms = ms_since(start);
  all &= report(5, "50 exponential systems certified nonsingular", c5 && c5_ms < 60000, c5_ms);

  start = Clock::now();
  const bool c6 = rank_oracle_agreement();
  all &= report(6, "exact rank agrees with minor enumeration", c6, ms_since(start));

  start = Clock::now();
  const PipelineOutcome second = run_pipeline("b", false);
  const bool c7 = reruns_match(first, second);
  all &= report(7, "independent reruns emit byte-identical representations", c7,
                ms_since(start));

  return all ? 0 : 1;
}
