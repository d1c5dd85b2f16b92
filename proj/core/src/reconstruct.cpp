#include "hartman/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hartman/continued_fraction.hpp"
#include "hartman/fejer_weil.hpp"
#include "hartman/lattice.hpp"
#include "hartman/mean_engine.hpp"
#include "hartman/parallel.hpp"

namespace hartman {

namespace {

constexpr std::int64_t kChunk = 1 << 14;

std::complex<double> turn(long double t) {
  t -= std::floor(t);
  const auto a = static_cast<double>(2.0L * std::numbers::pi_v<long double> * t);
  return {std::cos(a), std::sin(a)};
}

struct Term {
  double alpha;  ///< rotation number of the C_Γ character
  std::complex<double> coefficient;
  Frequency frequency;
};

// errors[o] = (1/M) Σ_n |Σ_p damping_o(p)·c_p·e^{2πinα_p} − x_n| for each order o.
std::vector<double> synthesis_errors(std::span<const std::complex<double>> x, const std::vector<Term>& terms,
                                     const std::vector<std::int64_t>& orders) {
  const auto N = static_cast<std::int64_t>(x.size() / 2);
  const std::size_t O = orders.size();
  std::vector<std::vector<double>> damp(terms.size(), std::vector<double>(O));
  for (std::size_t p = 0; p < terms.size(); ++p) {
    for (std::size_t o = 0; o < O; ++o) damp[p][o] = FejerOperator(orders[o], static_cast<int>(terms[p].frequency.torus.size())).damping(terms[p].frequency);
  }
  ChunkPlan plan{-N, N + 1, kChunk};
  std::vector<std::vector<double>> partial(plan.count(), std::vector<double>(O, 0.0));
  parallel_for(plan.count(), [&](std::size_t c) {
    const std::int64_t lo = plan.lo(c), hi = plan.hi(c);
    const auto len = static_cast<std::size_t>(hi - lo);
    std::vector<std::complex<double>> acc(len * O);
    for (std::size_t p = 0; p < terms.size(); ++p) {
      const auto step = turn(static_cast<long double>(terms[p].alpha));
      std::complex<double> z = turn(static_cast<long double>(lo) * terms[p].alpha);
      for (std::size_t i = 0; i < len; ++i) {
        if ((i & 1023) == 0) z = turn(static_cast<long double>(lo + static_cast<std::int64_t>(i)) * terms[p].alpha);
        const auto v = terms[p].coefficient * z;
        for (std::size_t o = 0; o < O; ++o) acc[i * O + o] += damp[p][o] * v;
        z *= step;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      const auto& xv = x[static_cast<std::size_t>(lo + N) + i];
      for (std::size_t o = 0; o < O; ++o) partial[c][o] += std::abs(acc[i * O + o] - xv);
    }
  });
  std::vector<double> out(O, 0.0);
  for (const auto& p : partial) {
    for (std::size_t o = 0; o < O; ++o) out[o] += p[o];
  }
  for (auto& v : out) v /= static_cast<double>(x.size());
  return out;
}

// The frequencies generate ℤ^k × ℤ/g exactly when their lattice (with the torsion
// relation) has determinant one.
bool frequencies_generate(const std::vector<Term>& terms, int k, std::int64_t g) {
  const std::size_t cols = static_cast<std::size_t>(k) + (g > 1 ? 1 : 0);
  if (cols == 0) return true;
  lattice::IntMatrix rows;
  for (const auto& t : terms) {
    lattice::IntVector row;
    for (auto v : t.frequency.torus) row.emplace_back(v);
    if (g > 1) row.emplace_back(t.frequency.finite.front());
    rows.push_back(std::move(row));
  }
  if (g > 1) {
    lattice::IntVector row(cols, Integer(0));
    row.back() = g;
    rows.push_back(std::move(row));
  }
  const auto hnf = lattice::hermite_form(rows);
  if (hnf.rows.size() != cols) return false;
  for (std::size_t i = 0; i < cols; ++i) {
    if (hnf.rows[i][hnf.pivots[i]] != 1) return false;
  }
  return true;
}

}  // namespace

Reconstruction reconstruct(const HartmanFunction& samples, const ReconstructParams& params) {
  if (params.order < 1) throw std::invalid_argument("synthesis order must be at least 1");
  std::int64_t N = params.N;
  if (N <= 0) {
    const auto r = samples.radius();
    if (!r) throw std::invalid_argument("reconstruct needs N for an unbounded function");
    N = *r;
  }
  samples.require_window(N);
  const auto x = samples.window(N);

  Reconstruction out;
  auto& rep = out.report;
  rep.spectrum = scan_spectrum_of_window(x, params.spectrum);

  std::vector<const Peak*> order;
  for (const auto& p : rep.spectrum.peaks) {
    if (!p.alpha.is_trivial() && circle_distance(p.alpha.value()) > p.alpha.tolerance()) order.push_back(&p);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Peak* a, const Peak* b) { return std::abs(a->coefficient) > std::abs(b->coefficient); });

  std::vector<Term> terms;
  int k = 0;
  std::int64_t g = 1;
  if (order.empty()) {
    // Nothing but (possibly) the mean: the trivial compactification.
    rep.empty_spectrum = true;
    rep.certification = Certification::exact;
    out.comp = Compactification();
  } else {
    std::vector<Character> chars;
    for (const auto* p : order) chars.push_back(p->alpha);
    const auto pres = present(chars, params.spectrum.certify);
    k = pres.rank();
    g = pres.torsion_order;
    out.comp = g > 1 ? Compactification::from_embedding(pres.free_generators, {g}, {1}, params.spectrum.certify)
                     : Compactification::from_embedding(pres.free_generators, {}, {}, params.spectrum.certify);
    rep.certification = pres.certification;
    for (std::size_t i = 0; i < order.size(); ++i) {
      Frequency m;
      for (const auto& v : pres.generator_coordinates[i].torus) m.torus.push_back(v.convert_to<std::int64_t>());
      if (g > 1) m.finite.push_back(pres.generator_coordinates[i].torsion.convert_to<std::int64_t>());
      const double a = out.comp.character_of(m).value();
      terms.push_back({a, order[i]->coefficient, m});
      rep.residuals.push_back({order[i]->alpha.value(), order[i]->coefficient, order[i]->residual, m,
                               circle_distance(a - order[i]->alpha.value())});
    }
    std::sort(rep.residuals.begin(), rep.residuals.end(),
              [](const FrequencyResidual& a, const FrequencyResidual& b) { return a.alpha < b.alpha; });
  }

  // The zero frequency carries the mean: the jointly fitted coefficient when the scan
  // found a peak there, else the window average.
  std::complex<double> mean = cesaro_mean_of_window(x).value;
  for (const auto& p : rep.spectrum.peaks) {
    if (p.alpha.is_trivial() || circle_distance(p.alpha.value()) <= p.alpha.tolerance()) mean = p.coefficient;
  }
  Frequency zero;
  zero.torus.assign(static_cast<std::size_t>(k), 0);
  if (g > 1) zero.finite = {0};
  terms.push_back({0.0, mean, zero});

  out.realization = TrigPolynomial(out.comp.shape());
  const FejerOperator op(params.order, k);
  for (const auto& t : terms) {
    const double d = op.damping(t.frequency);
    if (d > 0.0) out.realization.add_term(t.frequency, t.coefficient * d);
  }

  std::vector<std::int64_t> orders;
  for (auto o : params.error_orders) {
    if (o >= 1 && o <= params.order) orders.push_back(o);
  }
  if (std::find(orders.begin(), orders.end(), params.order) == orders.end()) orders.push_back(params.order);
  std::sort(orders.begin(), orders.end());
  const auto errors = synthesis_errors(x, terms, orders);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    rep.l1_errors.emplace_back(orders[i], errors[i]);
    if (orders[i] == params.order) rep.fitted_l1 = errors[i];
  }

  std::vector<Term> fitted;
  for (const auto& t : terms) {
    if (op.damping(t.frequency) > 0.0 && std::abs(t.coefficient) > 0.0) fitted.push_back(t);
  }
  rep.kernel_trivial = frequencies_generate(fitted, k, g);
  return out;
}

EquivalenceResult equivalence_check(const Compactification& c1, const Compactification& c2,
                                    const CertifyOptions& options) {
  EquivalenceResult r;
  r.forward = covers(c1, c2, options);
  r.backward = covers(c2, c1, options);
  r.same_shape = c1.torus_rank() == c2.torus_rank() && c1.invariant_factors() == c2.invariant_factors();
  if (r.forward.verdict == Verdict::no || r.backward.verdict == Verdict::no) {
    r.verdict = Verdict::no;
    r.detail = r.forward.verdict == Verdict::no ? "the first is not covered by the second"
                                                : "the second is not covered by the first";
  } else if (r.forward.verdict == Verdict::yes && r.backward.verdict == Verdict::yes) {
    // Mutual covering forces isomorphic groups; a shape mismatch means a bug upstream.
    r.verdict = r.same_shape ? Verdict::yes : Verdict::undecided;
    r.detail = r.same_shape ? c1.describe() : "mutual covering but different normal forms";
  } else {
    r.verdict = Verdict::undecided;
    r.detail = r.forward.detail.empty() ? r.backward.detail : r.forward.detail;
  }
  return r;
}

}  // namespace hartman
