#include "hartman/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hartman/fft.hpp"
#include "hartman/parallel.hpp"

namespace hartman {

namespace {

constexpr std::int64_t kChunk = 1 << 14;

// e^{2πi·turns} with the turns reduced in long double first.
std::complex<double> turn(long double turns) {
  turns -= std::floor(turns);
  const double a = 2.0 * std::numbers::pi * static_cast<double>(turns);
  return {std::cos(a), std::sin(a)};
}

double wrap(double a) { return a - std::floor(a); }

// acc[n] += c·e^{2πinα} over the window (sign = −1 subtracts).
void add_tone(std::vector<std::complex<double>>& x, double alpha, std::complex<double> c) {
  const auto N = static_cast<std::int64_t>(x.size() / 2);
  ChunkPlan plan{-N, N + 1, kChunk};
  const std::complex<double> step = turn(static_cast<long double>(alpha));
  parallel_for(plan.count(), [&](std::size_t i) {
    const std::complex<double> z0 = c * turn(static_cast<long double>(plan.lo(i)) * alpha);
    double zr = z0.real(), zi = z0.imag();
    const double sr = step.real(), si = step.imag();
    for (std::int64_t n = plan.lo(i); n < plan.hi(i); ++n) {
      x[static_cast<std::size_t>(n + N)] += std::complex<double>(zr, zi);
      const double t = zr * sr - zi * si;
      zi = zr * si + zi * sr;
      zr = t;
    }
  });
}

struct Tone {
  double alpha;
  std::complex<double> c;
};

// m̂(x χ̄_α) for α near α₀ from one pass over the window:
//   (1/M) Σ_n y_n e^{−2πin(α−α₀)} = (1/M) Σ_k (−2πi(α−α₀)N)^k / k! · μ_k,
// with y_n = x_n e^{−2πinα₀} and μ_k = Σ_n (n/N)^k y_n. For |α − α₀| ≤ 1/M the
// series converges to rounding level within kTerms terms.
class LocalExpansion {
 public:
  static constexpr int kMaxTerms = 40;

  LocalExpansion(std::span<const std::complex<double>> x, double alpha0, double half_width) : alpha0_(alpha0) {
    const auto N = static_cast<std::int64_t>(x.size() / 2);
    N_ = std::max<std::int64_t>(N, 1);
    M_ = static_cast<double>(x.size());
    // Truncate once the largest possible term x^k/k! drops below rounding.
    const double reach = 2.0 * std::numbers::pi * static_cast<double>(N_) * half_width;
    double term = 1.0;
    kTerms = 1;
    while (kTerms < kMaxTerms && term > 1e-17) {
      term *= reach / static_cast<double>(kTerms);
      ++kTerms;
    }
    const int kTerms = this->kTerms;
    ChunkPlan plan{-N, N + 1, kChunk};
    std::vector<std::array<double, 2 * kMaxTerms>> partial(plan.count());
    parallel_for(plan.count(), [&](std::size_t c) {
      auto& acc = partial[c];
      acc.fill(0.0);
      const auto step = turn(-static_cast<long double>(alpha0));
      const auto z0 = turn(-static_cast<long double>(plan.lo(c)) * alpha0);
      double zr = z0.real(), zi = z0.imag();
      const double sr = step.real(), si = step.imag();
      const double inv = 1.0 / static_cast<double>(N_);
      // Eight samples at a time so the power recurrences run side by side.
      constexpr int L = 8;
      double yr[L], yi[L], t[L];
      for (std::int64_t n0 = plan.lo(c); n0 < plan.hi(c); n0 += L) {
        const int len = static_cast<int>(std::min<std::int64_t>(L, plan.hi(c) - n0));
        for (int j = 0; j < L; ++j) {
          if (j < len) {
            const auto& v = x[static_cast<std::size_t>(n0 + j + N)];
            yr[j] = v.real() * zr - v.imag() * zi;
            yi[j] = v.real() * zi + v.imag() * zr;
            t[j] = static_cast<double>(n0 + j) * inv;
            const double nz = zr * sr - zi * si;
            zi = zr * si + zi * sr;
            zr = nz;
          } else {
            yr[j] = yi[j] = t[j] = 0.0;
          }
        }
        for (int k = 0; k < kTerms; ++k) {
          double sr_k = 0.0, si_k = 0.0;
          for (int j = 0; j < L; ++j) {
            sr_k += yr[j];
            si_k += yi[j];
            yr[j] *= t[j];
            yi[j] *= t[j];
          }
          acc[2 * k] += sr_k;
          acc[2 * k + 1] += si_k;
        }
        if (((n0 - plan.lo(c)) & 1023) == 1024 - L) {
          const auto re = turn(-static_cast<long double>(n0 + L) * alpha0);
          zr = re.real();
          zi = re.imag();
        }
      }
    });
    mu_.assign(static_cast<std::size_t>(kTerms), {});
    for (const auto& acc : partial) {
      for (int k = 0; k < kTerms; ++k) mu_[static_cast<std::size_t>(k)] += std::complex<double>(acc[2 * k], acc[2 * k + 1]);
    }
  }

  std::complex<double> operator()(double alpha) const {
    const double d = alpha - alpha0_;
    // Horner in w = −2πi·d·N with the 1/k! folded in.
    const std::complex<double> w(0.0, -2.0 * std::numbers::pi * d * static_cast<double>(N_));
    std::complex<double> sum = mu_.back();
    for (int k = kTerms - 1; k >= 1; --k) sum = mu_[static_cast<std::size_t>(k - 1)] + w * sum / static_cast<double>(k);
    return sum / M_;
  }

 private:
  double alpha0_;
  int kTerms = 1;
  std::int64_t N_ = 1;
  double M_ = 1.0;
  std::vector<std::complex<double>> mu_;
};

class Cleaner {
 public:
  Cleaner(std::span<const std::complex<double>> values, const SpectrumOptions& options)
      : x_(values.begin(), values.end()), r_(x_), opts_(options) {
    M_ = static_cast<std::int64_t>(x_.size());
    N_ = M_ / 2;
    Dft dft(x_.size());
    auto X = dft.forward(x_);
    R_.resize(X.size());
    suppressed_.assign(X.size(), false);
    for (std::int64_t f = 0; f < M_; ++f) {
      // Window starts at n = −N: multiply by e^{2πiNf/M}.
      const auto shift = static_cast<long double>((static_cast<Int128>(N_) * f) % M_) / M_;
      R_[static_cast<std::size_t>(f)] = X[static_cast<std::size_t>(f)] * turn(shift) / static_cast<double>(M_);
    }
  }

  void run() {
    for (std::size_t it = 0; it < opts_.max_iterations; ++it) {
      std::size_t best = 0;
      double mag = -1.0;
      for (std::size_t f = 0; f < R_.size(); ++f) {
        if (suppressed_[f]) continue;
        const double m = std::norm(R_[f]);
        if (m > mag) {
          mag = m;
          best = f;
        }
      }
      if (std::sqrt(mag) < opts_.theta / 2.0) break;
      const double center = static_cast<double>(best) / static_cast<double>(M_);
      // A detection next to an existing tone is a correction of that tone.
      std::size_t near = tones_.size();
      for (std::size_t p = 0; p < tones_.size(); ++p) {
        if (std::fabs(circle(tones_[p].alpha - center)) < 1.0 / static_cast<double>(M_)) near = p;
      }
      if (near < tones_.size()) {
        // Repeated corrections of one tone mean the bin holds unresolvable leakage.
        if (++corrections_[near] > 4) {
          suppressed_[best] = true;
          continue;
        }
        restore(near);
        refit(near, tones_[near].alpha, 1.0 / static_cast<double>(M_));
      } else {
        tones_.push_back({center, 0.0});
        corrections_.push_back(0);
        refit(tones_.size() - 1, center, 1.0 / static_cast<double>(M_));
      }
    }
    for (int s = 0; s < opts_.polish_sweeps; ++s) {
      for (std::size_t p = 0; p < tones_.size(); ++p) {
        // Weak tones only matter through their leakage; their position is never reported.
        if (std::abs(tones_[p].c) < opts_.theta / 2.0) continue;
        restore(p);
        refit(p, tones_[p].alpha, 0.5 / static_cast<double>(M_));
      }
    }
  }

  // Joint least squares over all tones: Σ_q D(α_p − α_q) c_q = m̂(x χ̄_p).
  void solve_jointly() {
    const std::size_t P = tones_.size();
    if (P == 0) return;
    Eigen::MatrixXd G(P, P);
    Eigen::VectorXd br(P), bi(P);
    for (std::size_t p = 0; p < P; ++p) {
      for (std::size_t q = 0; q < P; ++q) G(p, q) = dirichlet(tones_[p].alpha - tones_[q].alpha, M_);
      const auto b = window_coefficient(x_, tones_[p].alpha);
      br(p) = b.real();
      bi(p) = b.imag();
    }
    auto ldlt = G.ldlt();
    Eigen::VectorXd cr = ldlt.solve(br), ci = ldlt.solve(bi);
    r_ = x_;
    for (std::size_t p = 0; p < P; ++p) {
      tones_[p].c = {cr(p), ci(p)};
      add_tone(r_, tones_[p].alpha, -tones_[p].c);
    }
  }

  const std::vector<Tone>& tones() const { return tones_; }
  const std::vector<std::complex<double>>& residual() const { return r_; }
  std::int64_t M() const { return M_; }

 private:
  static double circle(double d) { return d - std::round(d); }

  void restore(std::size_t p) {
    add_tone(r_, tones_[p].alpha, tones_[p].c);
    update_spectrum(tones_[p].alpha, tones_[p].c);
    tones_[p].c = 0.0;
  }

  void refit(std::size_t p, double center, double half_width) {
    // Golden-section search for the maximum of |m̂(r χ̄_α)| on the bracket.
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = center - half_width, b = center + half_width;
    double c = b - g * (b - a), d = a + g * (b - a);
    const LocalExpansion local(r_, center, half_width);
    double fc = std::abs(local(c)), fd = std::abs(local(d));
    while (b - a > opts_.refine_tolerance) {
      if (fc > fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = std::abs(local(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = std::abs(local(d));
      }
    }
    const double mid = (a + b) / 2.0;
    const auto coef = local(mid);
    const double alpha = wrap(mid);
    tones_[p] = {alpha, coef};
    add_tone(r_, alpha, -coef);
    update_spectrum(alpha, -coef);
  }

  // R[f] += c·D(α − f/M) with D(α − f/M) = (−1)^f sin(πMα) / (M sin(π(α − f/M))).
  void update_spectrum(double alpha, std::complex<double> c) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(M_) * alpha);
    const double Md = static_cast<double>(M_);
    ChunkPlan plan{0, M_, kChunk};
    parallel_for(plan.count(), [&](std::size_t i) {
      // sin(π(α − f/M)) by rotating e^{iπ(α − f/M)} through e^{−iπ/M}.
      auto w = turn(static_cast<long double>(alpha) / 2.0L - static_cast<long double>(plan.lo(i)) / (2.0L * M_));
      const auto rot = turn(-1.0L / (2.0L * M_));
      double wr = w.real(), wi = w.imag();
      const double rr = rot.real(), ri = rot.imag();
      for (std::int64_t f = plan.lo(i); f < plan.hi(i); ++f) {
        const double den = Md * wi;
        double D;
        if (std::fabs(den) < 1e-6) {
          D = dirichlet(alpha - static_cast<double>(f) / Md, M_);
        } else {
          D = ((f & 1) ? -s : s) / den;
        }
        R_[static_cast<std::size_t>(f)] += std::complex<double>(c.real() * D, c.imag() * D);
        const double t = wr * rr - wi * ri;
        wi = wr * ri + wi * rr;
        wr = t;
      }
    });
  }

  std::vector<std::complex<double>> x_, r_, R_;
  std::vector<Tone> tones_;
  std::vector<int> corrections_;
  std::vector<bool> suppressed_;
  std::int64_t M_ = 1, N_ = 0;
  SpectrumOptions opts_;
};

}  // namespace

double dirichlet(double u, std::int64_t M) {
  const double Md = static_cast<double>(M);
  u -= std::round(u);
  const double den = Md * std::sin(std::numbers::pi * u);
  if (std::fabs(den) < 1e-12) return 1.0;
  return std::sin(std::numbers::pi * Md * u) / den;
}

std::complex<double> window_coefficient(std::span<const std::complex<double>> values, double alpha) {
  const auto N = static_cast<std::int64_t>(values.size() / 2);
  ChunkPlan plan{-N, N + 1, kChunk};
  std::vector<std::complex<double>> partial(plan.count());
  parallel_for(plan.count(), [&](std::size_t i) {
    // kLanes independent phase recurrences hide the multiply latency.
    constexpr int kLanes = 8;
    double zr[kLanes], zi[kLanes], ar[kLanes] = {}, ai[kLanes] = {};
    for (int l = 0; l < kLanes; ++l) {
      const auto z0 = turn(-static_cast<long double>(plan.lo(i) + l) * alpha);
      zr[l] = z0.real();
      zi[l] = z0.imag();
    }
    const auto stepk = turn(-static_cast<long double>(kLanes) * alpha);
    const double sr = stepk.real(), si = stepk.imag();
    const auto* v = values.data() + (plan.lo(i) + N);
    const std::int64_t len = plan.hi(i) - plan.lo(i);
    std::int64_t j = 0;
    for (; j + kLanes <= len; j += kLanes) {
      for (int l = 0; l < kLanes; ++l) {
        const double vr = v[j + l].real(), vi = v[j + l].imag();
        ar[l] += vr * zr[l] - vi * zi[l];
        ai[l] += vr * zi[l] + vi * zr[l];
        const double t = zr[l] * sr - zi[l] * si;
        zi[l] = zr[l] * si + zi[l] * sr;
        zr[l] = t;
      }
    }
    for (int l = 0; j < len; ++j, ++l) {
      const double vr = v[j].real(), vi = v[j].imag();
      ar[l] += vr * zr[l] - vi * zi[l];
      ai[l] += vr * zi[l] + vi * zr[l];
    }
    double sum_r = 0.0, sum_i = 0.0;
    for (int l = 0; l < kLanes; ++l) {
      sum_r += ar[l];
      sum_i += ai[l];
    }
    partial[i] = {sum_r, sum_i};
  });
  std::complex<double> total{};
  for (const auto& p : partial) total += p;
  return total / static_cast<double>(values.size());
}

double minimum_theta(double sup, std::int64_t N) { return sup / (2.0 * static_cast<double>(2 * N + 1)); }

RationalityResult classify_rationality(double alpha, double residual, std::int64_t Q) {
  RationalityResult r;
  auto m = match_rational(alpha, std::max<std::int64_t>(1, Q), std::max(residual, 1e-15));
  if (m) {
    r.rational = true;
    r.p = m->p;
    r.q = m->q;
    r.error = m->error;
  } else {
    r.error = circle_distance(alpha);
  }
  return r;
}

RationalityResult classify_rationality(const Character& alpha, std::int64_t Q) {
  if (auto q = alpha.as_rational()) {
    RationalityResult r;
    if (boost::multiprecision::denominator(*q) <= Q) {
      r.rational = true;
      r.p = boost::multiprecision::numerator(*q).convert_to<std::int64_t>();
      r.q = boost::multiprecision::denominator(*q).convert_to<std::int64_t>();
    }
    return r;
  }
  if (alpha.is_exact()) return {};  // exactly irrational
  return classify_rationality(alpha.value(), alpha.tolerance(), Q);
}

SpectrumReport scan_spectrum(const HartmanFunction& phi, std::int64_t N, const SpectrumOptions& options) {
  if (N < 1) throw std::invalid_argument("window radius must be at least 1");
  auto values = phi.window(N);
  return scan_spectrum_of_window(values, options);
}

SpectrumReport scan_spectrum_of_window(std::span<const std::complex<double>> values, const SpectrumOptions& options) {
  if (!(options.theta > 0.0)) throw std::invalid_argument("theta must be positive");
  if (values.size() % 2 == 0) throw std::invalid_argument("a symmetric window has odd length");
  const auto N = static_cast<std::int64_t>(values.size() / 2);
  double sup = 0.0;
  for (const auto& v : values) sup = std::max(sup, std::abs(v));
  if (options.theta < minimum_theta(sup, N)) {
    throw std::invalid_argument("window too small for theta: need theta >= " + std::to_string(minimum_theta(sup, N)) +
                                " at N = " + std::to_string(N));
  }

  Cleaner cleaner(values, options);
  cleaner.run();
  cleaner.solve_jointly();

  const double M = static_cast<double>(cleaner.M());
  double energy = 0.0;
  for (const auto& v : cleaner.residual()) energy += std::norm(v);
  SpectrumReport report;
  report.window_radius = N;
  report.theta = options.theta;
  report.residual_rms = std::sqrt(energy / M);

  // Merge tones closer than the dedup tolerance, then threshold.
  std::vector<Tone> tones = cleaner.tones();
  std::sort(tones.begin(), tones.end(), [](const Tone& a, const Tone& b) { return a.alpha < b.alpha; });
  std::vector<Tone> merged;
  const double dedup = 10.0 * options.refine_tolerance;
  for (const auto& t : tones) {
    if (!merged.empty() && std::fabs(t.alpha - merged.back().alpha) < dedup) {
      merged.back().c += t.c;
    } else {
      merged.push_back(t);
    }
  }
  if (merged.size() > 1 && 1.0 - merged.back().alpha + merged.front().alpha < dedup) {
    merged.front().c += merged.back().c;
    merged.pop_back();
  }
  for (const auto& t : merged) {
    const double mag = std::abs(t.c);
    if (mag < options.theta) continue;
    const double u = std::max(10.0 * options.refine_tolerance,
                              options.uncertainty_factor * report.residual_rms / (mag * std::pow(M, 1.5)));
    Peak p;
    p.alpha = Character::floating(t.alpha, u);
    p.coefficient = t.c;
    p.residual = std::abs(window_coefficient(cleaner.residual(), t.alpha));
    const double q_cap = std::sqrt(options.certify.false_match_budget / (2.0 * u));
    const auto Q = static_cast<std::int64_t>(std::min<double>(static_cast<double>(options.certify.denominator_bound), q_cap));
    auto cls = classify_rationality(t.alpha, u, Q);
    if (cls.rational) p.rational = RationalMatch{cls.p, cls.q, cls.error};
    report.peaks.push_back(std::move(p));
  }
  try {
    report.generated_subgroup = subgroup_of(report, options.certify);
  } catch (const CannotCertify& e) {
    report.presentation_certified = false;
    report.presentation_detail = e.what();
    for (const auto& p : report.peaks) report.generated_subgroup.generators.push_back(p.alpha);
  }
  return report;
}

SpectralSubgroup subgroup_of(const SpectrumReport& report, const CertifyOptions& options) {
  std::vector<const Peak*> order;
  for (const auto& p : report.peaks) order.push_back(&p);
  std::stable_sort(order.begin(), order.end(),
                   [](const Peak* a, const Peak* b) { return std::abs(a->coefficient) > std::abs(b->coefficient); });
  std::vector<Character> chars;
  for (const auto* p : order) chars.push_back(p->alpha);
  SpectralSubgroup out;
  if (chars.empty()) return out;
  auto pres = present(chars, options);
  out.generators = pres.free_generators;
  if (pres.torsion_order > 1) out.generators.push_back(Character::rational(Rational(1, pres.torsion_order)));
  return out;
}

}  // namespace hartman
