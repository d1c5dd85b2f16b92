#include "hartman/distance_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hartman/fft.hpp"
#include "hartman/mean_engine.hpp"
#include "hartman/parallel.hpp"

namespace hartman {

namespace {

double shifted_sum(const std::vector<std::complex<double>>& x, std::int64_t offset, std::int64_t N, std::int64_t g,
                   bool real) {
  // Σ_{|n|≤N} |x(n) − x(n+g)| with x(n) = x[n + offset]; pairwise blocks keep rounding small.
  double total = 0.0;
  double block = 0.0;
  int count = 0;
  for (std::int64_t n = -N; n <= N; ++n) {
    const auto& a = x[static_cast<std::size_t>(n + offset)];
    const auto& b = x[static_cast<std::size_t>(n + g + offset)];
    if (real) {
      block += std::fabs(a.real() - b.real());
    } else {
      const double dr = a.real() - b.real(), di = a.imag() - b.imag();
      block += std::sqrt(dr * dr + di * di);
    }
    if (++count == 1024) {
      total += block;
      block = 0.0;
      count = 0;
    }
  }
  return total + block;
}

bool all_real(const std::vector<std::complex<double>>& x) {
  return std::all_of(x.begin(), x.end(), [](const std::complex<double>& v) { return v.imag() == 0.0; });
}

const StepFunction& step_realization(const HartmanFunction& phi) {
  if (!phi.is_realized()) throw std::invalid_argument("a realized function is required");
  const auto* f = std::get_if<StepFunction>(&phi.as_realized().realization);
  if (f == nullptr) throw std::invalid_argument("a rational step-function realization is required");
  return *f;
}

// Distinct values of x, or nothing once there are more than `limit`.
std::optional<std::vector<std::complex<double>>> few_values(const std::vector<std::complex<double>>& x, std::size_t limit) {
  std::set<std::pair<double, double>> seen;
  for (const auto& v : x) {
    seen.emplace(v.real(), v.imag());
    if (seen.size() > limit) return std::nullopt;
  }
  std::vector<std::complex<double>> out;
  for (const auto& [re, im] : seen) out.emplace_back(re, im);
  return out;
}

std::size_t smooth_size(std::size_t n) {
  // Smallest 2^a·3^b·5^c ≥ n.
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

// S(g) = Σ_{|n|≤N} |x(n) − x(n+g)| for all |g| ≤ G at once. With a_v = 1[x = v] on [−N, N] and
// c_v(m) = |v − x(m)| on the padded window, S(g) = Σ_v Σ_n a_v(n) c_v(n+g), a sum of correlations.
std::vector<double> shifted_sums_fft(const std::vector<std::complex<double>>& x, const std::vector<std::complex<double>>& values,
                                     std::int64_t N, std::int64_t G) {
  const std::size_t L = x.size();
  const std::size_t P = smooth_size(L);
  Dft dft(P);
  std::vector<std::complex<double>> total(P, 0.0), a(P), c(P);
  for (const auto& v : values) {
    std::fill(a.begin(), a.end(), 0.0);
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < L; ++i) {
      const auto m = static_cast<std::int64_t>(i) - N - G;
      if (m >= -N && m <= N && x[i] == v) a[i] = 1.0;
      c[i] = std::abs(v - x[i]);
    }
    const auto fa = dft.forward(a);
    const auto fc = dft.forward(c);
    for (std::size_t f = 0; f < P; ++f) total[f] += std::conj(fa[f]) * fc[f];
  }
  // Inverse through the forward transform: ifft(T) = conj(fft(conj T))/P.
  for (auto& t : total) t = std::conj(t);
  const auto back = dft.forward(total);
  std::vector<double> out(static_cast<std::size_t>(2 * G + 1), 0.0);
  for (std::int64_t g = -G; g <= G; ++g) {
    if (g == 0) continue;
    const auto idx = static_cast<std::size_t>(g < 0 ? static_cast<std::int64_t>(P) + g : g);
    out[static_cast<std::size_t>(g + G)] = std::max(0.0, back[idx].real() / static_cast<double>(P));
  }
  return out;
}

double circle_norm(double t) {
  t -= std::floor(t);
  return std::min(t, 1.0 - t);
}

}  // namespace

double distance_on_Z(const HartmanFunction& phi, std::int64_t g, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("window radius must be at least 1");
  if (g == 0) return 0.0;
  const std::int64_t margin = g < 0 ? -g : g;
  phi.require_window(N, margin);
  std::vector<std::complex<double>> x(static_cast<std::size_t>(2 * (N + margin) + 1));
  phi.evaluate_range(-N - margin, x);
  return shifted_sum(x, N + margin, N, g, all_real(x)) / static_cast<double>(2 * N + 1);
}

DistanceProfile distance_profile(const HartmanFunction& phi, std::int64_t G, std::int64_t N) {
  if (N < 1 || G < 0) throw std::invalid_argument("need N >= 1 and G >= 0");
  phi.require_window(N, G);
  std::vector<std::complex<double>> x(static_cast<std::size_t>(2 * (N + G) + 1));
  phi.evaluate_range(-N - G, x);
  const bool real = all_real(x);
  DistanceProfile p;
  p.window_radius = N;
  p.g_window = G;
  p.values.assign(static_cast<std::size_t>(2 * G + 1), 0.0);
  const double count = static_cast<double>(2 * N + 1);
  // Finitely-valued windows (step realizations, cut sequences) go through correlations when
  // that beats the direct O(G·N) sums.
  if (G > 0) {
    const auto values = few_values(x, 32);
    const double fft_cost = 8.0 * static_cast<double>(values ? values->size() : 0) * std::log2(static_cast<double>(x.size()));
    if (values && fft_cost < static_cast<double>(2 * G + 1)) {
      p.values = shifted_sums_fft(x, *values, N, G);
      for (auto& v : p.values) v /= count;
      return p;
    }
  }
  parallel_for(p.values.size(), [&](std::size_t i) {
    const std::int64_t g = static_cast<std::int64_t>(i) - G;
    p.values[i] = g == 0 ? 0.0 : shifted_sum(x, N + G, N, g, real) / count;
  });
  return p;
}

std::optional<Rational> distance_on_X_exact(const StepFunction& f, const ExactPoint& x) {
  return l1_distance_exact(f, translate(f, x));
}

double distance_on_X(const StepFunction& f, const ExactPoint& x) { return l1_distance(f, translate(f, x)); }

double distance_on_X(const StepFunction& f, const Point& x) {
  auto a = approximate(f);
  return l1_distance(a, translate(a, x));
}

SubgroupH SubgroupH::trivial(const GroupShape& shape) {
  SubgroupH h;
  h.shape_ = shape;
  h.elements_ = {zero_point(shape)};
  return h;
}

ExactPoint SubgroupH::project(ExactPoint x) const {
  for (int j : subtorus_) x.torus[static_cast<std::size_t>(j)] = 0;
  for (auto& t : x.torus) t = frac(t);
  for (std::size_t i = 0; i < x.finite.size(); ++i) {
    const std::int64_t n = shape_.finite_orders[i];
    x.finite[i] = ((x.finite[i] % n) + n) % n;
  }
  return x;
}

SubgroupH SubgroupH::generated(const GroupShape& shape, std::vector<int> subtorus,
                               const std::vector<ExactPoint>& generators) {
  SubgroupH h = trivial(shape);
  std::sort(subtorus.begin(), subtorus.end());
  subtorus.erase(std::unique(subtorus.begin(), subtorus.end()), subtorus.end());
  for (int j : subtorus) {
    if (j < 0 || j >= shape.torus_rank) throw std::invalid_argument("subtorus coordinate out of range");
  }
  h.subtorus_ = std::move(subtorus);
  std::vector<ExactPoint> gens;
  for (const auto& g : generators) {
    if (g.torus.size() != static_cast<std::size_t>(shape.torus_rank) || g.finite.size() != shape.finite_orders.size()) {
      throw std::invalid_argument("generator does not match the domain");
    }
    gens.push_back(h.project(g));
  }
  // Breadth-first closure; every generator has finite order.
  std::vector<ExactPoint> all{h.elements_.front()};
  std::vector<ExactPoint> frontier = all;
  auto known = [&](const ExactPoint& p) { return std::find(all.begin(), all.end(), p) != all.end(); };
  while (!frontier.empty()) {
    std::vector<ExactPoint> next;
    for (const auto& p : frontier) {
      for (const auto& g : gens) {
        ExactPoint q = h.project(add(shape, p, g));
        if (!known(q)) {
          all.push_back(q);
          next.push_back(q);
          if (all.size() > 1'000'000) throw std::invalid_argument("finite part of H too large");
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(), exact_point_less);
  h.elements_ = std::move(all);
  return h;
}

bool SubgroupH::contains(const ExactPoint& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), project(x), exact_point_less);
}

std::vector<ExactPoint> SubgroupH::generators() const {
  std::vector<ExactPoint> gens;
  SubgroupH span = trivial(shape_);
  span.subtorus_ = subtorus_;
  for (const auto& e : elements_) {
    if (span.contains(e)) continue;
    gens.push_back(e);
    span = generated(shape_, subtorus_, gens);
  }
  return gens;
}

std::string SubgroupH::describe() const {
  std::ostringstream os;
  if (is_trivial()) return "{0}";
  os << "subtorus {";
  for (std::size_t i = 0; i < subtorus_.size(); ++i) os << (i ? "," : "") << subtorus_[i];
  os << "} x finite group of order " << elements_.size();
  auto gens = generators();
  if (!gens.empty()) {
    os << " generated by";
    for (const auto& g : gens) {
      os << " (";
      for (std::size_t j = 0; j < g.torus.size(); ++j) os << (j ? "," : "") << to_string(g.torus[j]);
      os << ";";
      for (std::size_t i = 0; i < g.finite.size(); ++i) os << (i ? "," : "") << g.finite[i];
      os << ")";
    }
  }
  return os.str();
}

SubgroupH kernel_subgroup(const StepFunction& f) {
  const GroupShape& shape = f.shape();
  const std::size_t k = static_cast<std::size_t>(shape.torus_rank);
  const auto raster = rasterize(f, own_cuts(f));
  const auto fsize = static_cast<std::size_t>(shape.finite_size());
  const std::size_t cells = raster.torus_cells();

  // Jump positions per coordinate: cut i separates cells i−1 and i (cyclically).
  std::vector<std::vector<Rational>> jumps(k);
  std::vector<int> constant;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t n = raster.cuts[j].size() - 1;
    std::size_t stride = 1;
    for (std::size_t i = j + 1; i < k; ++i) stride *= raster.cuts[i].size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t prev = (i + n - 1) % n;
      bool differs = false;
      for (std::size_t c = 0; c < cells && !differs; ++c) {
        if ((c / stride) % n != i) continue;
        const std::size_t other = c - i * stride + prev * stride;
        for (std::size_t z = 0; z < fsize && !differs; ++z) {
          differs = !(raster.values[c * fsize + z] == raster.values[other * fsize + z]);
        }
      }
      if (differs) jumps[j].push_back(raster.cuts[j][i]);
    }
    if (jumps[j].empty()) constant.push_back(static_cast<int>(j));
  }

  // Invariance maps each jump set to itself, so x_j ∈ {e_0 − e : e ∈ E_j}.
  std::vector<std::vector<Rational>> candidates(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (jumps[j].empty()) {
      candidates[j] = {Rational(0)};
      continue;
    }
    for (const auto& e : jumps[j]) candidates[j].push_back(frac(jumps[j].front() - e));
    std::sort(candidates[j].begin(), candidates[j].end());
    candidates[j].erase(std::unique(candidates[j].begin(), candidates[j].end()), candidates[j].end());
  }

  std::vector<ExactPoint> members;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    for (std::int64_t z = 0; z < shape.finite_size(); ++z) {
      ExactPoint x;
      for (std::size_t j = 0; j < k; ++j) x.torus.push_back(candidates[j][idx[j]]);
      x.finite = shape.unflatten(z);
      if (equal_ae(f, translate(f, x))) members.push_back(std::move(x));
    }
    // Odometer over the candidate product, last coordinate fastest.
    std::size_t j = k;
    while (j > 0 && ++idx[j - 1] == candidates[j - 1].size()) {
      idx[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
  }
  return SubgroupH::generated(shape, constant, members);
}

FilterSet filter_set(const DistanceProfile& profile, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  FilterSet s;
  s.eps = eps;
  s.g_window = profile.g_window;
  s.window_radius = profile.window_radius;
  for (std::int64_t g = -profile.g_window; g <= profile.g_window; ++g) {
    if (profile.at(g) < eps) s.members.push_back(g);
  }
  return s;
}

FilterSet filter_set(const HartmanFunction& phi, double eps, std::int64_t G, std::int64_t N) {
  return filter_set(distance_profile(phi, G, N), eps);
}

std::string to_string(MembershipVerdict v) {
  switch (v) {
    case MembershipVerdict::consistent: return "consistent";
    case MembershipVerdict::inconsistent: return "inconsistent";
    case MembershipVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

MembershipReport sub_membership_test(const HartmanFunction& phi, const Character& chi, const MembershipParams& params) {
  return sub_membership_test(phi, distance_profile(phi, params.g_window, params.N), chi, params);
}

MembershipReport sub_membership_test(const HartmanFunction& phi, const DistanceProfile& profile, const Character& chi,
                                     const MembershipParams& params) {
  if (profile.g_window != params.g_window || profile.window_radius != params.N) {
    throw std::invalid_argument("profile window does not match the parameters");
  }
  MembershipReport r;
  r.chi_alpha = chi.value();
  r.params = params;
  r.coefficient = fourier_coefficient(phi, chi, params.N).value;
  const double sup = phi.sup_bound();
  const double count = static_cast<double>(2 * params.N + 1);
  const double c = std::abs(r.coefficient);

  const std::int64_t G = params.g_window;
  std::vector<double> gap(static_cast<std::size_t>(2 * G + 1));
  r.inequality_excess = -std::numeric_limits<double>::infinity();
  for (std::int64_t g = -G; g <= G; ++g) {
    const double u = 2.0 * std::fabs(std::sin(std::numbers::pi * chi.phase(g)));
    gap[static_cast<std::size_t>(g + G)] = u;
    const double slack = 2.0 * static_cast<double>(g < 0 ? -g : g) * sup / count;
    r.inequality_excess = std::max(r.inequality_excess, u * c - profile.at(g) - slack);
  }
  // Rounding in the sums is far below this.
  r.inequality_holds = r.inequality_excess <= 1e-9;

  const double delta_max = 2.0 * sup + 1e-12;
  for (double delta = delta_max; delta >= params.delta_min; delta /= params.delta_ratio) {
    EnvelopePoint e;
    e.delta = delta;
    for (std::int64_t g = -G; g <= G; ++g) {
      if (g == 0 || !(profile.at(g) < delta)) continue;
      ++e.members;
      e.envelope = std::max(e.envelope, gap[static_cast<std::size_t>(g + G)]);
    }
    r.envelope.push_back(e);
  }
  double finest = std::numeric_limits<double>::quiet_NaN();
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& e : r.envelope) {
    if (e.members < params.min_members) continue;
    r.resolution_delta = e.delta;
    finest = e.envelope;
    smallest = std::min(smallest, e.envelope);
  }
  std::ostringstream detail;
  if (!r.resolution_delta) {
    r.verdict = MembershipVerdict::inconclusive;
    detail << "no delta level has " << params.min_members << " nonzero members in |g| <= " << G;
  } else if (finest <= params.consistent_threshold && r.inequality_holds) {
    r.verdict = MembershipVerdict::consistent;
    detail << "envelope " << finest << " at delta " << *r.resolution_delta << "; window evidence only";
  } else if (smallest >= params.inconsistent_threshold) {
    r.verdict = MembershipVerdict::inconsistent;
    detail << "envelope stays >= " << smallest << " down to delta " << *r.resolution_delta;
  } else {
    r.verdict = MembershipVerdict::inconclusive;
    detail << "envelope " << finest << " at delta " << *r.resolution_delta;
  }
  r.detail = detail.str();
  return r;
}

double distance_lipschitz_bound(const StepFunction& f) {
  const double fsize = static_cast<double>(f.shape().finite_size());
  double L = 0.0;
  for (const auto& p : f.pieces()) {
    const std::size_t k = p.box.size();
    double faces = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      double prod = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (i != j) prod *= to_double(p.box[i].hi - p.box[i].lo);
      }
      faces += prod;
    }
    L += 2.0 * std::abs(p.value.to_complex()) * (static_cast<double>(p.fiber.size()) / fsize) * faces;
  }
  return L;
}

double neighborhood_norm(const Point& x) {
  for (auto z : x.finite) {
    if (z != 0) return std::numeric_limits<double>::infinity();
  }
  double m = 0.0;
  for (double t : x.torus) m = std::max(m, circle_norm(t));
  return m;
}

double distance_lower_bound_outside_ball(const StepFunction& f, double r, int grid) {
  const GroupShape& shape = f.shape();
  const std::size_t k = static_cast<std::size_t>(shape.torus_rank);
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  const auto approx = approximate(f);
  const double h = 1.0 / grid;
  const double L = distance_lipschitz_bound(f);
  std::size_t points = 1;
  for (std::size_t j = 0; j < k; ++j) points *= static_cast<std::size_t>(grid);
  const std::int64_t fsize = shape.finite_size();
  std::vector<double> best(static_cast<std::size_t>(fsize), std::numeric_limits<double>::infinity());
  parallel_for(static_cast<std::size_t>(fsize), [&](std::size_t zi) {
    const auto z = static_cast<std::int64_t>(zi);
    Point x;
    x.finite = shape.unflatten(z);
    x.torus.assign(k, 0.0);
    for (std::size_t p = 0; p < points; ++p) {
      std::size_t rest = p;
      for (std::size_t j = k; j-- > 0;) {
        x.torus[j] = static_cast<double>(rest % static_cast<std::size_t>(grid)) * h;
        rest /= static_cast<std::size_t>(grid);
      }
      if (z == 0) {
        // Grid points within h/2 of the ball's complement cover it.
        double m = 0.0;
        for (double t : x.torus) m = std::max(m, circle_norm(t));
        if (m < r - h / 2.0) continue;
      }
      best[zi] = std::min(best[zi], l1_distance(approx, translate(approx, x)));
    }
  });
  double m = *std::min_element(best.begin(), best.end());
  if (k == 0) return m;
  return m - L * h / 2.0;
}

InclusionCheck check_filter_in_neighborhood(const HartmanFunction& phi, const DistanceProfile& profile, double eps,
                                            double slack) {
  const StepFunction& f = step_realization(phi);
  const auto& comp = phi.as_realized().comp;
  InclusionCheck c;
  c.eps = eps;
  auto set = filter_set(profile, eps);
  c.members = set.members.size();
  c.worst = -std::numeric_limits<double>::infinity();
  for (auto g : set.members) {
    const double d = distance_on_X(f, comp.embed(g));
    c.worst = std::max(c.worst, d - eps);
    if (!(d < eps + slack)) ++c.violations;
  }
  c.passed = c.violations == 0;
  return c;
}

InclusionCheck check_neighborhood_in_filter(const HartmanFunction& phi, const DistanceProfile& profile, double radius,
                                            double slack, int grid) {
  const StepFunction& f = step_realization(phi);
  const auto& comp = phi.as_realized().comp;
  InclusionCheck c;
  c.radius = radius;
  c.lower_bound = distance_lower_bound_outside_ball(f, radius, grid);
  c.eps = c.lower_bound - slack;
  if (!(c.eps > 0.0)) {
    c.passed = false;
    return c;
  }
  auto set = filter_set(profile, c.eps);
  c.members = set.members.size();
  c.worst = 0.0;
  for (auto g : set.members) {
    const double n = neighborhood_norm(comp.embed(g));
    c.worst = std::max(c.worst, n);
    if (!(n < radius)) ++c.violations;
  }
  c.passed = c.violations == 0;
  return c;
}

}  // namespace hartman
