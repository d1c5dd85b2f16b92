#include "hartman/hartman_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hartman/parallel.hpp"

namespace hartman {

namespace {
constexpr std::int64_t kMaxTable = 1 << 24;
constexpr std::size_t kMaxRank = 16;
}  // namespace

const GroupShape& realization_shape(const Realization& r) {
  return std::visit([](const auto& f) -> const GroupShape& { return f.shape(); }, r);
}

HartmanFunction HartmanFunction::realized(Compactification comp, Realization realization) {
  if (!(realization_shape(realization) == comp.shape())) {
    throw std::invalid_argument("realization domain " + comp.describe() + " mismatch");
  }
  if (comp.torus_rank() > static_cast<int>(kMaxRank)) throw std::invalid_argument("torus rank too large");
  HartmanFunction f;
  f.data_ = Realized{std::move(comp), std::move(realization), 0};
  f.build_table();
  return f;
}

HartmanFunction HartmanFunction::sampled(std::int64_t radius, std::vector<std::complex<double>> values) {
  if (radius < 0 || values.size() != static_cast<std::size_t>(2 * radius + 1)) {
    throw std::invalid_argument("a window of radius N needs 2N+1 samples");
  }
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("samples must be finite");
  }
  HartmanFunction f;
  f.data_ = Sampled{radius, std::move(values)};
  return f;
}

void HartmanFunction::build_table() {
  const auto& r = as_realized();
  table_.clear();
  if (r.comp.torus_rank() != 0) return;
  const std::int64_t period = r.comp.shape().finite_size();
  if (period > kMaxTable) return;
  table_.resize(static_cast<std::size_t>(period));
  for (std::int64_t n = 0; n < period; ++n) table_[static_cast<std::size_t>(n)] = evaluate_realized(n);
}

std::optional<std::int64_t> HartmanFunction::radius() const {
  if (is_realized()) return std::nullopt;
  return as_sampled().radius;
}

void HartmanFunction::require_window(std::int64_t N, std::int64_t margin) const {
  if (N < 0) throw std::invalid_argument("window radius must be nonnegative");
  auto r = radius();
  if (r && *r < N + margin) {
    throw std::invalid_argument("insufficient window: need radius " + std::to_string(N + margin) + ", have " +
                                std::to_string(*r));
  }
}

std::complex<double> HartmanFunction::evaluate_realized(std::int64_t n) const {
  const auto& r = as_realized();
  const std::int64_t m = n + r.shift;
  double torus[kMaxRank];
  std::int64_t finite[kMaxRank];
  const auto& betas = r.comp.torus_generators();
  for (std::size_t j = 0; j < betas.size(); ++j) torus[j] = betas[j].phase(m);
  const auto& orders = r.comp.finite_part();
  const auto& units = r.comp.torsion_units();
  std::vector<std::int64_t> big;
  std::int64_t* fin = finite;
  if (orders.size() > kMaxRank) {
    big.resize(orders.size());
    fin = big.data();
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    Int128 v = (static_cast<Int128>(m) * units[i]) % orders[i];
    if (v < 0) v += orders[i];
    fin[i] = static_cast<std::int64_t>(v);
  }
  return std::visit([&](const auto& f) { return f.evaluate(torus, fin); }, r.realization);
}

std::complex<double> HartmanFunction::evaluate(std::int64_t n) const {
  if (is_sampled()) {
    const auto& s = as_sampled();
    if (n < -s.radius || n > s.radius) {
      throw std::out_of_range("index " + std::to_string(n) + " outside the sampled window");
    }
    return s.values[static_cast<std::size_t>(n + s.radius)];
  }
  if (!table_.empty()) {
    const auto period = static_cast<std::int64_t>(table_.size());
    std::int64_t i = (n + as_realized().shift) % period;
    if (i < 0) i += period;
    return table_[static_cast<std::size_t>(i)];
  }
  return evaluate_realized(n);
}

void HartmanFunction::evaluate_range(std::int64_t first, std::span<std::complex<double>> out) const {
  const auto count = static_cast<std::int64_t>(out.size());
  if (is_sampled()) {
    const auto& s = as_sampled();
    if (count > 0 && (first < -s.radius || first + count - 1 > s.radius)) {
      throw std::out_of_range("range outside the sampled window");
    }
    std::copy_n(s.values.begin() + (first + s.radius), count, out.begin());
    return;
  }
  ChunkPlan plan{0, count};
  parallel_for(plan.count(), [&](std::size_t c) {
    for (std::int64_t i = plan.lo(c); i < plan.hi(c); ++i) out[static_cast<std::size_t>(i)] = evaluate(first + i);
  });
}

std::vector<std::complex<double>> HartmanFunction::window(std::int64_t N) const {
  require_window(N);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(2 * N + 1));
  evaluate_range(-N, out);
  return out;
}

double HartmanFunction::sup_bound() const {
  if (is_sampled()) {
    double m = 0.0;
    for (const auto& v : as_sampled().values) m = std::max(m, std::abs(v));
    return m;
  }
  const auto& r = as_realized().realization;
  return std::visit(
      [](const auto& f) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(f)>, TrigPolynomial>) {
          return f.coefficient_l1();
        } else {
          return f.sup_abs();
        }
      },
      r);
}

HartmanFunction HartmanFunction::translated(std::int64_t g) const {
  HartmanFunction f = *this;
  if (is_realized()) {
    std::get<Realized>(f.data_).shift += g;
    return f;
  }
  const auto& s = as_sampled();
  const std::int64_t r = s.radius - (g < 0 ? -g : g);
  if (r < 0) throw std::invalid_argument("translation exceeds the sampled window");
  std::vector<std::complex<double>> values(static_cast<std::size_t>(2 * r + 1));
  for (std::int64_t n = -r; n <= r; ++n) values[static_cast<std::size_t>(n + r)] = evaluate(n + g);
  return sampled(r, std::move(values));
}

HartmanFunction cos2_product(int n) {
  if (n < 1 || n > 30) throw std::invalid_argument("cos2_product needs 1 <= n <= 30");
  std::int64_t order = 1;
  for (int j = 0; j < n; ++j) order *= 3;
  auto comp = Compactification::from_embedding({}, {order}, {1});
  // cos²(2πk/3^j) = 1/2 + (e^{2πi·2k/3^j} + e^{−2πi·2k/3^j})/4.
  TrigPolynomial::Terms terms{{Frequency{{}, {0}}, 1.0}};
  std::int64_t scale = order;
  for (int j = 1; j <= n; ++j) {
    scale /= 3;  // 3^{n−j}
    TrigPolynomial::Terms next;
    for (const auto& [m, c] : terms) {
      for (int eps = -1; eps <= 1; ++eps) {
        std::int64_t t = ((m.finite[0] + eps * 2 * scale) % order + order) % order;
        next[Frequency{{}, {t}}] += c * (eps == 0 ? 0.5 : 0.25);
      }
    }
    terms = std::move(next);
  }
  return HartmanFunction::realized(comp, TrigPolynomial(comp.shape(), std::move(terms)));
}

namespace {

// α = η_m ∘ ι on the compactification induced by ⟨α⟩.
std::pair<Compactification, Frequency> single_generator(const Character& alpha) {
  auto comp = Compactification::induced(SpectralSubgroup{{alpha}});
  auto loc = locate(comp, alpha);
  if (loc.verdict != Verdict::yes) throw std::logic_error("generator not located in its own compactification");
  return {comp, *loc.frequency};
}

}  // namespace

HartmanFunction cut_sequence(const Character& alpha, const Rational& beta) {
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta must lie in (0, 1)");
  auto [comp, m] = single_generator(alpha);
  const GroupShape& shape = comp.shape();
  // nα mod 1 = ε·x + t·z/g with ε = ±1 on the torus coordinate (if any).
  StepFunction out(shape);
  const std::int64_t fsize = shape.finite_size();
  for (std::int64_t z = 0; z < fsize; ++z) {
    Rational c(0);
    if (!m.finite.empty()) c = frac(Rational(Integer(m.finite[0]) * z, Integer(shape.finite_orders[0])));
    if (shape.torus_rank == 0) {
      if (c < beta) out = out + StepFunction::box(shape, {}, {z}, ComplexQ(Rational(1)));
      continue;
    }
    if (m.torus.size() != 1 || (m.torus[0] != 1 && m.torus[0] != -1)) {
      throw std::logic_error("unexpected presentation of a single generator");
    }
    // {x : frac(εx + c) ∈ [0, β)}
    std::pair<Rational, Rational> arc = m.torus[0] == 1 ? std::pair{frac(-c), frac(beta - c)}
                                                        : std::pair{frac(c - beta), frac(c)};
    if (arc.second == 0) arc.second = 1;
    out = out + StepFunction::box(shape, {arc}, {z}, ComplexQ(Rational(1)));
  }
  return HartmanFunction::realized(comp, out);
}

HartmanFunction character_sequence(const Character& alpha, std::complex<double> amplitude) {
  auto [comp, m] = single_generator(alpha);
  TrigPolynomial p(comp.shape());
  p.add_term(m, amplitude);
  return HartmanFunction::realized(comp, p);
}

HartmanFunction alternating() {
  auto comp = Compactification::from_embedding({}, {2}, {1});
  std::vector<StepPiece<Rational>> pieces{{{}, {0}, ComplexQ(Rational(1))}, {{}, {1}, ComplexQ(Rational(-1))}};
  return HartmanFunction::realized(comp, StepFunction(comp.shape(), std::move(pieces)));
}

HartmanFunction sample(const HartmanFunction& phi, std::int64_t N) { return HartmanFunction::sampled(N, phi.window(N)); }

void write_csv(std::ostream& out, const HartmanFunction& phi, std::int64_t N) {
  auto values = phi.window(N);
  char buf[96];
  for (std::int64_t n = -N; n <= N; ++n) {
    const auto& v = values[static_cast<std::size_t>(n + N)];
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", static_cast<long long>(n), v.real(), v.imag());
    out << buf;
  }
}

namespace {
template <class T>
T parse_field(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("line " + std::to_string(line) + ": cannot parse '" + std::string(s) + "'");
  }
  return v;
}
}  // namespace

HartmanFunction read_csv(std::istream& in) {
  std::vector<std::complex<double>> values;
  std::optional<std::int64_t> first, last;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty() || text == "\r") continue;
    if (line == 1 && (text[0] == 'n' || text[0] == '#')) continue;
    std::string_view s(text);
    auto c1 = s.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw std::invalid_argument("line " + std::to_string(line) + ": expected n,re,im");
    auto n = parse_field<std::int64_t>(s.substr(0, c1), line);
    auto re = parse_field<double>(s.substr(c1 + 1, c2 - c1 - 1), line);
    auto im = parse_field<double>(s.substr(c2 + 1), line);
    if (last && n != *last + 1) {
      throw std::invalid_argument("line " + std::to_string(line) + ": indices not contiguous");
    }
    if (!first) first = n;
    last = n;
    values.emplace_back(re, im);
  }
  if (!first) throw std::invalid_argument("empty sequence file");
  if (*first != -*last) throw std::invalid_argument("window must be symmetric [-N, N]");
  return HartmanFunction::sampled(*last, std::move(values));
}

}  // namespace hartman
