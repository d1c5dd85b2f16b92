#include "hartman/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace hartman {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("expected a rational as \"p/q\" or an integer");
}

Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer");
}

Json cplx(std::complex<double> z) { return Json::array({fixed(z.real()), fixed(z.imag())}); }

}  // namespace

Character parse_character(std::string_view text) {
  const std::string s = trim(text);
  if (s.rfind("quadratic:", 0) == 0) {
    const auto parts = split(std::string_view(s).substr(10), ',');
    if (parts.size() != 4) throw std::invalid_argument("quadratic literal needs a,b,c,d");
    Integer v[4];
    for (int i = 0; i < 4; ++i) {
      const Rational r = parse_rational(parts[static_cast<std::size_t>(i)]);
      if (denominator(r) != 1) throw std::invalid_argument("quadratic literal needs integers");
      v[i] = numerator(r);
    }
    return Character::quadratic(v[0], v[1], v[2], v[3]);
  }
  if (s.rfind("float:", 0) == 0) {
    const auto parts = split(std::string_view(s).substr(6), ',');
    if (parts.empty() || parts.size() > 2) throw std::invalid_argument("float literal needs x[,tol]");
    const double x = parse_double(parts[0]);
    return parts.size() == 2 ? Character::floating(x, parse_double(parts[1])) : Character::floating(x);
  }
  if (s.find_first_of(".eE") != std::string::npos) return Character::floating(parse_double(s));
  return Character::rational(parse_rational(s));
}

double fixed(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json as_json(const Rational& q) { return to_string(q); }

Json as_json(const ComplexQ& z) {
  if (z.is_real()) return to_string(z.re);
  return Json::array({to_string(z.re), to_string(z.im)});
}

Json as_json(std::complex<double> z) { return cplx(z); }

Json as_json(const Character& c) {
  Json j;
  j["alpha"] = fixed(c.value());
  j["exact"] = c.is_exact();
  if (c.is_exact()) {
    j["literal"] = c.to_string();
  } else {
    j["tolerance"] = fixed(c.tolerance());
  }
  return j;
}

Json as_json(const GroupShape& shape) {
  return Json{{"torus_rank", shape.torus_rank}, {"finite_orders", shape.finite_orders}};
}

Json as_json(const Frequency& m) { return Json{{"torus", m.torus}, {"finite", m.finite}}; }

Json as_json(const ExactPoint& x) {
  Json t = Json::array();
  for (const auto& v : x.torus) t.push_back(to_string(v));
  return Json{{"torus", t}, {"finite", x.finite}};
}

Json descriptor(const Character& c) {
  if (c.is_floating()) return Json{{"float", fixed(c.value())}, {"tolerance", fixed(c.tolerance())}};
  if (c.is_rational()) {
    return Json{{"num", integer_json(numerator(c.rational_part()))}, {"den", integer_json(denominator(c.rational_part()))}};
  }
  if (c.surds().size() == 1) {
    const auto& r = c.rational_part();
    const auto& s = c.surds().front();
    const Integer d = lcm(denominator(r), denominator(s.coefficient));
    const Rational a = r * d, b = s.coefficient * d;
    return Json{{"quadratic", Json{{"a", integer_json(numerator(a))},
                                   {"b", integer_json(numerator(b))},
                                   {"c", integer_json(s.radicand)},
                                   {"d", integer_json(d)}}}};
  }
  return Json{{"float", fixed(c.value())}, {"exact", c.to_string()}};
}

Character character_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_character(j.get<std::string>());
    if (j.contains("num")) return Character::rational(Rational(integer_from_json(j.at("num"))) / integer_from_json(j.at("den")));
    if (j.contains("quadratic")) {
      const auto& q = j.at("quadratic");
      const Integer d = q.contains("d") ? integer_from_json(q.at("d")) : Integer(1);
      return Character::quadratic(integer_from_json(q.at("a")), integer_from_json(q.at("b")), integer_from_json(q.at("c")), d);
    }
    if (j.contains("float")) {
      return Character::floating(j.at("float").get<double>(), j.value("tolerance", Character::kDefaultTolerance));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed character: ") + e.what());
  }
  throw std::invalid_argument("character needs num/den, quadratic or float");
}

Json as_json(const SpectralSubgroup& gamma) {
  Json gens = Json::array();
  for (const auto& g : gamma.generators) gens.push_back(descriptor(g));
  return Json{{"generators", gens}};
}

SpectralSubgroup spectral_subgroup_from_json(const Json& j) {
  if (!j.contains("generators") || !j.at("generators").is_array()) throw std::invalid_argument("expected {\"generators\": [...]}");
  SpectralSubgroup g;
  for (const auto& c : j.at("generators")) g.generators.push_back(character_from_json(c));
  return g;
}

Json as_json(const Compactification& comp) {
  Json gens = Json::array();
  for (const auto& g : comp.torus_generators()) gens.push_back(descriptor(g));
  return Json{{"group", comp.describe()},
              {"shape", as_json(comp.shape())},
              {"torus_generators", gens},
              {"torsion_units", comp.torsion_units()},
              {"invariant_factors", comp.invariant_factors()},
              {"certification", to_string(comp.certification())}};
}

Json as_json(const StepFunction& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    Json box = Json::array();
    for (const auto& a : p.box) box.push_back(Json::array({to_string(a.lo), to_string(a.hi)}));
    pieces.push_back(Json{{"box", box}, {"fiber", p.fiber}, {"value", Json{{"re", to_string(p.value.re)}, {"im", to_string(p.value.im)}}}});
  }
  return Json{{"domain", as_json(f.shape())}, {"pieces", pieces}};
}

Json as_json(const TrigPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(Json{{"frequency", as_json(m)}, {"coefficient", cplx(c)}});
  return Json{{"domain", as_json(p.shape())}, {"terms", terms}};
}

Json as_json(const MeanEstimate& m) {
  Json diag = Json::array();
  for (const auto& [r, v] : m.diagnostics) diag.push_back(Json{{"radius", r}, {"value", cplx(v)}});
  return Json{{"value", cplx(m.value)}, {"window_radius", m.window_radius}, {"diagnostics", diag}};
}

Json as_json(const SpectrumReport& report) {
  Json peaks = Json::array();
  for (const auto& p : report.peaks) {
    Json j{{"alpha", fixed(p.alpha.value())},
           {"uncertainty", fixed(p.alpha.tolerance())},
           {"coefficient", cplx(p.coefficient)},
           {"magnitude", fixed(std::abs(p.coefficient))},
           {"residual", fixed(p.residual)}};
    if (p.rational) j["rational"] = std::to_string(p.rational->p) + "/" + std::to_string(p.rational->q);
    peaks.push_back(std::move(j));
  }
  return Json{{"window_radius", report.window_radius},
              {"theta", fixed(report.theta)},
              {"residual_rms", fixed(report.residual_rms)},
              {"peaks", peaks},
              {"generated_subgroup", as_json(report.generated_subgroup)},
              {"presentation_certified", report.presentation_certified},
              {"presentation_detail", report.presentation_detail}};
}

Json as_json(const DistanceProfile& profile) {
  Json values = Json::array();
  for (double v : profile.values) values.push_back(fixed(v));
  return Json{{"window_radius", profile.window_radius}, {"g_window", profile.g_window}, {"values", values}};
}

Json as_json(const FilterSet& set) {
  return Json{{"eps", fixed(set.eps)},
              {"g_window", set.g_window},
              {"window_radius", set.window_radius},
              {"members", set.members}};
}

Json as_json(const MembershipReport& report) {
  Json env = Json::array();
  for (const auto& e : report.envelope) {
    env.push_back(Json{{"delta", fixed(e.delta)}, {"envelope", fixed(e.envelope)}, {"members", e.members}});
  }
  Json j{{"alpha", fixed(report.chi_alpha)},
         {"verdict", to_string(report.verdict)},
         {"coefficient", cplx(report.coefficient)},
         {"inequality_excess", fixed(report.inequality_excess)},
         {"inequality_holds", report.inequality_holds},
         {"envelope", env},
         {"g_window", report.params.g_window},
         {"window_radius", report.params.N},
         {"detail", report.detail}};
  j["resolution_delta"] = report.resolution_delta ? Json(fixed(*report.resolution_delta)) : Json(nullptr);
  return j;
}

Json as_json(const SubgroupH& H) {
  Json gens = Json::array();
  for (const auto& g : H.generators()) gens.push_back(as_json(g));
  return Json{{"description", H.describe()},
              {"subtorus", H.subtorus()},
              {"finite_order", H.finite_elements().size()},
              {"generators", gens}};
}

Json as_json(const FejerNormCertificate& cert) {
  Json j{{"real_input", cert.real_input},
         {"input_l1", cert.input_l1 ? Json(to_string(*cert.input_l1)) : Json(fixed(cert.input_l1_value))},
         {"positive_mass", to_string(cert.positive_mass)},
         {"negative_mass", to_string(cert.negative_mass)},
         {"grid", cert.grid},
         {"grid_l1", fixed(cert.grid_l1)},
         {"grid_min", fixed(cert.grid_min)},
         {"tolerance", fixed(cert.tolerance)},
         {"passed", cert.passed}};
  return j;
}

Json as_json(const Aperiodization& a) {
  const auto& c = a.certificate;
  Json cert{{"kernel", as_json(c.kernel)},
            {"lifted_kernel_is_H", c.lifted_kernel_is_H},
            {"weil_check", c.weil_exact ? "exact-pass" : "fail"},
            {"passed", c.passed}};
  cert["explicit_kernel_trivial"] = c.explicit_kernel_trivial ? Json(*c.explicit_kernel_trivial) : Json(nullptr);
  cert["residual"] = c.residual ? Json(to_string(*c.residual)) : Json(nullptr);
  Json psi{{"quotient_shape", as_json(a.psi.quotient_shape())}, {"lifted", as_json(a.psi.lifted)}};
  psi["explicit_form"] = a.psi.explicit_form ? as_json(*a.psi.explicit_form) : Json(nullptr);
  return Json{{"certificate", cert}, {"psi", psi}};
}

Json as_json(const GammaRealization& r) {
  return Json{{"gamma", as_json(r.gamma)},
              {"compactification", as_json(r.comp)},
              {"order", r.order},
              {"residual", fixed(r.residual)},
              {"residual_kind", r.residual_is_bound ? "bound" : "grid-estimate"},
              {"terms", r.realization.terms().size()}};
}

Json as_json(const Reconstruction& r) {
  const auto& rep = r.report;
  Json residuals = Json::array();
  for (const auto& f : rep.residuals) {
    residuals.push_back(Json{{"alpha", fixed(f.alpha)},
                             {"coefficient", cplx(f.coefficient)},
                             {"refinement_residual", fixed(f.refinement_residual)},
                             {"frequency", as_json(f.frequency)},
                             {"alpha_mismatch", fixed(f.alpha_mismatch)}});
  }
  Json errors = Json::array();
  for (const auto& [o, e] : rep.l1_errors) errors.push_back(Json{{"order", o}, {"l1_error", fixed(e)}});
  return Json{{"compactification", as_json(r.comp)},
              {"empty_spectrum", rep.empty_spectrum},
              {"spectrum", as_json(rep.spectrum)},
              {"frequency_residuals", residuals},
              {"l1_errors", errors},
              {"fitted_l1", fixed(rep.fitted_l1)},
              {"kernel_trivial", rep.kernel_trivial},
              {"kernel_check", rep.kernel_check},
              {"certification", to_string(rep.certification)},
              {"realization", as_json(r.realization)}};
}

Json as_json(const EquivalenceResult& e) {
  return Json{{"verdict", to_string(e.verdict)},
              {"forward", to_string(e.forward.verdict)},
              {"backward", to_string(e.backward.verdict)},
              {"same_shape", e.same_shape},
              {"detail", e.detail}};
}

Json as_json(const InclusionCheck& c) {
  return Json{{"eps", fixed(c.eps)},
              {"radius", fixed(c.radius)},
              {"lower_bound", fixed(c.lower_bound)},
              {"members", c.members},
              {"violations", c.violations},
              {"worst", fixed(c.worst)},
              {"passed", c.passed}};
}

StepFunction step_function_from_json(const Json& j) {
  try {
    const auto& d = j.contains("domain") ? j.at("domain") : j.at("shape");
    GroupShape shape;
    shape.torus_rank = d.at("torus_rank").get<int>();
    shape.finite_orders = d.value("finite_orders", std::vector<std::int64_t>{});
    shape.validate();
    std::vector<StepPiece<Rational>> pieces;
    for (const auto& p : j.at("pieces")) {
      StepPiece<Rational> piece;
      for (const auto& a : p.at("box")) {
        if (!a.is_array() || a.size() != 2) throw std::invalid_argument("arc must be [lo, hi]");
        piece.box.push_back({rational_from_json(a[0]), rational_from_json(a[1])});
      }
      if (p.contains("fiber")) {
        piece.fiber = p.at("fiber").get<std::vector<std::int64_t>>();
      } else {
        for (std::int64_t z = 0; z < shape.finite_size(); ++z) piece.fiber.push_back(z);
      }
      const auto& v = p.at("value");
      if (v.is_object()) {
        piece.value = ComplexQ(rational_from_json(v.value("re", Json("0"))), rational_from_json(v.value("im", Json("0"))));
      } else if (v.is_array()) {
        piece.value = ComplexQ(rational_from_json(v.at(0)), rational_from_json(v.at(1)));
      } else {
        piece.value = ComplexQ(rational_from_json(v));
      }
      pieces.push_back(std::move(piece));
    }
    return StepFunction(shape, std::move(pieces));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed step function: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hartman
