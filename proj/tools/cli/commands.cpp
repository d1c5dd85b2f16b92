#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "cli.hpp"
#include "hartman/corpus.hpp"
#include "hartman/distance_filter.hpp"
#include "hartman/fejer_weil.hpp"
#include "hartman/mean_engine.hpp"
#include "hartman/reconstruct.hpp"
#include "hartman/spectrum.hpp"

namespace hartman::cli {

namespace {

std::string mean_line(const MeanEstimate& m) {
  std::ostringstream os;
  os.precision(12);
  os << "value " << m.value.real() << ' ' << m.value.imag() << " window " << m.window_radius << " diagnostics [";
  for (std::size_t i = 0; i < m.diagnostics.size(); ++i) {
    const auto& [r, v] = m.diagnostics[i];
    os << (i ? "; " : "") << r << ':' << v.real() << ',' << v.imag();
  }
  os << "]\n";
  return os.str();
}

// JSON-native commands print to stdout unless --json names a file.
void emit_report(const Global& g, const Json& j) {
  if (!emit_json(g, j)) std::cout << dump(j);
}

int strict_code(const Global& g, bool settled) { return g.strict && !settled ? kUndecided : kOk; }

void add_window(CLI::App* app, std::int64_t& N) {
  app->add_option("--N", N, "window radius (default: the sampled window, else 100000)")->check(CLI::NonNegativeNumber);
}

SpectrumOptions spectrum_options(double theta, double refine, int polish) {
  SpectrumOptions o;
  o.theta = theta;
  o.refine_tolerance = refine;
  o.polish_sweeps = polish;
  return o;
}

struct Line {
  std::string suite, name;
  bool ok;
  std::string detail;
};

void print(const Line& l) {
  std::cout << l.suite << ": " << l.name << ": " << (l.ok ? "exact-pass" : "FAIL");
  if (!l.detail.empty()) std::cout << " (" << l.detail << ')';
  std::cout << '\n';
}

std::vector<Line> weil_suite(std::uint64_t seed) {
  std::vector<Line> out;
  for (const auto& s : step_corpus(seed)) {
    const auto total = haar_integral(s.f);
    for (const auto& h : supported_subgroups(s.f.shape())) {
      const auto q = fiber_average(s.f, h.H);
      bool ok = haar_integral(q.lifted) == total;
      if (q.explicit_form) ok = ok && haar_integral(*q.explicit_form) == total;
      out.push_back({"weil", s.name + " / " + h.name, ok, ok ? "" : "integrals differ"});
    }
  }
  return out;
}

std::vector<Line> fejer_suite(std::uint64_t seed) {
  std::vector<Line> out;
  for (const auto& s : step_corpus(seed)) {
    const auto cert = certify_fejer_norm(FejerOperator(16, s.f.shape().torus_rank), s.f);
    out.push_back({"fejer", s.name, cert.passed, cert.passed ? "" : "norm or positivity check failed"});
  }
  return out;
}

std::vector<Line> aperiodize_suite(std::uint64_t seed) {
  std::vector<Line> out;
  for (const auto& s : step_corpus(seed)) {
    const auto a = aperiodize(s.f);
    out.push_back({"aperiodize", s.name, a.certificate.passed, a.certificate.kernel.describe()});
  }
  return out;
}

}  // namespace

void register_commands(CLI::App& app, Global& global, std::function<int()>& run) {
  const Global& g = global;

  {
    auto* cmd = app.add_subcommand("generate", "write a sequence window as CSV n,re,im");
    auto src = std::make_shared<SequenceSource>();
    auto N = std::make_shared<std::int64_t>(0);
    auto out = std::make_shared<std::string>();
    src->add_options(cmd);
    cmd->add_option("--N", *N, "window radius")->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", *out, "output file (default stdout)");
    cmd->callback([&run, src, N, out] {
      run = [src, N, out] {
        const auto phi = src->load();
        phi.require_window(*N);
        std::ostringstream os;
        os << "n,re,im\n";
        write_csv(os, phi, *N);
        write_text_file(*out, os.str());
        return kOk;
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("mean", "symmetric Cesàro mean");
    auto src = std::make_shared<SequenceSource>();
    auto N = std::make_shared<std::int64_t>(0);
    auto exact = std::make_shared<bool>(false);
    src->add_options(cmd);
    add_window(cmd, *N);
    cmd->add_flag("--exact", *exact, "also compute the exact mean of a rational realization");
    cmd->callback([&run, &g, src, N, exact] {
      run = [&g, src, N, exact] {
        const auto phi = src->load();
        const auto m = cesaro_mean(phi, default_radius(phi, *N));
        Json j = as_json(m);
        std::optional<ComplexQ> ex;
        if (*exact) {
          try {
            ex = exact_mean(phi);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
          j["exact"] = as_json(*ex);
        }
        if (!emit_json(g, j)) {
          std::cout << mean_line(m);
          if (ex) std::cout << "exact " << to_string(*ex) << '\n';
        }
        return kOk;
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("coeff", "Fourier-Bohr coefficient m(φ·χ̄)");
    auto src = std::make_shared<SequenceSource>();
    auto N = std::make_shared<std::int64_t>(0);
    auto alpha = std::make_shared<std::string>();
    src->add_options(cmd);
    add_window(cmd, *N);
    cmd->add_option("--alpha", *alpha, "character literal")->required();
    cmd->callback([&run, &g, src, N, alpha] {
      run = [&g, src, N, alpha] {
        const auto phi = src->load();
        const auto chi = parse_character(*alpha);
        const auto m = fourier_coefficient(phi, chi, default_radius(phi, *N));
        Json j = as_json(m);
        j["alpha"] = as_json(chi);
        if (!emit_json(g, j)) std::cout << mean_line(m);
        return kOk;
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("spectrum", "Fourier-Bohr spectrum scan");
    auto src = std::make_shared<SequenceSource>();
    auto N = std::make_shared<std::int64_t>(0);
    auto theta = std::make_shared<double>(1e-3);
    auto refine = std::make_shared<double>(1e-10);
    auto polish = std::make_shared<int>(2);
    src->add_options(cmd);
    add_window(cmd, *N);
    cmd->add_option("--theta", *theta, "peak threshold")->check(CLI::PositiveNumber);
    cmd->add_option("--refine-tol", *refine, "golden-section tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--polish", *polish, "re-refinement sweeps")->check(CLI::NonNegativeNumber);
    cmd->callback([&run, &g, src, N, theta, refine, polish] {
      run = [&g, src, N, theta, refine, polish] {
        const auto phi = src->load();
        const auto report = scan_spectrum(phi, default_radius(phi, *N), spectrum_options(*theta, *refine, *polish));
        Json j = as_json(report);
        if (report.presentation_certified) {
          j["group"] = Compactification::induced(report.generated_subgroup).describe();
        }
        emit_report(g, j);
        return strict_code(g, report.presentation_certified);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("distance", "translation distances d(g) = m(|φ − τ_g φ|) as CSV g,value");
    auto src = std::make_shared<SequenceSource>();
    auto N = std::make_shared<std::int64_t>(0);
    auto G = std::make_shared<std::int64_t>(100);
    auto out = std::make_shared<std::string>();
    src->add_options(cmd);
    add_window(cmd, *N);
    cmd->add_option("--G", *G, "translations g ∈ [−G, G]")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", *out, "CSV file (default stdout)");
    cmd->callback([&run, &g, src, N, G, out] {
      run = [&g, src, N, G, out] {
        const auto phi = src->load();
        const auto profile = distance_profile(phi, *G, default_radius(phi, *N));
        if (emit_json(g, as_json(profile)) && out->empty()) return kOk;
        std::ostringstream os;
        os.precision(12);
        os << "g,value\n";
        for (std::int64_t k = -profile.g_window; k <= profile.g_window; ++k) os << k << ',' << profile.at(k) << '\n';
        write_text_file(*out, os.str());
        return kOk;
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("filter-set", "F(φ, ε) = {g : d(g) < ε} on a window");
    auto src = std::make_shared<SequenceSource>();
    auto N = std::make_shared<std::int64_t>(0);
    auto G = std::make_shared<std::int64_t>(100);
    auto eps = std::make_shared<double>(0.1);
    src->add_options(cmd);
    add_window(cmd, *N);
    cmd->add_option("--G", *G, "translations g ∈ [−G, G]")->check(CLI::NonNegativeNumber);
    cmd->add_option("--eps", *eps, "level ε")->check(CLI::PositiveNumber);
    cmd->callback([&run, &g, src, N, G, eps] {
      run = [&g, src, N, G, eps] {
        const auto phi = src->load();
        emit_report(g, as_json(filter_set(phi, *eps, *G, default_radius(phi, *N))));
        return kOk;
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("subgroup-test", "filter-limit diagnostic for χ ∈ Sub(φ)");
    auto src = std::make_shared<SequenceSource>();
    auto params = std::make_shared<MembershipParams>();
    auto alpha = std::make_shared<std::string>();
    auto envelope = std::make_shared<std::string>();
    src->add_options(cmd);
    cmd->add_option("--alpha", *alpha, "character literal")->required();
    cmd->add_option("--N", params->N, "window radius")->check(CLI::PositiveNumber);
    cmd->add_option("--G", params->g_window, "translations g ∈ [−G, G]")->check(CLI::PositiveNumber);
    cmd->add_option("--delta-min", params->delta_min, "finest level δ")->check(CLI::PositiveNumber);
    cmd->add_option("--envelope-csv", *envelope, "write delta,envelope CSV");
    cmd->callback([&run, &g, src, params, alpha, envelope] {
      run = [&g, src, params, alpha, envelope] {
        const auto phi = src->load();
        const auto report = sub_membership_test(phi, parse_character(*alpha), *params);
        if (!envelope->empty()) {
          std::ostringstream os;
          os.precision(12);
          os << "delta,envelope\n";
          for (const auto& e : report.envelope) os << e.delta << ',' << e.envelope << '\n';
          write_text_file(*envelope, os.str());
        }
        emit_report(g, as_json(report));
        return strict_code(g, report.verdict != MembershipVerdict::inconclusive);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("fejer", "Fejér means σ_n f of a step function, with the norm certificate");
    auto path = std::make_shared<std::string>();
    auto order = std::make_shared<std::int64_t>(64);
    auto grid = std::make_shared<int>(0);
    cmd->add_option("--function", *path, "step function JSON")->required();
    cmd->add_option("--order", *order, "Fejér order n")->check(CLI::PositiveNumber);
    cmd->add_option("--grid", *grid, "certificate grid per coordinate (0: automatic)")->check(CLI::NonNegativeNumber);
    cmd->callback([&run, &g, path, order, grid] {
      run = [&g, path, order, grid] {
        const auto f = load_step_function(*path);
        const FejerOperator op(*order, f.shape().torus_rank);
        const auto cert = certify_fejer_norm(op, f, *grid);
        emit_report(g, Json{{"order", *order}, {"realization", as_json(fejer_apply(op, f))}, {"certificate", as_json(cert)}});
        return strict_code(g, cert.passed);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("aperiodize", "fiber-average a step function over its kernel");
    auto path = std::make_shared<std::string>();
    cmd->add_option("--function", *path, "step function JSON")->required();
    cmd->callback([&run, &g, path] {
      run = [&g, path] {
        const auto a = aperiodize(load_step_function(*path));
        emit_report(g, as_json(a));
        return strict_code(g, a.certificate.passed);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("reconstruct", "recover the minimal compactification from samples");
    auto src = std::make_shared<SequenceSource>();
    auto N = std::make_shared<std::int64_t>(0);
    auto theta = std::make_shared<double>(1e-3);
    auto order = std::make_shared<std::int64_t>(256);
    auto compare = std::make_shared<std::vector<std::string>>();
    src->add_options(cmd);
    add_window(cmd, *N);
    cmd->add_option("--theta", *theta, "peak threshold")->check(CLI::PositiveNumber);
    cmd->add_option("--order", *order, "Fejér synthesis order")->check(CLI::PositiveNumber);
    cmd->add_option("--compare", *compare, "check equivalence with the compactification induced by these characters");
    cmd->callback([&run, &g, src, N, theta, order, compare] {
      run = [&g, src, N, theta, order, compare] {
        const auto phi = src->load();
        ReconstructParams p;
        p.N = default_radius(phi, *N);
        p.spectrum.theta = *theta;
        p.order = *order;
        const auto r = reconstruct(phi, p);
        Json j = as_json(r);
        bool settled = r.report.spectrum.presentation_certified;
        if (!compare->empty()) {
          SpectralSubgroup gamma;
          for (const auto& c : *compare) gamma.generators.push_back(parse_character(c));
          const auto e = equivalence_check(r.comp, Compactification::induced(gamma));
          j["equivalence"] = as_json(e);
          settled = settled && e.verdict != Verdict::undecided;
        }
        emit_report(g, j);
        return strict_code(g, settled);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("verify", "exact checks over the built-in step-function corpus");
    auto suite = std::make_shared<std::string>("all");
    cmd->add_option("--suite", *suite, "weil | fejer | aperiodize | all")
        ->check(CLI::IsMember({"weil", "fejer", "aperiodize", "all"}));
    cmd->callback([&run, &g, suite] {
      run = [&g, suite] {
        const std::uint64_t seed = g.seed_given ? g.seed : kCorpusSeed;
        std::vector<Line> lines;
        auto append = [&lines](std::vector<Line> more) { lines.insert(lines.end(), more.begin(), more.end()); };
        if (*suite == "weil" || *suite == "all") append(weil_suite(seed));
        if (*suite == "fejer" || *suite == "all") append(fejer_suite(seed));
        if (*suite == "aperiodize" || *suite == "all") append(aperiodize_suite(seed));
        bool ok = true;
        Json j = Json::array();
        for (const auto& l : lines) {
          ok = ok && l.ok;
          j.push_back(Json{{"suite", l.suite}, {"case", l.name}, {"result", l.ok ? "exact-pass" : "fail"}, {"detail", l.detail}});
        }
        if (!emit_json(g, j)) {
          for (const auto& l : lines) print(l);
        }
        return ok ? kOk : kCheckFailed;
      };
    });
  }
}

}  // namespace hartman::cli
