#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hartman/character.hpp"
#include "hartman/distance_filter.hpp"
#include "hartman/fejer_weil.hpp"
#include "hartman/group_model.hpp"
#include "hartman/mean_engine.hpp"
#include "hartman/reconstruct.hpp"
#include "hartman/spectrum.hpp"
#include "hartman/step_function.hpp"
#include "hartman/trig_polynomial.hpp"

namespace hartman {

using Json = nlohmann::ordered_json;

/// Character literals: "p/q" or "p" (exact rational), "quadratic:a,b,c,d" for
/// (a + b√c)/d, "float:x[,tol]" or a decimal "0.41…" (floating). Throws
/// std::invalid_argument.
Character parse_character(std::string_view text);

/// Rounds to 12 significant digits so that reports print identically across runs
/// and platforms.
double fixed(double x);

/// {"num": p, "den": q} | {"quadratic": {"a", "b", "c", "d"}} for (a + b√c)/d |
/// {"float": x, "tolerance": t}; other exact characters add their literal to "float".
Json descriptor(const Character& c);
/// Accepts descriptors and character literals.
Character character_from_json(const Json& j);
/// {"generators": [descriptor, …]}
SpectralSubgroup spectral_subgroup_from_json(const Json& j);

Json as_json(const Rational& q);
Json as_json(const ComplexQ& z);
Json as_json(std::complex<double> z);
Json as_json(const Character& c);
Json as_json(const GroupShape& shape);
Json as_json(const Frequency& m);
Json as_json(const ExactPoint& x);
Json as_json(const SpectralSubgroup& gamma);
Json as_json(const Compactification& comp);
Json as_json(const StepFunction& f);
Json as_json(const TrigPolynomial& p);
Json as_json(const MeanEstimate& m);
Json as_json(const SpectrumReport& report);
Json as_json(const DistanceProfile& profile);
Json as_json(const FilterSet& set);
Json as_json(const MembershipReport& report);
Json as_json(const SubgroupH& H);
Json as_json(const FejerNormCertificate& cert);
Json as_json(const Aperiodization& a);
Json as_json(const GammaRealization& r);
Json as_json(const Reconstruction& r);
Json as_json(const EquivalenceResult& e);
Json as_json(const InclusionCheck& c);

/// {"domain": {"torus_rank": k, "finite_orders": [...]},
///  "pieces": [{"box": [["lo","hi"], …], "fiber": [...], "value": {"re": "p/q", "im": "p/q"}}]}.
/// Values may also be given as "p/q" or ["re", "im"]; a missing fiber means all of F.
StepFunction step_function_from_json(const Json& j);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace hartman
