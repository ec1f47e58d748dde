#include "spikeslab/prior.hpp"

#include <cmath>
#include <sstream>

#include "spikeslab/errors.hpp"

namespace spikeslab {
namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << field << " must be a positive finite number (got " << value << ")";
    throw InvalidArgument(msg.str());
  }
}

void require_ratio(double r, std::vector<std::string>& warnings) {
  if (!(r > 0.0 && r < 1.0)) {
    std::ostringstream msg;
    msg << "r must lie in (0, 1) (got " << r << ")";
    throw InvalidArgument(msg.str());
  }
  if (r > 0.01) {
    std::ostringstream msg;
    msg << "variance ratio r = " << r
        << " is large; spike and slab may be poorly separated";
    warnings.push_back(msg.str());
  }
}

struct Validator {
  std::vector<std::string>& warnings;

  void operator()(const Ssvs& p) const {
    require_ratio(p.r, warnings);
    require_positive(p.v, "V");
  }
  void operator()(const Nmig& p) const {
    require_ratio(p.r, warnings);
    require_positive(p.nu, "nu");
    require_positive(p.q, "Q");
  }
  void operator()(const DiracI& p) const { require_positive(p.c, "c"); }
  void operator()(const DiracG& p) const { require_positive(p.g, "g"); }
  void operator()(const DiracF& p) const {
    if (!(p.b > 0.0 && p.b < 1.0)) {
      std::ostringstream msg;
      msg << "b must lie in (0, 1) (got " << p.b << ")";
      throw InvalidArgument(msg.str());
    }
  }
};

}  // namespace

std::vector<std::string> PriorSpec::validate() const {
  std::vector<std::string> warnings;
  std::visit(Validator{warnings}, slab);
  require_positive(omega.a, "a_omega");
  require_positive(omega.b, "b_omega");
  return warnings;
}

std::string PriorSpec::name() const {
  static constexpr const char* kNames[] = {"ssvs", "nmig", "dirac-i", "dirac-g",
                                           "dirac-f"};
  return kNames[slab.index()];
}

Slab slab_from_name(std::string_view name) {
  if (name == "ssvs") return Ssvs{};
  if (name == "nmig") return Nmig{};
  if (name == "dirac-i") return DiracI{};
  if (name == "dirac-g") return DiracG{};
  if (name == "dirac-f") return DiracF{};
  throw InvalidArgument("unknown prior '" + std::string(name) +
                        "' (expected ssvs, nmig, dirac-i, dirac-g or dirac-f)");
}

std::vector<PriorSpec> matched_priors(long n, double c, double r, double nu, double q,
                                      OmegaPrior omega) {
  const double g = static_cast<double>(n) * c;
  return {
      PriorSpec{Ssvs{r, c}, omega},
      PriorSpec{Nmig{r, nu, q}, omega},
      PriorSpec{DiracI{c}, omega},
      PriorSpec{DiracG{g}, omega},
      PriorSpec{DiracF{1.0 / g}, omega},
  };
}

}  // namespace spikeslab
