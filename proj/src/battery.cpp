#include "passivize/battery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace passivize {

namespace {

constexpr double pi = std::numbers::pi;

// Quintic smoothstep and its integral on [0, 1].
double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double smoothstep_integral(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 0.5 + (x - 1.0);
  const double x4 = x * x * x * x;
  return x4 * (2.5 + x * (-3.0 + x));
}

/// Energy eigenprojectors from the eps-degeneracy groups, with the distinct
/// energy values.
std::pair<std::vector<Matrix>, std::vector<double>> energy_projectors(
    const BatterySpec& battery) {
  const auto& spec = battery.sys;
  std::vector<Matrix> proj;
  std::vector<double> values;
  for (const auto& g : spec.a_groups()) {
    Matrix p = Matrix::Zero(spec.dim(), spec.dim());
    for (int k : g) p(k, k) = 1.0;
    proj.push_back(std::move(p));
    values.push_back(spec.a()[g.front()]);
  }
  return {proj, values};
}

}  // namespace

Matrix BatterySpec::internal_hamiltonian() const {
  Matrix h = Matrix::Zero(sys.dim(), sys.dim());
  for (int k = 0; k < sys.dim(); ++k) h(k, k) = sys.a()[k];
  return h;
}

double ergotropy(const BatterySpec& battery) {
  double initial = 0.0;
  for (int k = 0; k < battery.sys.dim(); ++k)
    initial += battery.sys.a()[k] * battery.sys.p()[k];
  return initial - min_expectation(battery.sys);
}

PowerBound power_upper_bound(const BatterySpec& battery, PowerScenario scenario) {
  const auto& spec = battery.sys;
  const double w = ergotropy(battery);
  PowerBound out{};
  switch (scenario.kind) {
    case PowerScenario::Kind::generic: {
      BoundReport bounds = compute_bounds(spec);
      if (bounds.tau_exact && *bounds.tau_exact > 0.0) {
        out.tau = *bounds.tau_exact;
        out.tau_kind = "exact";
      } else {
        out.tau = bounds.tau_qsl;
        out.tau_kind = "qsl";
      }
      break;
    }
    case PowerScenario::Kind::maximally_active: {
      auto built = build_time_optimal_hamiltonian(spec, HamiltonianMethod::maximally_active);
      out.tau = built ? built->tau : 0.0;
      out.tau_kind = "exact";
      break;
    }
    case PowerScenario::Kind::nondegenerate:
      out.tau = tau_pas_nondegenerate(spec);
      out.tau_kind = "exact";
      break;
    case PowerScenario::Kind::assisted: {
      AssistedBounds ab = assisted_bounds(spec, scenario.param);
      out.tau = ab.tau_aqsl;
      out.tau_kind = "qsl";
      break;
    }
    case PowerScenario::Kind::collective: {
      CollectiveSpec cspec{spec, scenario.param, std::nullopt};
      out.tau = tau_cqsl(cspec);
      out.tau_kind = "qsl";
      out.advantage = advantage_ratio(cspec);
      out.power = scenario.param * w / out.tau;  // ensemble ergotropy N W
      return out;
    }
  }
  out.power = (out.tau > 0.0) ? w / out.tau : 0.0;
  return out;
}

DischargeSchedule::DischargeSchedule(HermitianOperator v_opt, double tau_pas, double ramp,
                                     Matrix h_internal)
    : v_opt_(std::move(v_opt)),
      tau_pas_(tau_pas),
      ramp_(ramp),
      height_(tau_pas / (tau_pas + 0.5 * ramp)),
      h_internal_(std::move(h_internal)) {}

UnitaryOperator DischargeSchedule::implemented_unitary() const {
  return expm_skew(v_opt_, tau_pas_);
}

double DischargeSchedule::u_prime(double t) const {
  const double r = 0.5 * ramp_;
  const double total = duration();
  if (t <= 0.0 || t >= total) return 0.0;
  if (t < r) return height_ * smoothstep(t / r);
  if (t > total - r) return height_ * smoothstep((total - t) / r);
  return height_;
}

double DischargeSchedule::u(double t) const {
  const double r = 0.5 * ramp_;
  const double total = duration();
  if (t <= 0.0) return 0.0;
  if (t >= total) return tau_pas_;
  if (t < r) return height_ * r * smoothstep_integral(t / r);
  if (t <= total - r) return height_ * (0.5 * r + (t - r));
  return tau_pas_ - height_ * r * smoothstep_integral((total - t) / r);
}

Matrix DischargeSchedule::potential(double t) const {
  const double du = u_prime(t);
  if (du == 0.0) return Matrix::Zero(h_internal_.rows(), h_internal_.cols());
  UnitaryOperator frame = expm_skew(HermitianOperator(h_internal_), t);
  return du * conjugate(frame.matrix(), v_opt_.matrix());
}

Matrix DischargeSchedule::interaction_potential(double t) const {
  return u_prime(t) * v_opt_.matrix();
}

Generator DischargeSchedule::lab_generator() const {
  return [*this](double t) { return h_internal_ + potential(t); };
}

DischargeSchedule smooth_discharge_schedule(const HermitianOperator& v_opt, double tau_pas,
                                            double ramp, const BatterySpec& battery) {
  const double budget = battery.sys.omega() * battery.sys.omega();
  if (std::abs(bandwidth(v_opt) - budget) > tol::num * rel_scale(budget))
    throw BandwidthMismatch("optimal potential must saturate the bandwidth budget");
  if (!(ramp > 0.0)) throw InvalidSpec("ramp time must be positive");
  if (!(tau_pas > 0.0)) throw InvalidSpec("passivization time must be positive");
  return DischargeSchedule(v_opt, tau_pas, ramp, battery.internal_hamiltonian());
}

bool interaction_picture_check(const DischargeSchedule& schedule, const BatterySpec& battery,
                               int samples, int steps) {
  const double total = schedule.duration();
  for (int s = 0; s <= samples; ++s) {
    const double t = total * s / samples;
    const double lab = schedule.potential(t).squaredNorm();
    const double rot = schedule.interaction_potential(t).squaredNorm();
    if (std::abs(lab - rot) > tol::num * rel_scale(lab)) return false;
  }
  DensityOperator rho0 = DensityOperator::diagonal(battery.sys.p());
  DensityOperator lab_final =
      von_neumann_evolve(schedule.lab_generator(), rho0, total, steps);
  Generator rotating = [&schedule](double t) { return schedule.interaction_potential(t); };
  DensityOperator rot_final = von_neumann_evolve(rotating, rho0, total, steps);
  const double tol_integration = 100.0 / (double(steps) * steps);
  const bool lab_passive = is_passive(lab_final, battery.sys, tol_integration);
  const bool rot_passive = is_passive(rot_final, battery.sys, tol_integration);
  // Passive states commute with H, so the two pictures must agree; the
  // schedule passes only if it actually discharges the battery.
  return lab_passive == rot_passive && lab_passive;
}

double energy_transfer_variance(const UnitaryOperator& u, const BatterySpec& battery) {
  const auto& spec = battery.sys;
  if (u.dim() != spec.dim()) throw DimensionMismatch("unitary dimension mismatch");
  DensityOperator rho = DensityOperator::diagonal(spec.p());
  DensityOperator rho_final(conjugate(u.matrix(), rho.matrix()));
  if (!is_passive(rho_final, spec))
    throw NotPassivizing("unitary does not leave the battery passive");

  auto [proj, energy] = energy_projectors(battery);
  const int r = static_cast<int>(proj.size());
  const double w = ergotropy(battery);

  // Route 1: energy-jump probabilities p(l,k).
  double second_moment = 0.0;
  for (int k = 0; k < r; ++k) {
    Matrix inner = conjugate(u.matrix() * proj[k], rho.matrix());
    for (int l = 0; l < r; ++l) {
      const double plk = (proj[l] * inner).trace().real();
      const double jump = energy[k] - energy[l];
      second_moment += jump * jump * plk;
    }
  }
  const double via_probabilities = second_moment - w * w;

  // Route 2: H-moment expression.
  const Matrix h = battery.internal_hamiltonian();
  auto moments = [&](const Matrix& state) {
    const double e1 = (h * state).trace().real();
    const double e2 = (h * h * state).trace().real();
    return std::pair<double, double>{e1, e2 - e1 * e1};
  };
  auto [ei, vi] = moments(rho.matrix());
  auto [ep, vp] = moments(rho_final.matrix());
  const double cross =
      (u.matrix().adjoint() * h * u.matrix() * h * rho.matrix()).trace().real();
  const double via_moments = vi + vp + 2.0 * ei * ep - 2.0 * cross;

  const double scale = rel_scale(std::abs(via_probabilities));
  if (std::abs(via_probabilities - via_moments) > tol::num * scale)
    throw FormulaMismatch("variance expressions disagree");
  return via_probabilities;
}

UnitaryOperator qutrit_passivizing_family(double a, const std::array<double, 4>& phases,
                                          const BatterySpec& battery) {
  const auto& spec = battery.sys;
  if (spec.dim() != 3) throw SpectrumMismatch("family is defined for qutrits");
  if (!(spec.a_nondegenerate()))
    throw SpectrumMismatch("internal energies must be non-degenerate");
  if (spec.p_class(0) != spec.p_class(1) || spec.p_class(1) == spec.p_class(2) ||
      spec.p()[2] <= spec.p()[0])
    throw SpectrumMismatch("state spectrum must satisfy p1 = p2 < p3");
  if (a < 0.0 || a > 1.0) throw InvalidSpec("mixing parameter must lie in [0, 1]");
  const auto [alpha, beta, gamma, theta] = phases;
  const double sa = std::sqrt(a), sb = std::sqrt(1.0 - a);
  auto ph = [](double x) { return std::exp(Complex(0.0, x)); };
  Matrix u(3, 3);
  u << 0.0, 0.0, ph(alpha),
      sa * ph(beta), sb * ph(beta + theta), 0.0,
      sb * ph(gamma), -sa * ph(gamma + theta), 0.0;
  return UnitaryOperator(std::move(u));
}

}  // namespace passivize
