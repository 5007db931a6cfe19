#ifndef PASSIVIZE_BATTERY_HPP
#define PASSIVIZE_BATTERY_HPP

#include <array>
#include <optional>
#include <string>

#include "passivize/bounds.hpp"
#include "passivize/collective.hpp"
#include "passivize/system.hpp"

namespace passivize {

/// A quantum battery: internal energies eps (nondecreasing), statistical
/// weights p, and the bandwidth budget omega for the driving potential.
struct BatterySpec {
  SystemSpec sys;
  BatterySpec(std::vector<double> eps, std::vector<double> p, double omega)
      : sys(std::move(eps), std::move(p), omega) {}
  const RVector& eps() const { return sys.a(); }
  Matrix internal_hamiltonian() const;
};

/// Maximal cyclically extractable average energy, E(rho_i) - E(rho_p).
double ergotropy(const BatterySpec& battery);

struct PowerScenario {
  enum class Kind { generic, maximally_active, nondegenerate, assisted, collective };
  Kind kind = Kind::generic;
  int param = 1;  // catalyst dimension or copy count
  static PowerScenario generic() { return {Kind::generic, 1}; }
  static PowerScenario maximally_active() { return {Kind::maximally_active, 1}; }
  static PowerScenario nondegenerate() { return {Kind::nondegenerate, 1}; }
  static PowerScenario assisted(int n_c) { return {Kind::assisted, n_c}; }
  static PowerScenario collective(int copies) { return {Kind::collective, copies}; }
};

struct PowerBound {
  double power;              // upper bound on the average power
  double tau;                // time bound in the denominator
  std::string tau_kind;      // "exact" or "qsl"
  std::optional<double> advantage;  // collective/parallel ratio bound
};

/// W / tau with tau the matching lower bound on the process duration.
PowerBound power_upper_bound(const BatterySpec& battery, PowerScenario scenario);

/// Cyclic discharge schedule: V(t) = u'(t) e^{-itH} V_I e^{itH} with a
/// flat-top ramp profile, so the potential vanishes outside [0, duration],
/// tr V(t)^2 stays within the budget and the final state equals
/// e^{-i tau_pas V_I} rho_i e^{i tau_pas V_I}.
class DischargeSchedule {
 public:
  DischargeSchedule(HermitianOperator v_opt, double tau_pas, double ramp, Matrix h_internal);

  double duration() const { return tau_pas_ + ramp_; }
  double tau_pas() const { return tau_pas_; }
  double ramp() const { return ramp_; }
  const HermitianOperator& optimal_potential() const { return v_opt_; }
  UnitaryOperator implemented_unitary() const;

  double u(double t) const;        // integrated profile, reaches tau_pas
  double u_prime(double t) const;  // in [0, 1), zero outside [0, duration]
  Matrix potential(double t) const;
  Matrix interaction_potential(double t) const;  // u'(t) V_I
  Generator lab_generator() const;               // H + V(t)

 private:
  HermitianOperator v_opt_;
  double tau_pas_, ramp_, height_;
  Matrix h_internal_;
};

/// Builds the schedule after checking the potential saturates the budget.
DischargeSchedule smooth_discharge_schedule(const HermitianOperator& v_opt, double tau_pas,
                                            double ramp, const BatterySpec& battery);

/// Samples tr(V_I(t)^2) against tr(V(t)^2) and compares passivity of the
/// final state in both pictures.
bool interaction_picture_check(const DischargeSchedule& schedule,
                               const BatterySpec& battery, int samples = 100,
                               int steps = 20000);

/// Variance of the transferred energy, computed independently from the
/// energy-jump probabilities and from the closed expression in terms of
/// H-moments; throws FormulaMismatch if the two disagree.
double energy_transfer_variance(const UnitaryOperator& u, const BatterySpec& battery);

/// The one-parameter family (plus four free phases) of passivizing unitaries
/// of a qutrit with p1 = p2 < p3 and strictly ordered energies.
UnitaryOperator qutrit_passivizing_family(double a, const std::array<double, 4>& phases,
                                          const BatterySpec& battery);

}  // namespace passivize

#endif
