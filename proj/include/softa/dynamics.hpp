#pragma once

#include <array>
#include <cmath>
#include <string>

#include "softa/types.hpp"

// Planar articulated rigid-body dynamics for a reduced humanoid: a floating
// base (x, z, pitch), two 2-joint legs with point feet, and one 2-joint arm
// whose tip is the end-effector. Mass matrix and bias forces are assembled
// from per-link CoM Jacobians; ground contact is a penalty spring-damper with
// a friction cone clamp; integration is semi-implicit Euler.
//
// Conventions: world x right, z up, angles CCW. Joint angle zero means the
// legs hang straight down and the arm extends along the base +x axis. q0, q1
// are the base CoM position, q2 the base pitch, q3..q8 the actuated joints in
// JointId order. The ground is the plane z = 0.

namespace softa {

template <typename Scalar>
struct LinkParams {
  Scalar length{};   // joint-to-joint (or joint-to-tip) distance, m
  Scalar mass{};     // kg
  Scalar inertia{};  // rotational inertia about the CoM, kg m^2
  Scalar com{};      // CoM distance from the proximal joint along the link, m
};

template <typename Scalar>
struct ModelConfig {
  Scalar base_mass = Scalar(6.0);
  Scalar base_inertia = Scalar(0.15);
  Vec2<Scalar> hip_offset{Scalar(0.0), Scalar(-0.25)};       // base frame
  Vec2<Scalar> shoulder_offset{Scalar(0.0), Scalar(0.25)};   // base frame

  LinkParams<Scalar> thigh{Scalar(0.25), Scalar(1.2), Scalar(0.01), Scalar(0.125)};
  LinkParams<Scalar> shank{Scalar(0.25), Scalar(0.8), Scalar(0.008), Scalar(0.125)};
  LinkParams<Scalar> upper_arm{Scalar(0.25), Scalar(0.5), Scalar(0.004), Scalar(0.125)};
  LinkParams<Scalar> forearm{Scalar(0.25), Scalar(0.4), Scalar(0.003), Scalar(0.125)};

  VecJ<Scalar> joint_lower = (VecJ<Scalar>() << -1.5, -2.4, -1.5, -2.4, -2.8, -2.8).finished();
  VecJ<Scalar> joint_upper = (VecJ<Scalar>() << 1.5, 2.4, 1.5, 2.4, 2.8, 2.8).finished();
  VecJ<Scalar> kp = (VecJ<Scalar>() << 60, 60, 60, 60, 30, 30).finished();
  VecJ<Scalar> kd = (VecJ<Scalar>() << 2.0, 2.0, 2.0, 2.0, 1.0, 1.0).finished();
  VecJ<Scalar> torque_limit = (VecJ<Scalar>() << 60, 60, 60, 60, 30, 30).finished();

  Scalar contact_stiffness = Scalar(20000.0);      // N/m
  Scalar contact_damping = Scalar(400.0);          // N s/m
  Scalar contact_tangent_damping = Scalar(400.0);  // N s/m
  Scalar friction = Scalar(0.8);

  Scalar gravity = Scalar(9.81);
  Scalar dt = Scalar(1.0 / 200.0);
  Scalar qd_safety_bound = Scalar(100.0);

  // Test hook: treats the base as welded to the world (not part of the robot
  // contract, used to isolate joint chains against analytic references).
  bool fixed_base = false;
};

template <typename Scalar>
struct GeneralizedState {
  VecQ<Scalar> q = VecQ<Scalar>::Zero();
  VecQ<Scalar> qd = VecQ<Scalar>::Zero();
  Scalar t = Scalar(0);
};

struct ContactState {
  bool in_contact = false;
  double normal_force = 0.0;
  double tangential_force = 0.0;
};

template <typename Scalar>
struct EeState {
  Vec2<Scalar> position = Vec2<Scalar>::Zero();
  Scalar theta{};   // forearm angle in the world frame
  Vec2<Scalar> velocity = Vec2<Scalar>::Zero();
  Scalar omega{};
};

template <typename Scalar>
struct ExternalForces {
  Vec2<Scalar> ee_force = Vec2<Scalar>::Zero();
  // application point, forearm frame, relative to the EE tip
  Vec2<Scalar> ee_offset = Vec2<Scalar>::Zero();
};

namespace detail {

template <typename Scalar>
void require_positive(Scalar v, const char* field) {
  if (!(v > Scalar(0))) {
    throw ConfigError(std::string("model config: '") + field +
                      "' must be > 0");
  }
}

template <typename Scalar>
void validate_link(const LinkParams<Scalar>& l, const char* name) {
  const std::string n(name);
  if (!(l.length > Scalar(0))) throw ConfigError("model config: '" + n + ".length' must be > 0");
  if (!(l.mass > Scalar(0))) throw ConfigError("model config: '" + n + ".mass' must be > 0");
  if (!(l.inertia > Scalar(0))) throw ConfigError("model config: '" + n + ".inertia' must be > 0");
  if (!(l.com >= Scalar(0)) || !(l.com <= l.length))
    throw ConfigError("model config: '" + n + ".com' must lie within [0, length]");
}

}  // namespace detail

// Immutable model; cheap to copy, shareable across threads.
template <typename Scalar>
class Model {
 public:
  explicit Model(const ModelConfig<Scalar>& cfg) : cfg_(cfg) {
    total_mass_ = cfg.base_mass + 2 * (cfg.thigh.mass + cfg.shank.mass) +
                  cfg.upper_arm.mass + cfg.forearm.mass;
  }

  const ModelConfig<Scalar>& config() const { return cfg_; }
  Scalar dt() const { return cfg_.dt; }
  Scalar total_mass() const { return total_mass_; }
  static constexpr int num_links() { return kLinks; }
  static constexpr int num_gen_coords() { return kGenCoords; }

 private:
  ModelConfig<Scalar> cfg_;
  Scalar total_mass_;
};

template <typename Scalar>
Model<Scalar> build_model(const ModelConfig<Scalar>& cfg) {
  detail::require_positive(cfg.base_mass, "base_mass");
  detail::require_positive(cfg.base_inertia, "base_inertia");
  detail::validate_link(cfg.thigh, "thigh");
  detail::validate_link(cfg.shank, "shank");
  detail::validate_link(cfg.upper_arm, "upper_arm");
  detail::validate_link(cfg.forearm, "forearm");
  detail::require_positive(cfg.contact_stiffness, "contact_stiffness");
  detail::require_positive(cfg.contact_damping, "contact_damping");
  detail::require_positive(cfg.contact_tangent_damping, "contact_tangent_damping");
  if (!(cfg.friction >= Scalar(0)))
    throw ConfigError("model config: 'friction' must be >= 0");
  detail::require_positive(cfg.gravity, "gravity");
  detail::require_positive(cfg.dt, "dt");
  detail::require_positive(cfg.qd_safety_bound, "qd_safety_bound");
  for (int j = 0; j < kJoints; ++j) {
    if (!(cfg.joint_lower[j] < cfg.joint_upper[j]))
      throw ConfigError("model config: 'joint_lower[" + std::to_string(j) +
                        "]' must be below the upper limit");
    detail::require_positive(cfg.kp[j], "kp");
    if (!(cfg.kd[j] >= Scalar(0))) throw ConfigError("model config: 'kd' must be >= 0");
    detail::require_positive(cfg.torque_limit[j], "torque_limit");
  }
  return Model<Scalar>(cfg);
}

// A material point accumulated along a kinematic chain: position, velocity,
// position Jacobian, and the velocity-product acceleration (qdd = 0 term).
template <typename Scalar>
struct PointKin {
  Vec2<Scalar> p = Vec2<Scalar>::Zero();
  Vec2<Scalar> v = Vec2<Scalar>::Zero();
  Vec2<Scalar> a_vp = Vec2<Scalar>::Zero();
  Jac2Q<Scalar> jac = Jac2Q<Scalar>::Zero();

  // Extend by a rotating offset (already expressed in the world frame) whose
  // absolute angle has rate `omega` and gradient `angle_jac`.
  PointKin extended(const Vec2<Scalar>& offset_world, Scalar omega,
                    const VecQ<Scalar>& angle_jac) const {
    PointKin out = *this;
    const Vec2<Scalar> pp = perp(offset_world);
    out.p += offset_world;
    out.v += omega * pp;
    out.a_vp += -(omega * omega) * offset_world;
    out.jac += pp * angle_jac.transpose();
    return out;
  }
};

template <typename Scalar>
struct BodyKin {
  Scalar angle{};
  Scalar omega{};
  VecQ<Scalar> angle_jac = VecQ<Scalar>::Zero();
  PointKin<Scalar> origin;  // proximal joint
  PointKin<Scalar> com;
};

template <typename Scalar>
struct Kinematics {
  std::array<BodyKin<Scalar>, kLinks> body;
  std::array<PointKin<Scalar>, 2> foot;  // left, right shank tips
  PointKin<Scalar> ee;                   // forearm tip
};

template <typename Scalar>
Kinematics<Scalar> compute_kinematics(const Model<Scalar>& model,
                                      const VecQ<Scalar>& q,
                                      const VecQ<Scalar>& qd) {
  const auto& c = model.config();
  Kinematics<Scalar> k;
  const Scalar half_pi = Scalar(1.5707963267948966192313216916398);

  auto& base = k.body[kBase];
  base.angle = q[2];
  base.omega = qd[2];
  base.angle_jac[2] = Scalar(1);
  base.origin.p = Vec2<Scalar>(q[0], q[1]);
  base.origin.v = Vec2<Scalar>(qd[0], qd[1]);
  base.origin.jac(0, 0) = Scalar(1);
  base.origin.jac(1, 1) = Scalar(1);
  base.com = base.origin;

  struct Def {
    int link, parent, qidx;
    Scalar rest;
  };
  const std::array<Def, 6> defs = {{
      {kLeftThigh, kBase, 3, -half_pi},
      {kLeftShank, kLeftThigh, 4, Scalar(0)},
      {kRightThigh, kBase, 5, -half_pi},
      {kRightShank, kRightThigh, 6, Scalar(0)},
      {kUpperArm, kBase, 7, Scalar(0)},
      {kForearm, kUpperArm, 8, Scalar(0)},
  }};

  auto attach_local = [&](int link) -> Vec2<Scalar> {
    switch (link) {
      case kLeftThigh:
      case kRightThigh:
        return c.hip_offset;
      case kLeftShank:
      case kRightShank:
        return Vec2<Scalar>(c.thigh.length, Scalar(0));
      case kUpperArm:
        return c.shoulder_offset;
      default:  // kForearm
        return Vec2<Scalar>(c.upper_arm.length, Scalar(0));
    }
  };
  auto params = [&](int link) -> const LinkParams<Scalar>& {
    switch (link) {
      case kLeftThigh:
      case kRightThigh:
        return c.thigh;
      case kLeftShank:
      case kRightShank:
        return c.shank;
      case kUpperArm:
        return c.upper_arm;
      default:
        return c.forearm;
    }
  };

  for (const auto& d : defs) {
    const auto& par = k.body[d.parent];
    auto& b = k.body[d.link];
    b.angle = par.angle + q[d.qidx] + d.rest;
    b.omega = par.omega + qd[d.qidx];
    b.angle_jac = par.angle_jac;
    b.angle_jac[d.qidx] += Scalar(1);

    const Vec2<Scalar> attach_w = rot2(par.angle) * attach_local(d.link);
    b.origin = par.origin.extended(attach_w, par.omega, par.angle_jac);
    const Vec2<Scalar> com_w = rot2(b.angle) * Vec2<Scalar>(params(d.link).com, Scalar(0));
    b.com = b.origin.extended(com_w, b.omega, b.angle_jac);
  }

  auto tip = [&](int link) {
    const auto& b = k.body[link];
    const Vec2<Scalar> off = rot2(b.angle) * Vec2<Scalar>(params(link).length, Scalar(0));
    return b.origin.extended(off, b.omega, b.angle_jac);
  };
  k.foot[0] = tip(kLeftShank);
  k.foot[1] = tip(kRightShank);
  k.ee = tip(kForearm);
  return k;
}

namespace detail {

template <typename Scalar>
Scalar link_mass(const ModelConfig<Scalar>& c, int link) {
  switch (link) {
    case kBase:
      return c.base_mass;
    case kLeftThigh:
    case kRightThigh:
      return c.thigh.mass;
    case kLeftShank:
    case kRightShank:
      return c.shank.mass;
    case kUpperArm:
      return c.upper_arm.mass;
    default:
      return c.forearm.mass;
  }
}

template <typename Scalar>
Scalar link_inertia(const ModelConfig<Scalar>& c, int link) {
  switch (link) {
    case kBase:
      return c.base_inertia;
    case kLeftThigh:
    case kRightThigh:
      return c.thigh.inertia;
    case kLeftShank:
    case kRightShank:
      return c.shank.inertia;
    case kUpperArm:
      return c.upper_arm.inertia;
    default:
      return c.forearm.inertia;
  }
}

}  // namespace detail

template <typename Scalar>
MatQ<Scalar> mass_matrix(const Model<Scalar>& model, const Kinematics<Scalar>& kin) {
  const auto& c = model.config();
  MatQ<Scalar> m = MatQ<Scalar>::Zero();
  for (int i = 0; i < kLinks; ++i) {
    const auto& b = kin.body[i];
    m.noalias() += detail::link_mass(c, i) * b.com.jac.transpose() * b.com.jac;
    m.noalias() += detail::link_inertia(c, i) * b.angle_jac * b.angle_jac.transpose();
  }
  return m;
}

template <typename Scalar>
MatQ<Scalar> mass_matrix(const Model<Scalar>& model, const VecQ<Scalar>& q) {
  return mass_matrix(model, compute_kinematics(model, q, VecQ<Scalar>::Zero()));
}

// Generalized bias forces (Coriolis/centrifugal + gravity):
//   M(q) qdd = tau + Jc^T fc - bias(q, qd)
template <typename Scalar>
VecQ<Scalar> bias_forces(const Model<Scalar>& model, const Kinematics<Scalar>& kin) {
  const auto& c = model.config();
  const Vec2<Scalar> g_vec(Scalar(0), -c.gravity);
  VecQ<Scalar> bias = VecQ<Scalar>::Zero();
  for (int i = 0; i < kLinks; ++i) {
    const auto& b = kin.body[i];
    bias.noalias() +=
        detail::link_mass(c, i) * b.com.jac.transpose() * (b.com.a_vp - g_vec);
  }
  return bias;
}

template <typename Scalar>
VecQ<Scalar> bias_forces(const Model<Scalar>& model, const VecQ<Scalar>& q,
                         const VecQ<Scalar>& qd) {
  return bias_forces(model, compute_kinematics(model, q, qd));
}

template <typename Scalar>
std::array<ContactState, 2> contact_forces(const Model<Scalar>& model,
                                           const Kinematics<Scalar>& kin) {
  const auto& c = model.config();
  std::array<ContactState, 2> out;
  for (int f = 0; f < 2; ++f) {
    const auto& pt = kin.foot[f];
    const Scalar h = pt.p.y();
    ContactState s;
    s.in_contact = h < Scalar(0);
    if (s.in_contact) {
      const Scalar normal =
          std::max(Scalar(0), -c.contact_stiffness * h - c.contact_damping * pt.v.y());
      const Scalar demand = -c.contact_tangent_damping * pt.v.x();
      const Scalar bound = c.friction * normal;
      s.normal_force = static_cast<double>(normal);
      s.tangential_force =
          static_cast<double>(std::clamp(demand, -bound, bound));
    }
    out[f] = s;
  }
  return out;
}

template <typename Scalar>
std::array<ContactState, 2> contact_forces(const Model<Scalar>& model,
                                           const VecQ<Scalar>& q,
                                           const VecQ<Scalar>& qd) {
  return contact_forces(model, compute_kinematics(model, q, qd));
}

template <typename Scalar>
VecJ<Scalar> pd_torques(const Model<Scalar>& model, const VecJ<Scalar>& q_target,
                        const VecQ<Scalar>& q, const VecQ<Scalar>& qd) {
  const auto& c = model.config();
  VecJ<Scalar> tau;
  for (int j = 0; j < kJoints; ++j) {
    const Scalar raw =
        c.kp[j] * (q_target[j] - q[3 + j]) - c.kd[j] * qd[3 + j];
    tau[j] = std::clamp(raw, -c.torque_limit[j], c.torque_limit[j]);
  }
  return tau;
}

// One semi-implicit Euler step. Joint positions are clamped to their limits
// with the joint velocity zeroed at the limit. Throws NumericalError when any
// generalized velocity exceeds the configured safety bound.
template <typename Scalar>
GeneralizedState<Scalar> step(const Model<Scalar>& model,
                              const GeneralizedState<Scalar>& state,
                              const VecJ<Scalar>& q_target,
                              const ExternalForces<Scalar>& external = {}) {
  const auto& c = model.config();
  const auto kin = compute_kinematics(model, state.q, state.qd);
  const MatQ<Scalar> m = mass_matrix(model, kin);
  const VecQ<Scalar> bias = bias_forces(model, kin);

  VecQ<Scalar> rhs = -bias;
  const VecJ<Scalar> tau = pd_torques(model, q_target, state.q, state.qd);
  rhs.template tail<kJoints>() += tau;

  const auto contacts = contact_forces(model, kin);
  for (int f = 0; f < 2; ++f) {
    if (!contacts[f].in_contact) continue;
    const Vec2<Scalar> fc(Scalar(contacts[f].tangential_force),
                          Scalar(contacts[f].normal_force));
    rhs.noalias() += kin.foot[f].jac.transpose() * fc;
  }

  if (external.ee_force.squaredNorm() > Scalar(0)) {
    const auto& farm = kin.body[kForearm];
    const Vec2<Scalar> off_w = rot2(farm.angle) * external.ee_offset;
    const auto pt = kin.ee.extended(off_w, farm.omega, farm.angle_jac);
    rhs.noalias() += pt.jac.transpose() * external.ee_force;
  }

  VecQ<Scalar> qdd = VecQ<Scalar>::Zero();
  if (c.fixed_base) {
    qdd.template tail<kJoints>() =
        m.template bottomRightCorner<kJoints, kJoints>().ldlt().solve(
            rhs.template tail<kJoints>());
  } else {
    qdd = m.ldlt().solve(rhs);
  }

  GeneralizedState<Scalar> next = state;
  next.qd += qdd * c.dt;
  if (c.fixed_base) next.qd.template head<3>().setZero();
  next.q += next.qd * c.dt;
  for (int j = 0; j < kJoints; ++j) {
    if (next.q[3 + j] < c.joint_lower[j]) {
      next.q[3 + j] = c.joint_lower[j];
      next.qd[3 + j] = Scalar(0);
    } else if (next.q[3 + j] > c.joint_upper[j]) {
      next.q[3 + j] = c.joint_upper[j];
      next.qd[3 + j] = Scalar(0);
    }
  }
  next.t += c.dt;

  for (int i = 0; i < kGenCoords; ++i) {
    if (!(std::abs(next.qd[i]) <= c.qd_safety_bound) || !std::isfinite(next.q[i])) {
      throw NumericalError("simulation diverged: |qd[" + std::to_string(i) +
                           "]| exceeded the safety bound at t = " +
                           std::to_string(static_cast<double>(next.t)));
    }
  }
  return next;
}

template <typename Scalar>
EeState<Scalar> ee_kinematics(const Model<Scalar>& model,
                              const GeneralizedState<Scalar>& state) {
  const auto kin = compute_kinematics(model, state.q, state.qd);
  EeState<Scalar> ee;
  ee.position = kin.ee.p;
  ee.velocity = kin.ee.v;
  ee.theta = kin.body[kForearm].angle;
  ee.omega = kin.body[kForearm].omega;
  return ee;
}

// Kinetic + gravitational potential energy (potential zero at z = 0).
template <typename Scalar>
Scalar total_energy(const Model<Scalar>& model, const GeneralizedState<Scalar>& state) {
  const auto& c = model.config();
  const auto kin = compute_kinematics(model, state.q, state.qd);
  Scalar e = Scalar(0);
  for (int i = 0; i < kLinks; ++i) {
    const auto& b = kin.body[i];
    const Scalar mi = detail::link_mass(c, i);
    e += Scalar(0.5) * mi * b.com.v.squaredNorm();
    e += Scalar(0.5) * detail::link_inertia(c, i) * b.omega * b.omega;
    e += mi * c.gravity * b.com.p.y();
  }
  return e;
}

using ModelConfigd = ModelConfig<double>;
using Modeld = Model<double>;
using GeneralizedStated = GeneralizedState<double>;
using EeStated = EeState<double>;
using ExternalForcesd = ExternalForces<double>;
using Kinematicsd = Kinematics<double>;

}  // namespace softa
