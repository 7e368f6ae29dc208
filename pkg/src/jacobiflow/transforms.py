"""Conformal rescalings that turn dynamics into geodesic flow.

Four constructions are provided: the fixed-energy rescaling of a mechanical
system, the stationary-spacetime rescaling for timelike geodesics, the exact
time-dependent rescaling fed by lifted momenta, and its non-relativistic
approximation.  The projective route to the same factors is exposed
separately so the two derivations can be cross-checked; both land on the
same closed forms and are implemented with identical arithmetic.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainViolation
from .metric import MetricField, evaluate_metric, invert_metric


@dataclass
class MechanicalSystem:
    """Natural-Hamiltonian data: kinetic metric, potential, mass, energy label.

    U has signature U(x), or U(x, t) when time_dependent is set.  grad_U is an
    optional analytic gradient with the same signature; central differences
    are used when it is absent.  E labels the energy hypersurface a scenario
    works on and may be filled in later from an initial state.
    """

    g: MetricField
    U: Callable
    m: float
    E: Optional[float] = None
    grad_U: Optional[Callable] = None
    time_dependent: bool = False
    name: str = ""

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("mass must be positive")

    def potential(self, x, t=None):
        if self.time_dependent:
            return float(self.U(x, 0.0 if t is None else float(t)))
        return float(self.U(x))


@dataclass
class StationarySpacetime:
    """Stationary line-element data: temporal factor, drift one-form, spatial metric.

    Vsq is the squared temporal factor V^2(x) (dimensionless), A the optional
    one-form of dt-dx cross terms (None means static), g the spatial metric.
    """

    g: MetricField
    Vsq: Callable
    A: Optional[Callable] = None
    m: float = 1.0
    c: float = 1.0
    name: str = ""


@dataclass
class ConformalMetric:
    """A metric of the form factor(x[, t]) * g_ij(x[, t]).

    validity holds exactly where the factor is positive.  gauge_covariant
    marks factors meant to contract gauge-covariant momenta (stationary
    spacetimes with a drift one-form).
    """

    base: MetricField
    factor: Callable
    validity: Callable
    time_dependent: bool = False
    gauge_covariant: bool = False
    description: str = ""

    def factor_at(self, x, t=None):
        if self.time_dependent:
            return float(self.factor(np.asarray(x, dtype=float), 0.0 if t is None else float(t)))
        return float(self.factor(np.asarray(x, dtype=float)))

    def valid(self, x, t=None):
        if self.time_dependent:
            return bool(self.validity(np.asarray(x, dtype=float), 0.0 if t is None else float(t)))
        return bool(self.validity(np.asarray(x, dtype=float)))

    def metric(self, x, t=None):
        """Full rescaled matrix factor * g at a point."""
        return self.factor_at(x, t) * evaluate_metric(self.base, x, t)


def energy_from_state(sys, x, p, t=None):
    """Energy of a phase point under the natural Hamiltonian T + U."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    ginv = invert_metric(evaluate_metric(sys.g, x, t))
    return float(p @ ginv @ p) / (2.0 * sys.m) + sys.potential(x, t)


def jacobi_nonrelativistic(sys):
    """Fixed-energy conformal rescaling of a mechanical system.

    The factor is 2m(E - U); its zero set is the turning surface where the
    rescaled metric degenerates.
    """
    if sys.E is None:
        raise ValueError("the system needs an energy label E to build the rescaling")
    m, E, U = sys.m, sys.E, sys.U

    def factor(x):
        return 2.0 * m * (E - U(x))

    return ConformalMetric(
        base=sys.g,
        factor=factor,
        validity=lambda x: factor(x) > 0.0,
        description="fixed-energy mechanical rescaling 2m(E - U)",
    )


def jacobi_relativistic_stationary(st, Erel):
    """Conformal rescaling whose geodesics are the timelike orbits of a
    stationary spacetime at energy Erel.

    factor = (Erel^2 - m^2 c^4 V^2) / (c^2 V^2), applied to gauge-covariant
    momenta when the spacetime carries a drift one-form.
    """
    if Erel <= 0:
        raise ValueError("the relativistic energy must be positive")
    m, c, Vsq = st.m, st.c, st.Vsq

    def factor(x):
        v2 = float(Vsq(x))
        if v2 <= 0.0:
            raise DomainViolation(
                f"temporal factor V^2 = {v2:.6g} is not positive at {np.asarray(x).tolist()}"
            )
        return (Erel * Erel - m * m * c**4 * v2) / (c * c * v2)

    def validity(x):
        v2 = float(Vsq(x))
        return v2 > 0.0 and (Erel * Erel - m * m * c**4 * v2) > 0.0

    return ConformalMetric(
        base=st.g,
        factor=factor,
        validity=validity,
        gauge_covariant=st.A is not None,
        description="stationary timelike rescaling (Erel^2 - m^2 c^4 V^2)/(c^2 V^2)",
    )


def weak_field_spacetime(g, U, m, c, A=None, name=""):
    """Stationary spacetime whose temporal factor encodes a weak potential:
    V^2 = 1 + 2U/(m c^2)."""

    def Vsq(x):
        return 1.0 + 2.0 * U(x) / (m * c * c)

    return StationarySpacetime(g=g, Vsq=Vsq, A=A, m=m, c=c, name=name)


def nonrelativistic_limit_factor(st, E_nr):
    """Exact stationary rescaling evaluated at energy m c^2 + E_nr.

    For spacetimes with V^2 = 1 + 2U/(m c^2) the factor converges to
    2m(E_nr - U) as c grows, with relative error O(1/c^2).
    """
    return jacobi_relativistic_stationary(st, st.m * st.c * st.c + E_nr)


def _as_time_function(value):
    if callable(value):
        return value
    return lambda t, _v=float(value): _v


def jacobi_time_dependent(g, U, q, p_t, m, c=1.0):
    """Exact conformal factor for time-dependent systems, fed by lifted momenta.

    factor(x, t) = 2[q p_t - q^2 U(x, t)] - m^2 c^2, the rescaling that
    projects the lifted geodesic flow onto the constant dummy-momentum
    hypersurface p_sigma = q c.  p_t may be a constant or a function of time
    (it varies along lifted flows when U depends on time).
    """
    if q == 0:
        raise ValueError("the dummy momentum parameter q must be nonzero")
    pt_fn = _as_time_function(p_t)

    def factor(x, t):
        return 2.0 * (q * pt_fn(t) - q * q * U(x, t)) - m * m * c * c

    return ConformalMetric(
        base=g,
        factor=factor,
        validity=lambda x, t: factor(x, t) > 0.0,
        time_dependent=True,
        description="exact time-dependent rescaling 2[q p_t - q^2 U] - m^2 c^2",
    )


def jacobi_time_dependent_approx(g, U, energy, q, m):
    """Non-relativistic time-dependent conformal factor 2m[E(t) - q^2 U(x, t)].

    energy is the instantaneous mechanical energy as a function of time (a
    constant is accepted and treated as a constant function).
    """
    e_fn = _as_time_function(energy)

    def factor(x, t):
        return 2.0 * m * (e_fn(t) - q * q * U(x, t))

    return ConformalMetric(
        base=g,
        factor=factor,
        validity=lambda x, t: factor(x, t) > 0.0,
        time_dependent=True,
        description="approximate time-dependent rescaling 2m[E(t) - q^2 U]",
    )


def projective_factor_static(sys):
    """Fixed-energy rescaling reached through the projective route.

    Rescaling the null-extended kinetic Hamiltonian by the conformal weight
    E - U and restricting to unit dummy momentum lands on the same closed
    form as jacobi_nonrelativistic; the arithmetic is kept identical so the
    two construction paths agree bitwise.
    """
    if sys.E is None:
        raise ValueError("the system needs an energy label E to build the rescaling")
    m, E, U = sys.m, sys.E, sys.U

    def factor(x):
        return 2.0 * m * (E - U(x))

    return ConformalMetric(
        base=sys.g,
        factor=factor,
        validity=lambda x: factor(x) > 0.0,
        description="projective rescaling of the null-extended static Hamiltonian",
    )


def projective_factor_lifted(g, U, q, energy, m, c=1.0):
    """Time-dependent rescaling reached through the projective route.

    Rescaling the null lifted Hamiltonian with dummy momenta pinned to
    (q, -E(t)) produces 2m[E(t) - q^2 U(x, t)], the same closed form as
    jacobi_time_dependent_approx, with identical arithmetic.
    """
    e_fn = _as_time_function(energy)

    def factor(x, t):
        return 2.0 * m * (e_fn(t) - q * q * U(x, t))

    return ConformalMetric(
        base=g,
        factor=factor,
        validity=lambda x, t: factor(x, t) > 0.0,
        time_dependent=True,
        description="projective rescaling of the null lifted Hamiltonian",
    )
