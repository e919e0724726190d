"""Linear rotatable-antenna array kernel.

Element directive gain follows the 3GPP vertical element pattern: a quadratic
dB rolloff about boresight, clamped by the side-lobe limit and the
front-to-back ratio.  Each element of the array can be rotated individually,
which shifts the pattern argument seen by that element; the rotation changes
amplitudes only, while the phase structure of the array response is the plain
uniform-linear-array steering vector.

All public interfaces take angles in degrees.  Gains are linear power ratios
unless the name says dB.  Every function here is pure and safe to call
concurrently.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RadiationPattern:
    """Parameters of the vertical element pattern (all strictly positive)."""

    max_gain_dbi: float = 8.0
    beamwidth_3db_deg: float = 65.0
    sidelobe_limit_db: float = 30.0
    front_to_back_db: float = 30.0

    def __post_init__(self):
        for name in ("max_gain_dbi", "beamwidth_3db_deg",
                     "sidelobe_limit_db", "front_to_back_db"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array: element count and spacing in wavelengths."""

    num_antennas: int
    spacing_wavelengths: float = 0.5

    def __post_init__(self):
        if self.num_antennas < 1:
            raise ValueError("num_antennas must be >= 1")
        if not self.spacing_wavelengths > 0:
            raise ValueError("spacing_wavelengths must be > 0")


@dataclass(frozen=True)
class RotationBounds:
    """Per-element rotation range.  Derive via :func:`rotation_bounds`."""

    theta_min_deg: float
    theta_max_deg: float

    def __post_init__(self):
        if not self.theta_min_deg < self.theta_max_deg:
            raise ValueError("theta_min_deg must be < theta_max_deg")

    @property
    def span_deg(self) -> float:
        return self.theta_max_deg - self.theta_min_deg

    def contains(self, rotations_deg, atol: float = 1e-9) -> bool:
        r = np.asarray(rotations_deg, dtype=float)
        return bool(np.all(r >= self.theta_min_deg - atol)
                    and np.all(r <= self.theta_max_deg + atol))

    def clip(self, rotations_deg) -> np.ndarray:
        return np.clip(np.asarray(rotations_deg, dtype=float),
                       self.theta_min_deg, self.theta_max_deg)


@dataclass
class BeamformerState:
    """Complex antenna weights paired with per-element rotation angles."""

    weights: np.ndarray
    rotations_deg: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=complex)
        self.rotations_deg = np.asarray(self.rotations_deg, dtype=float)
        if self.weights.ndim != 1 or self.rotations_deg.ndim != 1:
            raise ValueError("weights and rotations_deg must be 1-D")
        if self.weights.shape != self.rotations_deg.shape:
            raise ValueError("weights and rotations_deg lengths differ")

    def validate(self, bounds: RotationBounds, atol: float = 1e-8):
        """Check the norm ball and rotation-range feasibility constraints."""
        if np.linalg.norm(self.weights) > 1.0 + atol:
            raise ValueError("weight norm exceeds 1")
        if not bounds.contains(self.rotations_deg, atol=atol):
            raise ValueError("rotation outside the allowed range")


@dataclass(frozen=True)
class Scenario:
    """Desired/interference direction sets and the interference gain cap."""

    desired_angles_deg: tuple = ()
    interference_angles_deg: tuple = ()
    eta_max_db: float = -10.0

    def __post_init__(self):
        object.__setattr__(self, "desired_angles_deg",
                           tuple(float(a) for a in self.desired_angles_deg))
        object.__setattr__(self, "interference_angles_deg",
                           tuple(float(a) for a in self.interference_angles_deg))
        if len(self.desired_angles_deg) < 1:
            raise ValueError("at least one desired angle is required")
        for a in self.desired_angles_deg + self.interference_angles_deg:
            if not (0.0 <= a <= 180.0):
                raise ValueError(f"angle {a} outside [0, 180] degrees")
        if set(self.desired_angles_deg) & set(self.interference_angles_deg):
            raise ValueError("desired and interference angle sets overlap")

    @property
    def eta_max_linear(self) -> float:
        return 10.0 ** (self.eta_max_db / 10.0)


def element_gain_dbi(pattern: RadiationPattern, steer_deg):
    """Directive element gain in dBi at the given (relative) steering angle.

    Defined for any real angle; no wrapping is applied.  Accepts scalars or
    arrays and returns the same shape.
    """
    rel = np.asarray(steer_deg, dtype=float) - 90.0
    rolloff = 12.0 * (rel / pattern.beamwidth_3db_deg) ** 2
    attenuation = np.minimum(np.minimum(rolloff, pattern.sidelobe_limit_db),
                             pattern.front_to_back_db)
    gain = pattern.max_gain_dbi - attenuation
    return gain if np.ndim(steer_deg) else float(gain)


def element_gain_linear(pattern: RadiationPattern, steer_deg):
    """Element gain as a linear power ratio (strictly positive)."""
    return 10.0 ** (element_gain_dbi(pattern, steer_deg) / 10.0)


def rotation_bounds(pattern: RadiationPattern) -> RotationBounds:
    """Allowed rotation range: the span over which the pattern still varies."""
    half = pattern.beamwidth_3db_deg * np.sqrt(pattern.sidelobe_limit_db / 12.0)
    return RotationBounds(90.0 - half, 90.0 + half)


def effective_gain_vector(pattern, rotations_deg, psi_deg: float) -> np.ndarray:
    """Per-element amplitude gains seen at angle ``psi_deg``.

    Entry n is sqrt of the linear element gain at the relative angle
    ``psi_deg - rotations_deg[n]``.  ``pattern=None`` selects an isotropic
    element (unit gain regardless of rotation).
    """
    rotations = np.asarray(rotations_deg, dtype=float)
    if rotations.ndim != 1:
        raise ValueError("rotations_deg must be a 1-D vector")
    if pattern is None:
        return np.ones(rotations.shape[0])
    return np.sqrt(element_gain_linear(pattern, psi_deg - rotations))


def steering_vector(geometry: ArrayGeometry, psi_deg: float) -> np.ndarray:
    """ULA steering vector at angle ``psi_deg``; element 0 is the phase reference."""
    n = np.arange(geometry.num_antennas)
    phase = 2.0 * np.pi * geometry.spacing_wavelengths * n * np.cos(np.radians(psi_deg))
    return np.exp(1j * phase)


def composite_response(pattern, geometry: ArrayGeometry,
                       rotations_deg, psi_deg: float) -> np.ndarray:
    """Effective array response: elementwise gain times steering phase."""
    rotations = np.asarray(rotations_deg, dtype=float)
    if rotations.shape[0] != geometry.num_antennas:
        raise ValueError("rotations length does not match num_antennas")
    return effective_gain_vector(pattern, rotations, psi_deg) * steering_vector(geometry, psi_deg)


def array_gain(weights, pattern, geometry: ArrayGeometry,
               rotations_deg, psi_deg: float) -> float:
    """Array power gain |w^H v|^2 toward ``psi_deg`` for the given state."""
    w = np.asarray(weights, dtype=complex)
    if w.shape[0] != geometry.num_antennas:
        raise ValueError("weights length does not match num_antennas")
    v = composite_response(pattern, geometry, rotations_deg, psi_deg)
    return float(abs(np.vdot(w, v)) ** 2)


def full_array_gain(pattern: RadiationPattern, geometry: ArrayGeometry) -> float:
    """Upper bound on the array gain: N times the peak linear element gain."""
    return geometry.num_antennas * 10.0 ** (pattern.max_gain_dbi / 10.0)
