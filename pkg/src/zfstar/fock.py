"""
Single-Mode Fock States

Truncated state vectors c_0..c_Nmax over the number basis |0>..|Nmax> of
one mode of the field, with:

    - number states, the vacuum and coherent states
      |z> = exp(-|z|^2 / 2) * sum_n z^n / sqrt(n!) |n>
    - normalized superpositions and the ladder operators, using
      a†|n> = sqrt(n+1)|n+1> and a|n> = sqrt(n)|n-1>
    - photon-number statistics, the mode energy w(<N> + 1/2) with hbar = 1,
      and detection of number eigenstates
    - the bridge to ZF*: a state becomes a structure whose whole PT is
      Cantorian exactly when the photon number is definite

Truncation Policy:
    Constructors fail with TruncationError when the squared norm lost to
    truncation exceeds epsilon instead of silently renormalizing. Creation
    on the top basis state drops the overflow and records it as leakage.
    ``renormalize`` exists for downstream statistics.

The coherent-state amplitudes are computed in log space with
scipy.special.gammaln so that large n does not overflow n!.
"""

import csv
import io
import logging
import os
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.special import gammaln

try:
    from .mereology import ClassificationReport, classify
    from .model import Structure
    from .structured_events import StructuredEventLogger
except ImportError:
    from mereology import ClassificationReport, classify
    from model import Structure
    from structured_events import StructuredEventLogger

logger = logging.getLogger(os.getenv("LOGGER_NAME", "ZFSTAR"))

DEFAULT_EPSILON = 1e-9
DEFAULT_EIGEN_TOLERANCE = 1e-9

WHOLE = "alpha"
PHOTON_PREFIX = "photon_"
COLLECTION = "parts_of_alpha"


class FockError(ValueError):
    pass


class TruncationError(FockError):
    """The truncated basis loses more squared norm than the tolerance allows."""


@dataclass(frozen=True, eq=False)
class FockState:
    """
    Immutable truncated state vector.

    ``deficit`` is 1 minus the squared norm left after truncating an
    infinite expansion; ``leakage`` is the squared norm pushed past the
    top basis state by a creation operator.
    """
    amplitudes: np.ndarray
    label: str = ""
    deficit: float = 0.0
    leakage: float = 0.0

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.ndim != 1 or amplitudes.size == 0:
            raise FockError("amplitudes must be a nonempty one-dimensional vector")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1

    @property
    def squared_norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.amplitudes)


def number_state(n: int, n_max: int) -> FockState:
    if n_max < 0:
        raise FockError(f"truncation must be non-negative, got {n_max}")
    if not 0 <= n <= n_max:
        raise FockError(f"photon number {n} outside the truncated basis 0..{n_max}")
    amplitudes = np.zeros(n_max + 1, dtype=complex)
    amplitudes[n] = 1.0
    return FockState(amplitudes, label=f"|{n}>")


def vacuum(n_max: int) -> FockState:
    return number_state(0, n_max)


def coherent(z: complex, n_max: int, eps: float = DEFAULT_EPSILON) -> FockState:
    """
    Coherent state |z> truncated at n_max, not renormalized.

    Raises:
        TruncationError: more than eps of the squared norm lies above n_max
    """
    if n_max < 0:
        raise FockError(f"truncation must be non-negative, got {n_max}")
    z = complex(z)
    n = np.arange(n_max + 1)
    amplitudes = np.zeros(n_max + 1, dtype=complex)
    r = abs(z)
    if r == 0.0:
        amplitudes[0] = 1.0
    else:
        log_magnitude = n * np.log(r) - 0.5 * gammaln(n + 1) - 0.5 * r * r
        amplitudes = np.exp(log_magnitude) * (z / r) ** n
    deficit = 1.0 - float(np.sum(np.abs(amplitudes) ** 2))
    if deficit > eps:
        raise TruncationError(
            f"coherent state z={z} loses {deficit:.3e} of its norm at n_max={n_max} (tolerance {eps:.1e}); "
            f"raise n_max")
    logger.debug(f"Coherent state z={z}, n_max={n_max}, truncation deficit {deficit:.3e}")
    return FockState(amplitudes, label=f"|z={z}>", deficit=max(deficit, 0.0))


def superpose(states: Sequence[FockState], coefficients: Sequence[complex], label: str = "") -> FockState:
    """Normalized linear combination of states with the given coefficients."""
    if not states or len(states) != len(coefficients):
        raise FockError("superpose needs one coefficient per state and at least one state")
    n_max = states[0].n_max
    if any(s.n_max != n_max for s in states):
        raise FockError(f"truncation mismatch: {sorted({s.n_max for s in states})}")
    vector = sum(complex(c) * s.amplitudes for c, s in zip(coefficients, states))
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise FockError("superposition is the zero vector")
    if not label:
        label = " + ".join(f"{complex(c):g}{s.label}" for c, s in zip(coefficients, states))
    return FockState(vector / norm, label=label)


def apply_creation(s: FockState) -> FockState:
    """a† applied to s, unnormalized; the component pushed past n_max is dropped and reported as leakage."""
    n = np.arange(s.n_max + 1)
    out = np.zeros_like(s.amplitudes)
    out[1:] = np.sqrt(n[1:]) * s.amplitudes[:-1]
    leakage = float((s.n_max + 1) * abs(s.amplitudes[-1]) ** 2)
    if leakage > 0.0:
        logger.debug(f"Creation on {s.label} leaks {leakage:.3e} past n_max={s.n_max}")
    return FockState(out, label=f"a†{s.label}", leakage=leakage)


def apply_annihilation(s: FockState) -> FockState:
    """a applied to s, unnormalized. The vacuum maps to the zero vector (see FockState.is_zero)."""
    n = np.arange(s.n_max + 1)
    out = np.zeros_like(s.amplitudes)
    out[:-1] = np.sqrt(n[1:]) * s.amplitudes[1:]
    result = FockState(out, label=f"a{s.label}")
    if result.is_zero:
        logger.debug(f"Annihilation on {s.label} gives the zero vector")
    return result


def renormalize(s: FockState) -> FockState:
    norm = float(np.linalg.norm(s.amplitudes))
    if norm == 0.0:
        raise FockError("cannot renormalize the zero vector")
    return FockState(s.amplitudes / norm, label=s.label)


def _require_normalized(s: FockState, eps: float) -> None:
    if abs(s.squared_norm - 1.0) > eps:
        raise FockError(f"state {s.label} is not normalized: squared norm {s.squared_norm:.12f} (tolerance {eps:.1e})")


def number_distribution(s: FockState, eps: float = DEFAULT_EPSILON) -> np.ndarray:
    """P(n) = |c_n|^2 for n = 0..n_max."""
    _require_normalized(s, eps)
    return np.abs(s.amplitudes) ** 2


def expected_number(s: FockState, eps: float = DEFAULT_EPSILON) -> float:
    p = number_distribution(s, eps)
    return float(np.dot(np.arange(p.size), p))


def number_variance(s: FockState, eps: float = DEFAULT_EPSILON) -> float:
    p = number_distribution(s, eps)
    n = np.arange(p.size)
    mean = float(np.dot(n, p))
    return float(np.dot(n * n, p)) - mean * mean


def number_expectation_via_ladder(s: FockState) -> float:
    """<s|a†a|s> computed by applying the ladder operators."""
    return float(np.vdot(s.amplitudes, apply_creation(apply_annihilation(s)).amplitudes).real)


def mode_energy(s: FockState, omega: float = 1.0, eps: float = DEFAULT_EPSILON) -> float:
    """Energy of the mode in units of hbar, w(<N> + 1/2)."""
    return omega * (expected_number(s, eps) + 0.5)


class EigenstateVerdict(NamedTuple):
    definite: bool
    n: Optional[int]
    max_probability: float


def is_number_eigenstate(s: FockState, tol: float = DEFAULT_EIGEN_TOLERANCE,
                         eps: float = DEFAULT_EPSILON) -> EigenstateVerdict:
    """Definite photon number n when P(n) >= 1 - tol."""
    p = number_distribution(s, eps)
    n = int(np.argmax(p))
    top = float(p[n])
    if top >= 1.0 - tol:
        return EigenstateVerdict(True, n, top)
    return EigenstateVerdict(False, None, top)


def distribution_csv(s: FockState, eps: float = DEFAULT_EPSILON) -> str:
    """``n,probability`` with a header and one row per basis state."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["n", "probability"])
    for n, p in enumerate(number_distribution(s, eps)):
        writer.writerow([n, repr(float(p))])
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# Bridge to ZF* structures
# ---------------------------------------------------------------------------

class Interpretation(Enum):
    DEFINITE = "definite particle number"
    NO_DEFINITE_NUMBER = "no definite particle number"


@dataclass(frozen=True)
class BridgeResult:
    structure: Structure
    report: ClassificationReport
    photons: int
    definite: bool
    mean_number: float
    interpretation: Interpretation


def photon_structure(photons: int, collected: bool) -> Structure:
    """Whole PT alpha with ``photons`` photon PTs as parts, plus a set of its parts when ``collected``."""
    photon_names = tuple(f"{PHOTON_PREFIX}{i}" for i in range(1, photons + 1))
    pts = (WHOLE,) + photon_names
    parthood = tuple((p, p) for p in pts) + tuple((p, WHOLE) for p in photon_names)
    if not collected:
        return Structure(pts, (), (), parthood)
    membership = tuple((p, COLLECTION) for p in pts)
    return Structure(pts + (COLLECTION,), (COLLECTION,), membership, parthood)


def to_structure(s: FockState, tol: float = DEFAULT_EIGEN_TOLERANCE, eps: float = DEFAULT_EPSILON,
                 structured_logger: Optional[StructuredEventLogger] = None) -> BridgeResult:
    """
    Render a state as a ZF* structure and classify its whole.

    A number eigenstate |n> gives alpha with n photon parts and a set
    collecting the n + 1 parts of alpha, so alpha is Cantorian with cardinal
    n + 1. Any other state gives round(<N>) photons (ties to even) and no
    collecting set, so alpha is non-Cantorian; the photon count is cosmetic.
    The non-eigenstate case is read as a system with no definite particle
    number, not as a statistical mixture. Relative amplitudes play no part
    in the structure.
    """
    verdict = is_number_eigenstate(s, tol, eps)
    mean = expected_number(s, eps)
    if verdict.definite:
        photons, interpretation = verdict.n, Interpretation.DEFINITE
    else:
        photons, interpretation = round(mean), Interpretation.NO_DEFINITE_NUMBER

    structure = photon_structure(photons, collected=verdict.definite)
    report = classify(structure, WHOLE).annotate(interpretation.value)
    logger.info(f"Bridged {s.label}: {photons} photon part(s), {report.label}")
    if structured_logger:
        structured_logger.log_fock_state(s.label, s.n_max, verdict.definite, mean, s.deficit)
        structured_logger.log_bridge(s.label, photons, report.positive, report.cardinal, interpretation.value)
    return BridgeResult(structure, report, photons, verdict.definite, mean, interpretation)
