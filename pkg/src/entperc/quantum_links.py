"""Link parameters mapped onto percolation quantities.

Pure links are described by ``lambda0``, the larger squared Schmidt
coefficient; Werner links by the singlet fraction ``F``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

SQRT2_POINT = 2.0 - math.sqrt(2.0)


@dataclass(frozen=True)
class PureLink:
    lambda0: float
    copies: int = 2

    def __post_init__(self):
        if not 0.5 <= self.lambda0 <= 1.0:
            raise DomainError("lambda0 must lie in [1/2, 1]")
        if self.copies not in (1, 2):
            raise DomainError("only one or two copies per edge are supported")

    @property
    def scp(self):
        return scp_single(self.lambda0) if self.copies == 1 else scp_double(self.lambda0)


@dataclass(frozen=True)
class WernerLink:
    F: float

    def __post_init__(self):
        if not 0.25 < self.F <= 1.0:
            raise DomainError("singlet fraction must lie in (1/4, 1]")

    @property
    def alpha(self):
        return alpha_of_F(self.F)


def _check_lambda0(lambda0):
    if not 0.5 <= lambda0 <= 1.0:
        raise DomainError(f"lambda0={lambda0} outside [1/2, 1]")


def scp_single(lambda0):
    """Singlet conversion probability of one copy."""
    _check_lambda0(lambda0)
    return min(1.0, 2.0 * (1.0 - lambda0))


def scp_double(lambda0):
    """Singlet conversion probability of two copies."""
    _check_lambda0(lambda0)
    return min(1.0, 2.0 * (1.0 - lambda0 * lambda0))


def phi2_of_phi1(phi1):
    """Two-copy SCP of a link whose single-copy SCP is ``phi1``.

    Reaches 1 at ``phi1 = 2 - sqrt(2)`` and stays there.
    """
    if not 0.0 <= phi1 <= 1.0:
        raise DomainError(f"phi1={phi1} outside [0, 1]")
    return min(1.0, 2.0 * phi1 - 0.5 * phi1 * phi1)


def alpha_of_F(F):
    if not 0.25 < F <= 1.0:
        raise DomainError(f"F={F} outside (1/4, 1]")
    return (4.0 * F - 1.0) / 3.0


def fidelity_after_l(alpha, l):
    """Fidelity left after teleporting through ``l`` depolarized links."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha={alpha} outside (0, 1]")
    if l < 0:
        raise DomainError("path length must be non-negative")
    return 0.5 * (1.0 + alpha**l)


def teleport_fidelity(F, d=2):
    if d < 2:
        raise DomainError("local dimension must be at least 2")
    if not 0.0 <= F <= 1.0:
        raise DomainError(f"F={F} outside [0, 1]")
    return (F * d + 1.0) / (d + 1.0)


def max_path_length(f_min, alpha):
    """Longest hop count whose end fidelity still reaches ``f_min``.

    Returns ``math.inf`` for noiseless links (``alpha == 1``).
    """
    if not 0.5 < f_min < 1.0:
        raise DomainError(f"f_min={f_min} outside (1/2, 1)")
    if alpha == 1.0:
        return math.inf
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha={alpha} outside (0, 1]")
    l = max(0, math.floor(math.log(2.0 * f_min - 1.0) / math.log(alpha)))
    # floor of a rounded ratio can land one off an exact integer boundary
    while l > 0 and fidelity_after_l(alpha, l) < f_min:
        l -= 1
    while fidelity_after_l(alpha, l + 1) >= f_min:
        l += 1
    return l
