"""Degree distributions and their generating functions.

A :class:`DegreeModel` carries a probability table ``pmf[k]`` for every
supported kind; Poisson and delta models additionally evaluate their
generating functions in closed form. Empirical and power-law models use exact
finite sums over the table. Nothing here differentiates numerically.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .errors import DomainError

TAIL_TOL = 1e-15
_KMAX_HARD = 1_000_000


def _check_x(x):
    xa = np.asarray(x, dtype=np.float64)
    if np.any((xa < 0) | (xa > 1)):
        raise DomainError(f"generating functions are evaluated on [0, 1], got {x}")
    return xa


class DegreeModel:
    """Degree distribution ``p_k`` with cached mean.

    Build instances with :meth:`poisson`, :meth:`delta`,
    :meth:`power_law_cutoff`, :meth:`empirical` or :meth:`from_graph`.
    """

    def __init__(self, kind, pmf, params):
        pmf = np.asarray(pmf, dtype=np.float64)
        if pmf.ndim != 1 or pmf.size == 0:
            raise ValueError("pmf must be a non-empty 1-D array")
        if np.any(pmf < 0):
            raise ValueError("negative probability in pmf")
        pmf = np.trim_zeros(pmf, "b")
        if pmf.size == 0:
            raise ValueError("pmf has no mass")
        self.kind = kind
        self.params = dict(params)
        self.pmf = pmf
        self.pmf.flags.writeable = False
        self.k = np.arange(pmf.size, dtype=np.float64)
        self.mean = float(np.dot(self.k, pmf))
        if self.mean <= 0:
            raise ValueError("mean degree must be positive")
        self._cdf = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def poisson(cls, z):
        if z <= 0:
            raise ValueError("z must be positive")
        kmax = int(z) + 1
        while special.pdtrc(kmax, z) > TAIL_TOL:
            kmax += 1
        k = np.arange(kmax + 1)
        model = cls(
            "poisson", np.exp(k * math.log(z) - z - special.gammaln(k + 1)), {"z": z}
        )
        model.mean = float(z)
        return model

    @classmethod
    def delta(cls, k0):
        k0 = int(k0)
        if k0 < 1:
            raise ValueError("delta degree must be at least 1")
        pmf = np.zeros(k0 + 1)
        pmf[k0] = 1.0
        return cls("delta", pmf, {"k0": k0})

    @classmethod
    def power_law_cutoff(cls, tau, kappa, k_min=1, k_max=None):
        """``p_k = C k^-tau exp(-k/kappa)`` on ``k_min..k_max``.

        Without ``k_max`` the support runs until the unnormalized tail drops
        below ``TAIL_TOL`` of the total.
        """
        if kappa <= 0:
            raise ValueError("kappa must be positive")
        if k_min < 1:
            raise ValueError("k_min must be at least 1")
        if k_max is None:
            # tail after K is bounded by a geometric series with ratio e^{-1/kappa}
            ratio = math.exp(-1.0 / kappa)
            head = k_min ** (-tau) * math.exp(-k_min / kappa)
            k_max = k_min
            while True:
                term = k_max ** (-tau) * math.exp(-k_max / kappa)
                # for tau >= 0 successive terms shrink at least by `ratio`
                if term * ratio / (1 - ratio) < TAIL_TOL * head or k_max >= _KMAX_HARD:
                    break
                k_max += 1
        k = np.arange(k_min, k_max + 1, dtype=np.float64)
        w = k ** (-tau) * np.exp(-k / kappa)
        pmf = np.zeros(k_max + 1)
        pmf[k_min:] = w / w.sum()
        return cls(
            "power_law_cutoff",
            pmf,
            {"tau": tau, "kappa": kappa, "k_min": k_min, "k_max": k_max},
        )

    @classmethod
    def empirical(cls, hist):
        """From a mapping ``{degree: weight}`` or an array indexed by degree."""
        if isinstance(hist, dict):
            kmax = max(hist)
            arr = np.zeros(kmax + 1)
            for k, w in hist.items():
                if k < 0:
                    raise ValueError("negative degree in histogram")
                arr[k] += w
        else:
            arr = np.asarray(hist, dtype=np.float64).copy()
        total = arr.sum()
        if total <= 0:
            raise ValueError("histogram has no mass")
        return cls("empirical", arr / total, {})

    @classmethod
    def from_graph(cls, g):
        return cls.empirical(np.bincount(g.degrees))

    # -- distributions ------------------------------------------------------

    @property
    def k_max(self):
        return self.pmf.size - 1

    def pk(self, k):
        k = int(k)
        if k < 0:
            raise DomainError("degree must be non-negative")
        return float(self.pmf[k]) if k < self.pmf.size else 0.0

    def rk(self, k):
        """Excess-degree probability ``(k+1) p_{k+1} / <k>``."""
        return (k + 1) * self.pk(k + 1) / self.mean

    @property
    def excess_pmf(self):
        return self.k[1:] * self.pmf[1:] / self.mean

    def moment(self, n):
        return float(np.dot(self.k**n, self.pmf))

    # -- generating functions ----------------------------------------------

    def gp(self, x):
        x = _check_x(x)
        if self.kind == "poisson":
            return np.exp(self.params["z"] * (x - 1))
        if self.kind == "delta":
            return x ** self.params["k0"]
        return np.polynomial.polynomial.polyval(x, self.pmf)

    def gp_prime(self, x):
        x = _check_x(x)
        if self.kind == "poisson":
            z = self.params["z"]
            return z * np.exp(z * (x - 1))
        if self.kind == "delta":
            k0 = self.params["k0"]
            return k0 * x ** (k0 - 1)
        return np.polynomial.polynomial.polyval(x, self.k[1:] * self.pmf[1:])

    def gp_second(self, x):
        x = _check_x(x)
        if self.kind == "poisson":
            z = self.params["z"]
            return z * z * np.exp(z * (x - 1))
        if self.kind == "delta":
            k0 = self.params["k0"]
            return k0 * (k0 - 1) * x ** (k0 - 2) if k0 >= 2 else np.zeros_like(x)
        c = self.k[2:] * (self.k[2:] - 1) * self.pmf[2:]
        if c.size == 0:
            return np.zeros_like(x)
        return np.polynomial.polynomial.polyval(x, c)

    def gr(self, x):
        if self.kind == "poisson":
            return self.gp(x)
        if self.kind == "delta":
            return _check_x(x) ** (self.params["k0"] - 1)
        return self.gp_prime(x) / self.mean

    def gr_prime(self, x):
        return self.gp_second(x) / self.mean

    # -- sampling -----------------------------------------------------------

    def sample(self, rng, size=None):
        """Degrees drawn through an inverse-CDF table."""
        if self.kind == "delta":
            k0 = self.params["k0"]
            return k0 if size is None else np.full(size, k0, dtype=np.int64)
        if self._cdf is None:
            cdf = np.cumsum(self.pmf)
            cdf /= cdf[-1]
            self._cdf = cdf
        u = rng.random(size)
        out = np.searchsorted(self._cdf, u, side="right")
        out = np.minimum(out, self.k_max)
        return int(out) if size is None else out.astype(np.int64)

    def __repr__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"DegreeModel.{self.kind}({args})"


def write_histogram(model, path):
    """Two columns per line: degree and probability (non-zero entries only)."""
    with open(path, "w") as fh:
        for k in np.flatnonzero(model.pmf):
            fh.write(f"{k} {float(model.pmf[k])!r}\n")


def read_histogram(path):
    hist = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            k, p = line.split()
            hist[int(k)] = hist.get(int(k), 0.0) + float(p)
    return DegreeModel.empirical(hist)
