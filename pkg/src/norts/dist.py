"""Distribution functions and innovation sampling.

The normal CDF family and the chi-square upper tail are thin wrappers over
``scipy.special`` primitives; sampling is inverse-CDF throughout so that a
given :class:`~norts.rng.RngStream` yields the same draws on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import InvalidInputError
from .rng import RngStream

__all__ = [
    "normal_cdf",
    "normal_logcdf",
    "normal_logsf",
    "normal_ppf",
    "chi2_sf",
    "InnovationLaw",
    "sample",
]


def normal_cdf(x):
    """Standard normal CDF Phi(x)."""
    return special.ndtr(x)


def normal_logcdf(x):
    """log Phi(x), stable deep into the left tail."""
    return special.log_ndtr(x)


def normal_logsf(x):
    """log(1 - Phi(x)), stable deep into the right tail."""
    return special.log_ndtr(np.negative(x))


def normal_ppf(q):
    """Standard normal quantile function, inverse of :func:`normal_cdf`."""
    return special.ndtri(q)


def chi2_sf(x, df: int):
    """Upper-tail probability of the chi-square distribution with ``df`` dof.

    For ``df == 2`` the exact form exp(-x/2) is used.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise InvalidInputError("chi-square statistic must be non-negative")
    df = int(df)
    if df < 1:
        raise InvalidInputError("degrees of freedom must be a positive integer")
    if df == 2:
        out = np.exp(-x / 2.0)
    else:
        out = special.chdtrc(df, x)
    return float(out) if out.ndim == 0 else out


_LAW_ARITY = {
    "normal": 0,
    "lognormal": 0,
    "t": 1,
    "chisq": 1,
    "beta": 2,
    "gamma": 2,
}


@dataclass(frozen=True)
class InnovationLaw:
    """Tagged innovation distribution for process simulation.

    Supported laws: standard normal, standard log-normal, Student t(df),
    chi-squared(df), beta(a, b) and gamma(rate, shape).  Use the named
    constructors rather than the raw constructor.
    """

    name: str
    params: tuple[float, ...] = ()

    def __post_init__(self):
        if self.name not in _LAW_ARITY:
            raise InvalidInputError(
                f"unknown innovation law {self.name!r}; expected one of {sorted(_LAW_ARITY)}"
            )
        params = tuple(float(p) for p in self.params)
        if len(params) != _LAW_ARITY[self.name]:
            raise InvalidInputError(
                f"law {self.name!r} takes {_LAW_ARITY[self.name]} parameter(s), got {len(params)}"
            )
        if any(not np.isfinite(p) or p <= 0 for p in params):
            raise InvalidInputError(f"law {self.name!r} requires strictly positive parameters")
        object.__setattr__(self, "params", params)

    @classmethod
    def normal(cls) -> "InnovationLaw":
        return cls("normal")

    @classmethod
    def lognormal(cls) -> "InnovationLaw":
        return cls("lognormal")

    @classmethod
    def student_t(cls, df: float) -> "InnovationLaw":
        return cls("t", (df,))

    @classmethod
    def chi_squared(cls, df: float) -> "InnovationLaw":
        return cls("chisq", (df,))

    @classmethod
    def beta(cls, a: float, b: float) -> "InnovationLaw":
        return cls("beta", (a, b))

    @classmethod
    def gamma(cls, rate: float, shape: float) -> "InnovationLaw":
        return cls("gamma", (rate, shape))

    @property
    def label(self) -> str:
        """Compact text form, e.g. ``t(3)`` or ``beta(7,1)``."""
        if not self.params:
            return self.name
        inner = ",".join(f"{p:g}" for p in self.params)
        return f"{self.name}({inner})"

    @classmethod
    def parse(cls, text: str) -> "InnovationLaw":
        """Parse the :attr:`label` form back into a law.

        Accepts the short aliases ``N`` (normal), ``logN`` (log-normal),
        ``t3`` and ``chisq10`` used in simulation-study tables.
        """
        text = text.strip()
        aliases = {"N": cls.normal(), "logN": cls.lognormal(),
                   "t3": cls.student_t(3), "chisq10": cls.chi_squared(10)}
        if text in aliases:
            return aliases[text]
        if "(" in text:
            name, _, rest = text.partition("(")
            rest = rest.rstrip(")")
            try:
                params = tuple(float(p) for p in rest.split(",")) if rest else ()
            except ValueError:
                raise InvalidInputError(f"cannot parse innovation law {text!r}") from None
            return cls(name.strip(), params)
        return cls(text)


def _law_quantile(law: InnovationLaw, u):
    if law.name == "normal":
        return special.ndtri(u)
    if law.name == "lognormal":
        return np.exp(special.ndtri(u))
    if law.name == "t":
        return special.stdtrit(law.params[0], u)
    if law.name == "chisq":
        return 2.0 * special.gammaincinv(law.params[0] / 2.0, u)
    if law.name == "beta":
        return special.betaincinv(law.params[0], law.params[1], u)
    if law.name == "gamma":
        rate, shape = law.params
        return special.gammaincinv(shape, u) / rate
    raise InvalidInputError(f"unknown innovation law {law.name!r}")


def sample(law: InnovationLaw, rng: RngStream, size: int | None = None):
    """Draw from ``law`` by inverse CDF; scalar when ``size`` is None."""
    out = _law_quantile(law, rng.uniform(size))
    return float(out) if size is None else np.asarray(out, dtype=float)
