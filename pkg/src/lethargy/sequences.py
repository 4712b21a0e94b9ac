"""Target error sequences: the prescribed non-increasing positive floors.

An :class:`ErrorSequence` describes a generator for a non-increasing positive
sequence eps_0 >= eps_1 >= ... > 0.  Convergence to zero is a property of the
generator family and is not (cannot be) checked on a finite prefix;
monotonicity and positivity are checked every time a prefix is materialized.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class ErrorSequence:
    """Generator for the target sequence, materializable to any finite prefix.

    kind is one of "power" (eps_n = (n+2)**-alpha), "log"
    (eps_n = 1/log(n+2), natural log), "geometric" (eps_n = rho**-n, rho > 1)
    or "explicit" (a stored finite list).
    """

    kind: str
    alpha: float | None = None
    rho: float | None = None
    values: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind == "power":
            if self.alpha is None or not self.alpha > 0:
                raise ValueError("power sequence needs alpha > 0")
        elif self.kind == "geometric":
            if self.rho is None or not self.rho > 1:
                raise ValueError("geometric sequence needs rho > 1")
        elif self.kind == "explicit":
            if not self.values:
                raise ValueError("explicit sequence needs at least one term")
        elif self.kind != "log":
            raise ValueError(f"unknown sequence kind {self.kind!r}")

    @classmethod
    def power(cls, alpha: float) -> "ErrorSequence":
        return cls(kind="power", alpha=float(alpha))

    @classmethod
    def logarithmic(cls) -> "ErrorSequence":
        return cls(kind="log")

    @classmethod
    def geometric(cls, rho: float) -> "ErrorSequence":
        return cls(kind="geometric", rho=float(rho))

    @classmethod
    def explicit(cls, values) -> "ErrorSequence":
        return cls(kind="explicit", values=tuple(float(v) for v in values))

    @classmethod
    def from_csv(cls, path) -> "ErrorSequence":
        """Load an explicit sequence from a one-column CSV of decimal reals."""
        rows = []
        with open(path, newline="") as fh:
            for rec in csv.reader(fh):
                if not rec or not rec[0].strip():
                    continue
                rows.append(float(rec[0]))
        if not rows:
            raise ValueError(f"no values in sequence file {Path(path)}")
        return cls.explicit(rows)

    def term(self, n: int) -> float:
        if n < 0:
            raise ValueError("sequence index must be >= 0")
        if self.kind == "power":
            return (n + 2.0) ** (-self.alpha)
        if self.kind == "log":
            return 1.0 / math.log(n + 2.0)
        if self.kind == "geometric":
            return self.rho ** (-float(n))
        if n >= len(self.values):
            raise ValueError(
                f"explicit sequence has {len(self.values)} terms, index {n} unavailable"
            )
        return self.values[n]

    def materialize(self, n_max: int) -> list[float]:
        """Return [eps_0, ..., eps_n_max], validated positive non-increasing."""
        if n_max < 0:
            raise ValueError("n_max must be >= 0")
        eps = [self.term(n) for n in range(n_max + 1)]
        for n, value in enumerate(eps):
            if not value > 0.0:
                raise ValueError(f"eps_{n} = {value} is not positive")
            if n and value > eps[n - 1]:
                raise ValueError(
                    f"sequence not non-increasing: eps_{n} = {value} > eps_{n-1} = {eps[n-1]}"
                )
        return eps

    def describe(self) -> str:
        if self.kind == "power":
            return f"power:{self.alpha:g}"
        if self.kind == "geometric":
            return f"geometric:{self.rho:g}"
        if self.kind == "log":
            return "log"
        return f"explicit[{len(self.values)}]"
