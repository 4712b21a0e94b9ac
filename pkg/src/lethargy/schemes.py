"""Approximation-scheme profiles: the alternation-count map n -> m_n.

A profile carries everything the certifier needs to know about a scheme: how
many alternation points witness a lower bound at level n (phi), whether the
scheme is a Haar family of linear subspaces, and the stability map K(n) with
K(n) >= n (metadata only, recorded for fidelity, never consumed numerically).

No actual approximants are ever constructed for rational or spline schemes;
the profile is purely the count structure.
"""

import csv
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class SchemeProfile:
    """Alternation-count profile of an approximation scheme.

    kind is "polynomial" (m_n = n+1), "rational" (finite list of degree pairs
    (n_k, m_k); by default phi(k) = n_k + m_k + 1, the classical
    equioscillation count for nondegenerate rationals, overridable via
    phi_override), or "free_knot_spline" (phi(n) = (n+1)**2 * base_phi(n)
    over a base profile).
    """

    name: str
    kind: str
    haar: bool
    linear: bool
    rational_pairs: tuple[tuple[int, int], ...] | None = None
    phi_override: tuple[int, ...] | None = None
    base: "SchemeProfile | None" = None

    @classmethod
    def polynomial(cls) -> "SchemeProfile":
        return cls(name="polynomial", kind="polynomial", haar=True, linear=True)

    @classmethod
    def rational(cls, pairs, phi_override=None) -> "SchemeProfile":
        pairs = tuple((int(n), int(m)) for n, m in pairs)
        if not pairs:
            raise ValueError("rational profile needs at least one (n_k, m_k) pair")
        if any(n < 0 or m < 0 for n, m in pairs):
            raise ValueError("rational degree pairs must be non-negative")
        override = None
        if phi_override is not None:
            override = tuple(int(v) for v in phi_override)
            if len(override) != len(pairs):
                raise ValueError("phi_override must match the pair list length")
            if any(v < 1 for v in override):
                raise ValueError("phi values must be >= 1")
        return cls(
            name="rational",
            kind="rational",
            haar=False,
            linear=False,
            rational_pairs=pairs,
            phi_override=override,
        )

    @classmethod
    def free_knot_spline(cls, base: "SchemeProfile") -> "SchemeProfile":
        return cls(
            name=f"free_knot_spline({base.name})",
            kind="free_knot_spline",
            haar=False,
            linear=False,
            base=base,
        )

    @classmethod
    def rational_from_csv(cls, path) -> "SchemeProfile":
        """Load a rational profile from CSV rows "n_k,m_k" (optional third
        column overrides phi at that index)."""
        pairs, override = [], []
        with open(path, newline="") as fh:
            for rec in csv.reader(fh):
                rec = [c.strip() for c in rec if c.strip()]
                if not rec:
                    continue
                if len(rec) < 2:
                    raise ValueError(f"rational profile rows need n,m: {rec}")
                pairs.append((int(rec[0]), int(rec[1])))
                override.append(int(rec[2]) if len(rec) > 2 else None)
        if not pairs:
            raise ValueError(f"no degree pairs in {Path(path)}")
        if any(v is not None for v in override):
            filled = [
                v if v is not None else pairs[i][0] + pairs[i][1] + 1
                for i, v in enumerate(override)
            ]
            return cls.rational(pairs, phi_override=filled)
        return cls.rational(pairs)

    def phi(self, n: int) -> int:
        """Alternation count m_n at level n (>= 1, pure)."""
        if n < 0:
            raise ValueError("level must be >= 0")
        if self.kind == "polynomial":
            return n + 1
        if self.kind == "rational":
            if n >= len(self.rational_pairs):
                raise IndexError(
                    f"rational profile has {len(self.rational_pairs)} levels, "
                    f"level {n} undefined"
                )
            if self.phi_override is not None:
                return self.phi_override[n]
            nk, mk = self.rational_pairs[n]
            return nk + mk + 1
        return (n + 1) ** 2 * self.base.phi(n)

    def K(self, n: int) -> int:
        """Sum-stability map; identity for linear schemes, 2n+1 otherwise."""
        if n < 0:
            raise ValueError("level must be >= 0")
        return n if self.linear else 2 * n + 1

    def describe(self) -> str:
        return self.name
