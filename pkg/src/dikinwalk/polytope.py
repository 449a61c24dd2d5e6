"""H-representation polytopes {x : a_i^T x >= b_i}: parsing, generation, geometry.

The a_i^T x >= b_i convention keeps every slack formula a direct
transcription; slacks are s_i = a_i^T x - b_i and the interior is where
all of them are strictly positive.

Boundedness is never verified at construction (that would need an LP);
chord and walk operations report UnboundedChord lazily instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BoundaryPoint,
    DimensionError,
    DimensionMismatch,
    IdenticalPoints,
    InvalidSpec,
    ParseError,
    UnboundedChord,
    ZeroRow,
)


@dataclass(frozen=True)
class Polytope:
    """Constraint system A x >= b with m rows in n dimensions."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.A, dtype=float)
        rhs = np.asarray(self.b, dtype=float)
        if a.ndim != 2 or rhs.ndim != 1 or a.shape[0] != rhs.shape[0]:
            raise DimensionMismatch(
                f"A has shape {a.shape}, b has shape {rhs.shape}"
            )
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(rhs))):
            raise ValueError("constraint entries must be finite")
        if np.any(np.all(a == 0.0, axis=1)):
            raise ZeroRow(int(np.flatnonzero(np.all(a == 0.0, axis=1))[0]) + 1,
                          "all-zero constraint normal")
        if a.shape[0] < a.shape[1] + 1:
            raise ValueError(
                f"need at least n+1={a.shape[1] + 1} constraints for a bounded "
                f"polytope, got {a.shape[0]}"
            )
        a.setflags(write=False)
        rhs.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", rhs)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def interior_point(self, coords) -> "InteriorPoint":
        """Wrap coords as an InteriorPoint, checking strict interiority."""
        x = _as_coords(coords, self.n)
        s = slacks(self, x)
        if np.min(s) <= 0.0:
            raise BoundaryPoint(
                f"min slack {np.min(s):.3e} is not strictly positive"
            )
        return InteriorPoint(coords=x)


@dataclass(frozen=True)
class InteriorPoint:
    """A point known to lie strictly inside its polytope."""

    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)


def _as_coords(point, n: int) -> np.ndarray:
    if isinstance(point, InteriorPoint):
        x = point.coords
    else:
        x = np.asarray(point, dtype=float)
    if x.shape != (n,):
        raise DimensionMismatch(f"point has shape {x.shape}, expected ({n},)")
    return x


def slacks(polytope: Polytope, point) -> np.ndarray:
    """Return s_i = a_i^T x - b_i for every constraint."""
    x = _as_coords(point, polytope.n)
    return polytope.A @ x - polytope.b


def contains_interior(polytope: Polytope, point) -> bool:
    """True iff every slack is strictly positive."""
    return bool(np.min(slacks(polytope, point)) > 0.0)


def parse(text: str) -> Polytope:
    """Parse the polytope text format.

    '#' lines are comments, blank lines are skipped; the first payload line
    is "m n", followed by m rows of n+1 decimals "a_i1 ... a_in b_i".
    """
    header = None
    rows = []
    m = n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if header is None:
            if len(tokens) != 2:
                raise ParseError(lineno, f"expected header 'm n', got {stripped!r}")
            try:
                m, n = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(lineno, f"non-integer header {stripped!r}") from None
            if m < 1 or n < 1:
                raise ParseError(lineno, f"header values must be positive, got {m} {n}")
            header = (m, n)
            continue
        if len(rows) == m:
            raise ParseError(lineno, f"expected exactly {m} constraint rows")
        if len(tokens) != n + 1:
            raise DimensionError(
                lineno, f"expected {n + 1} numbers per row, got {len(tokens)}"
            )
        try:
            values = [float(t) for t in tokens]
        except ValueError:
            raise ParseError(lineno, f"non-numeric value in row {stripped!r}") from None
        if all(v == 0.0 for v in values[:n]):
            raise ZeroRow(lineno, "all-zero constraint normal")
        rows.append(values)
    if header is None:
        raise ParseError(1, "empty input")
    if len(rows) != m:
        raise ParseError(1 + len(rows), f"expected {m} rows, found {len(rows)}")
    data = np.array(rows, dtype=float)
    return Polytope(A=data[:, :n], b=data[:, n])


def to_text(polytope: Polytope) -> str:
    """Format a polytope in the text format; floats round-trip exactly."""
    lines = [f"{polytope.m} {polytope.n}"]
    for i in range(polytope.m):
        entries = [repr(float(v)) for v in polytope.A[i]]
        entries.append(repr(float(polytope.b[i])))
        lines.append(" ".join(entries))
    return "\n".join(lines) + "\n"


def cube(n: int) -> Polytope:
    """The unit cube [0,1]^n: n lower bounds then n upper bounds."""
    if n < 1:
        raise InvalidSpec(f"cube dimension must be >= 1, got {n}")
    eye = np.eye(n)
    a = np.vstack([eye, -eye])
    b = np.concatenate([np.zeros(n), -np.ones(n)])
    return Polytope(A=a, b=b)


def simplex(n: int) -> Polytope:
    """The standard simplex {x >= 0, sum x <= 1} with n+1 rows."""
    if n < 1:
        raise InvalidSpec(f"simplex dimension must be >= 1, got {n}")
    a = np.vstack([np.eye(n), -np.ones((1, n))])
    b = np.concatenate([np.zeros(n), [-1.0]])
    return Polytope(A=a, b=b)


def random_polytope(m: int, n: int, seed: int) -> Polytope:
    """m unit-normalized Gaussian rows with b_i = -1.

    The origin is interior with all slacks equal to 1, which makes it a
    convenient warm point for walks and center finding.
    """
    if n < 1 or m < 2 * n:
        raise InvalidSpec(f"random polytope needs m >= 2n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((m, n))
    norms = np.linalg.norm(a, axis=1)
    while np.any(norms == 0.0):  # astronomically unlikely; redraw degenerate rows
        bad = norms == 0.0
        a[bad] = rng.standard_normal((int(bad.sum()), n))
        norms = np.linalg.norm(a, axis=1)
    a /= norms[:, None]
    return Polytope(A=a, b=-np.ones(m))


def from_spec(spec: str) -> Polytope:
    """Build a polytope from a 'cube:n', 'simplex:n' or 'random:m,n,seed' spec."""
    try:
        kind, _, argtext = spec.partition(":")
        args = [int(t) for t in argtext.split(",")] if argtext else []
        if kind == "cube" and len(args) == 1:
            return cube(args[0])
        if kind == "simplex" and len(args) == 1:
            return simplex(args[0])
        if kind == "random" and len(args) == 3:
            return random_polytope(args[0], args[1], args[2])
    except (ValueError, InvalidSpec) as exc:
        raise InvalidSpec(f"bad polytope spec {spec!r}: {exc}") from None
    raise InvalidSpec(f"bad polytope spec {spec!r}")


def _step_limits(polytope: Polytope, x: np.ndarray, direction: np.ndarray):
    """Largest interval (t_minus, t_plus) with x + t*direction interior."""
    s = slacks(polytope, x)
    w = polytope.A @ direction
    pos = w > 0.0
    neg = w < 0.0
    if not np.any(neg) or not np.any(pos):
        raise UnboundedChord("no constraint limits the chord direction")
    t_plus = float(np.min(-s[neg] / w[neg]))
    t_minus = float(np.max(-s[pos] / w[pos]))
    return t_minus, t_plus


def chord_endpoints(polytope: Polytope, x, y):
    """Endpoints (p, q) of the chord through interior points x, y.

    The four points are ordered p, x, y, q along the line; p and q each
    have at least one (numerically) zero slack.
    """
    xc = _as_coords(x, polytope.n)
    yc = _as_coords(y, polytope.n)
    if np.array_equal(xc, yc):
        raise IdenticalPoints("chord through identical points is undefined")
    for c in (xc, yc):
        if np.min(slacks(polytope, c)) <= 0.0:
            raise BoundaryPoint("chord endpoints require strictly interior points")
    d = yc - xc
    t_minus, t_plus = _step_limits(polytope, xc, d)
    p = xc + t_minus * d
    q = xc + t_plus * d
    return p, q


def random_interior(polytope: Polytope, anchor, rng: np.random.Generator,
                    shrink: float = 0.9) -> np.ndarray:
    """Draw a random interior point along a random chord through ``anchor``.

    Not uniform over the polytope; used to scatter test points. ``shrink``
    keeps the draw strictly inside the chord.
    """
    x = _as_coords(anchor, polytope.n)
    d = rng.standard_normal(polytope.n)
    d /= np.linalg.norm(d)
    t_minus, t_plus = _step_limits(polytope, x, d)
    t = shrink * (t_minus + rng.uniform() * (t_plus - t_minus))
    return x + t * d
