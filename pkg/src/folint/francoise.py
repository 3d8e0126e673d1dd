"""Relative-exactness decomposition and the iterated Melnikov construction.

For F = x^2 + y^2 a polynomial 1-form w decomposes as w = g dF + dr exactly
when its period over the circle family vanishes.  The solver writes g and r
with unknown coefficients (deg g = deg w - 1, deg r = deg w + 1, r without
constant term), equates dx/dy coefficients and solves the exact linear system
by fraction-free elimination.  Because g dF + dr is homogeneous-degree
preserving, the system is block diagonal over total degree and is solved one
homogeneous block at a time; this is the same matrix the global formulation
produces, just permuted.

Canonical representative: within each block the columns are ordered r-monomials
first (ascending graded-lex), then g-monomials in descending graded-lex, and
free variables are set to zero.  The free columns are then exactly the y^{2j}
coefficients of g, which pins the s(F)-shift gauge (g, r) ->
(g + s(F), r - S(F)) to zero.  Every returned pair is verified by exact
resubstitution; a failure is an internal error, never a wrong answer.

The displacement of the deformed foliation dF + eps w = 0 expands as
Delta(t, eps) = sum_i eps^i M_i(t); the iteration below produces
M_{k+1} = (-1)^{k+1} * period(g_k w) together with the certifying pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .abelian import CIRCLE, OvalFamily, PeriodPoly, period_of_form
from .algebra import BivarPoly, grlex_key
from .exterior import Form1Planar, d_planar_scalar
from .linsolve import solve_canonical

__all__ = [
    "FrancoisePair",
    "FrancoiseSequence",
    "MelnikovResult",
    "NoSolution",
    "ExceedsMax",
    "InternalSolverError",
    "decompose",
    "melnikov_sequence",
    "sequence_length",
]

DEFAULT_MAX_ORDER = 10


class InternalSolverError(AssertionError):
    """A structurally impossible state: degree bounds or resubstitution failed."""


@dataclass(frozen=True)
class NoSolution:
    """Certificate that w is not relatively exact: its nonzero period."""

    witness: PeriodPoly


@dataclass(frozen=True)
class FrancoisePair:
    """One step g_{i-1} w = g_i dF + d r_i; r_i has zero constant term."""

    g: BivarPoly
    r: BivarPoly

    def __post_init__(self) -> None:
        if self.r.constant_term() != 0:
            raise ValueError("pair normalization requires r with zero constant term")

    def verify(self, prev_g: BivarPoly, w: Form1Planar, F: BivarPoly) -> bool:
        """Exact check of the defining identity against the previous g."""
        dF = d_planar_scalar(F)
        lhs = w.scale(prev_g)
        rhs = dF.scale(self.g) + d_planar_scalar(self.r)
        return (lhs - rhs).is_zero()


@dataclass(frozen=True)
class ExceedsMax:
    """Marker: no zero g_i was seen up to the requested order."""

    max_order: int

    def __repr__(self) -> str:
        return f"ExceedsMax(max_order={self.max_order})"


@dataclass(frozen=True)
class FrancoiseSequence:
    """Pairs (g_1, r_1) .. (g_m, r_m) for a fixed (F, w); g_0 = 1."""

    family: OvalFamily
    omega: Form1Planar
    pairs: tuple[FrancoisePair, ...]

    def g(self, i: int) -> BivarPoly:
        if i == 0:
            return BivarPoly.one()
        return self.pairs[i - 1].g

    def r(self, i: int) -> BivarPoly:
        return self.pairs[i - 1].r

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class MelnikovResult:
    """Melnikov list M_1.. with the certifying sequence.

    first_nonzero is None when every computed M_i vanished; melnikov[i-1]
    stores M_i.  pairs cover 1..len(melnikov) when all vanish, otherwise one
    fewer than the stopping index.
    """

    melnikov: tuple[PeriodPoly, ...]
    first_nonzero: int | None
    sequence: FrancoiseSequence

    def order_reached(self) -> int:
        return len(self.melnikov)


# ---------------------------------------------------------------------------
# decomposition solver
# ---------------------------------------------------------------------------


def _block_solve(w_dx: BivarPoly, w_dy: BivarPoly, deg: int) -> tuple[BivarPoly, BivarPoly] | None:
    """Solve g 2x + dr/dx = w_dx, g 2y + dr/dy = w_dy on one homogeneous block.

    deg is the (common) total degree of the block's coefficients; unknowns are
    homogeneous g of degree deg-1 and r of degree deg+1.
    """
    g_monos = [
        (a, deg - 1 - a) for a in range(deg - 1, -1, -1)
    ] if deg >= 1 else []
    r_monos = sorted(
        ((a, deg + 1 - a) for a in range(deg + 2)), key=grlex_key
    )
    # columns: r block first, then g in descending graded-lex
    cols: list[tuple[str, tuple[int, int]]] = [("r", e) for e in r_monos]
    cols += [("g", e) for e in g_monos]

    eq_monos = sorted(((a, deg - a) for a in range(deg + 1)), key=grlex_key)
    row_index: dict[tuple[str, tuple[int, int]], int] = {}
    for e in eq_monos:
        row_index[("dx", e)] = len(row_index)
        row_index[("dy", e)] = len(row_index)

    rows = [[Fraction(0)] * len(cols) for _ in row_index]
    for j, (kind, (a, b)) in enumerate(cols):
        if kind == "g":
            # g * (2x dx + 2y dy)
            rows[row_index[("dx", (a + 1, b))]][j] += 2
            rows[row_index[("dy", (a, b + 1))]][j] += 2
        else:
            # d(x^a y^b) = a x^{a-1} y^b dx + b x^a y^{b-1} dy
            if a > 0:
                rows[row_index[("dx", (a - 1, b))]][j] += a
            if b > 0:
                rows[row_index[("dy", (a, b - 1))]][j] += b

    rhs = [Fraction(0)] * len(row_index)
    for (a, b), c in w_dx.terms.items():
        rhs[row_index[("dx", (a, b))]] = c
    for (a, b), c in w_dy.terms.items():
        rhs[row_index[("dy", (a, b))]] = c

    solution = solve_canonical(rows, rhs)
    if solution is None:
        return None
    g_terms: dict[tuple[int, int], Fraction] = {}
    r_terms: dict[tuple[int, int], Fraction] = {}
    for (kind, exp), v in zip(cols, solution):
        if v == 0:
            continue
        (g_terms if kind == "g" else r_terms)[exp] = v
    return BivarPoly(g_terms), BivarPoly(r_terms)


def decompose(
    w: Form1Planar, family: OvalFamily = CIRCLE
) -> Union[FrancoisePair, NoSolution]:
    """Split w = g dF + dr, or return NoSolution carrying the period witness.

    The decomposition exists iff period_of_form(w) = 0; the returned
    representative is the solver-canonical one described in the module
    docstring (no minimality claim).
    """
    family.require_circle()
    period = period_of_form(w, family)
    if not period.is_zero():
        return NoSolution(witness=period)

    blocks: dict[int, list[BivarPoly]] = {}
    for d, part in w.p.homogeneous_parts().items():
        blocks.setdefault(d, [BivarPoly.zero(), BivarPoly.zero()])[0] = part
    for d, part in w.q.homogeneous_parts().items():
        blocks.setdefault(d, [BivarPoly.zero(), BivarPoly.zero()])[1] = part

    g_total = BivarPoly.zero()
    r_total = BivarPoly.zero()
    for d, (pdx, pdy) in sorted(blocks.items()):
        solved = _block_solve(pdx, pdy, d)
        if solved is None:
            raise InternalSolverError(
                f"zero-period block of degree {d} is inconsistent; "
                "degree bounds violated"
            )
        g_total = g_total + solved[0]
        r_total = r_total + solved[1]

    pair = FrancoisePair(g=g_total, r=r_total)
    if not pair.verify(BivarPoly.one(), w, family.hamiltonian):
        raise InternalSolverError("resubstitution of decomposition failed")
    return pair


# ---------------------------------------------------------------------------
# Melnikov iteration
# ---------------------------------------------------------------------------


def melnikov_sequence(
    family: OvalFamily,
    w: Form1Planar,
    max_order: int = DEFAULT_MAX_ORDER,
) -> MelnikovResult:
    """Iterate M_{k+1} = (-1)^{k+1} period(g_k w) until nonzero or max_order.

    While the Melnikov values vanish the sequence is extended with
    decompose(g_k w); the first nonzero value stops the iteration and leaves
    the pair list one short of the stopping index.
    """
    family.require_circle()
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    F = family.hamiltonian
    melnikov: list[PeriodPoly] = []
    pairs: list[FrancoisePair] = []
    g_prev = BivarPoly.one()
    first_nonzero: int | None = None
    for k in range(max_order):
        current = w.scale(g_prev)
        period = period_of_form(current, family)
        m = period if (k + 1) % 2 == 0 else -period
        melnikov.append(m)
        if not m.is_zero():
            first_nonzero = k + 1
            break
        solved = decompose(current, family)
        if isinstance(solved, NoSolution):  # pragma: no cover - period was zero
            raise InternalSolverError("decompose failed on a zero-period form")
        if not solved.verify(g_prev, w, F):
            raise InternalSolverError("iteration resubstitution failed")
        pairs.append(solved)
        g_prev = solved.g
    seq = FrancoiseSequence(family=family, omega=w, pairs=tuple(pairs))
    return MelnikovResult(
        melnikov=tuple(melnikov), first_nonzero=first_nonzero, sequence=seq
    )


def sequence_length(
    seq: FrancoiseSequence, max_order: int = DEFAULT_MAX_ORDER
) -> Union[int, ExceedsMax]:
    """Smallest l with g_{l+1} = 0, or an ExceedsMax marker.

    A zero g propagates (the canonical decomposition of the zero form is
    (0, 0)), so the first zero settles the length.
    """
    for i, pair in enumerate(seq.pairs[:max_order]):
        if pair.g.is_zero():
            return i
    return ExceedsMax(max_order=max_order)
