"""Godbillon-Vey data attached to a decomposition sequence.

The sign bookkeeping

    G_i = (-1)^i g_i,        R_i = (-1)^{i+1} i r_i,        G_0 = 1,

turns the decomposition steps g_{i-1} w = g_i dF + d r_i into the one-form

    Omega = R deps + (dF + eps w) G,
    G = 1 + sum_{i=1}^k eps^i G_i,     R = sum_{i=0}^{k} eps^i R_{i+1},

whose planar part telescopes to d(F_eps) plus a single top-order straggler,
where F_eps = F + sum (-1)^{i+1} eps^i r_i.  Omega is therefore integrable
(Omega ^ dOmega = 0) through weight k+1 in the grading that counts eps and
deps with weight one, provided the eps^k slot of R is filled with R_{k+1};
without that extra pair the defect exhibits the order-(k+1) obstruction
instead of hiding it.

The module also recovers the data in the opposite direction (pairs from a
first integral), produces the integrating factor N with Omega = N d(F_eps),
extracts the classical Godbillon-Vey forms eta_i from the Taylor expansion
of d(F_eps)/(dF_eps/deps), and builds the closed witness theta = -dG/G.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import BivarPoly, EpsSeries, RationalFunction, divexact
from .exterior import (
    DE,
    DX,
    DY,
    Form1Planar,
    FormEps,
    WeightBound,
    d_planar_scalar,
    d_total,
    series_to_text,
    truncate_weight,
    wedge,
)
from .francoise import FrancoisePair, FrancoiseSequence, InternalSolverError

__all__ = [
    "GVPair",
    "FirstIntegral",
    "GVClassicalSequence",
    "NoFactorExists",
    "DegenerateNormalization",
    "NORMALIZATION_PRIMARY",
    "NORMALIZATION_RESCALED",
    "gv_pairs_from_francoise",
    "deformation_form",
    "assemble_omega",
    "integrability_defect",
    "first_integral",
    "integrating_factor",
    "classical_gv_forms",
    "length_two_witness",
    "pairs_from_first_integral",
]

NORMALIZATION_PRIMARY = "of dF/R1"
NORMALIZATION_RESCALED = "of dF"


class NoFactorExists(ValueError):
    """Omega = N * d(F_eps) has no unit-series solution for the given data."""


class DegenerateNormalization(ValueError):
    """r_1 = 0: the eps-derivative of F_eps is not invertible."""


def _sign(i: int) -> int:
    return 1 if i % 2 == 0 else -1


# ---------------------------------------------------------------------------
# GV pairs and the first integral
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GVPair:
    """Sign-adjusted pair (G_i, R_i); the index i is positional, 1-based."""

    G: BivarPoly
    R: BivarPoly


def gv_pairs_from_francoise(seq: FrancoiseSequence) -> list[GVPair]:
    """Apply G_i = (-1)^i g_i, R_i = (-1)^{i+1} i r_i to every pair of seq."""
    out = []
    for i in range(1, len(seq) + 1):
        s = _sign(i)
        out.append(GVPair(G=seq.g(i) * s, R=seq.r(i) * (-s * i)))
    return out


@dataclass(frozen=True)
class FirstIntegral:
    """Truncation of F_eps = F + sum (-1)^{i+1} eps^i r_i."""

    series: EpsSeries

    @property
    def hamiltonian(self) -> BivarPoly:
        return self.series.coeffs[0]

    def differential(self, order: int | None = None) -> FormEps:
        """Total differential d(F_eps) of the truncation, as a FormEps.

        The truncation is treated as the polynomial it is, so the result is
        exact for that polynomial; its deps part at the top order reflects
        the truncation, not the full series.
        """
        s = self.series if order is None else self.series.extend(order)
        return d_total(FormEps.from_scalar_series(s))

    def to_text(self) -> str:
        return series_to_text(self.series)

    def __str__(self) -> str:
        return self.to_text()


def _pairs_through(seq: FrancoiseSequence, k: int) -> list[FrancoisePair]:
    """Pairs 1..k; a terminated sequence (last g = 0) extends with zero pairs."""
    if len(seq) >= k:
        return list(seq.pairs[:k])
    if seq.pairs and seq.pairs[-1].g.is_zero():
        pad = FrancoisePair(g=BivarPoly.zero(), r=BivarPoly.zero())
        return list(seq.pairs) + [pad] * (k - len(seq))
    raise ValueError(
        f"sequence provides {len(seq)} pairs, order {k} needs more"
    )


def first_integral(F: BivarPoly, seq: FrancoiseSequence, k: int) -> FirstIntegral:
    """F + sum_{i=1}^k (-1)^{i+1} eps^i r_i as an order-k series."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if F != seq.family.hamiltonian:
        raise ValueError("sequence was computed for a different Hamiltonian")
    coeffs = [F]
    for i, pair in enumerate(_pairs_through(seq, k), start=1):
        coeffs.append(pair.r * -_sign(i))
    return FirstIntegral(EpsSeries(coeffs, k))


# ---------------------------------------------------------------------------
# Omega and its integrability defect
# ---------------------------------------------------------------------------


def deformation_form(F: BivarPoly, w: Form1Planar, order: int) -> FormEps:
    """dF + eps*w as an exact FormEps of the given order (order >= 1)."""
    if order < 1:
        raise ValueError("order must be >= 1 to hold the eps term")
    dF = d_planar_scalar(F)
    return FormEps(
        order,
        {
            DX: EpsSeries([dF.p, w.p], order),
            DY: EpsSeries([dF.q, w.q], order),
        },
    )


def assemble_omega(
    F: BivarPoly, w: Form1Planar, pairs: list[GVPair], k: int
) -> FormEps:
    """Omega = R deps + (dF + eps w) G at representation order k+1.

    G uses pairs 1..k and R places R_{i+1} at eps^i for i < k.  The eps^k
    slot of R takes R_{k+1} when a (k+1)-th pair is supplied and stays zero
    otherwise; only the filled variant has a defect vanishing through weight
    k+1.  The product is kept in full, so the result is exact in eps.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if len(pairs) < k:
        raise ValueError(f"order {k} needs pairs 1..{k}, got {len(pairs)}")
    order = k + 1
    G = EpsSeries([BivarPoly.one()] + [pairs[i].G for i in range(k)], order)
    r_coeffs = [pairs[i].R for i in range(min(k + 1, len(pairs)))]
    R = EpsSeries(r_coeffs or [BivarPoly.zero()], order)
    planar = deformation_form(F, w, order).scale_series(G)
    return planar + FormEps(order, {DE: R})


def integrability_defect(omega: FormEps, k: int) -> FormEps:
    """Omega ^ d(Omega) truncated to weight <= k+1 (zero iff integrable there)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if omega.order < k:
        raise ValueError(f"form of order {omega.order} cannot answer k = {k}")
    return truncate_weight(wedge(omega, d_total(omega)), WeightBound(k + 1))


# ---------------------------------------------------------------------------
# integrating factor
# ---------------------------------------------------------------------------


def _exact_quotient(elem, divisor: BivarPoly):
    if isinstance(elem, RationalFunction):
        return elem / RationalFunction(divisor)
    return divexact(elem, divisor)


def integrating_factor(omega: FormEps, fint: FirstIntegral, k: int) -> EpsSeries:
    """Unit series N with omega = N * d(F_eps) through weight k.

    Weight w of the planar part fixes n_w by exact division by dF; the deps
    part at eps^{w-1} is then a consistency check.  Failure of either step
    raises NoFactorExists: no unit factor matches the two sides.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if omega.order < k or fint.series.order < k:
        raise ValueError("both inputs must carry data through order k")
    F = fint.hamiltonian
    Fx, Fy = F.partial("x"), F.partial("y")
    # components of d(F_eps): planar from the coefficients, deps slot i
    # holding (i+1) c_{i+1}
    c = fint.series.coeffs
    dpx = [ci.partial("x") for ci in c]
    dpy = [ci.partial("y") for ci in c]
    deps = fint.series.eps_derivative().coeffs
    a = omega.component(DX).coeffs
    b = omega.component(DY).coeffs
    e = omega.component(DE).coeffs

    n: list = []
    for w in range(k + 1):
        res_p = a[w]
        res_q = b[w]
        for j in range(w):
            res_p = res_p - n[j] * dpx[w - j]
            res_q = res_q - n[j] * dpy[w - j]
        try:
            n_w = _exact_quotient(res_p, Fx) if not Fx.is_zero() else _exact_quotient(res_q, Fy)
        except ValueError as exc:
            raise NoFactorExists(
                f"planar part at eps^{w} is not a multiple of dF"
            ) from exc
        if not (res_p - n_w * Fx).is_zero() or not (res_q - n_w * Fy).is_zero():
            raise NoFactorExists(
                f"planar part at eps^{w} is not proportional to dF"
            )
        n.append(n_w)
        if w >= 1:
            lhs = e[w - 1]
            rhs = None
            for j in range(w):
                term = n[j] * deps[w - 1 - j]
                rhs = term if rhs is None else rhs + term
            if not (lhs - rhs).is_zero():
                raise NoFactorExists(
                    f"deps part at eps^{w - 1} contradicts the planar solve"
                )
    # the two equalities above check every coefficient of weight <= k, so the
    # identity omega = N * d(F_eps) holds exactly there by construction
    return EpsSeries(n, k)


# ---------------------------------------------------------------------------
# classical GV forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GVClassicalSequence:
    """Forms eta_0..eta_m of one fixed normalization."""

    eta: tuple[Form1Planar, ...]
    normalization: str

    def __len__(self) -> int:
        return len(self.eta)


def classical_gv_forms(
    fint: FirstIntegral, m: int, normalization: str = NORMALIZATION_PRIMARY
) -> GVClassicalSequence:
    """eta_0..eta_m from the Taylor expansion of d(F_eps)/(dF_eps/deps).

    With eta_eps = sum eps^i/i! eta_i this makes eta_0 = dF/R_1 for
    R_1 = r_1, the lead of the eps-derivative; r_1 = 0 leaves nothing to
    divide by and raises DegenerateNormalization.  The rescaled variant
    ("of dF") starts from R_1 * eta_0 = dF and carries the scalings
    eta~_1 = 2(R_2 dF + dR_1)/R_1 and eta~_i = R_1^{i-1} eta_i.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if normalization not in (NORMALIZATION_PRIMARY, NORMALIZATION_RESCALED):
        raise ValueError(f"unknown normalization {normalization!r}")
    if fint.series.order < m + 1:
        raise ValueError(
            f"order-{fint.series.order} first integral supports m <= "
            f"{fint.series.order - 1}"
        )
    c = fint.series.coeffs
    den = EpsSeries([c[i + 1] * Fraction(i + 1) for i in range(m + 1)], m)
    r1 = c[1]
    if r1.is_zero():
        raise DegenerateNormalization("r_1 = 0; dF_eps/deps has no unit lead")
    den_inv = den.invert()
    num_p = EpsSeries([c[i].partial("x") for i in range(m + 1)], m).lift_to_rf()
    num_q = EpsSeries([c[i].partial("y") for i in range(m + 1)], m).lift_to_rf()
    tp = num_p * den_inv
    tq = num_q * den_inv
    eta = [
        Form1Planar(tp.coeffs[i], tq.coeffs[i]).scale(
            RationalFunction(factorial(i))
        )
        for i in range(m + 1)
    ]
    if normalization == NORMALIZATION_PRIMARY:
        return GVClassicalSequence(eta=tuple(eta), normalization=normalization)

    dF = d_planar_scalar(fint.hamiltonian)
    rescaled = [dF.lift_to_rf()]
    if m >= 1:
        r2_scaled = c[2] * 2  # R_2
        inner = dF.scale(r2_scaled) + d_planar_scalar(r1)
        rescaled.append(
            inner.lift_to_rf().scale(RationalFunction(BivarPoly.constant(2), r1))
        )
    for i in range(2, m + 1):
        rescaled.append(eta[i].scale(RationalFunction(r1 ** (i - 1))))
    return GVClassicalSequence(eta=tuple(rescaled), normalization=normalization)


# ---------------------------------------------------------------------------
# length-2 witness
# ---------------------------------------------------------------------------


def length_two_witness(seq: FrancoiseSequence, k: int) -> FormEps:
    """theta = -dG/G for G = sum (-1)^i eps^i g_i, order-k truncation.

    Verifies G*d(eta) + dG^eta = 0 coefficient-wise through eps^k, the
    planar closedness of G*eta = d(F_eps) for eta = dF + eps w; d(theta) = 0
    needs no computation, a logarithmic derivative is closed wherever
    defined.  Coefficients of theta are returned as rational functions.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    coeffs = [BivarPoly.one()]
    for i, pair in enumerate(_pairs_through(seq, k), start=1):
        coeffs.append(pair.g * _sign(i))
    G = EpsSeries(coeffs, k)

    F = seq.family.hamiltonian
    w = seq.omega
    dGp = G.map(lambda u: u.partial("x"))
    dGq = G.map(lambda u: u.partial("y"))
    eta_p = EpsSeries([F.partial("x"), w.p][: k + 1], k)
    eta_q = EpsSeries([F.partial("y"), w.q][: k + 1], k)
    deta = EpsSeries([BivarPoly.zero(), w.d().h][: k + 1], k)
    residual = G * deta + (dGp * eta_q - dGq * eta_p)
    if not residual.is_zero():
        raise InternalSolverError(
            "closedness of G*(dF + eps w) failed; sequence data inconsistent"
        )

    g_inv = G.invert().lift_to_rf()
    theta = FormEps(
        k,
        {
            DX: (-dGp).lift_to_rf() * g_inv,
            DY: (-dGq).lift_to_rf() * g_inv,
        },
        exact=False,
        zero_elem=RationalFunction(0),
    )
    return theta


# ---------------------------------------------------------------------------
# reading the pairs back from a first integral
# ---------------------------------------------------------------------------


def pairs_from_first_integral(
    fint: FirstIntegral, w: Form1Planar
) -> list[FrancoisePair]:
    """Recover pairs 1..order from d(F_eps) = R~ deps + G~ (dF + eps w).

    The planar identity is solved order by order for G~ (exact division by
    dF), R~ is the eps-derivative, and the sign table gives back
    g_i = (-1)^i G~_i and r_i = (-1)^{i+1} R~_{i-1}/i.  Every recovered pair
    is verified against its defining identity; any failure raises
    ValueError, meaning fint does not truncate a first integral for w.
    """
    F = fint.hamiltonian
    Fx, Fy = F.partial("x"), F.partial("y")
    c = fint.series.coeffs
    rt = fint.series.eps_derivative().coeffs
    g_twiddle: list[BivarPoly] = []
    for i in range(len(c)):
        num_p = c[i].partial("x")
        num_q = c[i].partial("y")
        if i >= 1:
            num_p = num_p - g_twiddle[i - 1] * w.p
            num_q = num_q - g_twiddle[i - 1] * w.q
        try:
            gt = divexact(num_p, Fx)
        except ValueError as exc:
            raise ValueError(
                f"planar coefficient at eps^{i} is not reachable from dF"
            ) from exc
        if not (num_q - gt * Fy).is_zero():
            raise ValueError(f"planar coefficient at eps^{i} is inconsistent")
        g_twiddle.append(gt)

    pairs = []
    prev_g = BivarPoly.one()
    for i in range(1, len(c)):
        g_i = g_twiddle[i] * _sign(i)
        r_i = rt[i - 1] * Fraction(-_sign(i), i)
        pair = FrancoisePair(g=g_i, r=r_i)
        if not pair.verify(prev_g, w, F):
            raise ValueError(f"recovered pair {i} fails its defining identity")
        pairs.append(pair)
        prev_g = g_i
    return pairs
