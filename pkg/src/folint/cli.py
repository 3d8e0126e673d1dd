"""Command-line front end: JSON problem documents in, deterministic reports out.

A problem document supplies the deformation data dF + eps*w = 0 as text in
the polynomial grammar of the algebra module:

    {
      "F": "x^2 + y^2",
      "omega": {"dx": "y^2", "dy": "0"},
      "max_order": 8,
      "oracle": {"t": [1.0], "eps": [0.01]}
    }

An omega component written "(num) / (den)" parses as a rational function;
the polynomial grammar contains no parentheses, so the two readings never
collide.  Rational components run through the numeric oracle only.  An
optional "expect" block makes a fixture self-checking under --verify-all;
its keys are documented next to _check_fixture.

Exit codes: 0 success, 1 obstruction found (informative, not a failure),
2 invalid input, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from importlib import resources

from .algebra import (
    BivarPoly,
    PolyParseError,
    RationalFunction,
    parse_poly,
)
from .exterior import Form1Planar, series_to_text
from .abelian import CIRCLE, PeriodPoly, UnsupportedOvalFamily
from .francoise import InternalSolverError, melnikov_sequence, sequence_length
from .godbillon import (
    NoFactorExists,
    assemble_omega,
    first_integral,
    gv_pairs_from_francoise,
    integrability_defect,
    integrating_factor,
    length_two_witness,
)
from . import oracle

EXIT_OK = 0
EXIT_OBSTRUCTION = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3

_RATIONAL_TEXT = re.compile(r"^\(([^()]*)\)\s*/\s*\(([^()]*)\)$")


class InvalidInput(ValueError):
    """Problem document rejected before any pipeline ran."""


class ObstructionAtOrder(Exception):
    """A nonzero Melnikov value blocks the construction at this order."""

    def __init__(self, order: int, witness: PeriodPoly):
        self.order = order
        self.witness = witness
        super().__init__(
            f"obstruction at order {order}: M_{order} = {witness.to_text()}"
        )


@dataclass(frozen=True)
class ProblemSpec:
    """Parsed problem document; omega components may be rational functions."""

    family: object
    omega: Form1Planar
    symbolic: bool
    max_order: int
    t_samples: tuple[float, ...]
    eps_samples: tuple[float, ...]


@dataclass(frozen=True)
class RunReport:
    """Result container shared by the subcommands; unset fields stay None.

    Serialization is canonical (sorted keys, two-space indent, None fields
    dropped), so identical inputs produce byte-identical JSON.
    """

    command: str
    melnikov: tuple[str, ...] | None = None
    first_nonzero: int | None = None
    pairs: tuple[dict, ...] | None = None
    gv_pairs: tuple[dict, ...] | None = None
    length: int | None = None
    first_integral: str | None = None
    defect_zero: dict | None = None
    integrating_factor: str | None = None
    witness_ok: bool | None = None
    obstruction: dict | None = None
    oracle_table: dict | None = None
    estimates: tuple[dict, ...] | None = None
    cross_check: tuple[dict, ...] | None = None

    def to_dict(self) -> dict:
        doc: dict = {"command": self.command}
        for key in (
            "melnikov",
            "first_nonzero",
            "pairs",
            "gv_pairs",
            "length",
            "first_integral",
            "defect_zero",
            "integrating_factor",
            "witness_ok",
            "obstruction",
            "oracle_table",
            "estimates",
            "cross_check",
        ):
            value = getattr(self, key)
            if value is None and key != "first_nonzero":
                continue
            if key == "first_nonzero" and self.melnikov is None:
                continue
            doc[key] = _jsonable(value)
        return doc

    def to_json(self) -> str:
        return json.dumps(
            self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False
        ) + "\n"


def _jsonable(value):
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    return value


# ---------------------------------------------------------------------------
# Problem parsing
# ---------------------------------------------------------------------------


def parse_component(text: str):
    """Polynomial, or rational function when written \"(num) / (den)\"."""
    if not isinstance(text, str):
        raise InvalidInput(f"omega component must be a string, got {type(text).__name__}")
    stripped = text.strip()
    m = _RATIONAL_TEXT.match(stripped)
    if m is None:
        return parse_poly(stripped)
    den = parse_poly(m.group(2))
    if den.is_zero():
        raise InvalidInput(f"zero denominator in {text!r}")
    return RationalFunction(parse_poly(m.group(1)), den)


def parse_problem(doc) -> ProblemSpec:
    if not isinstance(doc, dict):
        raise InvalidInput("problem document must be a JSON object")
    for key in ("F", "omega", "max_order"):
        if key not in doc:
            raise InvalidInput(f"missing required key {key!r}")

    f_poly = parse_poly(doc["F"]) if isinstance(doc["F"], str) else None
    if f_poly is None:
        raise InvalidInput("key 'F' must be a polynomial string")
    if f_poly != CIRCLE.hamiltonian:
        raise InvalidInput(
            f"this version supports F = x^2 + y^2 only, got {doc['F']!r}"
        )

    om = doc["omega"]
    if not isinstance(om, dict) or set(om) != {"dx", "dy"}:
        raise InvalidInput("key 'omega' must be an object with keys 'dx' and 'dy'")
    p = parse_component(om["dx"])
    q = parse_component(om["dy"])
    symbolic = isinstance(p, BivarPoly) and isinstance(q, BivarPoly)

    max_order = doc["max_order"]
    if not isinstance(max_order, int) or isinstance(max_order, bool) or max_order < 1:
        raise InvalidInput("key 'max_order' must be an integer >= 1")

    t_samples: tuple[float, ...] = ()
    eps_samples: tuple[float, ...] = ()
    if "oracle" in doc:
        block = doc["oracle"]
        if not isinstance(block, dict):
            raise InvalidInput("key 'oracle' must be an object")
        t_samples = _real_list(block.get("t", []), "oracle.t")
        eps_samples = _real_list(block.get("eps", []), "oracle.eps")
        for t in t_samples:
            if t <= 0:
                raise InvalidInput(f"oracle.t entries must be positive, got {t}")

    return ProblemSpec(
        family=CIRCLE,
        omega=Form1Planar(p, q),
        symbolic=symbolic,
        max_order=max_order,
        t_samples=t_samples,
        eps_samples=eps_samples,
    )


def _real_list(values, label: str) -> tuple[float, ...]:
    if not isinstance(values, list) or not all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
    ):
        raise InvalidInput(f"{label} must be a list of numbers")
    return tuple(float(v) for v in values)


def _symbolic_omega(spec: ProblemSpec) -> Form1Planar:
    if not spec.symbolic:
        raise InvalidInput(
            "rational omega components run through the oracle only; "
            "the symbolic pipeline needs polynomials"
        )
    return spec.omega


def _report_length(seq) -> int:
    """Glossary length l (first g_{l+1} = 0) capped at the computed horizon."""
    ell = sequence_length(seq, max_order=max(len(seq.pairs), 1))
    return ell if isinstance(ell, int) else len(seq.pairs)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_melnikov(spec: ProblemSpec) -> RunReport:
    """Melnikov values M_1..M_max_order with the certifying pair list."""
    w = _symbolic_omega(spec)
    result = melnikov_sequence(spec.family, w, spec.max_order)
    return RunReport(
        command="melnikov",
        melnikov=tuple(m.to_text() for m in result.melnikov),
        first_nonzero=result.first_nonzero,
        pairs=tuple(
            {"i": i, "g": p.g.to_text(), "r": p.r.to_text()}
            for i, p in enumerate(result.sequence.pairs, start=1)
        ),
        length=_report_length(result.sequence),
    )


def cmd_gv(spec: ProblemSpec, k: int) -> RunReport:
    """Godbillon-Vey data through order k with the defect and factor checks.

    The order-k assembly consumes pairs 1..k+1 (pair k+1 fills the top dε
    slot, which is exactly what makes the weight-(k+1) defect vanish), so a
    nonzero Melnikov value at any order mu <= k+1 raises
    ObstructionAtOrder(mu) carrying the witness period.
    """
    w = _symbolic_omega(spec)
    if k < 0:
        raise InvalidInput("k must be >= 0")
    result = melnikov_sequence(spec.family, w, k + 1)
    if result.first_nonzero is not None:
        raise ObstructionAtOrder(
            result.first_nonzero, result.melnikov[result.first_nonzero - 1]
        )
    seq = result.sequence
    gvp = gv_pairs_from_francoise(seq)
    F = spec.family.hamiltonian

    defect_zero: dict[str, bool] = {}
    for j in range(k + 1):
        window = gvp[: min(j + 1, len(gvp))]
        defect = integrability_defect(assemble_omega(F, w, window, j), j)
        defect_zero[str(j)] = defect.is_zero()

    fint = first_integral(F, seq, k)
    omega_full = assemble_omega(F, w, gvp[: min(k + 1, len(gvp))], k)
    n_series = integrating_factor(omega_full, fint, k)
    if n_series.coeffs[0] != BivarPoly.one():
        raise InternalSolverError("integrating factor is not a unit at eps^0")
    length_two_witness(seq, k)

    return RunReport(
        command="gv",
        melnikov=tuple(m.to_text() for m in result.melnikov),
        first_nonzero=result.first_nonzero,
        pairs=tuple(
            {"i": i, "g": p.g.to_text(), "r": p.r.to_text()}
            for i, p in enumerate(seq.pairs, start=1)
        ),
        gv_pairs=tuple(
            {"i": i, "G": pair.G.to_text(), "R": pair.R.to_text()}
            for i, pair in enumerate(gvp[: k + 1], start=1)
        ),
        length=_report_length(seq),
        first_integral=fint.to_text(),
        defect_zero=defect_zero,
        integrating_factor=series_to_text(n_series),
        witness_ok=True,
    )


def cmd_oracle(
    spec: ProblemSpec,
    cfg: oracle.HolonomyConfig = oracle.DEFAULT_CONFIG,
    richardson: bool = False,
) -> RunReport:
    """Displacement table plus Melnikov estimates on the problem's grids."""
    if not spec.t_samples:
        raise InvalidInput("the oracle needs a nonempty t grid")
    if not spec.eps_samples:
        raise InvalidInput("the oracle needs a nonempty eps grid")
    F = spec.family.hamiltonian
    samples = oracle.displacement_table(
        F, spec.omega, spec.t_samples, spec.eps_samples, cfg
    )
    rows = [[s.t, s.eps, s.delta, s.est_error] for s in samples]

    symbolic_m1 = None
    if spec.symbolic:
        symbolic_m1 = melnikov_sequence(spec.family, spec.omega, 1).melnikov[0]

    fit_orders = min(spec.max_order, 3)
    estimates = []
    cross = []
    for t in spec.t_samples:
        est = oracle.melnikov_estimate(F, spec.omega, t, fit_orders, cfg)
        entry = {
            "t": t,
            "coefficients": list(est),
            "residual": est.residual,
            "condition_number": est.condition_number,
            "ill_conditioned": est.ill_conditioned,
        }
        if richardson:
            entry["richardson_m1"] = oracle.first_melnikov_richardson(
                F, spec.omega, t, cfg
            )
        estimates.append(entry)
        if symbolic_m1 is not None:
            sym = symbolic_m1.eval_float(t)
            agrees = abs(est[0] - sym) <= max(1e-6, 1e-3 * abs(sym))
            cross.append(
                {"t": t, "symbolic_m1": sym, "estimate_m1": est[0], "agrees": agrees}
            )

    return RunReport(
        command="oracle",
        oracle_table={"columns": list(oracle.CSV_COLUMNS), "rows": rows},
        estimates=tuple(estimates),
        cross_check=tuple(cross) if cross else None,
    )


def obstruction_report(exc: ObstructionAtOrder, partial=None) -> RunReport:
    return RunReport(
        command="gv",
        melnikov=partial,
        first_nonzero=exc.order if partial is not None else None,
        obstruction={"order": exc.order, "witness": exc.witness.to_text()},
    )


# ---------------------------------------------------------------------------
# Fixture verification
# ---------------------------------------------------------------------------


def fixture_names() -> list[str]:
    root = resources.files("folint") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    text = (resources.files("folint") / "fixtures" / name).read_text("utf-8")
    return json.loads(text)


def _check_fixture(doc: dict, cfg: oracle.HolonomyConfig) -> list[tuple[str, bool, str]]:
    """Run every pipeline the fixture supports against its "expect" block.

    Recognized expectation keys: first_nonzero (int or null), melnikov_prefix
    (list of report texts), gv_k (order for the gv run), obstruction_at (int),
    witness (period text), max_abs_delta (bound over the oracle table).
    Missing keys skip their check; the structural checks (defect verdicts,
    unit factor, witness closedness, cross-check agreement) always run.
    """
    spec = parse_problem(doc)
    exp = doc.get("expect", {})
    if not isinstance(exp, dict):
        raise InvalidInput("key 'expect' must be an object")
    checks: list[tuple[str, bool, str]] = []

    if spec.symbolic:
        mel = cmd_melnikov(spec)
        if "first_nonzero" in exp:
            ok = mel.first_nonzero == exp["first_nonzero"]
            checks.append(
                ("first_nonzero", ok, f"got {mel.first_nonzero}, want {exp['first_nonzero']}")
            )
        if "melnikov_prefix" in exp:
            want = tuple(exp["melnikov_prefix"])
            got = mel.melnikov[: len(want)]
            checks.append(("melnikov_prefix", got == want, f"got {list(got)}"))

        k = exp.get("gv_k", max(min(spec.max_order - 1, 4), 0))
        if exp.get("obstruction_at") is not None:
            try:
                cmd_gv(spec, k)
                checks.append(("obstruction", False, "no obstruction raised"))
            except ObstructionAtOrder as exc:
                ok = exc.order == exp["obstruction_at"]
                if ok and "witness" in exp:
                    ok = exc.witness.to_text() == exp["witness"]
                checks.append(
                    ("obstruction", ok, f"order {exc.order}, witness {exc.witness.to_text()}")
                )
        else:
            gv = cmd_gv(spec, k)
            flat = all(gv.defect_zero.values())
            checks.append(("defect_zero", flat, f"{gv.defect_zero}"))
            checks.append(
                ("unit_factor", gv.integrating_factor.startswith("1"), gv.integrating_factor)
            )
            checks.append(("witness", bool(gv.witness_ok), ""))

    if spec.t_samples and spec.eps_samples:
        orep = cmd_oracle(spec, cfg)
        worst = max(abs(row[2]) for row in orep.oracle_table["rows"])
        if "max_abs_delta" in exp:
            ok = worst <= exp["max_abs_delta"]
            checks.append(("max_abs_delta", ok, f"max |delta| = {worst:.3e}"))
        if orep.cross_check is not None:
            ok = all(c["agrees"] for c in orep.cross_check)
            checks.append(("cross_check", ok, ""))

    return checks


def run_verify_all(cfg: oracle.HolonomyConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    all_ok = True
    for name in fixture_names():
        try:
            checks = _check_fixture(load_fixture(name), cfg)
        except Exception as exc:  # a crashing fixture is a red result, not a crash
            all_ok = False
            print(f"[FAIL] {name}: {type(exc).__name__}: {exc}", file=out)
            continue
        bad = [c for c in checks if not c[1]]
        if bad:
            all_ok = False
            detail = "; ".join(f"{label}: {note}" for label, _, note in bad)
            print(f"[FAIL] {name}: {detail}", file=out)
        else:
            ran = ", ".join(label for label, _, _ in checks)
            print(f"[PASS] {name}: {ran}", file=out)
    return EXIT_OK if all_ok else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _float_list(text: str, label: str) -> tuple[float, ...]:
    try:
        return tuple(float(piece) for piece in text.split(",") if piece.strip())
    except ValueError as exc:
        raise InvalidInput(f"{label} must be comma-separated numbers: {exc}") from None


def _load_spec(args) -> ProblemSpec:
    try:
        with open(args.problem, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {args.problem}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{args.problem} is not valid JSON: {exc}") from None
    spec = parse_problem(doc)
    if getattr(args, "max_order", None) is not None:
        doc["max_order"] = args.max_order
        spec = parse_problem(doc)
    if getattr(args, "t", None) is not None or getattr(args, "eps", None) is not None:
        t = _float_list(args.t, "--t") if args.t is not None else spec.t_samples
        eps = _float_list(args.eps, "--eps") if args.eps is not None else spec.eps_samples
        for value in t:
            if value <= 0:
                raise InvalidInput(f"--t entries must be positive, got {value}")
        spec = ProblemSpec(
            family=spec.family,
            omega=spec.omega,
            symbolic=spec.symbolic,
            max_order=spec.max_order,
            t_samples=t,
            eps_samples=eps,
        )
    return spec


def _emit(report: RunReport, args) -> None:
    text = report.to_json()
    sys.stdout.write(text)
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_csv(report: RunReport, path: str) -> None:
    samples = [
        oracle.DisplacementSample(*row) for row in report.oracle_table["rows"]
    ]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        oracle.write_samples_csv(samples, fh)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="folint",
        description="Melnikov functions, Francoise pairs and Godbillon-Vey "
        "data for perturbations of the circle Hamiltonian.",
    )
    parser.add_argument(
        "--verify-all",
        action="store_true",
        help="run every shipped fixture and check its expectations",
    )
    parser.add_argument(
        "--steps",
        type=int,
        default=None,
        help="override the integrator step count (oracle and --verify-all)",
    )
    sub = parser.add_subparsers(dest="command")

    p_mel = sub.add_parser("melnikov", help="Melnikov values and Francoise pairs")
    p_mel.add_argument("problem", help="path to a problem JSON document")
    p_mel.add_argument("--max-order", type=int, default=None)
    p_mel.add_argument("--json", default=None, help="also write the report here")

    p_gv = sub.add_parser("gv", help="Godbillon-Vey data through order k")
    p_gv.add_argument("problem")
    p_gv.add_argument("--k", type=int, default=None, help="default max_order - 1")
    p_gv.add_argument("--max-order", type=int, default=None)
    p_gv.add_argument("--json", default=None)

    p_or = sub.add_parser("oracle", help="numeric displacement table and fits")
    p_or.add_argument("problem")
    p_or.add_argument("--t", default=None, help="comma-separated t grid override")
    p_or.add_argument("--eps", default=None, help="comma-separated eps grid override")
    p_or.add_argument("--max-order", type=int, default=None)
    p_or.add_argument("--csv", default=None, help="write the sample table here")
    p_or.add_argument("--json", default=None)
    p_or.add_argument(
        "--richardson",
        action="store_true",
        help="also report the Richardson-extrapolated first coefficient",
    )
    p_or.add_argument(
        "--steps", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS
    )

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = oracle.DEFAULT_CONFIG
    if args.steps is not None:
        try:
            cfg = oracle.HolonomyConfig(step_count=args.steps)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INVALID

    try:
        if args.verify_all:
            return run_verify_all(cfg)
        if args.command is None:
            parser.print_usage(sys.stderr)
            print("error: a subcommand or --verify-all is required", file=sys.stderr)
            return EXIT_INVALID

        spec = _load_spec(args)
        if args.command == "melnikov":
            report = cmd_melnikov(spec)
        elif args.command == "gv":
            k = args.k if args.k is not None else max(spec.max_order - 1, 0)
            try:
                report = cmd_gv(spec, k)
            except ObstructionAtOrder as exc:
                partial = melnikov_sequence(spec.family, spec.omega, exc.order)
                report = obstruction_report(
                    exc, tuple(m.to_text() for m in partial.melnikov)
                )
                _emit(report, args)
                return EXIT_OBSTRUCTION
        else:
            report = cmd_oracle(spec, cfg, richardson=args.richardson)
            if args.csv:
                _write_csv(report, args.csv)
        _emit(report, args)
        return EXIT_OK
    except (InvalidInput, PolyParseError, UnsupportedOvalFamily) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (oracle.LeafEscapedAnnulus, oracle.DenominatorVanished) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InternalSolverError, NoFactorExists) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
