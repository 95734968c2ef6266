"""Command-line front end: tableau spec files in, deterministic reports out."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .charvar import DEFAULT_MAX_MINORS, DEFAULT_ROUNDS, Report, classify
from .elemred import ReductionFlag, elem_flag
from .errors import CharspanError, ParseError, SchemaError
from .exactalg import Mat, Subspace, format_scalar, parse_scalar
from .fixtures import FIXTURES
from .spencer import cartan_test, spencer_h_dims
from .tableau import Tableau, from_generators, from_reduced, is_involutive_gnf

FORMAT_VERSION = "1"
EXIT_OK, EXIT_ANALYSIS, EXIT_INPUT = 0, 1, 2

_TOP_KEYS = {"format_version", "n", "r", "generators", "reduced", "seed", "caps"}
_CAP_KEYS = {"max_minors", "rounds"}


@dataclass(frozen=True)
class TableauSpec:
    n: int
    r: int
    generators: tuple | None = None  # tuple of r x n Mat
    characters: tuple | None = None
    B: tuple | None = None  # ((a, lam, k, b, value), ...)
    seed: int | None = None
    max_minors: int | None = None
    rounds: int | None = None

    def tableau(self, seed: int = 0) -> Tableau:
        if self.generators is not None:
            return from_generators(self.n, self.r, self.generators, seed=seed)
        return from_reduced(self.characters, {q[:4]: q[4] for q in self.B}, r=self.r)


def _count(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise SchemaError(f"{what} must be a non-negative integer")
    return value


def _scalar(value, what: str):
    if isinstance(value, bool):
        raise SchemaError(f"{what}: expected a rational string")
    if isinstance(value, int):
        return parse_scalar(str(value))
    if not isinstance(value, str):
        raise SchemaError(f"{what}: expected a rational string, got {type(value).__name__}")
    return parse_scalar(value)


def parse_spec(text: str) -> TableauSpec:
    """Validate a JSON tableau spec.

    Raises ParseError for bad JSON, SchemaError for missing/extra/mistyped fields and
    ValueError for malformed rationals.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise SchemaError(f"unknown fields: {', '.join(sorted(extra))}")
    for key in ("format_version", "n", "r"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}")
    if doc["format_version"] != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {doc['format_version']!r}")
    n, r = _count(doc["n"], "n"), _count(doc["r"], "r")
    has_gen, has_red = "generators" in doc, "reduced" in doc
    if has_gen == has_red:
        raise SchemaError("exactly one of 'generators' and 'reduced' is required")
    seed = _count(doc["seed"], "seed") if "seed" in doc else None
    caps = doc.get("caps", {})
    if not isinstance(caps, dict) or set(caps) - _CAP_KEYS:
        raise SchemaError(f"caps must be an object with keys among {sorted(_CAP_KEYS)}")
    max_minors = _count(caps["max_minors"], "caps.max_minors") if "max_minors" in caps else None
    rounds = _count(caps["rounds"], "caps.rounds") if "rounds" in caps else None
    if has_gen:
        gens = doc["generators"]
        if not isinstance(gens, list):
            raise SchemaError("generators must be a list of matrices")
        mats = []
        for i, g in enumerate(gens):
            if not isinstance(g, list) or len(g) != r or any(not isinstance(row, list) or len(row) != n for row in g):
                raise SchemaError(f"generator {i} must be an {r} x {n} matrix")
            mats.append(Mat([[_scalar(v, f"generator {i}") for v in row] for row in g]))
        return TableauSpec(n, r, generators=tuple(mats), seed=seed, max_minors=max_minors, rounds=rounds)
    red = doc["reduced"]
    if not isinstance(red, dict) or set(red) != {"characters", "B"}:
        raise SchemaError("reduced must be an object with exactly 'characters' and 'B'")
    chars = red["characters"]
    if not isinstance(chars, list) or len(chars) != n:
        raise SchemaError(f"characters must be a list of {n} counts")
    chars = tuple(_count(c, "character") for c in chars)
    quints = []
    for q in red["B"]:
        if not isinstance(q, list) or len(q) != 5:
            raise SchemaError("each B entry is [a, lambda, k, b, value]")
        quints.append(tuple(_count(v, "B index") for v in q[:4]) + (_scalar(q[4], "B value"),))
    return TableauSpec(n, r, characters=chars, B=tuple(quints), seed=seed, max_minors=max_minors, rounds=rounds)


def emit_spec(t: Tableau) -> str:
    """Spec text of a tableau from its input generators."""
    doc = {
        "format_version": FORMAT_VERSION,
        "n": t.n,
        "r": t.r,
        "generators": [[[format_scalar(v) for v in row] for row in g.rows] for g in t.input_generators],
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------- report serialization


def _basis(x: Subspace) -> list:
    return [[format_scalar(v) for v in vec] for vec in x.vectors]


def flag_json(flag: ReductionFlag) -> list:
    return [
        {
            "level": s.level,
            "dim": s.x_k.dim,
            "basis": _basis(s.x_k),
            "characters": list(s.tableau_k.s),
            "ell": s.chardata_k.ell,
            "L": s.chardata_k.L,
        }
        for s in flag.steps
    ]


def report_json(rep: Report, flag: ReductionFlag | None = None) -> dict:
    out = {
        "n": rep.n,
        "r": rep.r,
        "characters": list(rep.characters),
        "ell": rep.ell,
        "L": rep.L,
        "nu": rep.nu,
        "frobenius": rep.frobenius,
        "elementary": rep.elementary,
        "cauchy_free": rep.cauchy_free,
        "involutive": rep.involutive,
        "x1_basis": _basis(rep.x1),
        "S_basis": _basis(rep.S),
        "span_basis": _basis(rep.span),
        "char_ideal_generators": [g.to_str() for g in rep.char_ideal.generators],
        "certified_span": rep.chardata.certified,
        "observed_degree": rep.chardata.observed_degree,
    }
    if flag is not None:
        out["flag"] = flag_json(flag)
        out["depth"] = flag.depth
        out["terminal_reason"] = flag.terminal_reason
    return out


def _fmt_basis(x: Subspace) -> str:
    if x.is_zero():
        return "0"
    return ", ".join("(" + ", ".join(format_scalar(v) for v in vec) + ")" for vec in x.vectors)


def report_text(rep: Report, flag: ReductionFlag | None = None) -> str:
    rows = [
        ("n, r", f"{rep.n}, {rep.r}"),
        ("characters", " ".join(map(str, rep.characters))),
        ("(ell, L, nu, n)", f"({rep.ell}, {rep.L}, {rep.nu}, {rep.n})"),
        ("frobenius", _yes(rep.frobenius)),
        ("elementary", _yes(rep.elementary)),
        ("cauchy_free", _yes(rep.cauchy_free)),
        ("involutive", _yes(rep.involutive)),
        ("X1 basis", _fmt_basis(rep.x1)),
        ("S basis", _fmt_basis(rep.S)),
        ("char ideal", "; ".join(g.to_str() for g in rep.char_ideal.generators) or "0"),
    ]
    if flag is not None:
        rows.append(("flag dims", " > ".join(str(d) for d in flag.dims)))
        rows.append(("depth", str(flag.depth)))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# ---------------------------------------------------------------- commands


def three_way(t: Tableau) -> dict:
    gnf = is_involutive_gnf(t)[0]
    ok, dim_a1, bound = cartan_test(t)
    sp = spencer_h_dims(t)
    verdicts = (gnf, ok, sp.involutive)
    return {
        "gnf": gnf,
        "cartan": ok,
        "cartan_dims": [dim_a1, bound],
        "spencer": sp.involutive,
        "spencer_h": {str(k): v for k, v in sorted(sp.dims_H.items())},
        "consistent": len(set(verdicts)) == 1,
        "involutive": all(verdicts),
    }


def _mark(b: bool) -> str:
    return "✓" if b else "✗"


def _involutive_text(v: dict) -> str:
    marks = f"(gnf+ {_mark(v['gnf'])} cartan {_mark(v['cartan'])} spencer {_mark(v['spencer'])})"
    word = "inconsistent" if not v["consistent"] else _yes(v["involutive"])
    return f"involutive: {word} {marks}\n"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _load(path: str) -> TableauSpec:
    if path == "-":
        return parse_spec(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def _settings(spec: TableauSpec, args) -> tuple[int, int, int]:
    seed = args.seed if args.seed is not None else (spec.seed or 0)
    max_minors = args.max_minors or spec.max_minors or DEFAULT_MAX_MINORS
    rounds = args.rounds or spec.rounds or DEFAULT_ROUNDS
    return seed, max_minors, rounds


def run(argv: list[str] | None = None, out=None) -> int:
    """Run one command; returns the exit code (0 ok, 1 analysis error, 2 input error)."""
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    as_json = getattr(args, "json", False)
    try:
        text, ok = _dispatch(args)
    except (OSError, ValueError) as exc:  # ParseError and SchemaError are ValueErrors
        return _fail(out, as_json, exc, EXIT_INPUT)
    except (CharspanError, AssertionError) as exc:
        return _fail(out, as_json, exc, EXIT_ANALYSIS)
    out.write(text)
    return EXIT_OK if ok else EXIT_ANALYSIS


def _fail(out, as_json: bool, exc: BaseException, code: int) -> int:
    if as_json:
        err = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
        if isinstance(exc, ParseError):
            err["line"], err["column"] = exc.line, exc.column
        out.write(_dump({"error": err}))
    else:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def _dispatch(args) -> tuple[str, bool]:
    """Output text, and False when the result itself is an analysis failure."""
    if args.command == "involutive":
        t = _tableau(args)[0]
        v = three_way(t)
        return (_dump(v) if args.json else _involutive_text(v)), v["consistent"]
    return _render(args), True


def _tableau(args) -> tuple[Tableau, int, int, int]:
    spec = _load(args.file)
    seed, max_minors, rounds = _settings(spec, args)
    return spec.tableau(seed=seed), seed, max_minors, rounds


def _render(args) -> str:
    if args.command == "fixtures":
        if args.action == "list":
            if args.json:
                return _dump(sorted(FIXTURES))
            return "".join(f"{name}\n" for name in sorted(FIXTURES))
        if args.name not in FIXTURES:
            raise SchemaError(f"unknown fixture {args.name!r}; try 'fixtures list'")
        return emit_spec(FIXTURES[args.name]())
    t, seed, max_minors, rounds = _tableau(args)
    if args.command == "analyze":
        rep = classify(t, seed=seed, rounds=rounds, max_minors=max_minors)
        flag = elem_flag(t, seed=seed, rounds=rounds, max_minors=max_minors)
        return _dump(report_json(rep, flag)) if args.json else report_text(rep, flag)
    if args.command == "charideal":
        rep = classify(t, seed=seed, rounds=rounds, max_minors=max_minors)
        gens = [g.to_str() for g in rep.char_ideal.generators]
        if args.json:
            return _dump({"n": t.n, "char_ideal_generators": gens})
        return "".join(f"{g}\n" for g in gens) or "0\n"
    if args.command == "flag":
        flag = elem_flag(t, seed=seed, rounds=rounds, max_minors=max_minors)
        if args.json:
            return _dump({"depth": flag.depth, "terminal_reason": flag.terminal_reason, "flag": flag_json(flag)})
        lines = [f"X^{s.level}: dim {s.x_k.dim}  basis {_fmt_basis(s.x_k)}  characters {' '.join(map(str, s.tableau_k.s)) or '-'}"
                 for s in flag.steps]
        return "\n".join(lines + [f"depth {flag.depth} ({flag.terminal_reason})"]) + "\n"
    raise AssertionError(args.command)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="charspan", description="Involutive tableau analysis with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("analyze", "classification report and reduction flag"),
        ("involutive", "three-way involutivity verdict"),
        ("charideal", "reduced Groebner basis of the characteristic ideal"),
        ("flag", "elementary reduction flag"),
    ]:
        c = sub.add_parser(name, help=help_)
        c.add_argument("file", help="tableau spec file (JSON), or - for stdin")
        c.add_argument("--seed", type=int, default=None)
        c.add_argument("--json", action="store_true")
        c.add_argument("--max-minors", type=int, default=None)
        c.add_argument("--rounds", type=int, default=None)
    f = sub.add_parser("fixtures", help="list or emit built-in fixtures")
    fsub = f.add_subparsers(dest="action", required=True)
    fl = fsub.add_parser("list")
    fl.add_argument("--json", action="store_true")
    fe = fsub.add_parser("emit")
    fe.add_argument("name")
    fe.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    return p


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))
