"""Command line entry point: ``compute``, ``audit`` and ``invariants``.

Reports are flat ``key = value`` lines in a fixed order, so a run with the
same inputs, options and seed prints the same bytes.  Exit codes:

* 0 success
* 1 parse or validation error
* 2 some requested verdict is inconclusive
* 3 an audit failed
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .abelian import Z, parse_group, render_group
from .audit import FIXTURE_DEPTH, SUITES, run_suite
from .border import border_cohomology, border_homology, cohdim_large, cohdim_small, cyclicity
from .io import SpaceFormatError, parse_family, parse_space
from .limits import DEFAULT_WINDOW, Inconclusive
from .spaces import EXAMPLES, SpacePair, closed_subpair, generate_example

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE, EXIT_AUDIT = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    coefficients: object = Z
    coeff_text: str = "Z"
    degrees: tuple[int, int] | None = (0, 2)  # None: each audit suite uses its own range
    horizon: int | None = None
    window: int = DEFAULT_WINDOW
    seed: int = 0
    example: str | None = None
    space_path: str | None = None
    depth: int = FIXTURE_DEPTH
    output: str = "kv"

    def __post_init__(self):
        if self.window < 1:
            raise UsageError("window must be at least 1")
        if self.horizon is not None and self.horizon < self.window:
            raise UsageError("horizon must be at least the window")
        if self.degrees is not None:
            lo, hi = self.degrees
            if lo < 0 or hi < lo:
                raise UsageError(f"bad degree range {lo}..{hi}")


def _degrees(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"degrees must look like 0..2, got {text!r}") from None


def _config(args, degrees_default=(0, 2)) -> RunConfig:
    try:
        G = parse_group(args.coeff)
    except ValueError as exc:
        raise UsageError(f"coefficients: {exc}") from None
    return RunConfig(
        coefficients=G,
        coeff_text=args.coeff,
        degrees=args.degrees or degrees_default,
        horizon=args.horizon,
        window=args.window,
        seed=getattr(args, "seed", 0),
        example=getattr(args, "example", None),
        space_path=getattr(args, "space", None),
        depth=args.depth,
        output=args.format,
    )


def _load_pair(cfg: RunConfig) -> tuple[str, SpacePair]:
    if cfg.space_path:
        with open(cfg.space_path, encoding="utf-8") as fh:
            text = fh.read()
        return cfg.space_path, parse_space(text, cfg.space_path)
    name = cfg.example or "line"
    return name, generate_example(name, cfg.depth)


def _header(cfg: RunConfig, label: str, pair: SpacePair) -> list[tuple[str, str]]:
    key = "space" if cfg.space_path else "example"
    out = [(key, label), ("depth", str(pair.space.depth))]
    out += [("coefficients", render_group(cfg.coefficients)), ("window", str(cfg.window))]
    if cfg.horizon is not None:
        out.append(("horizon", str(cfg.horizon)))
    return out


def _emit(rows: list[tuple[str, str]], fmt: str, stream) -> None:
    if fmt == "text":
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            stream.write(f"{k.ljust(width)}  {v}\n")
    else:
        for k, v in rows:
            stream.write(f"{k} = {v}\n")


def _bounds(lo, hi) -> str:
    return "none" if lo is None and hi is None else f"{'none' if lo is None else lo}..{'none' if hi is None else hi}"


# ---------------------------------------------------------------------------
# Subcommands


def cmd_compute(cfg: RunConfig, variants: tuple[str, ...]) -> tuple[list[tuple[str, str]], int]:
    label, pair = _load_pair(cfg)
    rows = _header(cfg, label, pair)
    code = EXIT_OK
    for variant in variants:
        fn, key = (border_homology, "H_inf") if variant == "homology" else (border_cohomology, "Hc_inf")
        for n in range(cfg.degrees[0], cfg.degrees[1] + 1):
            res = fn(pair, n, cfg.coefficients, cfg.window, cfg.horizon)
            if res.stabilized:
                rows.append((f"{key}_{n}", render_group(res.group)))
                rows.append((f"{key}_{n}.stage", str(res.stable_stage)))
            else:
                rows.append((f"{key}_{n}", "inconclusive"))
                rows.append((f"{key}_{n}.note", res.note))
                code = EXIT_INCONCLUSIVE
    return rows, code


def cmd_audit(cfg: RunConfig, suites, examples, random_count: int) -> tuple[list[tuple[str, str]], int]:
    rows = [("seed", str(cfg.seed)), ("random", str(random_count)),
            ("coefficients", render_group(cfg.coefficients)), ("window", str(cfg.window))]
    passed = failed = 0
    for suite in suites:
        for r in run_suite(suite, examples, cfg.seed, random_count, cfg.coefficients, cfg.window, cfg.degrees):
            value = "pass" if r.ok else "fail"
            if r.detail:
                value += f" ; {r.detail}"
            rows.append((f"audit.{r.name}", value))
            passed, failed = passed + r.ok, failed + (not r.ok)
    rows.append(("audit.summary", f"{passed} passed, {failed} failed"))
    return rows, EXIT_AUDIT if failed else EXIT_OK


def _dimension_rows(prefix: str, rep) -> list[tuple[str, str]]:
    rows = [(prefix, _bounds(rep.lower_bound, rep.upper_bound))]
    if rep.witness is not None:
        verts, n = rep.witness
        rows.append((f"{prefix}.witness", f"degree {n} ; A = {' '.join(verts) or 'empty'}"))
    rows.append((f"{prefix}.scope", f"{rep.scope} ; tested {len(rep.tested)}, untested {len(rep.untested)}"))
    return rows


def cmd_invariants(cfg: RunConfig, family) -> tuple[list[tuple[str, str]], int]:
    label, pair = _load_pair(cfg)
    space, G = pair.space, cfg.coefficients
    rows = _header(cfg, label, pair)
    code = EXIT_OK
    for variant in ("cohomology", "homology"):
        rep = cyclicity(pair, G, variant, cfg.window, cfg.horizon)
        rows.append((f"cyclicity.{variant}", "none" if rep.value is None and rep.exact else
                     ("inconclusive" if rep.value is None else str(rep.value))))
        rows.append((f"cyclicity.{variant}.bounds", _bounds(rep.lower, rep.upper)))
        rows.append((f"cyclicity.{variant}.nerve_dimension", str(rep.nerve_dimension)))
        if not rep.exact:
            code = EXIT_INCONCLUSIVE
    small = cohdim_small(space, G, family, cfg.window, cfg.horizon)
    large = cohdim_large(space, G, family, cfg.window, cfg.horizon)
    rows += _dimension_rows("dimension.small", small)
    rows += _dimension_rows("dimension.large", large)
    holds = small.lower_bound <= large.upper_bound
    rows.append(("dimension.small_le_large",
                 f"{'holds' if holds else 'violated'} ; {small.lower_bound} <= {large.upper_bound}"))
    if small.untested or large.untested:
        code = EXIT_INCONCLUSIVE
    whole = SpacePair(space)
    for k, member in enumerate(family):
        sub, _ = closed_subpair(whole, member)
        inner = [m for m in family if m <= member and m != member]
        for kind, fn, outer in (("small", cohdim_small, small), ("large", cohdim_large, large)):
            rep = fn(sub.space, G, inner, cfg.window, cfg.horizon)
            ok = rep.lower_bound <= outer.upper_bound
            rows.append((f"monotone.{k}.{kind}",
                         f"{'holds' if ok else 'violated'} ; A {_bounds(rep.lower_bound, rep.upper_bound)}"
                         f" <= X {_bounds(outer.lower_bound, outer.upper_bound)}"))
    return rows, code


# ---------------------------------------------------------------------------
# Argument parsing


def _common(p: argparse.ArgumentParser, space_input: bool = True) -> None:
    if space_input:
        src = p.add_mutually_exclusive_group()
        src.add_argument("--example", choices=EXAMPLES, help="generated fixture model (default: line)")
        src.add_argument("--space", metavar="FILE", help="space description file")
    p.add_argument("--depth", type=int, default=FIXTURE_DEPTH, help="horizon of generated fixtures")
    p.add_argument("--coeff", default="Z", help="coefficients: Z, Z/m, Q or sums such as Z/2+Z")
    p.add_argument("--degrees", type=_degrees, default=None, help="degree range a..b")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW, help="stabilization window")
    p.add_argument("--horizon", type=int, default=None, help="number of stages to examine")
    p.add_argument("--format", choices=("kv", "text"), default="kv", help="output layout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="borderhom", description="Border homology of filtered simplicial models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="border homology or cohomology groups")
    _common(p)
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--cohomology", action="store_true", help="cohomology instead of homology")
    kind.add_argument("--both", action="store_true", help="homology and cohomology")

    p = sub.add_parser("audit", help="invariant suites over fixtures and seeded random pairs")
    _common(p, space_input=False)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--example", choices=EXAMPLES, action="append",
                   help="restrict fixture-based suites to these examples (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=10, help="random closed subpairs per fixture")

    p = sub.add_parser("invariants", help="cyclicity and cohomological dimension bounds")
    _common(p)
    p.add_argument("--family", metavar="FILE", help="closed subspaces, one vertex list per line")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.command == "compute":
            cfg = _config(args)
            variants = ("homology", "cohomology") if args.both else (
                ("cohomology",) if args.cohomology else ("homology",))
            rows, code = cmd_compute(cfg, variants)
        elif args.command == "audit":
            cfg = _config(args, None)
            if args.random < 0:
                raise UsageError("--random must be nonnegative")
            suites = SUITES if args.suite == "all" else (args.suite,)
            examples = tuple(args.example) if args.example else EXAMPLES
            rows, code = cmd_audit(cfg, suites, examples, args.random)
        else:
            cfg = _config(args)
            family = []
            if args.family:
                with open(args.family, encoding="utf-8") as fh:
                    family = parse_family(fh.read())
            rows, code = cmd_invariants(cfg, family)
    except (SpaceFormatError, UsageError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except Inconclusive as exc:
        stderr.write(f"inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    _emit(rows, cfg.output, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
