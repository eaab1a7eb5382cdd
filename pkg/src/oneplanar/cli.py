"""Command-line front door: generate families, solve matchings, run checks.

All outputs are plain text, sorted, LF-terminated; numbers print as
exact integers or fractions p/q.  Exit codes: 0 success/holds, 1 usage,
2 parse failure, 3 precondition violation, 4 property violation,
5 unimplemented family.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bounds, embedding, generators, matcher
from .errors import (
    NotBipartite,
    OnePlanarError,
    ParseError,
    TooLarge,
    Unimplemented,
)
from .graph import Graph, parse_graph, write_graph

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_VIOLATION = 4
EXIT_UNIMPLEMENTED = 5


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _fmt(x: Fraction | int) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record: same manifest inputs must yield identical outputs."""

    command: str
    arguments: dict[str, object]
    input_digests: dict[str, str]
    outputs: list[str]
    output_digests: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        body = {
            "command": self.command,
            "arguments": self.arguments,
            "input_digests": self.input_digests,
            "outputs": self.outputs,
            "output_digests": self.output_digests,
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"


def _write_manifest(
    path: str, command: str, arguments: dict, inputs: list[str], outputs: list[str]
) -> None:
    manifest = RunManifest(
        command=command,
        arguments={k: v for k, v in sorted(arguments.items()) if v is not None},
        input_digests={p: _digest(Path(p)) for p in sorted(inputs)},
        outputs=sorted(outputs),
        output_digests={p: _digest(Path(p)) for p in sorted(outputs)},
    )
    Path(path).write_text(manifest.to_json())


def _parse_ids(text: str) -> frozenset[int]:
    try:
        return frozenset(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise ParseError(f"bad vertex list {text!r}") from exc


def _load_vertex_set(spec: str) -> frozenset[int]:
    """A vertex set given as a csv list or a witness-file path."""
    p = Path(spec)
    if p.exists():
        s, _, _ = generators.parse_witness(p.read_text())
        return s
    return _parse_ids(spec)


def _two_coloring(g: Graph) -> tuple[frozenset[int], frozenset[int]]:
    color: dict[int, int] = {}
    for start in range(g.n):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in g.adj[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    raise NotBipartite(f"odd cycle through edge ({v},{w})")
    side0 = frozenset(v for v, c in color.items() if c == 0)
    return side0, frozenset(range(g.n)) - side0


# ---------------------------------------------------------------------
# generate


def _cmd_generate(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs: list[str] = []
    if args.family == "random":
        if args.n is None or args.x is None:
            raise _UsageError("random needs --n and --x")
        d = generators.random_oneplanar(args.n, args.x, args.seed)
        name = f"random-n{args.n}-x{args.x}-seed{args.seed}"
        (out_dir / f"{name}.graph").write_text(write_graph(d.graph()))
        (out_dir / f"{name}.1pg").write_text(embedding.write_drawing(d))
        outputs = [str(out_dir / f"{name}.graph"), str(out_dir / f"{name}.1pg")]
    else:
        fn, pname = generators.FAMILIES[args.family]
        value = getattr(args, pname.replace("-", "_"), None)
        if value is None:
            raise _UsageError(f"family {args.family} needs --{pname}")
        inst = fn(value)
        name = inst.name
        (out_dir / f"{name}.graph").write_text(write_graph(inst.graph))
        (out_dir / f"{name}.1pg").write_text(embedding.write_drawing(inst.drawing))
        (out_dir / f"{name}.witness").write_text(generators.write_witness(inst))
        outputs = [
            str(out_dir / f"{name}.graph"),
            str(out_dir / f"{name}.1pg"),
            str(out_dir / f"{name}.witness"),
        ]
    for p in outputs:
        print(p)
    if args.manifest:
        _write_manifest(
            args.manifest,
            "generate",
            {
                "family": args.family,
                "s": args.s,
                "k": args.k,
                "g": args.g,
                "n": args.n,
                "x": args.x,
                "seed": args.seed,
                "out": args.out,
            },
            [],
            outputs,
        )
    return EXIT_OK


# ---------------------------------------------------------------------
# solve


def _cmd_solve(args: argparse.Namespace) -> int:
    g = parse_graph(Path(args.graph).read_text())
    if args.mode == "matching":
        m = matcher.maximum_matching(g)
        sys.stdout.write(matcher.write_matching(m))
        return EXIT_OK
    if args.mode == "oracle":
        w = matcher.tutte_berge_bruteforce(g, args.limit)
        sys.stdout.write(matcher.write_deficiency_witness(w, g.n))
        return EXIT_OK
    # duality
    w = matcher.tutte_berge_bruteforce(g, args.limit)
    m = matcher.maximum_matching(g)
    if 2 * len(m) == g.n - w.deficiency:
        print("equal")
        return EXIT_OK
    print(f"MISMATCH matching={len(m)} deficiency={w.deficiency} n={g.n}")
    sys.stdout.write(matcher.write_matching(m))
    sys.stdout.write(matcher.write_deficiency_witness(w, g.n))
    return EXIT_VIOLATION


# ---------------------------------------------------------------------
# check


def _resolve_t(arg: str, d: embedding.OnePlanarDrawing) -> frozenset[int]:
    if arg in ("side0", "side1"):
        side0, side1 = _two_coloring(d.graph())
        return side0 if arg == "side0" else side1
    return _load_vertex_set(arg)


def _bound_line(chk: bounds.BoundCheck) -> str:
    word = "holds" if chk.holds else "violated"
    tight = " tight" if chk.holds and chk.tight else ""
    return f"lhs={_fmt(chk.lhs)} rhs={_fmt(chk.rhs)} {word}{tight}"


def _cmd_check(args: argparse.Namespace) -> int:
    what = args.what
    if what == "obs1":
        d = embedding.parse_drawing(Path(args.input).read_text())
        if args.side0:
            side0 = _parse_ids(args.side0)
            sides = (side0, frozenset(range(d.n_real)) - side0)
        else:
            sides = _two_coloring(d.graph())
        lhs, rhs, holds = embedding.check_bipartite_edge_budget(d, sides)
        print(f"lhs={_fmt(lhs)} rhs={_fmt(rhs)} {'holds' if holds else 'violated'}"
              + (" tight" if holds and lhs == rhs else ""))
        return EXIT_OK if holds else EXIT_VIOLATION

    if what in ("lemma5", "lemma6"):
        d = embedding.parse_drawing(Path(args.input).read_text())
        if not args.T:
            raise _UsageError(f"check {what} needs --T")
        t = _resolve_t(args.T, d)
        chk = (
            bounds.check_degree_bound(d, t)
            if what == "lemma5"
            else bounds.check_cw_degree_bound(d, t)
        )
        print(_bound_line(chk))
        return EXIT_OK if chk.holds else EXIT_VIOLATION

    if what in ("lemma7", "lemma8"):
        g = parse_graph(Path(args.input).read_text())
        if not args.S:
            raise _UsageError(f"check {what} needs --S")
        s = _load_vertex_set(args.S)
        prov = (
            embedding.parse_drawing(Path(args.provenance).read_text())
            if args.provenance
            else None
        )
        if what == "lemma7":
            if args.delta not in (3, 4):
                raise _UsageError("check lemma7 needs --delta 3 or 4")
            chk = bounds.check_deficiency_mindeg34(g, s, args.delta, prov)
        else:
            chk = bounds.check_deficiency_mindeg5(g, s, prov)
        print(_bound_line(chk))
        return EXIT_OK if chk.holds else EXIT_VIOLATION

    if what == "theorem1":
        g = parse_graph(Path(args.input).read_text())
        if args.delta is None:
            raise _UsageError("check theorem1 needs --delta")
        prov = (
            embedding.parse_drawing(Path(args.provenance).read_text())
            if args.provenance
            else None
        )
        rep = bounds.certify_matching_bound(g, args.delta, prov)
        if not rep.applicable:
            print(
                f"|M|={rep.matching_size} bound={_fmt(rep.bound)} "
                f"not applicable (n={rep.n} < threshold {rep.threshold})"
            )
            return EXIT_PRECONDITION
        word = "holds" if rep.holds else "violated"
        tight = " tight" if rep.tight else ""
        print(f"|M|={rep.matching_size} bound={_fmt(rep.bound)} {word}{tight}")
        return EXIT_OK if rep.holds else EXIT_VIOLATION

    if what == "charge":
        d = embedding.parse_drawing(Path(args.input).read_text())
        if not args.S:
            raise _UsageError("check charge needs --S")
        s = _load_vertex_set(args.S)
        t = frozenset(range(d.n_real)) - s
        ledger = bounds.charging_run(d, s, t, order_seed=args.order_seed)
        report = bounds.charge_verify(ledger)
        if args.dump:
            sys.stdout.write(bounds.write_ledger(ledger))
        print(f"violations: {len(report.violations)}")
        for v in report.violations:
            print(f"  {v}")
        return EXIT_OK if report.ok else EXIT_VIOLATION

    raise _UsageError(f"unknown check {what!r}")


# ---------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="oneplanar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a family instance or random drawing")
    p_gen.add_argument(
        "family",
        choices=sorted(generators.FAMILIES) + ["random"],
    )
    p_gen.add_argument("--s", type=int, help="substrate size (delta3, delta4)")
    p_gen.add_argument("--k", type=int, help="number of K5 blocks (delta4-k5)")
    p_gen.add_argument("--g", type=int, help="number of hub blocks (delta5/6/7)")
    p_gen.add_argument("--n", type=int, help="triangulation size (random)")
    p_gen.add_argument("--x", type=int, help="number of crossing pairs (random)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--out", default=".")
    p_gen.add_argument("--manifest", help="write a reproducibility manifest here")
    p_gen.set_defaults(fn=_cmd_generate)

    p_solve = sub.add_parser("solve", help="maximum matching / deficiency oracle")
    p_solve.add_argument("graph")
    p_solve.add_argument(
        "--mode", choices=["matching", "oracle", "duality"], default="matching"
    )
    p_solve.add_argument("--limit", type=int, default=matcher.BRUTE_FORCE_LIMIT)
    p_solve.set_defaults(fn=_cmd_solve)

    p_check = sub.add_parser("check", help="run one verification")
    p_check.add_argument(
        "what",
        choices=["obs1", "lemma5", "lemma6", "lemma7", "lemma8", "theorem1", "charge"],
    )
    p_check.add_argument("input", help="graph or drawing file, per check")
    p_check.add_argument("--T", help="independent set: csv ids, side0 or side1")
    p_check.add_argument("--S", help="vertex set: csv ids or a witness file")
    p_check.add_argument("--side0", help="explicit bipartition side for obs1")
    p_check.add_argument("--delta", type=int, help="minimum degree for lemma7/theorem1")
    p_check.add_argument("--provenance", help="1pg drawing attesting 1-planarity")
    p_check.add_argument("--order-seed", type=int, default=None, dest="order_seed")
    p_check.add_argument("--dump", action="store_true", help="print the charge ledger")
    p_check.set_defaults(fn=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Unimplemented as exc:
        print(f"unimplemented: {exc}", file=sys.stderr)
        return EXIT_UNIMPLEMENTED
    except (TooLarge, OnePlanarError) as exc:
        print(f"precondition: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
