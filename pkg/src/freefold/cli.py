"""Command-line interface.

Exit codes: 0 success, 1 a checked claim failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .positivize import check_paper_theorem, counterexample_screen, positivize_pipeline
from .pullback import shnc_check, verify_witness, witness
from .search import MODES, TrialConfig, iter_trials, summarize
from .stallings import basis, census, chi0, core, rank, subgroup_graph, to_dot
from .words import Alphabet, Letter, parse_words

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _InputError(f"{self.prog}: error: {message}")


class _InputError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _words(args, attr: str):
    return parse_words(getattr(args, attr), Alphabet(args.rank))


def cmd_rank(args) -> int:
    g = subgroup_graph(_words(args, "U"), Alphabet(args.rank))
    b = basis(g)
    payload = {
        "command": "rank",
        "vertices": g.num_vertices,
        "edges": g.num_edges,
        "rank": rank(g),
        "chi0": chi0(g),
        "basis": [str(w) for w in b],
    }
    _emit(args, payload, f"V={g.num_vertices} E={g.num_edges} rank={rank(g)} chi0={chi0(g)}\n"
          f"basis: {', '.join(str(w) for w in b) or '(none)'}")
    return EXIT_OK


def cmd_fold(args) -> int:
    g = subgroup_graph(_words(args, "U"), Alphabet(args.rank))
    edges = [[u, str(Letter(gen)), v] for u, gen, v in g.edges()]
    payload = {"command": "fold", "base": g.base, "vertices": g.num_vertices, "edges": edges}
    lines = [f"base {g.base}, {g.num_vertices} vertices, {len(edges)} edges"]
    lines += [f"  {u} -{lab}-> {v}" for u, lab, v in edges]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_census(args) -> int:
    alphabet = Alphabet(args.rank)
    based = subgroup_graph(_words(args, "U"), alphabet)
    cored = core(based, keep_base=False)
    c = census(cored)
    pruned = cored.num_vertices < based.num_vertices
    payload = {"command": "census", "base_pruned": pruned, **c.to_dict()}
    text = " ".join(f"({i},{o}):{n}" for (i, o), n in sorted(c.by_signature.items(), reverse=True))
    text += "\nmissing slot: " + " ".join(f"{k}:{n}" for k, n in c.by_missing.items())
    if pruned:
        text += "\nnote: cyclic reduction removed the base vertex"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_shnc(args) -> int:
    alphabet = Alphabet(args.rank)
    verdict, report = shnc_check(_words(args, "U"), _words(args, "V"), alphabet)
    comps = []
    witnesses_ok = True
    for comp in report.components:
        entry = comp.to_dict()
        if comp.chi0 >= 1:
            x, gens = witness(comp, report.left, report.right)
            ok = verify_witness(x, gens, report.left, report.right)
            witnesses_ok &= ok
            entry.update(x=str(x), generators=[str(w) for w in gens], witness_ok=ok)
        comps.append(entry)
    payload = {"command": "shnc", **verdict.to_dict(), "components": comps, "witnesses_ok": witnesses_ok}
    lines = [
        f"lhs={verdict.lhs} rhs={verdict.rhs} margin={verdict.margin} "
        f"{'holds' if verdict.holds else 'VIOLATED'}"
    ]
    for e in comps:
        if "x" in e:
            lines.append(f"  component V={e['vertices']} E={e['edges']} chi0={e['chi0']} "
                         f"x={e['x'] or '1'} gens={','.join(e['generators'])}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if verdict.holds and witnesses_ok else EXIT_FAILED


def cmd_positivize(args) -> int:
    gens = _words(args, "U")
    skip = None if args.embed is None else not args.embed
    images = positivize_pipeline(gens, args.rank, not args.allow_nonpositive, skip)
    payload = {"command": "positivize", "generators": [str(w) for w in images]}
    _emit(args, payload, ",".join(str(w) for w in images))
    return EXIT_OK


def cmd_theorem(args) -> int:
    rep = check_paper_theorem(_words(args, "U"))
    payload = {"command": "theorem", **rep.to_dict()}
    sig = rep.census.by_signature
    text = (
        f"image: {','.join(str(w) for w in rep.image_generators)}\n"
        f"(2,1):{sig[(2, 1)]} (1,2):{sig[(1, 2)]} total={rep.census.total}\n"
        f"only_two_types={rep.only_two_types} balanced={rep.balanced} dominance={rep.dominance}"
    )
    _emit(args, payload, text)
    return EXIT_OK if rep.confirmed else EXIT_FAILED


def cmd_screen(args) -> int:
    gens_u, gens_v = _words(args, "U"), _words(args, "V")
    screen = counterexample_screen(gens_u, gens_v)
    verdict, _ = shnc_check(gens_u, gens_v, Alphabet(2))
    consistent = screen or verdict.holds
    payload = {"command": "screen", "not_excluded": screen, "shnc": verdict.to_dict(), "consistent": consistent}
    text = ("not excluded by the majority screen" if screen else "excluded: no dominant type on one side")
    text += f"\nshnc lhs={verdict.lhs} rhs={verdict.rhs}"
    _emit(args, payload, text)
    return EXIT_OK if consistent else EXIT_FAILED


def cmd_search(args) -> int:
    config = TrialConfig(
        seed=args.seed,
        trials=args.trials,
        rank=args.rank,
        k_min=args.k_min,
        k_max=args.k_max,
        max_length=args.max_length,
        positive_only=args.positive_only,
        mode=args.mode,
    )
    start = time.perf_counter()
    records = []
    for rec in iter_trials(config, jobs=args.jobs):
        records.append(rec)
        if args.json and not args.summary_only:
            print(json.dumps(rec, sort_keys=True))
    summary = summarize(config, records)
    elapsed = time.perf_counter() - start
    if args.json:
        print(json.dumps(summary, sort_keys=True))
    else:
        g = summary["graph_vertices"]
        print(f"mode={config.mode} trials={summary['trials']} violations={summary['violations']}")
        if summary["margin_histogram"]:
            print("margins: " + " ".join(f"{m}:{n}" for m, n in summary["margin_histogram"].items()))
        if summary["signature_histogram"]:
            print("signatures: " + " ".join(f"{s}:{n}" for s, n in summary["signature_histogram"].items()))
        print(f"graph vertices min={g['min']} mean={g['mean']} max={g['max']}")
    # timing stays off stdout so reports are reproducible byte for byte
    print(f"wall time {elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK if summary["violations"] == 0 else EXIT_FAILED


def cmd_dot(args) -> int:
    g = subgroup_graph(_words(args, "U"), Alphabet(args.rank))
    text = to_dot(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--rank", type=int, default=2, help="alphabet rank (default 2)")
    common.add_argument("--json", action="store_true", help="emit JSON lines")

    parser = _Parser(prog="freefold", description="Stallings graphs and Hanna Neumann checks")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, func, help, U=True, V=False):
        p = sub.add_parser(name, parents=[common], help=help)
        if U:
            p.add_argument("-U", required=True, help="comma-separated generators of U")
        if V:
            p.add_argument("-V", required=True, help="comma-separated generators of V")
        p.set_defaults(func=func)
        return p

    add("rank", cmd_rank, "rank, reduced rank and a free basis")
    add("fold", cmd_fold, "folded core graph")
    add("census", cmd_census, "valence-3 vertex census of the cyclic core")
    add("shnc", cmd_shnc, "check the strengthened Hanna Neumann inequality", V=True)
    p = add("positivize", cmd_positivize, "embed into F(a,b) and apply a->aa, b->ab")
    p.add_argument("--embed", dest="embed", action="store_true", default=None)
    p.add_argument("--no-embed", dest="embed", action="store_false")
    p.add_argument("--allow-nonpositive", action="store_true")
    add("theorem", cmd_theorem, "census the image of positive generators")
    add("screen", cmd_screen, "majority-type counterexample screen", V=True)
    p = add("search", cmd_search, "seeded randomized search", U=False)
    p.add_argument("--mode", choices=MODES, default="shnc_random")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--max-length", type=int, default=8)
    p.add_argument("--positive-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--summary-only", action="store_true")
    p = add("dot", cmd_dot, "Graphviz DOT of the core graph")
    p.add_argument("--out", help="write to this path instead of stdout")
    return parser


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    except ValueError as exc:
        print(f"freefold: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(cli_main())
