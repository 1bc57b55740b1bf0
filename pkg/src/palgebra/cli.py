"""Command-line front end: ``palgebra <subcommand> ...``.

Exit codes: 0 success, 1 refuted or failed check, 2 usage error.  A
``countermodel`` run that finds a witness exits 0.  Randomized commands
echo their seed; the default seed comes from ``PALGEBRA_SEED`` (else 0).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .formula import ParseError, SequentSurface, jump_normalize, parse_sequent, print_formula, print_sequent
from .kernel import ScriptSyntaxError, check_proof, print_script
from .laws import format_reports, laws_in, reports_to_json, run_laws
from .semantics import ExhaustiveCapError, countermodel_search, model_from_spec, validity_check

SEED_ENV = "PALGEBRA_SEED"
SUITES = {"axioms": "axiom", "theorems": "theorem", "appendices": "appendix"}


class UsageError(Exception):
    """Bad flag value; reported with exit code 2."""


def _default_seed() -> str:
    return os.environ.get(SEED_ENV, "0")


def _seed(raw: str):
    return int(raw) if raw.lstrip("-").isdigit() else raw


def _sequent(text: str, flag: str = "sequent") -> SequentSurface:
    try:
        return parse_sequent(text)
    except ParseError as exc:
        raise UsageError(f"argument {flag}: {exc}") from None


def _model(spec: str, check: bool = True):
    try:
        return model_from_spec(spec, check)
    except (ValueError, OSError) as exc:
        raise UsageError(f"argument --model: {exc}") from None


def _emit_json(args, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))


# ------------------------------------------------------------ subcommands

def cmd_check_proof(args) -> int:
    from .proofs import load_script

    path = Path(args.path)
    if path.is_dir():
        files = sorted(path.glob("*.proof"))
        if not files:
            raise UsageError(f"argument path: no .proof files in {path}")
    elif path.is_file():
        files = [path]
    else:
        raise UsageError(f"argument path: {path} does not exist")
    rows, failed = [], 0
    for f in files:
        try:
            script = load_script(f)
        except ScriptSyntaxError as exc:
            failed += 1
            rows.append({"name": f.stem, "ok": False, "error": f"syntax: {exc}"})
            print(f"FAIL    {f.stem:32} syntax: {exc}")
            continue
        res = check_proof(script)
        if res.ok:
            rows.append({"name": script.name, "ok": True, "goal": print_sequent(script.goal),
                         "primitive_steps": res.primitive_steps})
            print(f"OK      {script.name:32} {print_sequent(script.goal)}  primitive_steps={res.primitive_steps}")
        else:
            failed += 1
            rows.append({"name": script.name, "ok": False, "error": str(res.error)})
            print(f"FAIL    {script.name:32} {res.error}")
    print(f"{len(files) - failed}/{len(files)} accepted")
    _emit_json(args, rows)
    return 1 if failed else 0


def cmd_prove(args) -> int:
    from .search import SearchBudget, search

    surface = _sequent(args.sequent)
    goal = jump_normalize(surface)
    try:
        budget = SearchBudget(max_depth=args.depth, max_cut_formulas=args.cuts, time_limit=args.time_limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = search(goal, budget)
    payload = {"goal": print_sequent(goal), "found": res.found, "depth": res.depth,
               "nodes": res.nodes, "refuted_by": res.refuted_by, "timed_out": res.timed_out}
    if res.found:
        payload["script"] = print_script(res.script)
        if not args.json:
            print(print_script(res.script), end="")
        print(f"# found at depth {res.depth} ({res.nodes} nodes)", file=sys.stderr)
    else:
        if res.refuted_by:
            why = f"refuted in {res.refuted_by}"
        elif res.timed_out:
            why = "time limit reached"
        else:
            why = f"no proof up to depth {args.depth}"
        print(f"not found: {print_sequent(goal)} ({why})")
    _emit_json(args, payload)
    return 0 if res.found else 1


def cmd_validate(args) -> int:
    s = _sequent(args.sequent)
    m = _model(args.model)
    seed = _seed(args.seed)
    print(f"seed={seed}")
    try:
        verdict = validity_check(m, s, budget=args.trials, seed=seed)
    except ExhaustiveCapError as exc:
        raise UsageError(f"argument --model: {exc}") from None
    print(verdict.describe())
    _emit_json(args, {"sequent": print_sequent(s), "model": m.name, "status": verdict.status,
                      "checked": verdict.checked, "seed": seed,
                      "assignment": {k: m.format(v) for k, v in (verdict.assignment or {}).items()}})
    return 1 if verdict.refuted else 0


def cmd_countermodel(args) -> int:
    s = _sequent(args.sequent)
    seed = _seed(args.seed)
    print(f"seed={seed}")
    cm = countermodel_search(s, budget=args.trials, seed=seed)
    if cm is None:
        print(f"no countermodel in the zoo for {print_sequent(s)}")
    else:
        print(f"countermodel {cm.describe()}")
    _emit_json(args, {"sequent": print_sequent(s), "seed": seed, "found": cm is not None,
                      "model": cm.model.name if cm else None,
                      "assignment": {k: cm.model.format(v) for k, v in cm.assignment.items()} if cm else None})
    return 0 if cm is not None else 1


def cmd_laws(args) -> int:
    m = _model(args.model, check=False)
    seed = _seed(args.seed)
    laws = laws_in(SUITES[args.suite]) if args.suite else None
    print(f"seed={seed} model={m.name}")
    reports = run_laws(m, laws, budget=args.budget, seed=seed, jobs=args.jobs)
    if args.json:
        print(reports_to_json(reports))
    else:
        print(format_reports(reports))
    failed = sum(1 for r in reports if not r.ok)
    print(f"{len(reports) - failed}/{len(reports)} laws without failure")
    return 1 if failed else 0


def cmd_enumerate(args) -> int:
    from .finite import enumerate_palgebras, save

    if not 2 <= args.size <= 6:
        raise UsageError("argument --size: must be between 2 and 6")
    out = Path(args.out) if args.out else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    names = []
    for a in enumerate_palgebras(args.size, iso_reduce=not args.all, jobs=args.jobs):
        names.append(a.name)
        kind = "commutative" if a.is_commutative() else "non-commutative"
        print(f"{a.name}  {kind}")
        if out is not None:
            (out / (a.name.replace(":", "-").replace("#", "_") + ".palg")).write_text(save(a))
        elif args.tables:
            print(save(a))
    print(f"{len(names)} table(s) of size {args.size}")
    _emit_json(args, names)
    return 0


def cmd_quotient(args) -> int:
    from .search import SearchBudget, equiv_classes, formulas_up_to

    if not 1 <= args.atoms <= 3:
        raise UsageError("argument --atoms: must be between 1 and 3")
    if not 1 <= args.depth <= 3:
        raise UsageError("argument --depth: must be between 1 and 3")
    seed = _seed(args.seed)
    print(f"seed={seed}")
    names = "abc"[: args.atoms]
    fs = formulas_up_to(list(names), args.depth)
    budget = SearchBudget(max_depth=args.search_depth, time_limit=args.time_limit)
    res = equiv_classes(fs, budget, seed=seed, trials=args.trials)
    for cls in res.classes:
        print("class  " + "  ==  ".join(print_formula(f) for f in cls))
    for f, g in res.unknown:
        print(f"unknown  {print_formula(f)}  ?  {print_formula(g)}")
    print(f"{len(fs)} formulas, {len(res.classes)} classes, "
          f"{len(res.distinct)} separated pairs, {len(res.unknown)} unknown pairs")
    _emit_json(args, {"seed": seed, "classes": [[print_formula(f) for f in c] for c in res.classes],
                      "unknown": [[print_formula(f), print_formula(g)] for f, g in res.unknown]})
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="palgebra", description="P-algebras, their sequent calculus and models.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="also print a JSON dump")
        sp.set_defaults(func=func)
        return sp

    def seeded(sp):
        sp.add_argument("--seed", default=_default_seed(), help=f"random seed (default: ${SEED_ENV} or 0)")

    sp = add("check-proof", cmd_check_proof, "check a proof script or a directory of them")
    sp.add_argument("path")

    sp = add("prove", cmd_prove, "search for a derivation of a sequent")
    sp.add_argument("sequent")
    sp.add_argument("--depth", type=int, default=8, help="maximum proof height")
    sp.add_argument("--cuts", type=int, default=64, help="cut formulas tried per step")
    sp.add_argument("--time-limit", type=float, default=30.0, help="seconds")

    sp = add("validate", cmd_validate, "check validity of a sequent in one model")
    sp.add_argument("sequent")
    sp.add_argument("--model", required=True, help="bool2, mo:K, file:PATH or subspace:dim=N")
    sp.add_argument("--trials", type=int, default=200, help="samples for infinite models")
    seeded(sp)

    sp = add("countermodel", cmd_countermodel, "search the model zoo for a countermodel")
    sp.add_argument("sequent")
    sp.add_argument("--trials", type=int, default=200, help="samples per subspace model")
    seeded(sp)

    sp = add("laws", cmd_laws, "run the law suite on a model")
    sp.add_argument("--model", required=True, help="bool2, mo:K, file:PATH or subspace:dim=N")
    sp.add_argument("--suite", choices=sorted(SUITES), help="restrict to one group (default: all)")
    sp.add_argument("--budget", type=int, default=500, help="random tuples per law")
    sp.add_argument("--jobs", type=int, default=1)
    seeded(sp)

    sp = add("enumerate", cmd_enumerate, "enumerate finite P-algebras of one size")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--out", help="directory for .palg files")
    sp.add_argument("--all", action="store_true", help="keep isomorphic copies")
    sp.add_argument("--tables", action="store_true", help="print each table")
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("quotient", cmd_quotient, "group small formulas into provable-equivalence classes")
    sp.add_argument("--atoms", type=int, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--search-depth", type=int, default=6)
    sp.add_argument("--time-limit", type=float, default=5.0, help="seconds per implication")
    sp.add_argument("--trials", type=int, default=100, help="samples per subspace model")
    seeded(sp)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("argument --jobs: must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"palgebra: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
