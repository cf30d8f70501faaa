"""Command-line entry point: ``lie-euler <command> [options]``.

JSON output always carries ``schema_version``. Randomized commands print
the seed they used; a fixed seed gives byte-identical JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import adjoint as adj
from . import group_action as ga
from . import pde_verify as pv
from . import structure as st
from . import suites
from .generators import EulerSystem, errata

SCHEMA_VERSION = "1.0"
SUITE_NAMES = ("brackets", "structure", "invariance", "adjoint", "optimal", "group", "residual")


def _gamma(text: str):
  try:
    return Fraction(text)
  except ValueError:
    return float(text)


def _vector(text: str) -> list:
  vals = [float(v) for v in text.replace(" ", "").split(",") if v]
  if len(vals) != 13:
    raise argparse.ArgumentTypeError("need 13 comma-separated coefficients")
  return vals


def _grid(text: str) -> pv.Grid:
  text = text.strip()
  if text.startswith("{"):
    return pv.Grid.parse(json.loads(text))
  return pv.Grid.uniform(int(text))


def _transform(text: str, s: float | None, lam: float | None) -> ga.TransformSpec:
  text = text.strip()
  if text.startswith("{"):
    return ga.TransformSpec.parse(json.loads(text))
  i = int(text.lstrip("gX"))
  return ga.TransformSpec.single(i, 0.0 if s is None else s, lam)


def _emit(obj, fmt: str = "json") -> None:
  if fmt == "json":
    sys.stdout.write(json.dumps({"schema_version": SCHEMA_VERSION, **obj},
                                indent=2, sort_keys=True, default=str) + "\n")
  else:
    sys.stdout.write(obj if isinstance(obj, str) else str(obj))
    if not str(obj).endswith("\n"):
      sys.stdout.write("\n")


def _matrix_markdown(m: np.ndarray, labels: list) -> str:
  lines = ["| | " + " | ".join(labels) + " |", "|" + "---|" * (len(labels) + 1)]
  for lab, row in zip(labels, m):
    lines.append(f"| {lab} | " + " | ".join(f"{v:.12g}" for v in row) + " |")
  return "\n".join(lines)


# commands ----------------------------------------------------------------

def cmd_table(args) -> int:
  sc = st.symmetry_algebra() if args.algebra == "g" else st.quotient_algebra()
  fmt = args.format or "markdown"
  if fmt == "json":
    _emit({"command": "table", "algebra": args.algebra, **sc.to_json()})
  elif fmt == "csv":
    rows = [",".join([""] + [sc.name(i) for i in range(sc.dim)])]
    rows += [",".join([sc.name(i)] + r) for i, r in enumerate(sc.table())]
    _emit("\n".join(rows), "csv")
  else:
    _emit(sc.render_markdown(), "markdown")
  return 0


def cmd_structure(args) -> int:
  if args.check == "complement":
    res = st.complement_check(st.symmetry_algebra())
    _emit({"command": "structure", "check": "complement", "result": res})
    return 0 if all(res.values()) else 1
  rep = suites.structure(seed=args.seed)
  _emit({"command": "structure", **rep, "errata": errata()})
  return 0 if rep["passed"] else 1


def cmd_adjoint(args) -> int:
  A = adj.adjoint_series(args.i, args.s) if args.method == "series" else adj.adjoint_closed(args.i, args.s)
  m = A.printed_layout() if args.layout == "printed" else A.m
  fmt = args.format or "markdown"
  if fmt == "json":
    _emit({"command": "adjoint", "generator": args.i, "s": args.s, "layout": args.layout,
           "method": args.method, "matrix": m.tolist()})
  else:
    _emit(_matrix_markdown(m, [f"X{k}" for k in range(1, 14)]), fmt)
  return 0


def cmd_classify(args) -> int:
  cid = adj.classify(args.a, args.tol)
  out = {"command": "classify", "a": args.a, "case_id": cid}
  if cid == adj.UNCLASSIFIED:
    out["failed_conditions"] = {str(k): v for k, v in adj.unclassified_reasons(args.a, args.tol).items()}
  else:
    out["mask"] = sorted(adj.canonical_mask(cid))
  _emit(out)
  return 0 if cid else 1


def cmd_normalize(args) -> int:
  a = args.a
  if a is None:
    rng = np.random.default_rng(args.seed)
    a = (adj.sample_case(args.case, rng) if args.case else rng.uniform(-2, 2, 13)).tolist()
  res = adj.normalize(a, args.tol, args.case)
  _emit({"command": "normalize", "seed": args.seed, "a": list(a), "result": res.to_json()})
  return 0 if res.status == "ok" else 1


def _solution(name: str) -> ga.SolutionField:
  if name == "smooth-control":
    return pv.smooth_control_field()
  return ga.BUILTIN_SOLUTIONS[name]()


def cmd_transform(args) -> int:
  spec = _transform(args.spec, args.s, args.lam)
  F = _solution(args.solution)
  G = ga.transform_solution(spec, F)
  rng = np.random.default_rng(args.seed)
  grid = args.grid or pv.Grid()
  lo = np.array([b[0] for b in grid.box])
  hi = np.array([b[1] for b in grid.box])
  pts = lo + (hi - lo) * rng.random((args.points, 4))
  vals = np.array(G(*pts.T)).T
  _emit({"command": "transform", "seed": args.seed, "spec": spec.to_json(), "solution": F.name,
         "points": pts.tolist(), "values": vals.tolist()})
  return 0


def cmd_residual(args) -> int:
  system = EulerSystem(args.gamma)
  grid = args.grid or pv.Grid()
  F = _solution(args.solution)
  if args.spec:
    F = ga.transform_solution(_transform(args.spec, args.s, args.lam), F)
  if args.format == "csv" or args.csv:
    path = args.csv or "/dev/stdout"
    n = pv.dump_csv(F, path, system, grid)
    if args.csv:
      _emit({"command": "residual", "csv": args.csv, "rows": n})
    return 0
  rep = pv.residual(F, system, grid)
  _emit({"command": "residual", "solution": F.name, "grid": grid.to_json(), "report": rep.to_json()})
  return 0 if rep.valid else 1


def cmd_verify(args) -> int:
  names = SUITE_NAMES if args.suite == "all" else (args.suite,)
  kw = {"seed": args.seed, "system": EulerSystem(args.gamma)}
  if args.grid is not None:
    kw["grid"] = args.grid
  if args.spec:
    kw["transform"] = _transform(args.spec, args.s, args.lam)
  if args.samples is not None:
    kw["samples"] = args.samples
  results = suites.run_suites(names, **kw)
  failed = [f"{n}: {f}" for n, r in results.items() for f in r["failures"]]
  _emit({"command": "verify", "seed": args.seed, "suites": results,
         "passed": not failed, "failures": failed})
  return 0 if not failed else 1


def cmd_errata(args) -> int:
  items = errata()
  if (args.format or "json") == "json":
    _emit({"command": "errata", "errata": items})
  else:
    lines = [f"- {e['location']}: printed `{e['printed']}`, implemented `{e['implemented']}` "
             f"({e['evidence']})" for e in items]
    _emit("\n".join(lines), "markdown")
  return 0


# parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
  common = argparse.ArgumentParser(add_help=False)
  common.add_argument("--gamma", type=_gamma, default=Fraction(7, 5), help="adiabatic index (default 7/5)")
  common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
  common.add_argument("--format", choices=("markdown", "json", "csv"), default=None)
  common.add_argument("--grid", type=_grid, default=None, help="points per axis, or a JSON grid spec")
  common.add_argument("--tol", type=float, default=1e-9, help="classification/normalization tolerance")

  p = argparse.ArgumentParser(prog="lie-euler", description=__doc__.splitlines()[0])
  sub = p.add_subparsers(dest="command", required=True)

  t = sub.add_parser("table", parents=[common], help="commutator table of g or g1")
  t.add_argument("--algebra", choices=("g", "g1"), default="g")
  t.set_defaults(func=cmd_table)

  s = sub.add_parser("structure", parents=[common], help="structure report and errata")
  s.add_argument("--check", choices=("all", "complement"), default="all")
  s.set_defaults(func=cmd_structure)

  a = sub.add_parser("adjoint", parents=[common], help="matrix of Ad(exp(s X_i))")
  a.add_argument("--i", type=int, required=True, choices=range(1, 14), metavar="I")
  a.add_argument("--s", type=float, required=True)
  a.add_argument("--layout", choices=("column", "printed"), default="printed")
  a.add_argument("--method", choices=("closed", "series"), default="closed")
  a.set_defaults(func=cmd_adjoint)

  c = sub.add_parser("classify", parents=[common], help="optimal-system case of an element")
  c.add_argument("--a", type=_vector, required=True)
  c.set_defaults(func=cmd_classify)

  n = sub.add_parser("normalize", parents=[common], help="normalize an element to its case")
  n.add_argument("--a", type=_vector, default=None, help="coefficients; random (seeded) if omitted")
  n.add_argument("--case", type=int, default=None, help="normalize into this case instead of the first match")
  n.set_defaults(func=cmd_normalize)

  for name, func, helptext in (("transform", cmd_transform, "evaluate a transformed solution"),
                               ("residual", cmd_residual, "finite-difference residual report")):
    q = sub.add_parser(name, parents=[common], help=helptext)
    q.add_argument("--solution", default="stratified",
                   choices=tuple(ga.BUILTIN_SOLUTIONS) + ("smooth-control",))
    q.add_argument("--spec", "--transform", dest="spec", default=None if name == "residual" else "g1",
                   help='g<i>, or JSON such as {"generator": 5, "s": 0.25}')
    q.add_argument("--s", type=float, default=None)
    q.add_argument("--lambda", dest="lam", type=float, default=None)
    q.set_defaults(func=func)
    if name == "transform":
      q.add_argument("--points", type=int, default=5)
    else:
      q.add_argument("--csv", default=None, help="write per-point residuals to this file")

  v = sub.add_parser("verify", parents=[common], help="run verification suites")
  v.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
  v.add_argument("--spec", "--transform", dest="spec", default=None)
  v.add_argument("--s", type=float, default=None)
  v.add_argument("--lambda", dest="lam", type=float, default=None)
  v.add_argument("--samples", type=int, default=None, help="elements per optimal-system case")
  v.set_defaults(func=cmd_verify)

  e = sub.add_parser("errata", parents=[common], help="printed forms that were corrected")
  e.set_defaults(func=cmd_errata)
  return p


def main(argv=None) -> int:
  args = build_parser().parse_args(argv)
  try:
    return args.func(args)
  except (ValueError, TypeError) as exc:
    _emit({"command": args.command, "error": str(exc), "passed": False})
    return 2


if __name__ == "__main__":
  sys.exit(main())
