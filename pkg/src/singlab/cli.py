"""Command-line front end: ``singlab <command> [options]``.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import List, Optional

from .errors import ParseError, SinglabError
from .field import field_from_spec
from .groebner import INFINITE, groebner
from .intersection import (
    DoubleRing,
    cyclic_class,
    diagonal_module,
    diagonal_resolution,
    free_class,
    graph_module,
    ks_pairing,
)
from .invariants import deligne_milnor_check, milnor_number, milnor_orlik
from .matrix import to_strings
from .mf import koszul_dg_module, stabilize_from_resolution, tail_index, xi_fold, z2_homology
from .modules import FpModule, free_resolution
from .orders import order_from_spec
from .parser import infer_ring
from .poly import Ring, to_text

COMMANDS = ("milnor", "pairing", "dm-check", "mf-stabilize", "xi-fold", "gb", "resolve")


class UsageError(Exception):
    pass


def _split(text: str) -> List[str]:
    parts = [p.strip() for p in text.split(",")]
    if any(not p for p in parts):
        raise UsageError(f"empty entry in list {text!r}")
    return parts


def _dim(v):
    return None if v == INFINITE else int(v)


def _ring_for(args, *texts, names: Optional[List[str]] = None) -> Ring:
    field = field_from_spec(args.field)
    order = order_from_spec(args.order)
    if names:
        return Ring(names, field, order)
    return infer_ring(*texts, field=field, order=order)


def _require(args, name):
    if getattr(args, name) is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return getattr(args, name)


def _vars_option(args):
    return _split(args.vars) if getattr(args, "vars", None) else None


# ---------------------------------------------------------------------------
# commands


def cmd_milnor(args, f_text):
    ring = _ring_for(args, f_text, names=_vars_option(args))
    f = ring.parse(f_text)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        mu = milnor_number(f)
    return {"f": to_text(f), "mu": _dim(mu), "warnings": [str(w.message) for w in caught]}


def _class_for(args, D: DoubleRing):
    kind = args.class_ or "diagonal"
    if kind == "diagonal":
        return diagonal_module(D)
    if kind == "free":
        return free_class(D)
    if kind == "graph":
        sigma = _split(_require(args, "sigma"))
        return graph_module(D, [D.source.parse(s) for s in sigma])
    if kind == "cyclic":
        gens = _split(_require(args, "ideal"))
        return cyclic_class(D, [D.ring.parse(g) for g in gens])
    raise UsageError(f"unknown class {kind!r}")


def cmd_pairing(args, f_text):
    ring = _ring_for(args, f_text, names=_vars_option(args))
    D = DoubleRing(ring.parse(f_text))
    return ks_pairing(D, _class_for(args, D)).to_dict()


def cmd_dm_check(args, f_text, weights=None):
    ring = _ring_for(args, f_text, names=_vars_option(args))
    f = ring.parse(f_text)
    if weights is None and args.weights:
        weights = _split(args.weights)
    return deligne_milnor_check(f, weights).to_dict()


def _module_input(args):
    """``(M, description)`` from ``--potential``/``--module`` or from ``--f``
    (the diagonal over the double ring)."""
    if args.f is not None:
        ring = _ring_for(args, args.f, names=_vars_option(args))
        D = DoubleRing(ring.parse(args.f))
        return D, diagonal_module(D).module, {"f": to_text(D.f), "module": "diagonal"}
    pot = _require(args, "potential")
    gens = _split(_require(args, "module"))
    ring = _ring_for(args, pot, *gens, names=_vars_option(args))
    W = ring.parse(pot)
    M = FpModule.cyclic(ring, [ring.parse(g) for g in gens], W)
    return None, M, {"potential": to_text(W), "module": [to_text(ring.parse(g)) for g in gens]}


def cmd_mf_stabilize(args):
    D, M, head = _module_input(args)
    if D is not None:
        C, s = diagonal_resolution(D)
        W = D.W
    else:
        C = free_resolution(M, args.length)
        s = tail_index(C)
        W = M.potential
    mf = stabilize_from_resolution(C, W)
    return {**head, "stabilization_index": s, "mf": mf.to_json()}


def cmd_xi_fold(args):
    if args.f is not None:
        ring = _ring_for(args, args.f, names=_vars_option(args))
        f = ring.parse(args.f)
        D = DoubleRing(f)
        base = D.base
        a = [base.zero()] * D.nvars
        b = [D.to_base(f.partial(i)) for i in range(D.nvars)]
        head = {"f": to_text(f)}
    else:
        a_t, b_t = _split(_require(args, "a")), _split(_require(args, "b"))
        if len(a_t) != len(b_t):
            raise UsageError("--a and --b need the same number of entries")
        base = _ring_for(args, *a_t, *b_t, names=_vars_option(args))
        a = [base.parse(t) for t in a_t]
        b = [base.parse(t) for t in b_t]
        head = {}
    K = koszul_dg_module(a, b, base)
    Z = xi_fold(K)
    even, odd = z2_homology(Z, artinian_support_required=args.artinian)
    return {
        **head,
        "a": [to_text(p) for p in a],
        "b": [to_text(p) for p in b],
        "even_rank": Z.even_rank,
        "odd_rank": Z.odd_rank,
        "even": _dim(even),
        "odd": _dim(odd),
    }


def cmd_gb(args):
    gens = _split(_require(args, "ideal"))
    ring = _ring_for(args, *gens, names=_vars_option(args))
    G = groebner([ring.parse(g) for g in gens], ring)
    return {
        "ideal": [to_text(ring.parse(g)) for g in gens],
        "order": ring.order.name(),
        "basis": [to_text(g) for g in G],
        "colength": _dim(G.colength()),
    }


def cmd_resolve(args):
    _, M, head = _module_input(args)
    C = free_resolution(M, args.length)
    return {
        **head,
        "ranks": list(C.ranks),
        "differentials": [to_strings(d) for d in C.differentials],
        "minimized": C.minimized,
    }


# ---------------------------------------------------------------------------
# suites


def load_suite(path: str):
    """A list of ``{"name", "f", "weights"}`` entries from JSON or TOML.

    TOML files hold the list as an array of tables named ``case``.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".toml"):
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        data = tomllib.loads(raw.decode("utf-8"))
        data = data.get("case", data.get("cases"))
    else:
        data = json.loads(raw.decode("utf-8"))
    if not isinstance(data, list):
        raise UsageError("suite must be a list of entries")
    out = []
    for i, entry in enumerate(data):
        if not isinstance(entry, dict) or "f" not in entry:
            raise UsageError(f"suite entry {i} needs an 'f' field")
        out.append({"name": entry.get("name", entry["f"]), "f": entry["f"],
                    "weights": entry.get("weights")})
    return out


def run_suite(args):
    entries = load_suite(args.suite)
    rows = []
    for e in entries:
        row = {"name": e["name"]}
        try:
            if args.command == "milnor":
                row.update(cmd_milnor(args, e["f"]))
                if e["weights"]:
                    f = _ring_for(args, e["f"]).parse(e["f"])
                    row["milnor_orlik"] = milnor_orlik(f, e["weights"])
            elif args.command == "pairing":
                row.update(cmd_pairing(args, e["f"]))
            else:
                row.update(cmd_dm_check(args, e["f"], e["weights"]))
        except SinglabError as exc:
            row.update({"f": e["f"], "error": exc.code, "message": str(exc)})
        rows.append(row)
    ok = all("error" not in r and r.get("verdict", True) for r in rows)
    return {"command": args.command, "suite": entries, "results": rows, "ok": ok}


# ---------------------------------------------------------------------------
# output


def _cell(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return json.dumps(v)
    return str(v)


def format_text(report: dict) -> str:
    if "results" in report:
        rows = report["results"]
        cols = []
        for r in rows:
            for k in r:
                if k not in cols and k not in ("warnings", "tor_dims", "message"):
                    cols.append(k)
        table = [cols] + [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
        lines = ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in table]
        lines.append(f"ok: {_cell(report['ok'])}")
        return "\n".join(lines)
    width = max(len(k) for k in report)
    return "\n".join(f"{k.ljust(width)}  {_cell(v)}" for k, v in report.items())


def emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report)
    return format_text(report)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="singlab", description="Singularity invariants and stable Tors.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--f", help="polynomial f")
    p.add_argument("--vars", help="comma-separated variable names (default: inferred)")
    p.add_argument("--field", default="q", help="q or fp:<prime> (default q)")
    p.add_argument("--order", default="grevlex", help="lex, grevlex or local (default grevlex)")
    p.add_argument("--format", default="json", choices=("json", "text"))
    p.add_argument("--suite", help="JSON or TOML list of {name, f, weights}")
    p.add_argument("--weights", help="comma-separated weights for dm-check")
    p.add_argument("--class", dest="class_", help="diagonal (default), free, graph or cyclic")
    p.add_argument("--sigma", help="graph substitution images, comma-separated")
    p.add_argument("--ideal", help="comma-separated generators (gb, cyclic class)")
    p.add_argument("--potential", help="hypersurface equation W (mf-stabilize, resolve)")
    p.add_argument("--module", help="generators of the ideal I for the module R/I")
    p.add_argument("--length", type=int, default=8, help="resolution length (default 8)")
    p.add_argument("--a", help="Koszul sequence a (xi-fold)")
    p.add_argument("--b", help="contraction sequence b (xi-fold)")
    p.add_argument("--artinian", action="store_true", help="require finite-length homology")
    return p


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    handlers = {
        "milnor": lambda: cmd_milnor(args, _require(args, "f")),
        "pairing": lambda: cmd_pairing(args, _require(args, "f")),
        "dm-check": lambda: cmd_dm_check(args, _require(args, "f")),
        "mf-stabilize": lambda: cmd_mf_stabilize(args),
        "xi-fold": lambda: cmd_xi_fold(args),
        "gb": lambda: cmd_gb(args),
        "resolve": lambda: cmd_resolve(args),
    }
    try:
        if args.suite:
            if args.command not in ("milnor", "pairing", "dm-check"):
                raise UsageError("--suite works with milnor, pairing and dm-check")
            report = run_suite(args)
        else:
            report = handlers[args.command]()
    except (UsageError, ParseError) as exc:
        print(f"singlab: {getattr(exc, 'code', 'USAGE')}: {exc}", file=sys.stderr)
        return 2
    except SinglabError as exc:
        print(f"singlab: {exc.code}: {exc}", file=sys.stderr)
        if args.format == "json":
            print(json.dumps({"error": exc.code, "message": str(exc)}), file=out)
        return 1
    except (ValueError, OSError) as exc:
        print(f"singlab: USAGE: {exc}", file=sys.stderr)
        return 2
    print(emit(report, args.format), file=out)
    if args.suite and not report["ok"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
