"""Command-line front end.

Every subcommand prints one JSON document (sorted keys) on standard output.
Exit codes: 0 success, 1 a verification failed, 2 malformed input,
3 a computation hit its degree cutoff.

Results are cached as plain JSON files under ``$ARTIFACT_CACHE_DIR``
(default ``~/.cache/artifact``), keyed by a hash of the subcommand, its
arguments, the contents of any input file and the package version.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from pathlib import Path

from . import __version__
from .stendhal_core import CutoffError

CACHE_ENV = "ARTIFACT_CACHE_DIR"
DEFAULT_CACHE = Path("~/.cache/artifact")


class InputError(ValueError):
    """Malformed command-line input."""


# ------------------------------------------------------------------ helpers

def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _ints(text, what):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}") from None


def _lam(text):
    out = []
    for x in text.split(","):
        x = x.strip()
        if x.startswith("w"):
            x = x[1:]
        try:
            out.append(int(x))
        except ValueError:
            raise InputError(f"--lambda: bad fundamental weight {x!r}") from None
    return tuple(out)


def _triple(text):
    """A triple in shorthand, e.g. ``w2,1`` (reds prefixed by w), or JSON."""
    from .stendhal_core import StendhalTriple, triple
    text = text.strip()
    if text.startswith("{"):
        return StendhalTriple.from_json(json.loads(text))
    if not text:
        return triple()
    return triple(*[x.strip() if x.strip().startswith("w") else int(x)
                    for x in text.split(",")])


def _load_json(text):
    """Inline JSON (starting with { or [) or a path to a JSON file."""
    text = text.strip()
    if text[:1] in "{[":
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def _element_json(x):
    terms = [{"coeff": str(c), "diagram": d.to_json()} for d, c in x.terms.items()]
    return {"bottom": x.bottom.to_json(), "top": x.top.to_json(),
            "terms": sorted(terms, key=dumps)}


def _handle(args):
    from .stendhal_core import CYCLOTOMIC, AlgebraHandle
    kw = {} if args.cutoff is None else {"cutoff": args.cutoff}
    return AlgebraHandle(args.n, _lam(args.lam), CYCLOTOMIC, **kw)


def _block(args):
    from .stendhal_core import cyclotomic_block, weight_to_blacks
    h = _handle(args)
    mult = weight_to_blacks(h.n, h.lam, _ints(args.weight, "--weight"))
    return h, cyclotomic_block(h, mult)


# ------------------------------------------------------------------ stendhal

def cmd_dim(args):
    h, block = _block(args)
    g = block.block_graded_dimension()
    return {"lambda": list(h.lam), "n": h.n, "weight": list(_ints(args.weight, "--weight")),
            "dim": g.total(), "graded": g.to_json(), "idempotents": len(block.idems)}


def cmd_basis(args):
    h, block = _block(args)
    out = []
    for b in block.idems:
        for t in block.idems:
            ds = block.basis(b, t)
            if ds:
                out.append({"bottom": b.to_json(), "top": t.to_json(),
                            "diagrams": [d.to_json() for d in ds]})
    return {"dim": sum(len(x["diagrams"]) for x in out), "blocks": out}


def _element_from_json(obj):
    from .stendhal_core import Diagram, Element
    if "terms" in obj:
        ds = [(Diagram.from_json(t["diagram"]), int(t.get("coeff", 1))) for t in obj["terms"]]
        if not ds:
            raise InputError("empty element")
        d0 = ds[0][0]
        return Element(d0.bottom, d0.top, {d: c for d, c in ds})
    return Element.of(Diagram.from_json(obj))


def cmd_mul(args):
    from .stendhal_core import multiply_cyclotomic
    h = _handle(args)
    a = _element_from_json(_load_json(args.a))
    b = _element_from_json(_load_json(args.b))
    for x in (a, b):
        x.bottom.validate(h.n)
        if x.bottom.reds != h.lam:
            raise InputError(f"diagram reds {x.bottom.reds} do not match --lambda {h.lam}")
    return {"product": _element_json(multiply_cyclotomic(h, a, b))}


def cmd_center(args):
    from .stendhal_core import Element, central_element
    h, block = _block(args)
    center = central_element(block.idems, args.k, args.i)
    commutes = True
    for b in block.idems:
        for t in block.idems:
            for d in block.basis(b, t):
                x = Element.of(d)
                diff = center[t] * x - x * center[b]
                if not block.reduce(diff).is_zero():
                    commutes = False
    return {"k": args.k, "i": args.i,
            "components": [_element_json(block.reduce(center[e])) for e in block.idems],
            "central": commutes}


# ------------------------------------------------------------------ tableaux

def cmd_tableaux(args):
    from .tableaux_cellular import content_word, enumerate_standard, row_word
    a, b = args.shape
    tabs = enumerate_standard(a, b)
    return {"shape": [a, b], "count": len(tabs),
            "tableaux": [{"rows": t.to_json(), "content_word": list(content_word(t)),
                          "row_word": list(row_word(t))} for t in tabs]}


# ------------------------------------------------------------------ resolution

def cmd_resolution(args):
    from .subset_algebra import koszul_resolution
    Q = koszul_resolution(args.c)
    terms = [{"hom": -k, "shift": -k, "subsets": [sorted(S) for S in v]}
             for k, v in sorted(Q.terms.items())]
    diff = [{"from": [-k, sorted(S)], "to": [-k + 1, sorted(T)], "map": _element_json(x)}
            for (k, S, T), x in Q.differential.items()]
    return {"c": args.c, "terms": terms, "differential": sorted(diff, key=dumps),
            "d_squared_zero": Q.square_is_zero()}


# ------------------------------------------------------------------ ladders

def cmd_ladder(args):
    from . import ladder_bimodules as lb
    from .skewhowe import vector_to_json
    if args.action == "k0":
        L = lb.Ladder.from_json(_load_json(args.ladder))
        return {"ladder": L.to_json(), "top": list(L.top),
                "matrix": [[[list(J) for J in t], vector_to_json(v)]
                           for t, v in sorted(L.matrix().items())]}
    if args.action == "basis":
        bottom = _triple(args.bottom)
        top = _triple(args.top) if args.top is not None else None
        qs = lb.bimodule_basis(args.a, args.b, bottom, top, args.max_degree, args.red_index)
        return {"count": len(qs), "basis": sorted((x.to_json() for x in qs), key=dumps)}
    if args.action == "bigon":
        shifts = lb.bigon_decompose(args.a, args.b)
        return {"a": args.a, "b": args.b, "shifts": [s.to_json() for s in shifts],
                "class": lb.graded_multiplicity(shifts).to_json()}
    raise InputError(f"unknown ladder action {args.action}")


# ------------------------------------------------------------------ skew Howe

def cmd_shw(args):
    from . import skewhowe as shw
    if args.action == "op":
        v = shw.vector_from_json(_load_json(args.vector))
        op = shw.rung_operator(args.kind, args.i, args.c, args.ell, args.n)
        return {"image": shw.vector_to_json(op(v))}
    if args.action == "commute":
        return shw.verify_commuting_actions(args.ell, args.n, args.p).to_json()
    if args.action == "hwv":
        v = shw.highest_weight_vector(args.a, args.b, args.n)
        return {"a": args.a, "b": args.b, "n": args.n, "vector": shw.vector_to_json(v)}
    raise InputError(f"unknown shw action {args.action}")


# ------------------------------------------------------------------ complexes

def cmd_chain(args):
    from . import complexes as cx
    if args.action == "nilhecke":
        return cx.nilhecke_check(args.cutoff).to_json()
    if args.action == "braid":
        return cx.nilhecke_braid_check(args.cutoff).to_json()
    if args.action == "rickard":
        if args.i is None or args.weight is None:
            raise InputError("chain rickard needs --i and --weight")
        labels = _ints(args.labels, "--labels") if args.labels else None
        return cx.rickard_complex(args.i, args.weight, args.sign, labels, args.n).to_json()
    raise InputError(f"unknown chain action {args.action}")


# ------------------------------------------------------------------ knots

def cmd_knot(args):
    from .knots import TangleDiagram, evaluate, grading_offset, weighted_writhe
    obj = _load_json(args.file)
    if args.n is not None:
        obj = dict(obj, n=args.n)
    if "n" not in obj:
        raise InputError("the tangle has no n; pass --n")
    L = TangleDiagram.from_json(obj)
    if args.action == "eval":
        return evaluate(L).to_json()
    if args.action == "writhe":
        return {"weighted_writhe": str(weighted_writhe(L)),
                "grading_offset": str(grading_offset(L))}
    raise InputError(f"unknown knot action {args.action}")


# ------------------------------------------------------------------ verify

def cmd_verify(args):
    from .acceptance import bigon_suite, run_suite
    if args.suite == "bigon":
        rep = bigon_suite()
        return {"suite": "bigon", "results": rep, "ok": all(r["ok"] for r in rep.values())}
    numbers = None if args.suite == "all" else _ints(args.suite, "--suite")
    results = run_suite(numbers)
    for r in results:
        print(r.line(), file=sys.stderr)
    # timings go to stderr only, so the JSON is reproducible
    return {"suite": args.suite,
            "results": [{"criterion": r.number, "name": r.name, "ok": r.ok} for r in results],
            "ok": all(r.ok for r in results)}


# ------------------------------------------------------------------ parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--cutoff", type=int, default=None,
                        help="degree cutoff for cyclotomic quotients and homotopy truncation")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized contexts")

    p = argparse.ArgumentParser(prog="artifact",
                                description="Diagrammatic algebras, ladders and link invariants.")
    p.add_argument("--version", action="version", version=f"artifact {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def block_args(sp):
        sp.add_argument("--lambda", dest="lam", required=True, help="e.g. w1,w2")
        sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("dim", parents=[common], help="graded dimension of a weight space")
    block_args(sp)
    sp.add_argument("--weight", required=True, help="gl_n weight, e.g. 1,1,1")
    sp = sub.add_parser("basis", parents=[common], help="basis diagrams of a weight space")
    block_args(sp)
    sp.add_argument("--weight", required=True)
    sp = sub.add_parser("mul", parents=[common], help="product a*b in the cyclotomic quotient")
    block_args(sp)
    sp.add_argument("--a", required=True, help="diagram JSON or file (the upper factor)")
    sp.add_argument("--b", required=True, help="diagram JSON or file (the lower factor)")
    sp = sub.add_parser("center", parents=[common], help="the central element h_{k,i}")
    block_args(sp)
    sp.add_argument("--weight", required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--i", type=int, default=1)

    sp = sub.add_parser("tableaux", parents=[common], help="standard tableaux of an a x b rectangle")
    sp.add_argument("--shape", type=int, nargs=2, required=True, metavar=("A", "B"))

    sp = sub.add_parser("resolution", parents=[common], help="Koszul resolution of L_{1,c-1}")
    sp.add_argument("--c", type=int, required=True)

    sp = sub.add_parser("ladder", parents=[common], help="ladders and ladder bimodules")
    sp.add_argument("action", choices=["k0", "basis", "bigon"])
    sp.add_argument("--ladder", help="ladder JSON or file (k0)")
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--b", type=int, default=1)
    sp.add_argument("--bottom", default="w2", help="bottom triple, e.g. w2,1 (basis)")
    sp.add_argument("--top", default=None)
    sp.add_argument("--max-degree", type=int, default=0)
    sp.add_argument("--red-index", type=int, default=0)

    sp = sub.add_parser("shw", parents=[common], help="skew Howe duality")
    sp.add_argument("action", choices=["op", "commute", "hwv"])
    sp.add_argument("--kind", choices=["E", "F"], default="F")
    sp.add_argument("--i", type=int, default=1)
    sp.add_argument("--c", type=int, default=1)
    sp.add_argument("--ell", type=int, default=2)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--p", type=int, default=1)
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--b", type=int, default=1)
    sp.add_argument("--vector", help="wedge vector JSON or file (op)")

    sp = sub.add_parser("chain", parents=[common], help="complexes and homotopies")
    sp.add_argument("action", choices=["nilhecke", "braid", "rickard"])
    sp.add_argument("--i", type=int)
    sp.add_argument("--weight", type=int)
    sp.add_argument("--sign", type=int, choices=[1, -1], default=1)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--labels", default=None, help="upright labels a,b (rickard)")

    sp = sub.add_parser("knot", parents=[common], help="colored link invariants")
    sp.add_argument("action", choices=["eval", "writhe"])
    sp.add_argument("--file", required=True, help="tangle JSON or file")
    sp.add_argument("--n", type=int, default=None)

    sp = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    sp.add_argument("--suite", default="all", help="all, bigon, or criterion numbers like 1,4")
    return p


COMMANDS = {"dim": cmd_dim, "basis": cmd_basis, "mul": cmd_mul, "center": cmd_center,
            "tableaux": cmd_tableaux, "resolution": cmd_resolution, "ladder": cmd_ladder,
            "shw": cmd_shw, "chain": cmd_chain, "knot": cmd_knot, "verify": cmd_verify}
UNCACHED = {"verify"}


# ------------------------------------------------------------------ cache

def cache_dir():
    return Path(os.environ.get(CACHE_ENV) or DEFAULT_CACHE).expanduser()


def cache_key(args):
    fields = {k: v for k, v in sorted(vars(args).items()) if k != "no_cache"}
    for name in ("file", "ladder", "vector", "a", "b"):
        v = fields.get(name)
        if isinstance(v, str) and v.strip()[:1] not in "{[" and os.path.exists(v):
            fields[name] = Path(v).read_text()
    blob = dumps({"args": fields, "version": __version__})
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_get(key):
    path = cache_dir() / f"{key}.json"
    try:
        entry = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if entry.get("version") != __version__ or entry.get("key") != key:
        return None
    return entry["payload"]


def cache_put(key, payload):
    d = cache_dir()
    try:
        d.mkdir(parents=True, exist_ok=True)
        tmp = d / f"{key}.tmp"
        tmp.write_text(dumps({"key": key, "version": __version__, "payload": payload}))
        tmp.replace(d / f"{key}.json")
    except OSError:
        pass  # caching is best effort


# ------------------------------------------------------------------ entry

def run(argv=None):
    """Parse argv, run the subcommand, print JSON; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    random.seed(args.seed)
    use_cache = not args.no_cache and args.command not in UNCACHED
    try:
        key = cache_key(args) if use_cache else None
        payload = cache_get(key) if use_cache else None
        if payload is None:
            payload = COMMANDS[args.command](args)
            if use_cache:
                cache_put(key, payload)
    except CutoffError as e:
        print(f"artifact: {e} (bound: degree {e.degree}; raise --cutoff)", file=sys.stderr)
        return 3
    except (InputError, ValueError, KeyError, OSError) as e:
        print(f"artifact: error: {e}", file=sys.stderr)
        return 2
    print(dumps(payload))
    if args.command == "verify" and not payload.get("ok", False):
        return 1
    return 0


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
