"""``subzeta`` command line interface.

Every command prints one JSON document (validated against the schema
shipped in ``subzeta/schemas``) unless ``--text`` is given.  Exit codes:

    0  success
    1  a verification ran and failed
    2  usage error (argparse)
    3  unknown algebra, formula or suite
    4  invalid partition
    5  malformed input file
"""

import argparse
import csv
import json
import sys
from functools import lru_cache
from importlib import resources

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from . import catalog
from .algebras import AlgebraError, centralizer_series, check_condition
from .formulas import FORMULAS, FEShape
from .funeq import check_funeq
from .lattice_enum import default_threads, zeta_series_bruteforce
from .ratfun import RatFun2
from .reduced import Partition, check_reduced_fe, hilbert_series_exact, minimal_interior_vectors
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_PARTITION, EXIT_FILE = 0, 1, 3, 4, 5


class CliError(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


# -- schemas ---------------------------------------------------------------

SCHEMAS = ("ratfun", "algebra", "counts", "verdict", "info", "series", "reduced", "catalog")


@lru_cache(maxsize=None)
def _registry():
    res = []
    for name in SCHEMAS:
        text = resources.files("subzeta").joinpath(f"schemas/{name}.schema.json").read_text()
        res.append((f"{name}.schema.json", Resource.from_contents(json.loads(text))))
    return Registry().with_resources(res)


def validator(name):
    schema = _registry().contents(f"{name}.schema.json")
    return Draft202012Validator(schema, registry=_registry())


def validate(name, doc):
    validator(name).validate(doc)
    return doc


# -- helpers ----------------------------------------------------------------

def _setup(args):
    if getattr(args, "file", None):
        path = args.file
        try:
            data = json.loads(open(path).read())
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(EXIT_FILE, f"{path}: {exc}") from None
        errs = sorted(validator("algebra").iter_errors(data), key=str)
        if errs:
            raise CliError(EXIT_FILE, f"{path}: {errs[0].message}")
        try:
            return catalog.setup_from_json(data, name=path)
        except catalog.MalformedAlgebra as exc:
            raise CliError(EXIT_FILE, f"{path}: {exc}") from None
    if not args.algebra:
        raise CliError(EXIT_UNKNOWN, "name an algebra or pass --file")
    try:
        return catalog.by_name(args.algebra)
    except catalog.UnknownAlgebra:
        raise CliError(EXIT_UNKNOWN, f"unknown algebra {args.algebra!r}") from None
    except ValueError as exc:
        if "partition" in str(exc):
            raise CliError(EXIT_PARTITION, str(exc)) from None
        raise CliError(EXIT_UNKNOWN, str(exc)) from None


def _formula(name, n):
    if name not in FORMULAS:
        raise CliError(EXIT_UNKNOWN, f"unknown formula {name!r}; known: {', '.join(FORMULAS)}")
    make, shape = FORMULAS[name]
    return make(n), shape(n)


def _partition(text):
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise CliError(EXIT_PARTITION, str(exc)) from None


def _emit(args, schema, doc, text=None):
    validate(schema, doc)
    if args.text and text is not None:
        print(text)
    else:
        print(json.dumps(doc, indent=None if args.compact else 2))


# -- commands -----------------------------------------------------------------

def cmd_catalog(args):
    rows = []
    for name in catalog.CATALOG:
        E = catalog.by_name(name)
        cd = centralizer_series(E)
        try:
            v = check_condition(E, cd)
            status = "ok" if v is None else f"violation: {v}"
        except AlgebraError as exc:
            status = f"no grading: {exc}"
        rows.append({"name": name, "rank": E.rank, "class": cd.c, "condition": status})
    text = "\n".join(f"{r['name']:<12} rank {r['rank']:<3} class {r['class']:<2} {r['condition']}"
                     for r in rows)
    _emit(args, "catalog", rows, text)
    return EXIT_OK


def info_doc(E):
    cd = centralizer_series(E)
    try:
        v = check_condition(E, cd)
        cond = {"ok": v is None, "violation": v.to_json() if v else None}
    except AlgebraError as exc:
        cond = {"ok": False, "violation": None, "error": str(exc)}
    return {
        "algebra": E.name, "rank": E.rank, "class": cd.c, "Z_ranks": list(cd.ranks),
        "N": list(cd.N), "grading": list(E.grading) if E.grading else None,
        "generators": E.d, "labels": list(E.labels), "condition": cond,
        "notes": list(E.notes),
    }


def cmd_info(args):
    doc = info_doc(_setup(args))
    _emit(args, "info", doc)
    return EXIT_OK


def cmd_count(args):
    E = _setup(args)
    threads = args.threads or default_threads()
    try:
        counts = zeta_series_bruteforce(E, args.p, args.kmax, threads=threads, prune=args.prune)
    except ValueError as exc:
        raise CliError(2, str(exc)) from None
    doc = {"algebra": E.name, "p": args.p, "counts": [[k, a] for k, a in enumerate(counts)]}
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "a_k"])
            w.writerows(doc["counts"])
    _emit(args, "counts", doc, "\n".join(f"{k}\t{a}" for k, a in doc["counts"]))
    return EXIT_OK


def cmd_series(args):
    W, shape = _formula(args.formula, args.n)
    coeffs = [str(c) for c in W.series_in_t(args.kmax)]
    doc = {"formula": args.formula, "n": args.n, "value": str(W), "ratfun": W.to_json(),
           "series": coeffs, "shape": shape.to_json()}
    _emit(args, "series", doc, str(W) + "\n" + "\n".join(f"t^{k}: {c}" for k, c in enumerate(coeffs)))
    return EXIT_OK


def cmd_check_funeq(args):
    if args.file:
        try:
            data = json.loads(open(args.file).read())
            validate("ratfun", data)
            W = RatFun2.from_json(data)
        except Exception as exc:  # any parse or schema failure is a bad file
            raise CliError(EXIT_FILE, f"{args.file}: {exc}") from None
        auto = None
        inputs = {"file": args.file}
    else:
        if not args.formula:
            raise CliError(EXIT_UNKNOWN, "name a formula or pass --file")
        W, auto = _formula(args.formula, args.n)
        inputs = {"formula": args.formula, "n": args.n}
    if args.shape == "auto":
        if auto is None:
            raise CliError(2, "--shape auto needs a named formula")
        shape = auto
    else:
        try:
            shape = FEShape.parse(args.shape)
        except ValueError as exc:
            raise CliError(2, str(exc)) from None
    if not W:
        raise CliError(EXIT_FILE, "the zero function has no functional equation")
    ok = check_funeq(W, shape)
    inputs["shape"] = shape.to_json()
    doc = {"check": "funeq", "inputs": inputs, "ok": ok}
    if not ok:
        doc["witness"] = {"inverted": str(W.substitute_inverse()),
                          "predicted": str(shape.sign * _mono(shape) * W)}
    _emit(args, "verdict", doc, f"funeq {'ok' if ok else 'FAILED'} for shape {shape.to_json()}")
    return EXIT_OK if ok else EXIT_FAIL


def _mono(shape):
    from .ratfun import q, t
    return q ** shape.qexp * t ** shape.texp


def cmd_reduced(args):
    lam = _partition(args.partition)
    series = hilbert_series_exact(lam)
    rep = check_reduced_fe(lam)
    beta = minimal_interior_vectors(lam)
    doc = {
        "partition": list(lam.parts), "series": series.format(), "ratfun": series.exact.to_json(),
        "coefficients": series.coefficients(args.kmax), "near_rectangle": rep.near_rectangle,
        "decomposition": list(rep.decomposition) if rep.decomposition else None,
        "fe": {"sign": rep.fe[0], "k": rep.fe[1]} if rep.fe else None,
        "beta": [list(b) for b in beta], "ok": rep.ok,
    }
    _emit(args, "reduced", doc, f"{series.format()}\nfe: {doc['fe']}\nbeta: {doc['beta']}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise CliError(EXIT_UNKNOWN, f"unknown suite {name!r}; known: all, {', '.join(SUITES)}")
    results = [run_suite(name, threads=args.threads) for name in names]
    docs = [validate("verdict", r.to_json()) for r in results]
    if args.text:
        for r in results:
            print(f"[{'PASS' if r.ok else 'FAIL'}] {SUITES[r.name][0]:>2} {r.name} ({r.seconds:.1f}s)")
            for line in r.lines:
                print("      " + line)
    else:
        print(json.dumps(docs if len(docs) > 1 else docs[0], indent=None if args.compact else 2))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="subzeta", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="plain text instead of JSON")
    common.add_argument("--compact", action="store_true", help="single-line JSON")
    sub = ap.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(*a, **kw):
        return _add(*a, parents=[common], **kw)

    sub.add_parser = add_parser

    sub.add_parser("catalog", help="list catalog algebras").set_defaults(func=cmd_catalog)

    def algebra_args(p):
        p.add_argument("algebra", nargs="?", help="catalog name, e.g. heisenberg, M:4, L:3,2")
        p.add_argument("--file", help="algebra definition JSON (0-based indices)")

    p = sub.add_parser("info", help="centralizer series and block-shift condition")
    algebra_args(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("count", help="brute-force invariant sublattice counts")
    algebra_args(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: $SUBZETA_THREADS or 1)")
    p.add_argument("--prune", action="store_true", help="row-incremental early rejection")
    p.add_argument("--csv", help="also write a k,a_k table here")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("series", help="closed-form zeta function and its expansion")
    p.add_argument("formula", help=f"one of {', '.join(FORMULAS)}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmax", type=int, default=5)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("check-funeq", help="exact functional equation test")
    p.add_argument("formula", nargs="?")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--file", help="rational function JSON")
    p.add_argument("--shape", default="auto", help="'auto' or 'sign,qexp,texp'")
    p.set_defaults(func=cmd_check_funeq)

    p = sub.add_parser("reduced", help="cone Hilbert series of a partition, e.g. 3,3,1")
    p.add_argument("partition")
    p.add_argument("--kmax", type=int, default=10)
    p.set_defaults(func=cmd_reduced)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", help=f"all, {', '.join(SUITES)}")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"subzeta: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
