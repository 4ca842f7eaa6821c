"""Command-line entry point: canonical bases, oracle verification, element utilities.

    hallbase kronecker canonical --dim 1,1
    hallbase tube canonical --rank 2 --dim 1,1
    hallbase verify --q 2,3 --max-dim 3,3
    hallbase multiply --lhs I0 --rhs P0
    hallbase gram --dim 2,2
    hallbase canonical-prime --dim 2,2

Exit codes: 0 ok, 1 usage, 2 budget exceeded, 3 invariant violation or
verification failure.
"""

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import re
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from . import bar_canonical as bc
from . import finite_field_oracle as ffo
from . import kronecker_model as km
from . import straightening as st
from . import symfunc_inner as sf
from . import tube_algebra as ta

__all__ = [
    "JobConfig", "ConfigError", "ParseError", "parse_element", "parse_index",
    "cmd_canonical", "cmd_verify", "cmd_multiply", "cmd_gram", "cmd_canonical_prime",
    "main",
]

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3

# default parameters for the registered identities in a verify run
RELATION_PARAMS = {
    "regular-recursion": {"nmax": 2},
    "adjacent-real-commutation": {},
    "modified-imaginary": {"nmax": 3},
    "imaginary-recursion": {"kmax": 3},
    "imaginary-real-straightening": {"nmax": 2, "mmax": 2},
    "divided-power-product": {"nmax": 2},
}

log = logging.getLogger("hallbase")


class ConfigError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, text, pos):
        super().__init__("%s at position %d\n  %s\n  %s^" % (msg, pos, text, " " * pos))
        self.pos = pos


@dataclass
class JobConfig:
    quiver: str = "kronecker"          # kronecker | tube
    rank: int = None
    dims: list = field(default_factory=list)
    qs: list = field(default_factory=lambda: [2, 3])
    max_dim: tuple = (3, 3)
    relations: list = None
    budget: int = ffo.DEFAULT_BUDGET
    cache_dir: str = None
    fmt: str = "json"
    emit_transitions: bool = False
    jobs: int = 1
    out: str = None

    def validate(self):
        if self.quiver not in ("kronecker", "tube"):
            raise ConfigError("unknown quiver %r" % self.quiver)
        if self.budget <= 0:
            raise ConfigError("budget must be positive")
        if self.jobs <= 0:
            raise ConfigError("--jobs must be positive")
        if self.fmt not in ("json", "csv", "pretty"):
            raise ConfigError("unknown format %r" % self.fmt)
        if self.quiver == "tube":
            if self.rank is None or self.rank < 2:
                raise ConfigError("tube rank must be >= 2")
            for d in self.dims:
                if len(d) != self.rank:
                    raise ConfigError("dimension vector %s does not have %d entries" % (",".join(map(str, d)), self.rank))
        else:
            for d in self.dims:
                if len(d) != 2:
                    raise ConfigError("Kronecker dimension vectors have two entries")
        for d in self.dims:
            if any(x < 0 for x in d):
                raise ConfigError("dimensions must be nonnegative")
        bad = [q for q in self.qs if q not in ffo.SUPPORTED_Q]
        if bad:
            raise ConfigError("unsupported field size %s (supported: %s)" % (
                ",".join(map(str, bad)), ",".join(map(str, ffo.SUPPORTED_Q))))
        if self.relations is not None:
            unknown = [r for r in self.relations if r not in ffo.RELATIONS]
            if unknown:
                raise ConfigError("unknown relation id %s (known: %s)" % (
                    ",".join(unknown), ",".join(sorted(ffo.RELATIONS))))
        return self


# -- shorthand parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<one>1)(?![0-9])|(?P<real>[PI])(?P<n>\d+)(?:\^(?P<k>\d+))?|D\((?P<im>[\d,\s]*)\)|D(?P<dk>\d+))")


def _parse_factors(text):
    pos, out = 0, []
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("expected a factor (1, P<n>[^k], I<n>[^k] or D(w1,...))", text, _skip_ws(text, pos))
        if m.group("one"):
            c = km.PBWIndex()
        elif m.group("real"):
            n, k = int(m.group("n")), int(m.group("k") or 1)
            if k == 0:
                raise ParseError("divided power must be positive", text, m.start("k"))
            c = km.PBWIndex({n: k}) if m.group("real") == "P" else km.PBWIndex(None, (), {n: k})
        else:
            raw = m.group("im") if m.group("im") is not None else m.group("dk")
            parts = [p.strip() for p in raw.split(",")] if raw.strip() else []
            if not parts or any(not p.isdigit() or int(p) == 0 for p in parts):
                raise ParseError("imaginary block needs positive integer parts", text, m.start() + len(m.group(0)) - len(m.group(0).lstrip()))
            c = km.PBWIndex(None, [int(p) for p in parts])
        out.append(c)
        pos = _skip_ws(text, m.end())
        if pos == len(text):
            return out
        if text[pos] != "*":
            raise ParseError("expected '*'", text, pos)
        pos += 1


def _skip_ws(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def parse_index(text):
    """A PBW index from shorthand such as 'P0^2 * D(2,1) * I1'."""
    el = parse_element(text)
    if len(el.terms) != 1 or next(iter(el.terms.values())) != bc._RONE:
        raise ParseError("factors are not in PBW order", text, 0)
    return next(iter(el.terms))


def parse_element(text):
    """AlgebraElement from JSON or from a product of shorthand factors."""
    s = text.strip()
    if s.startswith("{"):
        try:
            return st.AlgebraElement.from_json(json.loads(s))
        except (ValueError, KeyError, TypeError) as e:
            raise ParseError("bad element JSON (%s)" % e, text, 0)
    out = st.unit()
    for c in _parse_factors(text):
        out = st.multiply(out, st.basis_element(c))
    return out


def _parse_vec(s, what="dimension vector"):
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise ConfigError("bad %s %r" % (what, s))


# -- serialization -------------------------------------------------------------------

def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def _sparse(M):
    return [[i, j, x.to_json()] for i, row in enumerate(M) for j, x in enumerate(row) if x]


def _sparse_str(M):
    return [[i, j, str(x)] for i, row in enumerate(M) for j, x in enumerate(row) if x]


def _label(idx):
    return idx.shorthand() if isinstance(idx, km.PBWIndex) else idx.serialize()


def _terms(elem):
    return [{"index": _label(k), "coeff": a.to_json(), "text": str(a)} for k, a in elem.sorted_terms()]


# -- cache ---------------------------------------------------------------------------

def _cache_dir(cfg):
    return cfg.cache_dir or os.environ.get("HALLBASE_CACHE") or None


def _cache_key(module, payload):
    blob = json.dumps({"schema": SCHEMA_VERSION, "version": __version__, "module": module, "config": payload},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _atomic_write(path, text):
    d = os.path.dirname(path) or "."
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cached(cache_dir, module, payload, compute):
    if not cache_dir:
        return compute(*payload_args(payload))
    key = _cache_key(module, payload)
    path = os.path.join(cache_dir, module, key + ".json")
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    result = compute(*payload_args(payload))
    _atomic_write(path, _dumps(result))
    # reload so warm and cold runs see identical objects
    return json.loads(_dumps(result))


def payload_args(payload):
    return payload["args"]


# -- canonical -------------------------------------------------------------------------

def _canonical_job(quiver, rank, dims, budget, emit):
    if quiver == "kronecker":
        fam = bc.kronecker_family(dims)
    else:
        fam = bc.tube_family(rank, dims)
    if len(fam.indices) > budget:
        raise ffo.BudgetExceeded("weight space size", len(fam.indices), budget)
    elems, data = bc.run(fam)
    idx = data.indices
    out = {
        "quiver": quiver,
        "rank": rank,
        "dim": list(dims),
        "indices": [_label(c) for c in idx],
        "canonical": [
            {"index": _label(c),
             "pbw": [{"index": _label(idx[j]), "coeff": z.to_json(), "text": str(z)}
                     for j, z in enumerate(data.zeta[i]) if z],
             "element": _terms(e) if quiver == "tube" else None}
            for i, (c, e) in enumerate(zip(idx, elems))
        ],
    }
    if quiver == "kronecker":
        for entry in out["canonical"]:
            del entry["element"]
    if emit:
        out["H"] = _sparse(data.H)
        out["Omega"] = _sparse(data.Omega)
        out["zeta"] = _sparse(data.zeta)
    return out


def _canonical_worker(args):
    cache_dir, payload = args
    return _cached(cache_dir, "canonical", payload, _canonical_job)


def _fan_out(worker, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(worker, items))
    return [worker(it) for it in items]


def _weight_name(res):
    base = "%s-%s" % (res["quiver"], "_".join(map(str, res["dim"])))
    return base if res["rank"] is None else "%s-r%d-%s" % (res["quiver"], res["rank"], "_".join(map(str, res["dim"])))


def cmd_canonical(cfg):
    """Canonical basis for every requested weight; returns (exit code, results)."""
    cfg.validate()
    if not cfg.dims:
        raise ConfigError("canonical needs at least one --dim")
    cache = _cache_dir(cfg)
    items = [(cache, {"args": [cfg.quiver, cfg.rank, list(d), cfg.budget, cfg.emit_transitions]}) for d in cfg.dims]
    results = _fan_out(_canonical_worker, items, cfg.jobs)
    _emit(cfg, results, _render_canonical)
    return EXIT_OK, results


def _render_canonical(res, fmt):
    if fmt == "json":
        return _dumps(res)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["basis", "pbw_index", "coeff"])
        for entry in res["canonical"]:
            for t in entry["pbw"]:
                w.writerow([entry["index"], t["index"], t["text"]])
        return buf.getvalue()
    lines = ["%s weight %s: %d canonical elements" % (res["quiver"], ",".join(map(str, res["dim"])), len(res["canonical"]))]
    for entry in res["canonical"]:
        body = " + ".join("(%s)*[%s]" % (t["text"], t["index"]) for t in entry["pbw"])
        lines.append("  B[%s] = %s" % (entry["index"], body))
    return "\n".join(lines) + "\n"


def _emit(cfg, results, render):
    if cfg.out:
        ext = {"json": "json", "csv": "csv", "pretty": "txt"}[cfg.fmt]
        for res in results:
            _atomic_write(os.path.join(cfg.out, "%s.%s" % (_weight_name(res), ext)), render(res, cfg.fmt))
    else:
        for res in results:
            sys.stdout.write(render(res, cfg.fmt))


# -- verify --------------------------------------------------------------------------------

def _generators(max_dim):
    a, b = max_dim
    out = []
    for n in range(max(a, b) + 1):
        if n + 1 <= a and n <= b:
            out.append(("P", n))
        if n <= a and n + 1 <= b:
            out.append(("I", n))
    for k in range(1, min(a, b) + 1):
        out.append(("D", k))
    return out


def _gen_weight(g):
    kind, n = g
    return {"P": (n + 1, n), "I": (n, n + 1), "D": (n, n)}[kind]


def generator_pairs(max_dim):
    gens = _generators(max_dim)
    out = []
    for g1 in gens:
        for g2 in gens:
            w1, w2 = _gen_weight(g1), _gen_weight(g2)
            if w1[0] + w2[0] <= max_dim[0] and w1[1] + w2[1] <= max_dim[1]:
                out.append((g1, g2))
    return out


def _product_job(q, max_dim, budget):
    orc = ffo.get_oracle(q, None, budget)
    cases = []
    status = "equal"
    for g1, g2 in generator_pairs(max_dim):
        x, y = st.generator(*g1), st.generator(*g2)
        sym = ffo.specialize_composition_element(st.multiply(x, y), q, budget)
        brute = orc.mul(ffo.specialize_composition_element(x, q, budget),
                        ffo.specialize_composition_element(y, q, budget))
        ok, _ = ffo.compare(sym, brute)
        name = "%s%d*%s%d" % (g1[0], g1[1], g2[0], g2[1])
        cases.append({"case": name, "status": "equal" if ok else "unequal"})
        if not ok:
            status = "unequal"
    return {"relation": "products", "q": q, "status": status, "cases": cases}


def _verify_job(kind, q, max_dim, budget):
    if kind == "products":
        return _product_job(q, tuple(max_dim), budget)
    return ffo.verify_relation(kind, q, budget, **RELATION_PARAMS.get(kind, {}))


def _verify_worker(args):
    cache_dir, payload = args
    return _cached(cache_dir, "verify", payload, _verify_job)


def cmd_verify(cfg):
    cfg.validate()
    rels = sorted(ffo.RELATIONS) if cfg.relations is None else list(cfg.relations)
    kinds = rels + ["products"]
    cache = _cache_dir(cfg)
    items = [(cache, {"args": [k, q, list(cfg.max_dim), cfg.budget]}) for q in cfg.qs for k in kinds]
    results = _fan_out(_verify_worker, items, cfg.jobs)
    report = {"version": __version__, "runs": results,
              "status": "pass" if all(r["status"] == "equal" for r in results) else "fail"}
    text = _render_verify(report, cfg.fmt)
    if cfg.out:
        _atomic_write(os.path.join(cfg.out, "verify." + {"json": "json", "csv": "csv", "pretty": "txt"}[cfg.fmt]), text)
    else:
        sys.stdout.write(text)
    return (EXIT_OK if report["status"] == "pass" else EXIT_INVARIANT), report


def _render_verify(report, fmt):
    if fmt == "json":
        return _dumps(report)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "q", "case", "status"])
        for r in report["runs"]:
            for c in r["cases"]:
                w.writerow([r["relation"], r["q"], c["case"], c["status"]])
        return buf.getvalue()
    lines = []
    for r in report["runs"]:
        bad = sum(c["status"] != "equal" for c in r["cases"])
        lines.append("%-8s q=%d  %s  (%d cases, %d unequal)" % (r["relation"], r["q"], r["status"], len(r["cases"]), bad))
    lines.append("overall: %s" % report["status"])
    return "\n".join(lines) + "\n"


# -- element utilities -----------------------------------------------------------------

def cmd_multiply(lhs, rhs, fmt="json"):
    x, y = parse_element(lhs), parse_element(rhs)
    prod = st.multiply(x, y)
    res = {"terms": _terms(prod)}
    if fmt == "json":
        text = _dumps(res)
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pbw_index", "coeff"])
        for t in res["terms"]:
            w.writerow([t["index"], t["text"]])
        text = buf.getvalue()
    else:
        text = (" + ".join("(%s)*[%s]" % (t["text"], t["index"]) for t in res["terms"]) or "0") + "\n"
    sys.stdout.write(text)
    return EXIT_OK, prod


def _render_matrix(res, fmt, key):
    if fmt == "json":
        return _dumps(res)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "col", "value"])
        for i, j, x in res[key]:
            w.writerow([res["indices"][i], res["indices"][j], x])
        return buf.getvalue()
    n = len(res["indices"])
    M = [["0"] * n for _ in range(n)]
    for i, j, x in res[key]:
        M[i][j] = x
    lines = ["[%s]" % c for c in res["indices"]]
    lines += ["  " + " | ".join(row) for row in M]
    return "\n".join(lines) + "\n"


def cmd_gram(d, fmt="json"):
    idx, G = sf.pbw_gram(d)
    res = {"dim": list(d), "indices": [_label(c) for c in idx], "gram": _sparse_str(G)}
    sys.stdout.write(_render_matrix(res, fmt, "gram"))
    return EXIT_OK, (idx, G)


def cmd_canonical_prime(d, fmt="json"):
    elems, data = sf.canonical_prime(d, return_data=True)
    idx = data["indices"]
    G = sf.gram_of(elems)
    res = {
        "dim": list(d),
        "indices": [_label(c) for c in idx],
        "canonical": [{"index": _label(c), "pbw": _terms(e)} for c, e in zip(idx, elems)],
        "gram": _sparse_str(G),
    }
    if fmt == "json":
        text = _dumps(res)
    else:
        text = _render_matrix(res, fmt, "gram")
    sys.stdout.write(text)
    return EXIT_OK, elems


# -- argument parsing -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(EXIT_USAGE)


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", dest="fmt", default="json", choices=["json", "csv", "pretty"])
    p.add_argument("--cache-dir", default=None, help="JSON result cache (default: $HALLBASE_CACHE)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="write artifacts into this directory")
    p.add_argument("--budget", type=int, default=ffo.DEFAULT_BUDGET)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser():
    common = _common()
    p = _Parser(prog="hallbase", description="Canonical bases of Hall algebras for the Kronecker quiver and tubes.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for quiver in ("kronecker", "tube"):
        qp = sub.add_parser(quiver, help="%s quiver jobs" % quiver)
        qsub = qp.add_subparsers(dest="action", required=True, parser_class=_Parser)
        c = qsub.add_parser("canonical", parents=[common], help="canonical basis at given weights")
        c.add_argument("--dim", action="append", default=[], help="dimension vector, repeatable")
        if quiver == "tube":
            c.add_argument("--rank", type=int, required=True)
            c.add_argument("--total", type=int, default=None, help="all weights of this total dimension")
        else:
            c.add_argument("--total", type=int, default=None, help="all weights with d1+d2 <= TOTAL")
        c.add_argument("--emit-transitions", action="store_true")

    v = sub.add_parser("verify", parents=[common], help="oracle checks over finite fields")
    v.add_argument("--q", default="2,3")
    v.add_argument("--max-dim", default="3,3")
    v.add_argument("--relations", default=None, help="comma list of relation ids, or 'none'")

    m = sub.add_parser("multiply", parents=[common], help="product of two elements")
    m.add_argument("--lhs", required=True)
    m.add_argument("--rhs", required=True)

    g = sub.add_parser("gram", parents=[common], help="PBW Gram block")
    g.add_argument("--dim", required=True)

    cp = sub.add_parser("canonical-prime", parents=[common], help="almost orthonormal canonical basis")
    cp.add_argument("--dim", required=True)
    return p


def _config(args):
    cfg = JobConfig(fmt=args.fmt, cache_dir=args.cache_dir, jobs=args.jobs, out=args.out, budget=args.budget)
    if args.command in ("kronecker", "tube"):
        cfg.quiver = args.command
        cfg.emit_transitions = args.emit_transitions
        cfg.rank = getattr(args, "rank", None)
        dims = [_parse_vec(d) for d in args.dim]
        if args.total is not None:
            if args.command == "kronecker":
                dims += [(a, t - a) for t in range(args.total + 1) for a in range(t + 1)]
            else:
                dims += list(ta.dim_vectors(cfg.rank, args.total))
        seen, cfg.dims = set(), []
        for d in dims:
            if d not in seen:
                seen.add(d)
                cfg.dims.append(d)
    elif args.command == "verify":
        cfg.qs = list(_parse_vec(args.q, "field list"))
        cfg.max_dim = _parse_vec(args.max_dim)
        if len(cfg.max_dim) != 2:
            raise ConfigError("--max-dim takes two entries")
        if args.relations is not None:
            r = args.relations.strip()
            cfg.relations = [] if r == "none" else [x.strip() for x in r.split(",") if x.strip()]
    return cfg.validate()


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        if args.command in ("kronecker", "tube"):
            code, _ = cmd_canonical(cfg)
        elif args.command == "verify":
            code, _ = cmd_verify(cfg)
        elif args.command == "multiply":
            code, _ = cmd_multiply(args.lhs, args.rhs, cfg.fmt)
        elif args.command == "gram":
            d = _parse_vec(args.dim)
            if len(d) != 2:
                raise ConfigError("--dim takes two entries")
            code, _ = cmd_gram(d, cfg.fmt)
        else:
            d = _parse_vec(args.dim)
            if len(d) != 2:
                raise ConfigError("--dim takes two entries")
            code, _ = cmd_canonical_prime(d, cfg.fmt)
    except (ConfigError, ParseError) as e:
        sys.stderr.write("hallbase: %s\n" % e)
        return EXIT_USAGE
    except ffo.BudgetExceeded as e:
        sys.stderr.write("hallbase: budget exceeded: %s\n" % (e,))
        return EXIT_BUDGET
    except (bc.TriangularityError, ArithmeticError, ffo.OracleError) as e:
        sys.stderr.write("hallbase: invariant violation: %s\n" % e)
        return EXIT_INVARIANT
    return code


if __name__ == "__main__":
    sys.exit(main())
