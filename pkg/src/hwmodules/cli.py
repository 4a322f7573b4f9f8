"""Command-line interface: ``python -m hwmodules <command> ...``.

Exit codes: 0 on success, 1 when a computation fails (budget exceeded,
algebra mismatch, failed check), 2 on flag or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from fractions import Fraction

from . import algorithms as alg
from .checks import DEFAULT_SEED, SUITES, run_suite
from .enveloping import format_monomial
from .errors import BudgetExceeded, ConsistencyError, DomainError, HwError, SpecMismatchError, ValidationError
from .liealg import AlgebraElement, FiniteDim, Heisenberg, HigherRankVirasoro, algebra_by_name, bracket
from .modules import HighestWeight, adjoint_module, defining_module, heisenberg_module_new, k0_new, sl2_irrep, verma_new
from .scalars import format_rational, parse_rational

ALGEBRAS = ["virasoro", "hv", "heisenberg", "virg", "sl2", "sl3"]
FORMATS = ["text", "json", "csv"]


class UsageError(Exception):
    """Bad flags or unparsable input; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--config", help="file of key = value lines (same keys as the flags)")
    return p


def _positive(minimum):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be at least {minimum}")
        return v

    return conv


def _module_flags(p, default_algebra):
    p.add_argument("--algebra", choices=ALGEBRAS, default=default_algebra)
    p.add_argument("--hw", nargs="+", default=[], metavar="SYM=VALUE",
                   help="highest weight values; unspecified Cartan symbols are 0")
    p.add_argument("--tail", type=_positive(1), default=2, help="tail default of V_e (heisenberg)")
    p.add_argument("--except", dest="exceptions", nargs="+", default=[], metavar="I=VALUE",
                   help="tail exceptions of V_e")
    p.add_argument("--module", choices=["adjoint", "defining", "irrep"], default="adjoint",
                   help="finite-dimensional module (sl2, sl3)")
    p.add_argument("--dim", type=_positive(1), default=2, help="dimension of the sl2 irrep")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="hwmodules", description="Exact computations in highest-weight representation theory.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bracket", parents=[common], help="Lie bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--algebra", choices=ALGEBRAS, default="virasoro")

    p = sub.add_parser("gram", parents=[common], help="Shapovalov Gram matrix of a Verma module")
    p.add_argument("--algebra", choices=["virasoro", "hv"], default="virasoro")
    p.add_argument("--hw", nargs="+", default=[], metavar="SYM=VALUE")
    p.add_argument("--level", type=_positive(0), required=True)

    p = sub.add_parser("singvec", parents=[common], help="extract a singular vector from a start vector")
    _module_flags(p, "virasoro")
    p.add_argument("--start", required=True, help="start vector, text or JSON")
    p.add_argument("--probe", type=_positive(2), default=alg.DEFAULT_PROBE)
    p.add_argument("--cap", type=_positive(1), default=alg.DEFAULT_CAP)

    p = sub.add_parser("nilpotency", parents=[common], help="nilpotency index of a generator on a vector")
    _module_flags(p, "heisenberg")
    p.add_argument("--gen", required=True)
    p.add_argument("--start", required=True)
    p.add_argument("--cap", type=_positive(1), default=alg.DEFAULT_CAP)

    p = sub.add_parser("heis", parents=[common], help="simplicity witness or highest weight probe on V_e")
    p.add_argument("--tail", type=_positive(1), default=2)
    p.add_argument("--except", dest="exceptions", nargs="+", default=[], metavar="I=VALUE")
    p.add_argument("--witness", help="vector to reduce to a single basis vector")
    p.add_argument("--probe-region", action="store_true", help="search a finite region for a highest weight vector")
    p.add_argument("--max-entry", type=_positive(1), default=3)
    p.add_argument("--horizon", type=_positive(0), default=4)
    p.add_argument("--probe", type=_positive(1), default=5)

    p = sub.add_parser("virg", parents=[common], help="small weights of K(0) over Z+Z*sqrt2")
    p.add_argument("--depth", type=_positive(1), required=True)
    p.add_argument("--threshold", required=True, help="positive rational bound on |weight|")
    p.add_argument("--box", type=_positive(1), default=3)
    p.add_argument("--probe-region", action="store_true", help="also run the highest weight probe")
    p.add_argument("--probe-box", type=_positive(1), default=7)

    p = sub.add_parser("check", parents=[common], help="run a named property suite")
    p.add_argument("--suite", choices=["all", "fixtures", *SUITES], default="all")
    p.add_argument("--scale", type=float, default=1.0, help="multiplier on the number of random cases")
    return top


# --------------------------------------------------------------------------
# config handling


def _read_config(path) -> list:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    tokens = []
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("_", "-")
        if not sep or not key:
            raise UsageError(f"{path}:{n}: expected key = value")
        if key == "config":
            raise UsageError(f"{path}:{n}: nested config files are not supported")
        value = value.strip()
        if value.lower() in ("true", "yes", "on"):
            tokens.append(f"--{key}")
        elif value.lower() in ("false", "no", "off"):
            continue
        else:
            tokens += [f"--{key}", *shlex.split(value)]
    return tokens


def expand_config(argv: list) -> list:
    """Splice config tokens in right after the subcommand so explicit flags win."""
    argv = list(argv)
    path = None
    for k, tok in enumerate(argv):
        if tok == "--config":
            if k + 1 >= len(argv):
                raise UsageError("--config needs a path")
            path = argv[k + 1]
            del argv[k:k + 2]
            break
        if tok.startswith("--config="):
            path = tok.split("=", 1)[1]
            del argv[k]
            break
    if path is None or not argv:
        return argv
    return argv[:1] + _read_config(path) + argv[1:]


# --------------------------------------------------------------------------
# builders


def _assignments(tokens, what):
    out = []
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise UsageError(f"{what} entries look like KEY=VALUE, got {tok!r}")
        out.append((key.strip(), value.strip()))
    return out


def parse_hw(spec, tokens) -> HighestWeight:
    from .liealg import _coef_parser

    coef = _coef_parser(spec)
    values = {s: spec.zero for s in spec.cartan_basis()}
    for key, value in _assignments(tokens, "--hw"):
        try:
            s = spec.parse_symbol(key)
            values[s] = coef(value)
        except ValueError as exc:
            raise UsageError(f"--hw {key}={value}: {exc}") from None
        if s not in spec.cartan_basis():
            raise UsageError(f"--hw {key}: not a Cartan symbol of {spec.tag}")
    return HighestWeight(spec, values)


def _exceptions(tokens):
    out = {}
    for key, value in _assignments(tokens, "--except"):
        try:
            out[int(key)] = int(value)
        except ValueError:
            raise UsageError(f"--except {key}={value}: positions and values are integers") from None
    return out


def build_module(args):
    spec = algebra_by_name(args.algebra)
    if isinstance(spec, Heisenberg):
        return heisenberg_module_new(args.tail, _exceptions(args.exceptions))
    if isinstance(spec, HigherRankVirasoro):
        return k0_new()
    if isinstance(spec, FiniteDim):
        if args.module == "adjoint":
            return adjoint_module(spec)
        if args.module == "defining":
            return defining_module(spec)
        if spec.name != "sl2":
            raise UsageError("--module irrep is available for sl2 only")
        return sl2_irrep(args.dim - 1, spec)
    return verma_new(spec, parse_hw(spec, args.hw))


def _parse_vector(module, text, flag):
    try:
        return module.parse_vector(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


# --------------------------------------------------------------------------
# output helpers


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _vector_rows(v):
    return [["index", "coefficient"]] + [[v.host.format_index(i), str(c)] for i, c in v.sorted_items()]


# --------------------------------------------------------------------------
# commands


def cmd_bracket(args):
    spec = algebra_by_name(args.algebra)
    try:
        x = AlgebraElement.parse(spec, args.x)
        y = AlgebraElement.parse(spec, args.y)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    z = bracket(x, y, spec)
    if args.format == "json":
        return 0, _json({"algebra": getattr(spec, "name", spec.tag), "x": str(x), "y": str(y), "bracket": str(z),
                         "terms": {spec.format_symbol(s): str(c) for s, c in z.sorted_items()}})
    if args.format == "csv":
        return 0, _csv([["symbol", "coefficient"]] + [[spec.format_symbol(s), str(c)] for s, c in z.sorted_items()])
    return 0, f"{z}\n"


def cmd_gram(args):
    spec = algebra_by_name(args.algebra)
    m = verma_new(spec, parse_hw(spec, args.hw))
    g = alg.shapovalov_gram(m, args.level)
    det = alg.gram_determinant(g)
    if args.format == "csv":
        return 0, g.to_csv()
    if args.format == "json":
        obj = {"algebra": spec.tag, "hw": {spec.format_symbol(s): str(c) for s, c in m.hw.values.items()}}
        obj.update(g.to_json_obj())
        obj["determinant"] = str(det)
        obj["symmetric"] = g.is_symmetric()
        return 0, _json(obj)
    lines = [f"level {g.level}, size {g.size}, hw {m.hw}", "basis: " + ", ".join(g.labels())]
    lines += ["  ".join(str(x) for x in row) for row in g.entries]
    lines.append(f"determinant: {det}")
    return 0, "\n".join(lines) + "\n"


def cmd_singvec(args):
    m = build_module(args)
    start = _parse_vector(m, args.start, "--start")
    if isinstance(m.spec, FiniteDim):
        res = alg.extract_singular_fd(start)
    elif args.algebra == "virasoro":
        res = alg.extract_singular_virasoro(start, args.probe, args.cap)
    elif args.algebra == "hv":
        res = alg.extract_singular_hv(start, args.probe, args.cap)
    else:
        raise SpecMismatchError(f"singular vector extraction is not defined for {args.algebra}")
    if args.format == "json":
        return 0, _json(res.to_json_obj())
    if args.format == "csv":
        return 0, _csv(_vector_rows(res.vector))
    spec = m.spec
    stages = ", ".join(f"{spec.format_symbol(s)}^{k}" for s, k in res.stages)
    gens = " ".join(spec.format_symbol(s) for s in res.verified_generators)
    return 0, f"{res.vector}\nstages: {stages}\nannihilated by: {gens}\nbudget used: {res.budget_used}\n"


def cmd_nilpotency(args):
    m = build_module(args)
    try:
        s = m.spec.parse_symbol(args.gen)
    except ValueError as exc:
        raise UsageError(f"--gen: {exc}") from None
    rep = alg.nilpotency_index(s, _parse_vector(m, args.start, "--start"), args.cap)
    code = 1 if rep.exceeded else 0
    if args.format == "json":
        return code, _json(rep.to_json_obj())
    if args.format == "csv":
        return code, _csv([["power", "terms"]] + [[k, n] for k, n in enumerate(rep.trail)])
    if rep.exceeded:
        return code, f"exceeded: {args.gen}^{rep.cap} is still nonzero\n"
    return code, f"{rep.index}\n"


def cmd_heis(args):
    m = heisenberg_module_new(args.tail, _exceptions(args.exceptions))
    if args.witness is None and not args.probe_region:
        raise UsageError("heis needs --witness VECTOR or --probe-region")
    out_obj, text, rows = {"tail": str(m.tail)}, [], []
    if args.witness is not None:
        cert = alg.simplicity_witness(_parse_vector(m, args.witness, "--witness"))
        ok = alg.replay_certificate(cert)
        if not ok:
            raise ConsistencyError("certificate failed replay")
        out_obj["certificate"] = cert.to_json_obj()
        text += [f"start: {cert.start}"]
        text += [f"z{i}^{k}: {n} terms" for i, k, n in cert.steps]
        text += [f"terminal: {cert.terminal_coefficient}*{cert.terminal}", "replay: ok"]
        rows += [["position", "power", "terms"]] + [[i, k, n] for i, k, n in cert.steps]
    if args.probe_region:
        region = alg.heisenberg_region(m, args.max_entry, args.horizon)
        found = alg.highest_weight_probe(m, region, Heisenberg().positive_generators(args.probe))
        out_obj["probe"] = {"region_size": len(region), "found": None if found is None else found.to_json_obj()}
        text.append(f"probe over {len(region)} basis vectors: {'none' if found is None else found}")
        rows += [["region_size", "found"], [len(region), "" if found is None else str(found)]]
    if args.format == "json":
        return 0, _json(out_obj)
    if args.format == "csv":
        return 0, _csv(rows)
    return 0, "\n".join(text) + "\n"


def cmd_virg(args):
    try:
        q = parse_rational(args.threshold)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--threshold: not a rational number: {args.threshold!r}") from None
    if q <= 0:
        raise UsageError("--threshold must be positive")
    m = k0_new()
    found = [(mu, format_monomial(w, m.spec)) for mu, w in
             alg.small_support_explorer(m, args.depth, Fraction(q), args.box)]
    probe = None
    if args.probe_region:
        res = alg.highest_weight_probe(m, alg.k0_region(m, args.depth, args.box), alg.k0_probe_generators(m, args.probe_box))
        probe = "none" if res is None else str(res)
    if args.format == "json":
        obj = {"depth": args.depth, "threshold": format_rational(q), "box": args.box,
               "weights": [{"weight": str(mu), "witness": w} for mu, w in found]}
        if probe is not None:
            obj["probe"] = probe
        return 0, _json(obj)
    if args.format == "csv":
        return 0, _csv([["weight", "witness"]] + [[str(mu), w] for mu, w in found])
    lines = [f"{len(found)} weights with 0 < |mu| < {format_rational(q)} (depth {args.depth}, box {args.box})"]
    lines += [f"{mu}  {w}" for mu, w in found]
    if probe is not None:
        lines.append(f"highest weight probe: {probe}")
    return 0, "\n".join(lines) + "\n"


def _fixture_results():
    from . import fixtures
    from .checks import CheckResult

    out = []
    for cmp in fixtures.compare_all():
        out.append(CheckResult("fixtures", cmp.path.parent.name + "/" + cmp.path.stem, cmp.passed, cmp.describe()))
    # determinism: a second render of every corpus argv is byte-identical
    for cmd, name, argv in fixtures.CORPUS:
        a, b = fixtures.render(argv), fixtures.render(argv)
        out.append(CheckResult("fixtures", f"determinism/{cmd}/{name}", a == b, "identical reruns" if a == b else "outputs differ"))
    return out


def cmd_check(args):
    if args.suite == "fixtures":
        results = _fixture_results()
    else:
        results = run_suite(args.suite, args.seed, args.scale)
        if args.suite == "all":
            results += _fixture_results()
    failed = sum(not r.passed for r in results)
    code = 1 if failed else 0
    if args.format == "json":
        return code, _json({"seed": args.seed, "passed": len(results) - failed, "failed": failed,
                            "results": [{"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail}
                                        for r in results]})
    if args.format == "csv":
        return code, _csv([["suite", "name", "passed", "detail"]]
                          + [[r.suite, r.name, r.passed, r.detail] for r in results])
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - failed} passed, {failed} failed (seed {args.seed})")
    return code, "\n".join(lines) + "\n"


COMMANDS = {
    "bracket": cmd_bracket,
    "gram": cmd_gram,
    "singvec": cmd_singvec,
    "nilpotency": cmd_nilpotency,
    "heis": cmd_heis,
    "virg": cmd_virg,
    "check": cmd_check,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(expand_config(argv))
        code, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"exceeded: {exc}", file=stderr)
        return 1
    except (SpecMismatchError, ConsistencyError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except (DomainError, ValidationError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except HwError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    # buffered: nothing reaches stdout unless the command finished
    stdout.write(text)
    return code


def main() -> None:  # pragma: no cover
    sys.exit(run())
