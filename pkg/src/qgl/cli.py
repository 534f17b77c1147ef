"""Command-line front end.

Every subcommand prints a single JSON document (or a plain-text rendering
with --emit text) and exits 0 on success, 2 on a syntax/usage error, 3 on
a domain error, and 4 when the self-test battery fails.  Identical
arguments, seed, and configuration produce byte-identical output.
"""

import argparse
import json
import random
import sys

from . import relations, repmod, rootofunity
from .braid import braid_t, braid_t_inv
from .errors import DomainError, ExprSyntaxError
from .expr import ast_to_json, element_to_json, parse, parse_element, print_canonical
from .hopf import Hopf
from .pbwcore import Algebra, Element
from .rootdata import (
    Shape,
    frobenius_decompose,
    is_typical,
    p_factor,
    weight_to_z,
)
from .scalars import RF_ONE


def _parse_ints(text, what):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ExprSyntaxError("%s must be comma-separated integers, got %r" % (what, text), 0)


def _load_config(path):
    cfg = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ExprSyntaxError("bad config line: %r" % line, 0)
            key, _, val = line.partition("=")
            cfg[key.strip()] = val.strip()
    allowed = {"shape", "truncation_depth", "seed", "max_degree"}
    bad = set(cfg) - allowed
    if bad:
        raise ExprSyntaxError("unknown config keys: %s" % ", ".join(sorted(bad)), 0)
    return cfg


def _emit(args, payload, text_fn=None):
    payload = {"schema": 1, **payload}
    if args.emit == "text" and text_fn is not None:
        sys.stdout.write(text_fn() + "\n")
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return 0


def _element_payload(elt):
    return {"element": element_to_json(elt)}


def _character_json(char):
    return [
        {"z": list(z), "mult": mult} for z, mult in sorted(char.items())
    ]


def _tensor_json(te):
    out = []
    for (a, b), coeff in te.sorted_terms():
        ea = element_to_json(Element(te.alg, {a: RF_ONE}))
        eb = element_to_json(Element(te.alg, {b: RF_ONE}))
        out.append(
            {
                "coeff": coeff.render(),
                "left": ea["terms"][0],
                "right": eb["terms"][0],
            }
        )
    return out


# -- subcommand handlers -----------------------------------------------------


def _cmd_nf(args, alg):
    elt = parse_element(args.expr, alg)
    if args.emit_ast:
        return _emit(args, {"ast": ast_to_json(parse(args.expr, alg.shape))})
    return _emit(args, _element_payload(elt), lambda: print_canonical(elt))


def _cmd_mul(args, alg):
    a = parse_element(args.expr1, alg)
    b = parse_element(args.expr2, alg)
    out = a * b
    return _emit(args, _element_payload(out), lambda: print_canonical(out))


def _cmd_delta(args, alg):
    te = Hopf(alg).delta(parse_element(args.expr, alg))
    return _emit(args, {"tensor_terms": _tensor_json(te)})


def _cmd_antipode(args, alg):
    out = Hopf(alg).antipode(parse_element(args.expr, alg))
    return _emit(args, _element_payload(out), lambda: print_canonical(out))


def _cmd_counit(args, alg):
    val = Hopf(alg).counit(parse_element(args.expr, alg))
    return _emit(args, {"counit": val.render()}, lambda: val.render())


def _cmd_omega(args, alg):
    out = parse_element(args.expr, alg).omega()
    return _emit(args, _element_payload(out), lambda: print_canonical(out))


def _cmd_braid(args, alg):
    op = braid_t_inv if args.inverse else braid_t
    out = op(alg, args.node, parse_element(args.expr, alg))
    return _emit(args, _element_payload(out), lambda: print_canonical(out))


def _cmd_typical(args, alg):
    lam = _parse_ints(args.lam, "--lambda")
    return _emit(
        args,
        {"typical": is_typical(alg.shape, lam), "P": p_factor(alg.shape, lam)},
    )


def _cmd_kac(args, alg):
    lam = _parse_ints(args.lam, "--lambda")
    mod = repmod.kac_module(alg, lam, depth=args.truncation_depth)
    return _emit(
        args,
        {
            "dim": mod.dim,
            "dim_even": mod.dim // (2 ** (alg.shape.m * alg.shape.n)),
            "character": _character_json(mod.character()),
        },
    )


def _cmd_simple(args, alg):
    lam = _parse_ints(args.lam, "--lambda")
    if args.at_root is None:
        mod = repmod.simple_head(repmod.kac_module(alg, lam, depth=args.truncation_depth))
    else:
        z = weight_to_z(alg.shape, lam)
        mod = rootofunity.simple_at_root(alg, z, args.at_root)
    return _emit(
        args,
        {"dim": mod.dim, "character": _character_json(mod.character())},
    )


def _cmd_char(args, alg):
    lam = _parse_ints(args.lam, "--lambda")
    if args.module == "kac":
        mod = repmod.kac_module(alg, lam, depth=args.truncation_depth)
    elif args.at_root is not None:
        mod = rootofunity.simple_at_root(alg, weight_to_z(alg.shape, lam), args.at_root)
    else:
        mod = repmod.simple_head(repmod.kac_module(alg, lam, depth=args.truncation_depth))
    return _emit(args, {"character": _character_json(mod.character())})


def _cmd_tensor(args, alg):
    builders = {
        "kac": lambda lam: repmod.kac_module(alg, lam, depth=args.truncation_depth),
        "simple": lambda lam: repmod.simple_head(
            repmod.kac_module(alg, lam, depth=args.truncation_depth)
        ),
    }
    build = builders[args.module]
    m1 = build(_parse_ints(args.lam1, "--lambda1"))
    m2 = build(_parse_ints(args.lam2, "--lambda2"))
    t = repmod.tensor_module(m1, m2)
    return _emit(
        args,
        {"dim": t.dim, "character": _character_json(t.character())},
    )


def _cmd_specialize(args, alg):
    elt = parse_element(args.expr, alg)
    coords = rootofunity.specialize_element(alg, elt, args.l)
    terms = []
    for (fd, fpsi, deltas, ts, epsi, ed), val in sorted(coords.items()):
        terms.append(
            {
                "fd": list(fd),
                "fpsi": list(fpsi),
                "k_delta": list(deltas),
                "k_bracket": list(ts),
                "epsi": list(epsi),
                "ed": list(ed),
                "coeff": val.render(),
            }
        )
    return _emit(args, {"l": args.l, "terms": terms})


def _cmd_smallgroup(args, alg):
    counts = rootofunity.small_group_counts(alg.shape, args.l)
    return _emit(args, {"l": args.l, "counts": counts})


def _cmd_classical_check(args, alg):
    results = rootofunity.classical_limit_check(alg)
    return _emit(
        args,
        {
            "checks": [{"name": name, "ok": ok} for name, ok in results],
            "all_ok": all(ok for _, ok in results),
        },
    )


def _cmd_decompose_z(args, alg):
    z = _parse_ints(args.z, "--z")
    zp, zpp = frobenius_decompose(alg.shape, z, args.l)
    return _emit(
        args,
        {"z": list(z), "l": args.l, "z_restricted": list(zp), "z_frobenius": list(zpp)},
    )


def _cmd_selftest(args, alg):
    rng = random.Random(args.seed)
    trials = args.trials
    passed, failed, details = 0, 0, []

    def record(name, ok):
        nonlocal passed, failed
        if ok:
            passed += 1
        else:
            failed += 1
            details.append(name)

    for name, el in relations.all_relations(alg):
        record("relation:%s" % name, el.is_zero())

    gens = [
        alg.gen(kind, i, j)
        for kind in ("E", "F")
        for (i, j) in list(alg.shape.I0) + list(alg.shape.I1)
    ]
    mu = [0] * alg.shape.rank
    mu[0] = 1
    gens.append(alg.k_mono(tuple(mu)))
    for t in range(trials):
        a, b, c = (rng.choice(gens) for _ in range(3))
        record("assoc:%d" % t, (a * b) * c == a * (b * c))
    for t in range(trials):
        x = rng.choice(gens) * rng.choice(gens)
        if x.is_zero():
            record("roundtrip:%d" % t, True)
            continue
        record("roundtrip:%d" % t, parse_element(print_canonical(x), alg) == x)
    _emit(
        args,
        {
            "seed": args.seed,
            "trials": trials,
            "passed": passed,
            "failed": failed,
            "failures": details,
        },
    )
    return 0 if failed == 0 else 4


# -- argument wiring ---------------------------------------------------------


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--shape", help="m,n block sizes (required)")
    common.add_argument("--emit", choices=["json", "text"], default="json")
    common.add_argument("--config", help="flat key=value config file")

    p = argparse.ArgumentParser(prog="qgl", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, handler, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(handler=handler)
        return sp

    sp = add("nf", _cmd_nf, help="straighten an expression to normal form")
    sp.add_argument("expr")
    sp.add_argument("--emit-ast", action="store_true", help="emit the parse tree instead")
    sp = add("mul", _cmd_mul, help="multiply two expressions")
    sp.add_argument("expr1")
    sp.add_argument("expr2")
    for name, handler in (
        ("delta", _cmd_delta),
        ("antipode", _cmd_antipode),
        ("counit", _cmd_counit),
        ("omega", _cmd_omega),
    ):
        sp = add(name, handler, help="apply %s to an expression" % name)
        sp.add_argument("expr")
    sp = add("braid", _cmd_braid, help="apply a braid operator")
    sp.add_argument("expr")
    sp.add_argument("-i", "--node", type=int, required=True)
    sp.add_argument("--inverse", action="store_true")
    sp = add("typical", _cmd_typical, help="typicality of a weight")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp = add("kac", _cmd_kac, help="Kac module data")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp = add("simple", _cmd_simple, help="simple highest-weight module data")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--at-root", type=int)
    sp = add("char", _cmd_char, help="character of a module")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--module", choices=["kac", "simple"], default="simple")
    sp.add_argument("--at-root", type=int)
    sp = add("tensor", _cmd_tensor, help="tensor product character")
    sp.add_argument("--lambda1", dest="lam1", required=True)
    sp.add_argument("--lambda2", dest="lam2", required=True)
    sp.add_argument("--module", choices=["kac", "simple"], default="kac")
    sp = add("specialize", _cmd_specialize, help="integral coordinates at a root of unity")
    sp.add_argument("expr")
    sp.add_argument("-l", type=int, required=True)
    sp = add("smallgroup", _cmd_smallgroup, help="small quantum group dimensions")
    sp.add_argument("--counts", action="store_true")
    sp.add_argument("-l", type=int, required=True)
    add("classical-check", _cmd_classical_check, help="q -> 1 Serre presentation check")
    sp = add("decompose-z", _cmd_decompose_z, help="restricted/Frobenius weight split")
    sp.add_argument("--z", required=True)
    sp.add_argument("--l", type=int, required=True)
    sp = add("selftest", _cmd_selftest, help="deterministic self-test battery")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=50)
    return p


def run(argv):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        cfg = _load_config(args.config) if args.config else {}
        shape_text = args.shape or cfg.get("shape")
        if not shape_text:
            raise ExprSyntaxError("--shape m,n is required (flag or config)", 0)
        mn = _parse_ints(shape_text, "--shape")
        if len(mn) != 2:
            raise ExprSyntaxError("--shape needs exactly two integers", 0)
        args.truncation_depth = (
            int(cfg["truncation_depth"]) if "truncation_depth" in cfg else None
        )
        if "seed" in cfg and getattr(args, "seed", None) in (None, 0):
            args.seed = int(cfg["seed"])
        alg = Algebra(Shape(*mn))
        if not hasattr(args, "emit_ast"):
            args.emit_ast = False
        return args.handler(args, alg)
    except ExprSyntaxError as e:
        sys.stderr.write("syntax error at offset %d: %s\n" % (e.offset, e.args[0]))
        return 2
    except DomainError as e:
        sys.stderr.write("domain error: %s\n" % (e,))
        return 3


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
