"""Command-line front end: JSON in, JSON out, deterministic given a seed.

Exit codes: 0 success, 1 parse error, 2 precondition violation (the error
object carries the module error name), 3 property failure (with witness).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import jsonio
from .algebra import (DEFAULT_TOL, ToleranceConfig, make_algebra)
from .division import divide, douglas_lambda, left_divide, polar, pseudoinverse, seq_quotient
from .errors import VnalgError
from .maps import (carrier, choi_blocks, is_completely_positive,
                   is_involutive, is_miu, is_multiplicative, is_subunital,
                   is_unital, min_choi_eigenvalue)
from .measurement import (bracket, check_axioms, is_pure, named_op, seq_product,
                          standard_corner, standard_filter)
from .projections import (ceiling, central_support, floor, join, meet,
                          range_projection, support)
from .sampling import (random_effect, random_element, random_projection)
from .spectral import absolute, functional_calculus, named_function, spectrum, sqrt
from .structure import gelfand_finite, gns, star_subalgebra, wedderburn
from .suite import run_suite
from .tensor import (classical_points, classical_reflection, classical_unit,
                     duplicability_witness, duplicator, is_duplicable,
                     tensor_algebra, tensor_elements)
from .maps import random_cp_map, functional_from_density
from .sampling import random_density


def _tolerance(args) -> ToleranceConfig:
    if args.tol is None:
        return DEFAULT_TOL
    return ToleranceConfig(eps_rel=args.tol, eps_abs=DEFAULT_TOL.eps_abs,
                           snap_eps=max(DEFAULT_TOL.snap_eps, args.tol))


def _read_payload(args):
    if args.infile:
        with open(args.infile, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return jsonio.loads(text)


def _emit(args, obj) -> None:
    text = jsonio.dumps(obj)
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _dims(text: str) -> list[int]:
    return [int(part) for part in text.replace("x", ",").split(",") if part]


def cmd_spectrum(args):
    a = jsonio.element_from_json(_read_payload(args))
    sp = spectrum(a, _tolerance(args))
    _emit(args, {"values": [_complex_pair(v) for v in sp.values],
                 "per_block": [[_complex_pair(v) for v in blk]
                               for blk in sp.per_block]})


def cmd_sqrt(args):
    tol = _tolerance(args)
    a = jsonio.element_from_json(_read_payload(args))
    if args.fname:
        out = functional_calculus(a, named_function(args.fname), tol)
    else:
        out = sqrt(a, tol)
    _emit(args, jsonio.element_to_json(out))


def cmd_abs(args):
    tol = _tolerance(args)
    a = jsonio.element_from_json(_read_payload(args))
    if args.fname:
        out = functional_calculus(a, named_function(args.fname), tol)
    else:
        out = absolute(a, tol)
    _emit(args, jsonio.element_to_json(out))


def _unary_projection_cmd(fn):
    def runner(args):
        a = jsonio.element_from_json(_read_payload(args))
        _emit(args, jsonio.element_to_json(fn(a, _tolerance(args))))
    return runner


def cmd_join(args):
    payload = _read_payload(args)
    ps = [jsonio.element_from_json(e) for e in payload["elements"]]
    _emit(args, jsonio.element_to_json(join(ps, _tolerance(args))))


def cmd_meet(args):
    payload = _read_payload(args)
    ps = [jsonio.element_from_json(e) for e in payload["elements"]]
    _emit(args, jsonio.element_to_json(meet(ps, _tolerance(args))))


def cmd_polar(args):
    a = jsonio.element_from_json(_read_payload(args))
    parts = polar(a, _tolerance(args))
    _emit(args, {"isometry": jsonio.element_to_json(parts.isometry),
                 "modulus": jsonio.element_to_json(parts.modulus)})


def cmd_pinv(args):
    a = jsonio.element_from_json(_read_payload(args))
    _emit(args, jsonio.element_to_json(pseudoinverse(a, _tolerance(args))))


def cmd_divide(args):
    tol = _tolerance(args)
    payload = _read_payload(args)
    a = jsonio.element_from_json(payload["a"])
    b = jsonio.element_from_json(payload["b"])
    if args.left:
        q = left_divide(b, a, tol)
        lam = None
    else:
        q = divide(a, b, tol)
        lam = douglas_lambda(a, b, tol)
    out = {"quotient": jsonio.element_to_json(q)}
    if lam is not None:
        out["lambda"] = lam
    _emit(args, out)


def cmd_seqquot(args):
    tol = _tolerance(args)
    payload = _read_payload(args)
    a = jsonio.element_from_json(payload["a"])
    b = jsonio.element_from_json(payload["b"])
    _emit(args, jsonio.element_to_json(seq_quotient(a, b, tol)))


def cmd_checkmap(args):
    tol = _tolerance(args)
    f = jsonio.map_from_json(_read_payload(args))
    out = {}
    if args.cp or not (args.miu or args.carrier):
        out["cp"] = is_completely_positive(f, tol)
    if args.miu or not (args.cp or args.carrier):
        out["miu"] = is_miu(f, tol)
        out["unital"] = is_unital(f, tol)
        out["subunital"] = is_subunital(f, tol)
        out["involutive"] = is_involutive(f, tol)
        out["multiplicative"] = is_multiplicative(f, tol)
    if args.carrier:
        out["carrier"] = jsonio.element_to_json(carrier(f, tol))
    _emit(args, out)


def cmd_choi(args):
    f = jsonio.map_from_json(_read_payload(args))
    blocks = []
    for cb in choi_blocks(f):
        blocks.append({"domain_block_index": cb.domain_block_index,
                       "matrix": [[_complex_pair(v) for v in row]
                                  for row in cb.matrix]})
    _emit(args, {"blocks": blocks,
                 "min_eigenvalue": min_choi_eigenvalue(f, _tolerance(args))})


def cmd_corner(args):
    tol = _tolerance(args)
    p = jsonio.element_from_json(_read_payload(args))
    f = standard_corner(p, tol)
    _emit(args, {"map": jsonio.map_to_json(f),
                 "floor": jsonio.element_to_json(floor(p, tol))})


def cmd_filter(args):
    tol = _tolerance(args)
    p = jsonio.element_from_json(_read_payload(args))
    f = standard_filter(p, tol)
    _emit(args, {"map": jsonio.map_to_json(f)})


def cmd_bracket(args):
    f = jsonio.map_from_json(_read_payload(args))
    _emit(args, {"map": jsonio.map_to_json(bracket(f, _tolerance(args)))})


def cmd_purity(args):
    f = jsonio.map_from_json(_read_payload(args))
    _emit(args, {"pure": is_pure(f, _tolerance(args))})


def cmd_seqprod(args):
    tol = _tolerance(args)
    payload = _read_payload(args)
    p = jsonio.element_from_json(payload["p"])
    q = jsonio.element_from_json(payload["q"])
    _emit(args, jsonio.element_to_json(seq_product(p, q, tol)))


def _witness_to_json(w):
    if w is None:
        return None
    out = {}
    for key, value in w.items():
        if hasattr(value, "blocks"):
            out[key] = jsonio.element_to_json(value)
        elif isinstance(value, (bool, int, float, str)):
            out[key] = value
        else:
            out[key] = repr(value)
    return out


def cmd_check_axioms(args):
    tol = _tolerance(args)
    algebra = make_algebra(_dims(args.algebra))
    op = named_op(args.op, algebra, tol)
    rep = check_axioms(op, algebra, trials=args.trials, seed=args.seed, tol=tol)
    out = {axiom: {"status": res["status"],
                   "witness": _witness_to_json(res["witness"])}
           for axiom, res in rep.items()}
    _emit(args, out)
    if any(res["status"] == "fail" for res in rep.values()):
        return 3
    return 0


def cmd_tensor(args):
    dims = [_dims(part) for part in args.algebras.split(":")]
    if len(dims) != 2:
        raise ValueError("need exactly two algebras, colon separated")
    ts = tensor_algebra(make_algebra(dims[0]), make_algebra(dims[1]))
    _emit(args, {"product": jsonio.algebra_to_json(ts.product)})


def cmd_tensor_el(args):
    payload = _read_payload(args)
    a = jsonio.element_from_json(payload["left"])
    b = jsonio.element_from_json(payload["right"])
    ts = tensor_algebra(a.algebra, b.algebra)
    _emit(args, jsonio.element_to_json(tensor_elements(ts, a, b)))


def cmd_dup_check(args):
    tol = _tolerance(args)
    algebra = make_algebra(_dims(args.algebra))
    dup = duplicator(algebra, tol)
    out = {"duplicable": is_duplicable(algebra)}
    if dup is not None:
        out["duplicator"] = jsonio.map_to_json(dup)
        out["witness"] = None
    else:
        w = duplicability_witness(algebra, samples=args.samples, seed=args.seed,
                                  tol=tol)
        out["duplicator"] = None
        out["witness"] = jsonio.element_to_json(w)
    _emit(args, out)


def cmd_bang(args):
    algebra = make_algebra(_dims(args.algebra))
    _emit(args, {"points": classical_points(algebra),
                 "bang": jsonio.algebra_to_json(classical_reflection(algebra)),
                 "unit": jsonio.map_to_json(classical_unit(algebra))})


def _subalgebra_from_json(payload, tol):
    ambient = jsonio.algebra_from_json(payload["ambient"])
    basis = [jsonio.element_from_json(e) for e in payload["basis"]]
    return star_subalgebra(ambient, basis, tol)


def cmd_wedderburn(args):
    tol = _tolerance(args)
    sub = _subalgebra_from_json(_read_payload(args), tol)
    res = wedderburn(sub, seed=args.seed, tol=tol)
    _emit(args, {"dims": list(res.dims),
                 "embed": jsonio.map_to_json(res.embed),
                 "min_central_projections": [jsonio.element_to_json(z)
                                             for z in res.min_central_projs]})


def cmd_gelfand(args):
    tol = _tolerance(args)
    sub = _subalgebra_from_json(_read_payload(args), tol)
    points, res = gelfand_finite(sub, seed=args.seed, tol=tol)
    _emit(args, {"points": points, "dims": list(res.dims)})


def cmd_gns(args):
    tol = _tolerance(args)
    if args.state:
        with open(args.state, "r", encoding="utf-8") as fh:
            payload = jsonio.loads(fh.read())
    else:
        payload = _read_payload(args)
    omega = jsonio.map_from_json(payload)
    res = gns(omega, tol)
    _emit(args, {"hilbert_dim": res.hilbert_dim,
                 "rep": jsonio.map_to_json(res.rep),
                 "eta": [[_complex_pair(v) for v in row] for row in res.eta]})


def cmd_verify_suite(args):
    results = run_suite(args.level)
    width = max(len(name) for name, _, _ in results)
    failed = 0
    for name, ok, detail in results:
        status = "pass" if ok else "FAIL"
        sys.stdout.write(f"{name:<{width}}  {status:4}  {detail}\n")
        failed += 0 if ok else 1
    sys.stdout.write(f"{'-' * width}\n{len(results) - failed}/{len(results)} "
                     f"checks passed at level {args.level}\n")
    return 3 if failed else 0


def cmd_gen(args):
    rng = np.random.default_rng(args.seed)
    algebra = make_algebra(_dims(args.algebra))
    out = []
    for _ in range(args.count):
        if args.kind == "effect":
            out.append(jsonio.element_to_json(random_effect(algebra, rng)))
        elif args.kind == "projection":
            out.append(jsonio.element_to_json(random_projection(algebra, rng)))
        elif args.kind == "element":
            out.append(jsonio.element_to_json(random_element(algebra, rng)))
        elif args.kind == "state":
            out.append(jsonio.map_to_json(
                functional_from_density(random_density(algebra, rng))))
        elif args.kind == "cpmap":
            out.append(jsonio.map_to_json(random_cp_map(algebra, algebra, rng)))
        else:
            raise ValueError(f"unknown kind {args.kind!r}")
    _emit(args, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vnalg",
        description="Computations in finite direct sums of matrix algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--in", dest="infile", default=None, metavar="FILE")
        p.add_argument("--out", dest="outfile", default=None, metavar="FILE")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None,
                       help="override the relative tolerance")
        return p

    common(sub.add_parser("spectrum")).set_defaults(fn=cmd_spectrum)
    p = common(sub.add_parser("sqrt"))
    p.add_argument("--f", dest="fname", default=None,
                   help="named function: sqrt, abs, pospart, negpart, pow:A, exp-phase")
    p.set_defaults(fn=cmd_sqrt)
    p = common(sub.add_parser("abs"))
    p.add_argument("--f", dest="fname", default=None)
    p.set_defaults(fn=cmd_abs)

    common(sub.add_parser("ceil")).set_defaults(fn=_unary_projection_cmd(ceiling))
    common(sub.add_parser("floor")).set_defaults(fn=_unary_projection_cmd(floor))
    common(sub.add_parser("support")).set_defaults(fn=_unary_projection_cmd(support))
    common(sub.add_parser("range")).set_defaults(fn=_unary_projection_cmd(range_projection))
    common(sub.add_parser("join")).set_defaults(fn=cmd_join)
    common(sub.add_parser("meet")).set_defaults(fn=cmd_meet)
    common(sub.add_parser("csupport")).set_defaults(
        fn=_unary_projection_cmd(central_support))

    common(sub.add_parser("polar")).set_defaults(fn=cmd_polar)
    common(sub.add_parser("pinv")).set_defaults(fn=cmd_pinv)
    p = common(sub.add_parser("divide"))
    group = p.add_mutually_exclusive_group()
    group.add_argument("--left", action="store_true")
    group.add_argument("--right", action="store_true")
    p.set_defaults(fn=cmd_divide)
    common(sub.add_parser("seqquot")).set_defaults(fn=cmd_seqquot)

    p = common(sub.add_parser("checkmap"))
    p.add_argument("--cp", action="store_true")
    p.add_argument("--miu", action="store_true")
    p.add_argument("--carrier", action="store_true")
    p.set_defaults(fn=cmd_checkmap)
    common(sub.add_parser("choi")).set_defaults(fn=cmd_choi)

    common(sub.add_parser("corner")).set_defaults(fn=cmd_corner)
    common(sub.add_parser("filter")).set_defaults(fn=cmd_filter)
    common(sub.add_parser("bracket")).set_defaults(fn=cmd_bracket)
    common(sub.add_parser("purity")).set_defaults(fn=cmd_purity)
    common(sub.add_parser("seqprod")).set_defaults(fn=cmd_seqprod)

    p = common(sub.add_parser("check-axioms"))
    p.add_argument("--op", required=True,
                   choices=["std", "ceil", "floorsplit", "sign", "phase"])
    p.add_argument("--algebra", required=True,
                   help="comma separated block sizes, e.g. 2,3")
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(fn=cmd_check_axioms)

    p = common(sub.add_parser("tensor"))
    p.add_argument("--algebras", required=True,
                   help="two dims lists separated by a colon, e.g. 2:2,3")
    p.set_defaults(fn=cmd_tensor)
    common(sub.add_parser("tensor-el")).set_defaults(fn=cmd_tensor_el)
    p = common(sub.add_parser("dup-check"))
    p.add_argument("--algebra", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(fn=cmd_dup_check)
    p = common(sub.add_parser("bang"))
    p.add_argument("--algebra", required=True)
    p.set_defaults(fn=cmd_bang)

    p = common(sub.add_parser("wedderburn"))
    p.set_defaults(fn=cmd_wedderburn)
    common(sub.add_parser("gelfand")).set_defaults(fn=cmd_gelfand)
    p = common(sub.add_parser("gns"))
    p.add_argument("--state", default=None, metavar="FILE")
    p.set_defaults(fn=cmd_gns)

    p = common(sub.add_parser("verify-suite"))
    p.add_argument("--level", choices=["smoke", "full"], default="smoke")
    p.set_defaults(fn=cmd_verify_suite)

    p = common(sub.add_parser("gen"))
    p.add_argument("--kind", required=True,
                   choices=["effect", "projection", "element", "state", "cpmap"])
    p.add_argument("--algebra", required=True)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(fn=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.fn(args)
        return int(result or 0)
    except VnalgError as exc:
        sys.stdout.write(jsonio.dumps(
            {"error": exc.name, "message": str(exc)}))
        return 2
    except (json.JSONDecodeError, KeyError, ValueError, OSError) as exc:
        sys.stdout.write(jsonio.dumps(
            {"error": "ParseError", "message": str(exc)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
