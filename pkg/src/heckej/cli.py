"""Command-line entry point.

One executable wires together the whole pipeline: group enumeration,
Kazhdan-Lusztig tables (with an on-disk cache), Hecke products,
structure constants, the a-function with certified truncation, gamma
constants, J-multiplication, distinguished involutions, the map phi
into J tensor A, and the SL(2) convolution oracles.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 certification refusal (a result would be uncertified or an oracle
precondition fails).
"""

from __future__ import annotations

import argparse
import csv as csv_mod
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .asymptotic import JRing, certification_bound
from .errors import (
    BudgetExceeded,
    DepthTooSmall,
    GroupMismatch,
    RadiusExceeded,
    UnsupportedType,
)
from .hecke import BASES, KLTable, hecke_algebra
from .laurent import Laurent, QuadExt
from .weyl import GroupDescriptor, GroupElement, WeylGroup, make_group
from . import sl2

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


class UsageError(Exception):
    pass


class Refusal(Exception):
    pass


# -- parsing helpers -------------------------------------------------------


def descriptor_from_args(ns) -> GroupDescriptor:
    try:
        return GroupDescriptor(ns.type, ns.extended)
    except UnsupportedType as exc:
        raise UsageError(str(exc)) from exc


def parse_element(group: WeylGroup, text: str) -> GroupElement:
    """Generator-index string with optional '@k' omega suffix; '' or 'e'
    is the identity ("010" = s0 s1 s0, "01@1" = s0 s1 followed by omega)."""
    text = text.strip()
    body, _, om_part = text.partition("@")
    try:
        omega = int(om_part) if om_part else 0
    except ValueError as exc:
        raise UsageError(f"bad omega suffix in element {text!r}") from exc
    if body in ("", "e"):
        word: tuple[int, ...] = ()
    else:
        if not body.isdigit():
            raise UsageError(f"element {text!r} must be generator indices like '010'")
        word = tuple(int(ch) for ch in body)
    for s in word:
        if s >= group.rank:
            raise UsageError(f"no generator {s} in type {group.desc.affine_type}")
    try:
        return group.element(word, omega)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_q(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}") from exc
    if q <= 0:
        raise UsageError("q must be positive")
    return q


def quadext_str(x: QuadExt) -> str:
    if x.a1 == 0:
        return str(x.a0)
    return f"{x.a0} + {x.a1}*sqrt({x.q})"


# -- output ----------------------------------------------------------------


def emit(ns, meta: dict, rows: list[dict], stream=None) -> None:
    """Write one result record.  Every record carries certified, radius
    and basis metadata; rows are dicts with identical keys."""
    stream = stream or sys.stdout
    record = dict(meta)
    record["rows"] = rows
    if ns.format == "json":
        print(json.dumps(record, sort_keys=True, default=str), file=stream)
        return
    keys = list(rows[0].keys()) if rows else []
    if ns.format == "csv":
        writer = csv_mod.writer(stream)
        writer.writerow(keys)
        for row in rows:
            writer.writerow([row[k] for k in keys])
        return
    meta_line = " ".join(f"{k}={v}" for k, v in sorted(meta.items()))
    print(f"# {meta_line}", file=stream)
    if not rows:
        return
    table = [[str(row[k]) for k in keys] for row in rows]
    widths = [max(len(keys[i]), max(len(r[i]) for r in table)) for i in range(len(keys))]
    print("  ".join(k.ljust(w) for k, w in zip(keys, widths)), file=stream)
    for r in table:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)), file=stream)


def meta_for(ns, radius: int, certified: bool = True, **extra) -> dict:
    meta = {"certified": certified, "radius": radius, "basis": ns.basis}
    meta.update(extra)
    return meta


# -- KL table cache --------------------------------------------------------


def cache_directory(ns) -> Path:
    if ns.cache_dir:
        return Path(ns.cache_dir)
    env = os.environ.get("HECKEJ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "heckej"


def cached_kl_table(ns, desc: GroupDescriptor, radius: int) -> KLTable:
    """Load or build the KL table for (group, radius).

    Cached entries are never trusted blindly: loading recomputes the
    table and checks every stored polynomial, so warm and cold runs
    produce identical results.
    """
    key = hashlib.sha256(
        json.dumps(desc.to_json(), sort_keys=True).encode()
    ).hexdigest()[:12]
    path = cache_directory(ns) / f"kl_{key}_r{radius}.json"
    if path.is_file():
        with open(path) as fh:
            return KLTable.from_json(json.load(fh))
    table = KLTable(make_group(desc), radius)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        json.dump(table.to_json(), fh, sort_keys=True)
    tmp.replace(path)
    return table


# -- subcommands -----------------------------------------------------------


def cmd_group(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    radius = ns.radius if ns.radius is not None else 3
    rows = []
    for w in g.enumerate_ball(radius):
        rows.append(
            {
                "element": str(w),
                "length": len(w.word),
                "left_descents": "".join(map(str, sorted(g.left_descents(w)))),
                "right_descents": "".join(map(str, sorted(g.right_descents(w)))),
            }
        )
    emit(ns, meta_for(ns, radius), rows)
    return EXIT_OK


def cmd_kl(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    y = parse_element(g, ns.y)
    w = parse_element(g, ns.w)
    radius = ns.radius if ns.radius is not None else len(w.word)
    if radius < len(w.word):
        raise UsageError(f"radius {radius} below len(w) = {len(w.word)}")
    table = cached_kl_table(ns, desc, radius)
    p = table.kl_polynomial(y, w)
    mu = table.mu(y, w)
    rows = [{"y": str(y), "w": str(w), "P": _q_poly_str(p), "mu": mu}]
    emit(ns, meta_for(ns, radius), rows)
    return EXIT_OK


def _q_poly_str(p: Laurent) -> str:
    """Render a polynomial stored on even v-exponents as a polynomial in q."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.items():
        qpow = "1" if e == 0 else ("q" if e == 2 else f"q^{e // 2}")
        parts.append(qpow if c == 1 and e != 0 else (str(c) if e == 0 else f"{c}*{qpow}"))
    return " + ".join(parts)


def _canonical_basis(ns) -> str:
    return "Csigned" if ns.basis == "signed" else "Cprime"


def cmd_hmul(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    x = parse_element(g, ns.x)
    y = parse_element(g, ns.y)
    basis = ns.hecke_basis or _canonical_basis(ns)
    if basis not in BASES:
        raise UsageError(f"basis must be one of {BASES}")
    radius = ns.radius if ns.radius is not None else len(x.word) + len(y.word)
    table = cached_kl_table(ns, desc, radius)
    alg = hecke_algebra(desc)
    hx = alg.basis_element(x, basis)
    hy = alg.basis_element(y, basis)
    prod = alg.multiply(hx, hy, table)
    rows = [
        {"element": str(w), "coefficient": str(c)}
        for w, c in sorted(prod.terms.items(), key=lambda t: t[0].sort_key())
    ]
    emit(ns, meta_for(ns, radius, hecke_basis=basis), rows)
    return EXIT_OK


def cmd_hconst(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    x = parse_element(g, ns.x)
    y = parse_element(g, ns.y)
    radius = ns.radius if ns.radius is not None else len(x.word) + len(y.word)
    table = cached_kl_table(ns, desc, radius)
    from .hecke import StructureConstants

    hmap = StructureConstants(table).h_map(x, y, signed=(ns.basis == "signed"))
    if ns.z is not None:
        z = parse_element(g, ns.z)
        hmap = {z: hmap.get(z, Laurent())}
    rows = [
        {"z": str(z), "h": str(c)}
        for z, c in sorted(hmap.items(), key=lambda t: t[0].sort_key())
    ]
    emit(ns, meta_for(ns, radius), rows)
    return EXIT_OK


def _ring_for(ns, desc: GroupDescriptor, radius: int) -> JRing:
    return JRing(desc, radius)


def cmd_afn(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    z = parse_element(g, ns.z)
    bound = certification_bound(desc, len(z.word))
    scan = ns.scan
    if scan is not None and scan < len(z.word):
        raise UsageError(f"scan {scan} below len(z) = {len(z.word)}")
    ring_radius = len(z.word)
    if scan is not None and scan > bound:
        ring_radius = scan - (bound - len(z.word))
    ring = _ring_for(ns, desc, ring_radius)
    av = ring.a_function(z, scan)
    if not av.certified and not ns.allow_uncertified:
        raise Refusal(
            f"a({z}) at scan radius {av.scan_radius} is a lower bound only "
            f"(certification needs {bound}); pass --allow-uncertified to print it"
        )
    rows = [{"z": str(z), "a": av.value, "scan_radius": av.scan_radius}]
    emit(ns, meta_for(ns, av.scan_radius, certified=av.certified), rows)
    return EXIT_OK


def cmd_gamma(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    x = parse_element(g, ns.x)
    y = parse_element(g, ns.y)
    radius = ns.radius if ns.radius is not None else len(x.word) + len(y.word)
    ring = _ring_for(ns, desc, radius)
    signed = ns.basis == "signed"
    gm = ring.gamma_map(x, y, signed=signed)
    if ns.z is not None:
        z = parse_element(g, ns.z)
        gm = {z: gm.get(z, 0)}
    rows = [
        {"z": str(z), "gamma": c}
        for z, c in sorted(gm.items(), key=lambda t: t[0].sort_key())
    ]
    emit(ns, meta_for(ns, radius), rows)
    return EXIT_OK


def cmd_jmul(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    x = parse_element(g, ns.x)
    y = parse_element(g, ns.y)
    radius = ns.radius if ns.radius is not None else len(x.word) + len(y.word)
    ring = _ring_for(ns, desc, radius)
    prod = ring.j_multiply(ring.t(x), ring.t(y), signed=(ns.basis == "signed"))
    rows = [
        {"z": str(z), "coefficient": c}
        for z, c in sorted(prod.terms.items(), key=lambda t: t[0].sort_key())
    ]
    emit(ns, meta_for(ns, radius), rows)
    return EXIT_OK


def cmd_dinv(ns) -> int:
    desc = descriptor_from_args(ns)
    radius = ns.radius if ns.radius is not None else 2 * desc.finite_longest_length - 1
    ring = _ring_for(ns, desc, radius)
    rows = []
    for d in ring.distinguished_involutions(radius):
        rows.append(
            {"d": str(d), "length": len(d.word), "a": ring.a_function(d).value}
        )
    emit(ns, meta_for(ns, radius), rows)
    return EXIT_OK


def cmd_phi(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    x = parse_element(g, ns.x)
    radius = (
        ns.radius
        if ns.radius is not None
        else len(x.word) + 2 * desc.finite_longest_length - 1
    )
    ring = _ring_for(ns, desc, radius)
    signed = ns.basis == "signed"
    if ns.q is not None:
        q = parse_q(ns.q)
        img = ring.phi_specialized(x, q, signed=signed)
        rows = [
            {"z": str(z), "coefficient": quadext_str(c)}
            for z, c in sorted(img.items(), key=lambda t: t[0].sort_key())
        ]
        emit(ns, meta_for(ns, radius, q=str(q)), rows)
        return EXIT_OK
    img = ring.phi(x, signed=signed)
    rows = [
        {"z": str(z), "coefficient": str(c)}
        for z, c in sorted(img.terms.items(), key=lambda t: t[0].sort_key())
    ]
    emit(ns, meta_for(ns, radius), rows)
    return EXIT_OK


def cmd_phi_check(ns) -> int:
    desc = descriptor_from_args(ns)
    g = make_group(desc)
    max_len = ns.max_len
    radius = max_len + 2 * desc.finite_longest_length - 1
    ring = _ring_for(ns, desc, radius)
    alg = ring.algebra
    signed = ns.basis == "signed"
    basis = _canonical_basis(ns)
    ball = g.enumerate_ball(max_len)
    passes = fails = 0
    counterexamples = []
    for x in ball:
        for y in ball:
            if len(x.word) + len(y.word) > max_len:
                continue
            lhs = ring.jta_multiply(
                ring.phi(x, signed=signed), ring.phi(y, signed=signed), signed=signed
            )
            prod = alg.multiply(
                alg.basis_element(x, basis), alg.basis_element(y, basis), ring.table
            )
            rhs = ring.phi_of_element(prod, signed=signed)
            if lhs == rhs:
                passes += 1
            else:
                fails += 1
                if len(counterexamples) < 10:
                    counterexamples.append({"x": str(x), "y": str(y)})
    rows = counterexamples if fails else []
    emit(ns, meta_for(ns, radius, max_len=max_len), rows)
    print(f"RESULT pass={passes} fail={fails}")
    return EXIT_OK if fails == 0 else EXIT_FAIL


# -- sl2 subcommands -------------------------------------------------------


def _lattice(ns) -> sl2.Lattice:
    return sl2.Lattice(ns.lattice)


def _sl2_meta(ns, **extra) -> dict:
    meta = {"certified": True, "radius": 0, "basis": ns.basis}
    meta.update(extra)
    return meta


def cmd_sl2_gamma(ns) -> int:
    val = sl2.gamma_coefficient(ns.n)
    emit(ns, _sl2_meta(ns), [{"n": ns.n, "gamma": sl2.canonical_str(val)}])
    return EXIT_OK


def cmd_sl2_volume(ns) -> int:
    val = sl2.volume_ratio(ns.n)
    emit(ns, _sl2_meta(ns), [{"n": ns.n, "volume_ratio": sl2.canonical_str(val)}])
    return EXIT_OK


def cmd_sl2_conv(ns) -> int:
    val = sl2.conv_f_value(ns.r, _lattice(ns))
    emit(
        ns,
        _sl2_meta(ns, lattice=ns.lattice),
        [{"r": ns.r, "value": sl2.canonical_str(val)}],
    )
    return EXIT_OK


def cmd_sl2_verify(ns) -> int:
    report = sl2.verify_relations(ns.R)
    fails = [(name, r) for name, r, ok in report if not ok]
    rows = [{"relation": name, "r": r} for name, r in fails[:10]]
    emit(ns, _sl2_meta(ns, R=ns.R), rows)
    print(f"RESULT pass={len(report) - len(fails)} fail={len(fails)}")
    return EXIT_OK if not fails else EXIT_FAIL


def cmd_sl2_count(ns) -> int:
    lat = _lattice(ns)
    frac = sl2.brute_force_count(ns.p, ns.m, ns.n, ns.r, lat)
    cell = sl2.cell_value_from_count(ns.p, ns.m, ns.n, ns.r, lat)
    rows = [
        {
            "p": ns.p,
            "m": ns.m,
            "n": ns.n,
            "r": ns.r,
            "lattice": ns.lattice,
            "fraction": str(frac),
            "cell_value": str(cell),
        }
    ]
    emit(ns, _sl2_meta(ns), rows)
    return EXIT_OK


def cmd_sl2_decay(ns) -> int:
    q = parse_q(ns.q)
    report = sl2.schwartz_decay_check(ns.N, q)
    fails = [(n, w) for n, w, ok in report if not ok]
    rows = [
        {"n": n, "weighted": str(w), "ok": ok} for n, w, ok in report
    ]
    emit(ns, _sl2_meta(ns, q=str(q), N=ns.N), rows)
    print(f"RESULT pass={len(report) - len(fails)} fail={len(fails)}")
    return EXIT_OK if not fails else EXIT_FAIL


# -- argument grammar ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckej",
        description="Exact computations in the asymptotic ring J of an "
        "extended affine Weyl group, and the SL(2) convolution picture.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="A1~", choices=["A1~", "A2~"])
    common.add_argument("--extended", action="store_true")
    common.add_argument("--radius", type=int, default=None)
    common.add_argument("--basis", default="signed", choices=["signed", "unsigned"])
    common.add_argument("--format", default="table", choices=["table", "json", "csv"])
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--allow-uncertified", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="enumerate a ball")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig polynomial")
    p.add_argument("--y", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(func=cmd_kl)

    p = sub.add_parser("hmul", parents=[common], help="Hecke product of basis elements")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--hecke-basis", default=None, choices=list(BASES))
    p.set_defaults(func=cmd_hmul)

    p = sub.add_parser("hconst", parents=[common], help="structure constants h_{x,y,z}")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", default=None)
    p.set_defaults(func=cmd_hconst)

    p = sub.add_parser("afn", parents=[common], help="a-function value")
    p.add_argument("--z", required=True)
    p.add_argument("--scan", type=int, default=None)
    p.set_defaults(func=cmd_afn)

    p = sub.add_parser("gamma", parents=[common], help="gamma constants of J")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", default=None)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("jmul", parents=[common], help="product t_x t_y in J")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.set_defaults(func=cmd_jmul)

    p = sub.add_parser("dinv", parents=[common], help="distinguished involutions")
    p.set_defaults(func=cmd_dinv)

    p = sub.add_parser("phi", parents=[common], help="image of a canonical basis element in J tensor A")
    p.add_argument("--x", required=True)
    p.add_argument("--q", default=None, help="specialize at this exact rational q")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("phi-check", parents=[common], help="verify multiplicativity of phi")
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(func=cmd_phi_check)

    psl2 = sub.add_parser("sl2", help="SL(2) volumes, convolutions, oracles")
    sl2sub = psl2.add_subparsers(dest="sl2_command", required=True)

    p = sl2sub.add_parser("gamma", parents=[common], help="cell coefficient of f")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_sl2_gamma)

    p = sl2sub.add_parser("volume", parents=[common], help="vol(K x_n I)/vol(K)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_sl2_volume)

    p = sl2sub.add_parser("conv", parents=[common], help="(f * chi_lattice)(t^-r)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--lattice", default="std", choices=["std", "sub"])
    p.set_defaults(func=cmd_sl2_conv)

    p = sl2sub.add_parser("verify", parents=[common], help="check the coefficient relations")
    p.add_argument("--R", type=int, default=50)
    p.set_defaults(func=cmd_sl2_verify)

    p = sl2sub.add_parser("count", parents=[common], help="finite-quotient counting oracle")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--lattice", default="std", choices=["std", "sub"])
    p.set_defaults(func=cmd_sl2_count)

    p = sl2sub.add_parser("decay", parents=[common], help="geometric decay of the coefficients")
    p.add_argument("--q", required=True)
    p.add_argument("--N", type=int, default=10)
    p.set_defaults(func=cmd_sl2_decay)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if ns.radius is not None and ns.radius < 0:
        print("error: --radius must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return ns.func(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (RadiusExceeded, DepthTooSmall, BudgetExceeded) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (GroupMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
