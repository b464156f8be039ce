"""``qi``: command-line front end.

Exit codes: 0 on success, 1 when a verification finds a mismatch, 2 on usage
errors (bad flags, unknown pairs, unparsable polynomials, truncation).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from .algebra import ParseError, render
from .catalog import (U3_CHAIN, FilteredSpec, UnknownPair, catalog_list, filtered_from_dict,
                      load_filtered, lookup, validate_pair)
from .descent import maj_generating_function
from .engine import TruncationExceeded
from .hilbert import (closed_form_bcom, closed_form_flag, from_basis, table_csv, table_json)
from .ktheory import NoKTheory, k_filtration_check, k_is_member, k_presentation_check, rep_ring
from .quasi import (DEFAULT_TRUNCATION, VARIANTS, QuasiInvariantSpec, UnsupportedVariant,
                    _family, build_setting, filtered_presentation_dimension, filtration_check,
                    is_member, oracle_series, qm_basis)
from .report import Report

MAX_TRUNCATION = 64
SCHEMA = 1
BUILTIN_SPECS = {"u3-chain": U3_CHAIN}


class UsageError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------

def _parse_m(text) -> tuple:
    if isinstance(text, int):
        return (text,)
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = [p for p in str(text).split(",") if p.strip()]
    try:
        ms = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"--m expects integers, got {text!r}")
    if not ms or any(x < 0 for x in ms):
        raise UsageError("--m components must be non-negative")
    return ms


def _load_chain(ref: str) -> FilteredSpec:
    path = Path(ref)
    if path.is_file():
        try:
            return load_filtered(path)
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad chain spec {ref}: {exc}")
    key = path.stem if path.suffix == ".json" else ref
    if key in BUILTIN_SPECS:
        return filtered_from_dict(BUILTIN_SPECS[key])
    raise UsageError(f"no chain spec {ref!r}")


def _apply_config(args: argparse.Namespace) -> None:
    """Fill unset options from ``--config``; flags given explicitly win."""
    if not getattr(args, "config", None):
        return
    try:
        data = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}")
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    cmd = data.pop("command", None)
    if cmd is not None and cmd != args.command:
        raise UsageError(f"config is for command {cmd!r}, not {args.command!r}")
    for key, value in data.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, attr) in (None, False):
            setattr(args, attr, value)


def _truncation(args) -> int:
    D = DEFAULT_TRUNCATION if args.truncate is None else int(args.truncate)
    if D < 0 or D > MAX_TRUNCATION:
        raise UsageError(f"--truncate must be between 0 and {MAX_TRUNCATION}")
    return D


def _spec(args, default_variant: str = "flag") -> QuasiInvariantSpec:
    variant = args.variant or default_variant
    if variant not in VARIANTS:
        raise UsageError(f"unknown variant {variant!r}")
    ms = _parse_m(0 if args.m is None else args.m)
    if variant == "filtered" or args.spec:
        if not args.spec:
            raise UsageError("the filtered variant needs --spec")
        chain = _load_chain(args.spec)
        if len(ms) != chain.length:
            raise UsageError(f"--m needs {chain.length} components for {chain.name}")
        return QuasiInvariantSpec(None, ms, "filtered", chain, flat=bool(getattr(args, "flat", False)))
    if not args.pair:
        raise UsageError("--pair is required")
    if len(ms) != 1:
        raise UsageError("--m takes a single value for a pair")
    pair = lookup(args.pair)
    try:
        return QuasiInvariantSpec(pair, ms[0], variant)
    except (UnsupportedVariant, ValueError) as exc:
        raise UsageError(str(exc))


def _m_label(spec: QuasiInvariantSpec):
    return list(spec.m) if isinstance(spec.m, tuple) else spec.m


def _closed_form(spec: QuasiInvariantSpec):
    if spec.variant == "flag":
        return closed_form_flag(spec.pair, spec.m)
    if spec.variant == "bcom":
        return closed_form_bcom(spec.pair.n, spec.m, _family(spec.pair))
    return None


def _emit(payload: dict) -> None:
    out = {"schema": SCHEMA}
    out.update(payload)
    print(json.dumps(out, indent=2))


# -- commands -----------------------------------------------------------------

def cmd_catalog(args) -> int:
    pairs = [lookup(args.pair)] if args.pair else catalog_list()
    if args.format == "json":
        _emit({"pairs": [p.to_dict() for p in pairs]})
        return 0
    if args.format == "csv":
        print("name,n,order,degrees,k,theta")
        for p in pairs:
            print(f"{p.name},{p.n},{p.order},{' '.join(map(str, p.degrees))},{p.k},{p.euler_theta}")
        return 0
    for p in pairs:
        degs = ", ".join(map(str, p.degrees))
        print(f"{p.name:<12} |W|={p.order:<5} degrees ({degs})  k={p.k}  theta={p.euler_theta}")
        if args.pair:
            print(validate_pair(p))
    return 0


def cmd_basis(args) -> int:
    spec = _spec(args)
    basis = qm_basis(spec)
    if args.format == "json":
        payload = {"pair": spec.name, "m": _m_label(spec), "variant": spec.variant}
        payload.update(basis.to_dict())
        _emit(payload)
    elif args.format == "csv":
        print("coh_degree,poly")
        for b in basis.elements:
            print(f"{b.coh_degree()},{render(b)}")
    else:
        print(f"{spec.name} m={_m_label(spec)} variant={spec.variant} rank={basis.rank}")
        for b in basis.elements:
            print(f"  [{b.coh_degree():>3}] {render(b)}")
    return 0


def _print_table(args, rows, meta: dict, series=None) -> None:
    if args.format == "csv":
        sys.stdout.write(table_csv(rows))
    elif args.format == "json":
        if series is not None:
            meta = dict(meta, series=str(series))
        print(table_json(rows, **meta))
    else:
        if series is not None:
            print(f"series: {series}")
        for d, c in rows:
            print(f"{d:>4} {c}")


def cmd_hilbert(args) -> int:
    spec = _spec(args)
    D = _truncation(args)
    meta = {"pair": spec.name, "m": _m_label(spec), "variant": spec.variant}
    if args.oracle:
        dims = oracle_series(spec, D)
        _print_table(args, [(2 * i, c) for i, c in enumerate(dims)], dict(meta, source="oracle"))
        return 0
    series = _closed_form(spec)
    source = "closed_form"
    if series is None:
        series, source = from_basis(qm_basis(spec)), "basis"
    _print_table(args, series.table(D), dict(meta, source=source), series)
    return 0


def cmd_member(args) -> int:
    if not args.poly:
        raise UsageError("--poly is required")
    spec = _spec(args)
    setting = build_setting(spec)
    f = setting.ring.parse(args.poly)
    result = is_member(f, spec)
    if args.format == "json":
        _emit({"pair": spec.name, "m": _m_label(spec), "variant": spec.variant, "poly": render(f),
               "member": result.member, "witness": result.witness,
               "degree": None if result.degree is None else 2 * result.degree})
    elif result:
        print("member")
    else:
        print(f"not member (witness {result.witness}, coh_degree {2 * result.degree})")
    return 0


def cmd_ktheory(args) -> int:
    if not args.pair:
        raise UsageError("--pair is required")
    ms = _parse_m(1 if args.m is None else args.m)
    if len(ms) != 1:
        raise UsageError("--m takes a single value")
    m = ms[0]
    ring = rep_ring(args.pair)
    if args.poly:
        f = ring.parse(args.poly)
        hit = k_is_member(f, ring, m)
        if args.format == "json":
            _emit({"ring": ring.name, "m": m, "poly": render(f), "member": hit.member,
                   "witness": hit.witness.name if hit.witness else None})
        else:
            print("member" if hit else f"not member (witness {hit.witness.name})")
        return 0
    B = 1 if args.window is None else int(args.window)
    if B < 0:
        raise UsageError("--window must be non-negative")
    reports = [ring.validate(), k_presentation_check(ring, m, B), k_filtration_check(ring, m, B)]
    return _finish(args, f"{ring.name} m={m} window={B}", reports)


def _finish(args, title: str, reports: Sequence[Report]) -> int:
    ok = all(r.passed for r in reports)
    if args.format == "json":
        _emit({"job": title, "passed": ok, "checks": [r.to_dict() for r in reports]})
    else:
        print(title)
        for r in reports:
            print(r)
        print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _basis_checks(spec: QuasiInvariantSpec, D: int, expected_rank: Optional[int]) -> List[Report]:
    basis = qm_basis(spec)
    series = from_basis(basis)
    mem = Report("basis membership")
    for b in basis.elements:
        hit = is_member(b, spec)
        if not hit:
            mem.fail(f"{render(b)} fails at {hit.witness}")
    out = [mem]
    if expected_rank is not None:
        rk = Report("basis rank")
        if basis.rank != expected_rank:
            rk.fail(f"rank {basis.rank}, expected {expected_rank}")
        out.append(rk)
    closed = _closed_form(spec)
    if closed is not None:
        cf = Report("closed form = basis series")
        if closed != series:
            cf.fail(f"{closed} vs {series}")
        out.append(cf)
    orc = Report(f"basis series = oracle up to degree {D}")
    got, want = series.expand(D), oracle_series(spec, D)
    for i, (a, b) in enumerate(zip(got, want)):
        if a != b:
            orc.fail(f"coh degree {2 * i}: basis {a}, oracle {b}")
    orc.data["dimensions"] = want
    out.append(orc)
    return out


def cmd_verify(args) -> int:
    spec = _spec(args)
    D = _truncation(args)
    reports: List[Report] = []
    if spec.variant == "filtered":
        reports.append(spec.filtered.validate())
        reports += _basis_checks(spec, D, None)
        pres = Report("basis series = presentation span")
        series = from_basis(qm_basis(spec))
        for d in range(0, D + 1, 2):
            want = filtered_presentation_dimension(spec.filtered, spec.m, d)
            if series.coefficient(d) != want:
                pres.fail(f"coh degree {d}: basis {series.coefficient(d)}, presentation {want}")
        reports.append(pres)
    else:
        pair = spec.pair
        reports.append(validate_pair(pair))
        reports += _basis_checks(spec, D, pair.order)
        if spec.variant == "flag":
            reports.append(filtration_check(pair, max(spec.m, 1), D))
            if pair.ktheory is not None and args.window is not None:
                ring = rep_ring(pair.name)
                reports.append(k_presentation_check(ring, spec.m, int(args.window)))
    return _finish(args, f"verify {spec.name} m={_m_label(spec)} variant={spec.variant}", reports)


def cmd_bcom(args) -> int:
    args.variant = "bcom"
    spec = _spec(args, "bcom")
    D = _truncation(args)
    fam = _family(spec.pair)
    group = spec.pair.weyl
    gf = maj_generating_function(group, signed=(fam == "sp"))
    closed = closed_form_bcom(spec.pair.n, spec.m, fam)
    if args.basis:
        return cmd_basis(args)
    reports = _basis_checks(spec, D, spec.pair.order)
    ok = all(r.passed for r in reports)
    stat = "fmaj" if fam == "sp" else "maj"
    if args.format == "json":
        _emit({"pair": spec.name, "m": spec.m, "statistic": stat,
               "descent_sum": {str(k): v for k, v in gf.items()}, "series": str(closed),
               "table": [{"coh_degree": d, "dimension": c} for d, c in closed.table(D)],
               "passed": ok, "checks": [r.to_dict() for r in reports]})
    else:
        terms = " + ".join(f"{c}*t^{e}" if c != 1 else f"t^{e}" for e, c in gf.items())
        print(f"{spec.name} m={spec.m}: sum over W of t^(2({stat}(w) + {stat}(w^-1))) = {terms}")
        print(f"series: {closed}")
        for r in reports:
            print(r)
        print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_filtered(args) -> int:
    args.variant = "filtered"
    if not args.spec:
        raise UsageError("--spec is required")
    if args.m is None:
        args.m = ",".join("0" * _load_chain(args.spec).length)
    if args.basis:
        return cmd_basis(args)
    return cmd_verify(args)


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "catalog": cmd_catalog,
    "basis": cmd_basis,
    "hilbert": cmd_hilbert,
    "member": cmd_member,
    "ktheory": cmd_ktheory,
    "verify": cmd_verify,
    "bcom": cmd_bcom,
    "filtered": cmd_filtered,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qi", description="Relative quasi-invariants: bases, Hilbert series, membership.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--pair")
        p.add_argument("--spec", help="filtered chain: JSON file or builtin name")
        p.add_argument("--m", help="multiplicity, or comma-separated vector for chains")
        p.add_argument("--variant", choices=VARIANTS)
        p.add_argument("--truncate", type=int, help=f"cohomological degree bound (<= {MAX_TRUNCATION})")
        p.add_argument("--window", type=int, help="K-theory exponent window B")
        p.add_argument("--format", choices=("text", "json", "csv"))
        p.add_argument("--poly")
        p.add_argument("--config", help="JSON file with default values for these options")
        p.add_argument("--basis", action="store_true", help="print the free basis")
        p.add_argument("--oracle", action="store_true", help="hilbert: use the linear-algebra oracle")
        p.add_argument("--flat", action="store_true", help="filtered: per-level moduli only")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        _apply_config(args)
        args.format = args.format or "text"
        if args.format not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {args.format!r}")
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"qi: parse error: {exc}", file=sys.stderr)
    except UnknownPair as exc:
        print(f"qi: {exc.args[0]}", file=sys.stderr)
    except NoKTheory as exc:
        print(f"qi: {exc}", file=sys.stderr)
    except TruncationExceeded as exc:
        print(f"qi: {exc}", file=sys.stderr)
    except UsageError as exc:
        print(f"qi: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
