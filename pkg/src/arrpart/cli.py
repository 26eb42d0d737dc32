"""Command-line front end.

Subcommands: poset, chambers, betti, flag gen|check, strata, classify,
verify partition|star|homology, os-map, render.  Reports are JSON
first (deterministic given identical seeds and inputs) with a text
mirror via --format text.  Exit codes: 0 success, 1 verification
failure, 2 input error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction
from typing import Optional

from .arrangement import (
    Arrangement,
    betti_numbers,
    build_poset,
    chamber_count,
)
from .chambers import signs_text
from .errors import ArrpartError, InputError
from .exact_geom import format_fraction
from .fixtures import FIXTURE_NAMES, load_fixture
from .flag import Flag, check_assumption, check_generic, generate_flag
from .homology import (
    concurrent_triples,
    dual_basis_check,
    index_tuple,
    os_relation_pairings,
    os_to_bm,
    pairing_matrix,
)
from .partition import (
    GaussPoint,
    classify,
    sample_piece_member,
    verify_partition,
    verify_star_shaped,
)
from .render import render_svg
from .stratify import Stratification, stratification


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e


def _load_arrangement(args) -> Arrangement:
    if getattr(args, "fixture", None):
        return load_fixture(args.fixture)[0]
    if getattr(args, "input", None):
        return Arrangement.from_dict(_read_json(args.input))
    raise InputError("provide an arrangement with --input or --fixture")


def _load_flag(args, arr: Arrangement) -> Flag:
    if getattr(args, "flag", None):
        return Flag.from_dict(_read_json(args.flag))
    if getattr(args, "flag_seed", None) is not None:
        return generate_flag(arr, args.flag_seed)
    if getattr(args, "fixture", None):
        return load_fixture(args.fixture)[1]
    raise InputError("provide a flag with --flag or --flag-seed")


def _emit(args, payload: str) -> None:
    out = getattr(args, "output", None)
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _dump(args, obj, text: Optional[str] = None) -> None:
    if getattr(args, "format", "json") == "text" and text is not None:
        _emit(args, text)
    else:
        _emit(args, json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _names(arr: Arrangement, indices) -> list[str]:
    return [arr.names[i] for i in sorted(indices)]


def _build_stratification(args) -> Stratification:
    arr = _load_arrangement(args)
    flag = _load_flag(args, arr)
    poset = build_poset(arr)
    g = check_generic(arr, flag, poset)
    if g is not None:
        raise InputError(f"flag is not generic: {g.describe(arr)}")
    a = check_assumption(arr, flag, poset)
    if a is not None:
        raise InputError(f"flag fails its positional conditions: {a.describe(arr)}")
    return stratification(arr, flag, poset=poset)


# ---------------------------------------------------------------------------
# Subcommand bodies.
# ---------------------------------------------------------------------------


def _cmd_poset(args) -> int:
    arr = _load_arrangement(args)
    poset = build_poset(arr)
    flats = [
        {
            "support": _names(arr, X.support),
            "dim": X.dim,
            "moebius": poset.moebius[X.support],
            "point": [format_fraction(c) for c in X.point],
        }
        for X in poset.flats
    ]
    lines = [f"{'support':24} dim  moebius"]
    for f in flats:
        lines.append(f"{'&'.join(f['support']) or 'ambient':24} {f['dim']:3}  {f['moebius']:7}")
    _dump(args, {"dim": arr.dim, "flats": flats}, "\n".join(lines) + "\n")
    return 0


def _cmd_chambers(args) -> int:
    arr = _load_arrangement(args)
    from .chambers import enumerate_chambers

    chambers = enumerate_chambers(arr)
    if getattr(args, "format", "json") == "text":
        lines = [f"{'id':4} {'signs':12} interior point"]
        for c in chambers:
            pt = ", ".join(format_fraction(x) for x in c.interior_point)
            lines.append(f"{c.index:4} {signs_text(c.signs):12} ({pt})")
        _emit(args, "\n".join(lines) + "\n")
    else:
        rows = [
            json.dumps(
                {
                    "id": c.index,
                    "signs": signs_text(c.signs),
                    "interior_point": [format_fraction(x) for x in c.interior_point],
                },
                sort_keys=True,
            )
            for c in chambers
        ]
        _emit(args, "\n".join(rows) + "\n")
    return 0


def _cmd_betti(args) -> int:
    arr = _load_arrangement(args)
    poset = build_poset(arr)
    b = betti_numbers(poset)
    obj = {"betti": list(b), "chambers": chamber_count(poset)}
    _dump(args, obj, f"betti: {list(b)}  chambers: {obj['chambers']}\n")
    return 0


def _cmd_flag_gen(args) -> int:
    arr = _load_arrangement(args)
    flag = generate_flag(arr, args.seed)
    _dump(args, flag.to_dict())
    return 0


def _cmd_flag_check(args) -> int:
    arr = _load_arrangement(args)
    flag = _load_flag(args, arr)
    poset = build_poset(arr)
    g = check_generic(arr, flag, poset)
    report = {"generic": g is None, "assumption": None, "violation": None}
    if g is not None:
        report["violation"] = {"kind": "genericity", "detail": g.describe(arr)}
        _dump(args, report)
        return 1
    a = check_assumption(arr, flag, poset)
    report["assumption"] = a is None
    if a is not None:
        report["violation"] = {
            "kind": type(a).__name__,
            "detail": a.describe(arr),
        }
        _dump(args, report)
        return 1
    _dump(args, report)
    return 0


def _stratum_dict(strat: Stratification, s) -> dict:
    arr = strat.arrangement
    return {
        "chamber": s.index,
        "signs": signs_text(s.chamber.signs),
        "level": s.level,
        "anchor": _names(arr, s.anchor.support),
        "height": None if s.height is None else format_fraction(s.height),
        "base_point": [format_fraction(c) for c in s.base_point],
        "envelope": {
            "hyperplanes": _names(arr, s.envelope.indices),
            "signs": signs_text(s.envelope.signs),
        },
    }


def _cmd_strata(args) -> int:
    strat = _build_stratification(args)
    rows = [_stratum_dict(strat, s) for s in strat.strata]
    lines = [f"{'chamber':8}{'signs':10}{'level':6}{'height':10}anchor"]
    for r in rows:
        lines.append(
            f"{r['chamber']:<8}{r['signs']:10}{r['level']:<6}"
            f"{(r['height'] or '-'):10}{'&'.join(r['anchor']) or 'ambient'}"
        )
    obj = {
        "level_sizes": list(strat.level_sizes()),
        "strata": rows,
    }
    _dump(args, obj, "\n".join(lines) + "\n")
    return 0


def _parse_point(spec: str) -> GaussPoint:
    if spec.lstrip().startswith("{"):
        try:
            d = json.loads(spec)
        except json.JSONDecodeError as e:
            raise InputError(f"bad point JSON: {e}") from e
    else:
        d = _read_json(spec)
    try:
        return GaussPoint.from_dict(d)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad point payload: {e}") from e


def _cmd_classify(args) -> int:
    strat = _build_stratification(args)
    p = _parse_point(args.point)
    assignment = classify(strat, p)
    s = strat.by_chamber[assignment.chamber_index]
    _dump(
        args,
        {
            "point": p.to_dict(),
            "chamber": assignment.chamber_index,
            "signs": signs_text(s.chamber.signs),
            "level": s.level,
            "witness": assignment.witness,
        },
    )
    return 0


def _cmd_verify_partition(args) -> int:
    strat = _build_stratification(args)
    report = verify_partition(strat, args.samples, args.seed)
    _dump(args, report.to_dict())
    return 0 if report.ok else 1


def _cmd_verify_star(args) -> int:
    strat = _build_stratification(args)
    rng = random.Random(args.seed)
    per_piece: dict[str, int] = {}
    violations = []
    for s in strat.strata:
        good = 0
        for _ in range(args.samples):
            member = sample_piece_member(strat, s, rng)
            if verify_star_shaped(strat, s, member):
                good += 1
            else:
                violations.append(
                    {"chamber": s.index, "point": member.to_dict()}
                )
        per_piece[str(s.index)] = good
    ok = not violations
    _dump(
        args,
        {
            "samples_per_piece": args.samples,
            "per_piece": per_piece,
            "violations": violations,
            "ok": ok,
        },
    )
    return 0 if ok else 1


def _cmd_verify_homology(args) -> int:
    strat = _build_stratification(args)
    arr = strat.arrangement
    levels = []
    ok = True
    for q in range(strat.dim + 1):
        M = pairing_matrix(strat, q)
        d = M.to_dict()
        want = -1 if (q * (strat.dim - q)) % 2 else 1
        d["diagonal_ok"] = all(x == want for x in M.diagonal())
        d["unimodular"] = abs(M.determinant()) == 1
        ok = ok and d["triangular"] and d["diagonal_ok"] and d["unimodular"]
        levels.append(d)
    dual = {"checked": 0, "failures": []}
    for r in range(1, strat.dim + 1):
        for combo in itertools.combinations(range(arr.n), r):
            it = index_tuple(strat, combo)
            good, bad = dual_basis_check(strat, it)
            dual["checked"] += 1
            if not good:
                ok = False
                dual["failures"].append(
                    {"indices": [i + 1 for i in combo], "cell": bad.index}
                )
    relations = {"checked": 0, "failures": []}
    for (i, j, k) in concurrent_triples(strat):
        bad_pairs = os_relation_pairings(strat, i, j, k)
        relations["checked"] += 1
        if bad_pairs:
            ok = False
            relations["failures"].append(
                {"indices": [i + 1, j + 1, k + 1], "pairings": bad_pairs}
            )
    _dump(
        args,
        {
            "levels": levels,
            "dual_basis": dual,
            "relations": relations,
            "ok": ok,
        },
    )
    return 0 if ok else 1


def _cmd_os_map(args) -> int:
    strat = _build_stratification(args)
    try:
        indices = tuple(int(t) - 1 for t in args.indices.split(",") if t.strip())
    except ValueError as e:
        raise InputError(f"bad --indices value {args.indices!r}") from e
    it = index_tuple(strat, indices)
    cls = os_to_bm(strat, it)
    good, bad = dual_basis_check(strat, it)
    _dump(
        args,
        {
            "indices": [i + 1 for i in indices],
            "independent": it.independent,
            "level": cls.level,
            "coefficients": {str(k): v for k, v in sorted(cls.coefficients.items())},
            "dual_basis_ok": good,
            "violating_cell": None if bad is None else bad.index,
        },
    )
    return 0 if good else 1


def _cmd_render(args) -> int:
    strat = _build_stratification(args)
    _emit(args, render_svg(strat))
    return 0


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------


def _add_io(p: argparse.ArgumentParser, flag: bool = False) -> None:
    p.add_argument("-i", "--input", help="arrangement JSON file")
    p.add_argument("--fixture", choices=FIXTURE_NAMES, help="built-in example")
    p.add_argument("-o", "--output", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default="json")
    if flag:
        p.add_argument("--flag", help="flag JSON file")
        p.add_argument("--flag-seed", type=int, help="generate a flag from this seed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="arrpart",
        description=(
            "Exact partition of a complexified hyperplane arrangement "
            "complement into contractible pieces, with cycle pairings"
        ),
    )
    sub = ap.add_subparsers(dest="command", required=True)

    _add_io(sub.add_parser("poset", help="intersection poset and Moebius values"))
    _add_io(sub.add_parser("chambers", help="chamber sign vectors and points"))
    _add_io(sub.add_parser("betti", help="Betti numbers and chamber count"))

    flag_p = sub.add_parser("flag", help="generate or check flags")
    flag_sub = flag_p.add_subparsers(dest="flag_command", required=True)
    gen = flag_sub.add_parser("gen", help="generate a verified flag")
    _add_io(gen)
    gen.add_argument("--seed", type=int, required=True)
    chk = flag_sub.add_parser("check", help="verify a flag")
    _add_io(chk, flag=True)

    _add_io(sub.add_parser("strata", help="full stratification report"), flag=True)

    cls = sub.add_parser("classify", help="piece of a complex point")
    _add_io(cls, flag=True)
    cls.add_argument("--point", required=True, help="GaussPoint JSON literal or file")

    ver = sub.add_parser("verify", help="property verification harnesses")
    ver_sub = ver.add_subparsers(dest="verify_command", required=True)
    vp = ver_sub.add_parser("partition", help="disjoint-cover check on samples")
    _add_io(vp, flag=True)
    vp.add_argument("--samples", type=int, default=500)
    vp.add_argument("--seed", type=int, default=0)
    vs = ver_sub.add_parser("star", help="exact segment checks per piece")
    _add_io(vs, flag=True)
    vs.add_argument("--samples", type=int, default=50)
    vs.add_argument("--seed", type=int, default=0)
    vh = ver_sub.add_parser("homology", help="pairing matrices and dual basis")
    _add_io(vh, flag=True)

    osm = sub.add_parser("os-map", help="cycle class of a logarithmic generator")
    _add_io(osm, flag=True)
    osm.add_argument(
        "--indices", required=True, help="1-based hyperplane indices, e.g. 1,3"
    )

    _add_io(sub.add_parser("render", help="SVG figure (dimension 2)"), flag=True)
    return ap


_HANDLERS = {
    "poset": _cmd_poset,
    "chambers": _cmd_chambers,
    "betti": _cmd_betti,
    "strata": _cmd_strata,
    "classify": _cmd_classify,
    "os-map": _cmd_os_map,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "flag":
            handler = _cmd_flag_gen if args.flag_command == "gen" else _cmd_flag_check
            return handler(args)
        if args.command == "verify":
            handler = {
                "partition": _cmd_verify_partition,
                "star": _cmd_verify_star,
                "homology": _cmd_verify_homology,
            }[args.verify_command]
            return handler(args)
        return _HANDLERS[args.command](args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ArrpartError as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
