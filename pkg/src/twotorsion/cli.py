"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import infection as inf
from . import knotcalc as kc
from . import obstruct as ob
from . import planner as pl
from . import seifert as sf
from .exact_algebra import alg_from_rational
from .laurent import LaurentPoly, PolyParseError, lp_coprime, lp_strongly_coprime, lp_strongly_coprime_bounded
from .parsing import KnotParseError, parse_knot_file
from .stepfn import AVERAGE, STRICT, Angle, JumpCollision, sf_average, sf_evaluate, sf_to_csv, sf_to_svg

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(data, fmt: str, text: str, out) -> None:
    if fmt == "records":
        out.write(json.dumps(data, sort_keys=True, indent=2, default=str) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _arcs_text(sigma) -> str:
    parts, prev, prev_v = [], "0", 0
    for a, v in sigma.jumps:
        parts.append(f"{prev_v} on ({prev}, {a.turn_text(12)})")
        prev, prev_v = a.turn_text(12), v
    parts.append(f"{prev_v} on ({prev}, 1/2]")
    return "; ".join(parts)


def _write_plots(sigma, csv_path, svg_path, title: str, suffix: str = "") -> None:
    def target(p):
        p = Path(p)
        return p.with_name(f"{p.stem}{suffix}{p.suffix}") if suffix else p

    if csv_path:
        target(csv_path).write_text(sf_to_csv(sigma), encoding="utf-8")
    if svg_path:
        target(svg_path).write_text(sf_to_svg(sigma, title), encoding="utf-8")


# -- commands -------------------------------------------------------------------------------

def cmd_analyze(args, out) -> int:
    K = parse_knot_file(args.file)
    s = kc.spectral(K)
    rec = {"name": K.name, "arf": s.arf, "jumps_turns": [a.turn_text() for a in s.sigma.angles],
           "signature": [[a.turn_text(), v] for a, v in s.sigma.jumps],
           "average": str(sf_average(s.sigma)), "tags": sorted(str(t) for t in K.tags)}
    lines = [f"name: {K.name or '?'}"]
    if isinstance(K, kc.MatrixKnot):
        A = K.matrix
        rec.update(representation="seifert", seifert=A.tolist(), alexander=str(sf.alexander(A)),
                   arf_murasugi=sf.arf_murasugi(A), arf_symplectic=sf.arf_symplectic(A))
        lines += [f"representation: seifert {A.size}x{A.size}", f"alexander: {sf.alexander(A)}",
                  f"arf: {s.arf} (Murasugi {sf.arf_murasugi(A)}, symplectic {sf.arf_symplectic(A)})"]
    else:
        rec.update(representation="spectral")
        lines += ["representation: spectral", f"arf: {s.arf}"]
    lines += [
        "jumps (turns): " + (", ".join(rec["jumps_turns"]) or "none"),
        "signature: " + ("identically 0" if s.sigma.is_zero() else _arcs_text(s.sigma)),
        f"average: {rec['average']}",
        "tags: " + ("; ".join(rec["tags"]) or "none"),
    ]
    _emit(rec, args.format, "\n".join(lines), out)
    _write_plots(s.sigma, args.csv, args.svg, K.name)
    return EXIT_OK


def _angle_arg(args) -> Angle:
    if (args.turn is None) == (args.cos is None):
        raise UsageError("give exactly one of --turn or --cos")
    try:
        if args.turn is not None:
            return Angle.from_turn(Fraction(args.turn))
        return Angle.from_cos(alg_from_rational(Fraction(args.cos)))
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad angle: {e}") from None


def cmd_signature(args, out) -> int:
    K = parse_knot_file(args.file)
    angle = _angle_arg(args)
    conv = STRICT if args.convention == "strict" else AVERAGE
    try:
        if isinstance(K, kc.MatrixKnot):
            v = sf.signature_at(K.matrix, angle, conv)
        else:
            v = sf_evaluate(K.sigma, angle, conv)
    except JumpCollision as e:
        out.write(f"error: {e}\n")
        return EXIT_VERIFY
    _emit({"name": K.name, "angle": angle.turn_text(), "convention": conv, "signature": str(v)},
          args.format, f"signature at turn {angle.turn_text()}: {v}", out)
    return EXIT_OK


def _convention(name: str) -> str:
    return pl.FIGURE_ONE if name == "figure-one" else pl.STRICT_HALF


def _parse_subsets(text: str | None) -> list[tuple[int, ...]]:
    if not text:
        return []
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise UsageError("empty subset")
        try:
            out.append(tuple(int(x) for x in chunk.split(",")))
        except ValueError:
            raise UsageError(f"bad subset {chunk!r}") from None
    return out


def _plan_text(con: pl.Construction) -> str:
    p = con.plan
    lines = [f"tower depth n = {p.n}", f"bound C = {p.C} = 69713280 * {p.C // ob.CG_CONSTANT}",
             f"copy convention: {p.convention}", "",
             f"{'i':>2} {'m_lo':>6} {'m_hi':>6} {'d':>4} {'N':>12}  checks"]
    for it in p.items:
        req = [c for c in it.checks if c.required]
        ok = sum(c.passed for c in req)
        lines.append(f"{it.index:>2} {it.m_lo:>6} {it.m_hi:>6} {it.d:>4} {it.N:>12}  {ok}/{len(req)} required passed")
    for it in p.items:
        lines.append("")
        lines.append(f"item {it.index} checks:")
        lines += ["  " + c.line() for c in it.checks]
    lines.append("")
    for it, t, tags, budget in zip(p.items, con.towers, con.tower_tags, con.crossing_budgets):
        lines.append(f"tower for item {it.index}: crossing budget {budget}")
        for k in sorted(tags):
            lines.append(f"  {tags[k]}")
        ok2, why = inf.is_order_two_by_construction(t)
        lines.append(f"  order two by construction: {'yes' if ok2 else 'no'} ({why})")
        lines.append("\n".join("  " + ln for ln in inf.tower_text(t).splitlines()))
    for c in con.certificates:
        lines.append("")
        lines.append(c.text())
    return "\n".join(lines)


def _plan_record(con: pl.Construction) -> dict:
    rec = con.plan.record()
    rec["towers"] = [{"record": inf.tower_record(t), "crossing_budget": b,
                      "tags": {k: {"value": v.value, "citation": v.citation} for k, v in tags.items()}}
                     for t, tags, b in zip(con.towers, con.tower_tags, con.crossing_budgets)]
    rec["certificates"] = [c.record() for c in con.certificates]
    return rec


def cmd_plan(args, out) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    if args.start_m < 1:
        raise UsageError("--start-m must be positive")
    subsets = _parse_subsets(args.subsets)
    for s in subsets:
        if any(i < 1 or i > args.count for i in s):
            raise UsageError(f"subset {s} out of range 1..{args.count}")
    try:
        con = pl.full_construction(args.n, args.count, _convention(args.convention), args.start_m, subsets)
    except pl.PlanVerificationError as e:
        out.write(f"verification failed: {e}\nwitness (r, d, value): {e.witness}\n")
        return EXIT_VERIFY
    rec = _plan_record(con)
    _emit(rec, args.format, _plan_text(con), out)
    if args.output:
        Path(args.output).write_text(pl.plan_to_json(con.plan) + "\n", encoding="utf-8")
    for it in con.plan.items:
        suffix = f"-{it.index}" if len(con.plan.items) > 1 else ""
        _write_plots(it.J0.sigma, args.csv, args.svg, it.J0.name, suffix)
    ok = con.plan.passed and all(c.valid for c in con.certificates)
    return EXIT_OK if ok else EXIT_VERIFY


def _load_plan(path: str) -> pl.FamilyPlan:
    try:
        rec = json.loads(Path(path).read_text(encoding="utf-8"))
        return pl.plan_from_record(rec)
    except json.JSONDecodeError as e:
        raise KnotParseError(f"plan file is not JSON ({e.msg})", e.lineno, e.colno) from None
    except (KeyError, TypeError) as e:
        raise KnotParseError(f"plan file lacks field {e}", 1, 1) from None


def cmd_verify(args, out) -> int:
    plan = _load_plan(args.plan)
    checks = [c for it in plan.items for c in it.checks]
    extra = pl.both_direction_report(plan) if args.both_directions else []
    lines = [f"plan: n={plan.n} C={plan.C} items={len(plan.items)} convention={plan.convention}"]
    for it in plan.items:
        lines.append(f"item {it.index} (m_lo={it.m_lo}, m_hi={it.m_hi}, d={it.d}, N={it.N})")
        lines += ["  " + c.line() for c in it.checks]
    if extra:
        lines.append("both index directions:")
        lines += ["  " + c.line() for c in extra]
    failed = [c for c in checks if c.required and not c.passed] + [c for c in extra if not c.passed]
    lines.append("verification: " + ("PASSED" if not failed else f"FAILED ({len(failed)} checks)"))
    rec = {"items": [it.record() for it in plan.items],
           "both_directions": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in extra],
           "passed": not failed}
    _emit(rec, args.format, "\n".join(lines), out)
    return EXIT_OK if not failed else EXIT_VERIFY


def cmd_coprime(args, out) -> int:
    p, q = LaurentPoly.parse(args.p), LaurentPoly.parse(args.q)
    if p.is_zero() or q.is_zero():
        raise UsageError("polynomials must be nonzero")
    if args.bounded:
        v = lp_strongly_coprime_bounded(p, q, args.bound)
    elif args.strong:
        v = lp_strongly_coprime(p, q)
    else:
        ok = lp_coprime(p, q)
        _emit({"p": str(p), "q": str(q), "mode": "plain", "verdict": "yes" if ok else "no"}, args.format,
              f"coprime: {'yes' if ok else 'no'}", out)
        return EXIT_OK
    rec = {"p": str(p), "q": str(q), "mode": "bounded" if args.bounded else "strong", "verdict": v.verdict,
           "reason": v.reason}
    if v.witness is not None:
        rec["witness"] = {"m_n": list(v.witness.exponents), "substitution": list(v.witness.substitution),
                          "common_factor": str(v.witness.common_factor)}
    _emit(rec, args.format, f"strongly coprime: {v}" + (f" ({v.reason})" if v.reason else ""), out)
    return EXIT_OK


def cmd_independence(args, out) -> int:
    subsets = _parse_subsets(args.subset)
    if len(subsets) != 1 or not subsets[0]:
        raise UsageError("give one nonempty subset, e.g. --subset 1,2")
    plan = _load_plan(args.plan)
    s = subsets[0]
    if any(i < 1 or i > len(plan.items) for i in s) or len(set(s)) != len(s):
        raise UsageError(f"subset {s} out of range 1..{len(plan.items)} or repeated")
    cert = ob.independence_certificate(plan, s)
    _emit(cert.record(), args.format, cert.text(), out)
    return EXIT_OK if cert.valid else EXIT_VERIFY


def cmd_catalog(args, out) -> int:
    recs, lines = [], []
    for name, e in sf.catalog().items():
        A = e.matrix
        r = {"name": name, "seifert": A.tolist(), "alexander": str(sf.alexander(A)), "arf": sf.arf(A),
             "jumps_turns": [a.turn_text() for a in sf.jump_angles(A)], "crossings": e.crossings,
             "citation": e.citation}
        recs.append(r)
        lines.append(f"{name:8} {str(A.tolist()):40} alexander {r['alexander']:22} arf {r['arf']}"
                     + (f"  crossings<= {e.crossings}" if e.crossings else ""))
    for m in (1, 8, 27, 64):
        h = kc.horn_knot(m)
        a = h.sigma.angles[0]
        recs.append({"name": h.name, "spectral": [[a.turn_text(), 2]], "arf": 0,
                     "jump_cos": str(a.cos.rational if a.cos.is_rational else float(a.cos))})
        lines.append(f"{h.name:8} sigma 0 then 2 after turn {a.turn_text(12)} (cos = {recs[-1]['jump_cos']})")
    _emit(recs, args.format, "\n".join(lines), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twotorsion", description="Exact signature calculus and 2-torsion family planner.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def fmt(sp):
        sp.add_argument("--format", choices=["text", "records"], default="text")

    a = sub.add_parser("analyze", help="invariants of a knot file")
    a.add_argument("file")
    a.add_argument("--csv")
    a.add_argument("--svg")
    fmt(a)

    s = sub.add_parser("signature", help="signature at one angle")
    s.add_argument("file")
    s.add_argument("--turn", help="angle as a fraction of a full turn, e.g. 1/3")
    s.add_argument("--cos", help="angle in (0, pi) with this rational cosine")
    s.add_argument("--convention", choices=["strict", "average"], default="strict")
    fmt(s)

    q = sub.add_parser("plan", help="build and verify the family")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--count", type=int, default=1)
    q.add_argument("--convention", choices=["figure-one", "strict-half"], default="strict-half")
    q.add_argument("--start-m", type=int, default=1)
    q.add_argument("--subsets", help="extra certificate subsets, e.g. '1,2;1,2,3'")
    q.add_argument("--output", help="write the plan record (JSON) here")
    q.add_argument("--csv")
    q.add_argument("--svg")
    fmt(q)

    v = sub.add_parser("verify", help="re-verify a stored plan")
    v.add_argument("plan")
    v.add_argument("--both-directions", action="store_true",
                   help="also require every J0 to vanish at every other item's roots")
    fmt(v)

    c = sub.add_parser("coprime", help="coprimality of two Laurent polynomials")
    c.add_argument("p")
    c.add_argument("q")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--strong", action="store_true")
    mode.add_argument("--bounded", action="store_true")
    c.add_argument("--bound", type=int, default=6)
    fmt(c)

    i = sub.add_parser("independence", help="certificate for a subset of a stored plan")
    i.add_argument("plan")
    i.add_argument("--subset", required=True)
    fmt(i)

    g = sub.add_parser("catalog", help="seed knots and Horn knots")
    fmt(g)
    return p


COMMANDS = {"analyze": cmd_analyze, "signature": cmd_signature, "plan": cmd_plan, "verify": cmd_verify,
            "coprime": cmd_coprime, "independence": cmd_independence, "catalog": cmd_catalog}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_USAGE
    except (KnotParseError, PolyParseError) as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_PARSE
    except FileNotFoundError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
