"""Command-line front end: ``bautq COMMAND [--model NAME | --relative NAME | --problem NAME] ...``.

Exit status: 0 on success, 1 for diagnostics (syntax, unknown names), 2 when a
mathematical precondition fails (for example a non-separable relative model).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import cohomology as coh
from . import fibration as fib
from .corpus import CORPUS
from .derivations import SIGN_NOTE, CutoffTooSmall, DerComplex, Derivation, cstar_model, derivation_basis
from .dsl import DslError, Workspace, parse
from .lie import DglMapData, QuillenData
from .models import is_pi_q_separable, validate_model, validate_relative
from .obstruction import CommutativityFailure, NotADglMap, obstruction_class, skeletal_lift_scan

PRECONDITION_ERRORS = (
    fib.NotSeparable,
    fib.NotACycle,
    fib.BaseNotOddSphere,
    fib.CutoffInsufficient,
    coh.NotPure,
    coh.NotF0,
    coh.NotAKSExtension,
    CommutativityFailure,
    NotADglMap,
    CutoffTooSmall,
)


class Diagnostic(Exception):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    lines: list[str] = field(default_factory=list)
    results: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "schema": 1,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "witnesses": self.witnesses,
            "verdicts": self.verdicts,
            "signConventionNote": SIGN_NOTE,
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)

    def text(self) -> str:
        return "\n".join(self.lines)


def parse_range(text: str | None, default: tuple[int, int]) -> tuple[int, int]:
    if text is None:
        return default
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise Diagnostic(f"bad range {text!r}; use a..b") from None
    if lo > hi:
        raise Diagnostic(f"empty range {text!r}")
    return lo, hi


def _need(args, attr: str) -> str:
    v = getattr(args, attr)
    if not v:
        raise Diagnostic(f"--{attr} NAME is required for {args.command}")
    return v


def _model(ws: Workspace, args):
    name = _need(args, "model")
    try:
        return ws.model(name)
    except KeyError as e:
        raise Diagnostic(e.args[0]) from None


def _relative(ws: Workspace, args):
    name = _need(args, "relative")
    try:
        return ws.relative(name)
    except KeyError as e:
        raise Diagnostic(e.args[0]) from None


def _classes(group) -> list[str]:
    return [str(c.representative) for c in group.classes]


# -- commands ---------------------------------------------------------------------


def cmd_validate(ws, args) -> Report:
    if args.relative:
        rm = _relative(ws, args)
        rep, label = validate_relative(rm), args.relative
    else:
        m = _model(ws, args)
        rep, label = validate_model(m), args.model
    r = Report("validate", {"name": label})
    r.verdicts = {"valid": rep.ok, "minimal": rep.minimal}
    r.results = {c.name: {"degree": c.degree_ok, "d2": c.d_squared_zero, "decomposable": c.decomposable} for c in rep.checks}
    r.lines.append(f"{label}: {'valid' if rep.ok else 'INVALID'}, {'minimal' if rep.minimal else 'not minimal'}")
    r.lines += [f"  {f}" for f in rep.failures]
    if args.relative:
        sep = is_pi_q_separable(rm)
        r.verdicts["separable"] = sep.separable
    return r


def cmd_basis(ws, args) -> Report:
    m = _model(ws, args)
    top = max(m.alg.degrees, default=1)
    lo, hi = parse_range(args.range, (1, top))
    r = Report("basis", {"model": args.model, "range": [lo, hi]})
    for n in range(hi, lo - 1, -1):
        if n < 1:
            continue
        basis = [str(s) for s in derivation_basis(m, n)]
        if basis:
            r.results[str(n)] = basis
            r.lines.append(f"{n}: {', '.join(basis)}")
    return r


def cmd_homology(ws, args) -> Report:
    m = _model(ws, args)
    cx = DerComplex(m)
    lo, hi = parse_range(args.range, (1, max(cx.max_degree, 1)))
    r = Report("homology", {"model": args.model, "range": [lo, hi]})
    for n in range(max(lo, 1), hi + 1):
        h = cx.homology(n)
        r.results[str(n)] = {"dim": h.dim, "classes": _classes(h)}
        if h.dim:
            r.lines.append(f"H_{n} = Q{{{', '.join(_classes(h))}}}")
    if not r.lines:
        r.lines.append(f"H_n = 0 for {lo} <= n <= {hi}")
    return r


def cmd_pi_aut(ws, args) -> Report:
    m = _model(ws, args)
    top = max(m.alg.degrees, default=1) + 1
    lo, hi = parse_range(args.range, (2, top))
    if lo < 2:
        raise Diagnostic("pi-aut ranges start at 2")
    r = Report("pi-aut", {"model": args.model, "range": [lo, hi]})
    dims = DerComplex(m)
    for n in range(lo, hi + 1):
        d = dims.homology_dim(n - 1)
        r.results[str(n)] = d
        r.lines.append(f"pi_{n}(Baut1 X)_Q: {d}")
    return r


def cmd_separable(ws, args) -> Report:
    rm = _relative(ws, args)
    sep = is_pi_q_separable(rm)
    chk = fib.strict_projection_check(rm)
    r = Report("separable", {"relative": args.relative})
    min_w = sep.min_fiber if sep.min_fiber != float("inf") else None
    r.results = {"minFiber": min_w, "maxBase": sep.max_base, "checkedElements": chk.checked_elements, "checkedPairs": chk.checked_pairs}
    r.verdicts = {"separable": sep.separable, "bfIsDglMap": chk.passed}
    if sep:
        r.lines.append(f"separable: min|W| = {'inf' if min_w is None else min_w} >= max|V| = {sep.max_base}")
        r.lines.append(f"b_f commutes with boundary and bracket: {'yes' if chk.passed else 'NO'}")
    else:
        w, v = sep.witness
        r.witnesses = {"pair": [w, v], "bracket": list(chk.witness)}
        r.lines.append(f"not separable: |{w}| < |{v}|; witness ({w}, {v})")
    r.lines += [f"  {x}" for x in chk.violations]
    return r


def cmd_delta(ws, args) -> Report:
    rm = _relative(ws, args)
    fc = fib.complexes(rm)
    if not is_pi_q_separable(rm):
        raise fib.NotSeparable("delta needs a π_Q-separable relative model")
    r = Report("delta", {"relative": args.relative})
    for n in range(2, fc.base.max_degree + 1):
        for c in fc.base.homology(n).classes:
            img = fib.connecting_delta(rm, c)
            z = img.is_zero()
            key = f"[{c.representative}]"
            r.results[key] = {"degree": n, "image": str(img.representative), "zero": z}
            r.lines.append(f"delta_f[{c.representative}] = " + ("0" if z else f"[{img.representative}] NONZERO"))
    if not r.lines:
        r.lines.append("H_n(Der ΛV) = 0 for n >= 2; delta_f = 0")
    return r


def cmd_section(ws, args) -> Report:
    rm = _relative(ws, args)
    v = fib.section_exists(rm)
    r = Report("section", {"relative": args.relative})
    r.verdicts = {"section": v.has_section}
    r.results = {"scannedDegrees": [v.scanned_degrees.start, v.scanned_degrees.stop - 1], "deltaRanks": {str(k): x for k, x in v.ranks.items()}, "degreeOneClasses": v.degree_one_classes}
    r.witnesses = {f"[{c.representative}]": f"[{i.representative}]" for c, i in v.failing}
    r.lines.append(f"a_f admits a section: {'yes' if v else 'no'} (scanned H_n(Der ΛV), 2 <= n <= {v.scanned_degrees.stop - 1})")
    r.lines += [f"  delta_f[{c.representative}] = [{i.representative}] != 0" for c, i in v.failing]
    if v.degree_one_classes:
        r.lines.append(f"  note: {v.degree_one_classes} class(es) in H_1(Der ΛV) excluded from the test")
    try:
        odd = fib.odd_sphere_triviality(rm)
    except fib.BaseNotOddSphere:
        odd = None
    if odd is not None:
        r.verdicts["oddSphere"] = odd.label
        r.lines.append(f"odd-sphere base: {odd.label}" + (f", witness {odd.witness}" if odd.witness is not None else ""))
    return r


def cmd_rel_homology(ws, args) -> Report:
    rm = _relative(ws, args)
    fc = fib.complexes(rm)
    lo, hi = parse_range(args.range, (1, max(fc.fiber.max_degree, 1)))
    r = Report("rel-homology", {"relative": args.relative, "range": [lo, hi]})
    for n in range(max(lo, 1), hi + 1):
        h = fib.rel_der_homology(rm, n)
        r.results[str(n)] = {"dim": h.dim, "classes": _classes(h)}
        if h.dim:
            r.lines.append(f"H_{n}(Der_ΛV(ΛV⊗ΛW)) = Q{{{', '.join(_classes(h))}}}  (pi_{n + 1}(Baut1 f)_Q)")
    if not r.lines:
        r.lines.append(f"H_n(Der_ΛV(ΛV⊗ΛW)) = 0 for {lo} <= n <= {hi}")
    return r


def cmd_fiber_dims(ws, args) -> Report:
    rm = _relative(ws, args)
    fc = fib.complexes(rm)
    top = max(fc.fiber.max_degree, 1)
    lo, hi = parse_range(args.range, (1, top))
    cutoff = args.cutoff if args.cutoff is not None else 2 * top
    rho = fib.rho_image(rm, hi, cutoff)
    r = Report("fiber-dims", {"relative": args.relative, "range": [lo, hi], "cutoff": cutoff})
    r.verdicts["rhoImageIsSubcomplex"] = rho.closed
    agree = True
    r.lines.append("n  formula  H(rho-image)  H(fiber part)")
    for n in range(max(lo, 1), hi + 1):
        f = fib.fiber_dims_formula(rm, n, cutoff)
        hr = rho.homology_dims.get(n, 0)
        hf = fc.fiber.homology_dim(n)
        agree &= hr == hf and f == len(rho.vectors.get(n, []))
        r.results[str(n)] = {"formula": f, "rhoHomology": hr, "fiberHomology": hf}
        r.lines.append(f"{n:<3}{f:<9}{hr:<14}{hf}")
    r.verdicts["agree"] = agree
    r.lines.append(f"formula counts rho-image chains; rho-image homology equals fiber-part homology: {'yes' if agree else 'NO'}")
    return r


def cmd_pi_odd(ws, args) -> Report:
    rm = _relative(ws, args)
    v = fib.pi_odd_vanishing(rm)
    r = Report("pi-odd", {"relative": args.relative})
    r.verdicts = {"piOddVanishes": v.vanishes}
    if v:
        r.lines.append("π_odd(Baut1 f)_Q = 0: certified; r0(Y) <= r0(X) hypothesis satisfied")
    else:
        r.witnesses = {str(n): [str(c.representative) for c in cs] for n, cs in v.nonzero.items()}
        r.lines.append("π_odd(Baut1 f)_Q != 0")
        r.lines += [f"  H_{n} = Q{{{', '.join(ws_)}}}" for n, ws_ in r.witnesses.items()]
    return r


def cmd_halperin(ws, args) -> Report:
    m = _model(ws, args)
    r = Report("halperin", {"model": args.model})
    f0 = None
    if not args.allow_non_f0:
        f0 = coh.f0_certify(m)
        r.results["formalDimension"] = f0.formal_dimension
        r.lines.append(f"F0: {'yes' if f0 else 'no'} ({f0.reason})")
    v = coh.halperin_test(m, require_f0=not args.allow_non_f0)
    r.results["negativeDerivations"] = {str(k): d for k, d in v.per_k.items()}
    r.verdicts = {"halperin": v.holds}
    if f0 is not None:
        r.verdicts["f0"] = f0.is_f0
    if v:
        r.lines.append("Halperin: holds (Der_{<0} H* = 0); a_f ~ * for the map to the product of K(Q,|x_i|)")
    else:
        r.witnesses = {str(k): [{g: str(x) for g, x in th.items()} for th in ths] for k, ths in v.witnesses.items()}
        r.lines.append("Halperin: FAILS")
        for k, ths in v.witnesses.items():
            for th in ths:
                r.lines.append(f"  degree -{k}: " + ", ".join(f"theta({g}) = {x}" for g, x in th.items()))
    return r


def cmd_cstar(ws, args) -> Report:
    m = _model(ws, args)
    cutoff = args.cutoff if args.cutoff is not None else max(m.alg.degrees, default=1) + 2
    cs = cstar_model(DerComplex(m), cutoff)
    r = Report("cstar", {"model": args.model, "cutoff": cutoff})
    cm = cs.model
    checked = cs.d_squared_checked_up_to()
    ok = all(cm.d(cm.d_of(i)).is_zero() for i, g in enumerate(cm.alg.gens) if g.degree <= checked)
    r.verdicts = {"dSquaredZeroWithinCutoff": ok}
    r.lines.append(f"C*(Der {args.model}) truncated at degree {cutoff}: {len(cm.alg)} generators")
    for i, g in enumerate(cm.alg.gens):
        d = cm.d_of(i)
        r.results[g.name] = {"degree": g.degree, "dual": cs.labels[g.name], "D": str(d)}
        r.lines.append(f"  {g.name} : {g.degree}  dual of {cs.labels[g.name]}  D = {d}")
    r.lines.append(f"D∘D = 0 on generators of degree <= {checked}: {'yes' if ok else 'NO'}")
    return r


def cmd_borel(ws, args) -> Report:
    name = _need(args, "borel")
    if name not in ws.borels:
        raise Diagnostic(f"no borel extension named {name!r}")
    b = ws.borels[name]
    m = ws.models[b.model]
    default = 2 * sum(g.degree for g in m.alg.gens if g.odd) or 8
    if args.cutoff is not None:
        default = args.cutoff
    lo, cutoff = parse_range(args.range, (0, default))
    if lo < 0 or cutoff < lo:
        raise Diagnostic(f"bad degree range {lo}..{cutoff}")
    rep = coh.borel_extend(m, b.torus, b.images, cutoff)
    r = Report("borel", {"borel": name, "cutoff": cutoff})
    r.results = {str(k): d for k, d in rep.table.dims.items() if k >= lo}
    r.verdicts = {"growthWithinCutoff": rep.growth_within_cutoff}
    shown = [d for k, d in sorted(rep.table.dims.items()) if k >= lo]
    r.lines.append(f"H*(Q[{', '.join(b.torus)}]⊗Λ{b.model}, D) for degrees {lo}..{cutoff}: {shown}")
    r.lines.append(rep.note)
    return r


def _move(h: DglMapData, alg) -> DglMapData:
    # same generator names, different relative model
    return DglMapData(alg, {g: Derivation(alg, s.shift, {s.alg.names[i]: alg.embed(v) for i, v in s.images.items()}) for g, s in h.images.items()})


def _cls(element) -> str:
    return "0" if element.is_zero() else f"[{element}]"


def cmd_obstruct(ws, args) -> Report:
    pname = _need(args, "problem")
    if pname not in ws.problems:
        raise Diagnostic(f"no problem named {pname!r}")
    p = ws.problems[pname]
    rname = args.relative or p.relative
    if rname not in ws.relatives:
        raise Diagnostic(f"no relative model named {rname!r}")
    rm = ws.relatives[rname]
    q0 = ws.quillens[p.quillen]
    q = QuillenData(q0.gens, q0.diff, p.cell, q0.name)
    hX, hY = p.hX, p.hY
    if rname != p.relative:
        if not is_pi_q_separable(rm):
            raise fib.NotSeparable(f"{rname} is not π_Q-separable")
        try:
            hX, hY = _move(hX, rm.total.alg), _move(hY, rm.base.alg)
        except KeyError as e:
            raise Diagnostic(f"problem {pname} does not fit relative model {rname}: {e.args[0]}") from None
    r = Report("obstruct", {"problem": pname, "relative": rname})
    if args.scan:
        scan = skeletal_lift_scan(rm, q0, hY)
        r.verdicts = {"certified": scan.certified, "liftable": scan.liftable}
        r.results = {c.cell: {"N": c.N, "class": str(c.result.element), "zero": c.result.zero} for c in scan.cells}
        r.lines.append(f"lift scan: {scan.note}")
        r.lines += [f"  cell {c.cell} (N = {c.N}): class {_cls(c.result.element)} {c.result.verdict}" for c in scan.cells]
        return r
    hYu = hY.images.get(p.cell)
    if hYu is None:
        raise Diagnostic(f"problem {pname} gives no hY for the cell {p.cell}")
    N = q.cell_degree + 1
    hy_rest = DglMapData(hY.alg, {g: s for g, s in hY.images.items() if g != p.cell})
    res = obstruction_class(rm, hX, hYu, q.d(p.cell), N, q, hy_rest)
    r.results = {"degree": res.degree, "class": str(res.element), "tau": str(res.tau_part), "hX''": str(res.hx_part)}
    r.verdicts = {"zero": res.zero, "lift": res.zero}
    cls = _cls(res.element)
    if res.zero:
        lift = res.lift.images[p.cell]
        r.witnesses = {"q": str(res.q), "lift": str(lift), "liftIsDglMap": bool(res.lift_check)}
        r.lines.append(f"class {cls} ZERO; lift h({p.cell}) = {lift} (q = {res.q}); DGL map: {'yes' if res.lift_check else 'NO'}")
    else:
        r.lines.append(f"class {cls} NONZERO; no lift")
    return r


COMMANDS = {
    "validate": cmd_validate,
    "basis": cmd_basis,
    "homology": cmd_homology,
    "pi-aut": cmd_pi_aut,
    "separable": cmd_separable,
    "delta": cmd_delta,
    "section": cmd_section,
    "rel-homology": cmd_rel_homology,
    "fiber-dims": cmd_fiber_dims,
    "pi-odd": cmd_pi_odd,
    "halperin": cmd_halperin,
    "cstar": cmd_cstar,
    "borel": cmd_borel,
    "obstruct": cmd_obstruct,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bautq", description="Derivation DGLs of Sullivan models and classifying spaces Baut_1")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("-f", "--file", action="append", default=[], help="DSL input file (repeatable); the bundled examples are used when omitted")
    ap.add_argument("--model")
    ap.add_argument("--relative")
    ap.add_argument("--problem")
    ap.add_argument("--borel")
    ap.add_argument("--range", help="degree interval a..b")
    ap.add_argument("--cutoff", type=int)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--scan", action="store_true", help="obstruct: attach every generator in turn")
    ap.add_argument("--allow-non-f0", action="store_true", help="halperin: skip the F0 certificate")
    return ap


def load_workspace(files: list[str]) -> Workspace:
    if not files:
        return parse(CORPUS)
    ws = Workspace()
    for f in files:
        src = Path(f).read_text(encoding="utf-8")
        try:
            ws = parse(src, ws)
        except DslError as e:
            e.source_name = f
            raise
    return ws


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # usage errors are diagnostics; exit status 2 is kept for failed preconditions
        return 0 if e.code in (0, None) else 1
    try:
        ws = load_workspace(args.file)
        report = COMMANDS[args.command](ws, args)
    except DslError as e:
        print(e.render(getattr(e, "source_name", "<input>")), file=err)
        return 1
    except Diagnostic as e:
        print(f"error: {e}", file=err)
        return 1
    except OSError as e:
        print(f"error: {e}", file=err)
        return 1
    except PRECONDITION_ERRORS as e:
        print(f"{type(e).__name__}: {e}", file=err)
        return 2
    print(report.to_json() if args.json else report.text(), file=out)
    return 0


def main() -> None:
    sys.exit(run())
