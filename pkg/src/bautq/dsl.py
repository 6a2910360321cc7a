"""A small language for models, relative models, Quillen data, lifting problems and Borel extensions.

    model S4 { gen x:4; gen y:7; d y = x^2; }
    relative Hopf : S4 -> HopfTotal { fiber z:3; D z = x; }
    quillen LCP2 { gen u1:1; gen u2:3; d u2 = [u1,u1]; }
    problem CP2 { relative F; quillen LCP2; cell u2; hX u1 = 0; hY u1 = 0; hY u2 = (v,1); }
    borel S1onS3 : S3 { torus t; D v1 = t^2; }

Comments run from ``#`` or ``//`` to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgElement, Generator, GradedAlgebra, InhomogeneousImage
from .derivations import Derivation
from .lie import LIE_ZERO, DglMapData, LieBracket, LieExpr, LieGen, LieScale, LieSum, QuillenData, format_lie, lie_gens
from .models import RelativeModel, SullivanModel, validate_model


class DslError(Exception):
    """A diagnostic with a source location."""

    kind = "error"

    def __init__(self, msg: str, line: int, col: int, token: str | None = None, expected: list[str] | None = None):
        self.msg, self.line, self.col, self.token, self.expected = msg, line, col, token, expected or []
        super().__init__(self.render())

    def render(self, source_name: str = "<input>") -> str:
        s = f"{source_name}:{self.line}:{self.col}: {self.kind}: {self.msg}"
        if self.token is not None:
            s += f" (at {self.token!r})"
        if self.expected:
            s += f"; expected {' or '.join(self.expected)}"
        return s


class LexError(DslError):
    kind = "lexical error"


class ParseError(DslError):
    kind = "parse error"


class SemanticError(DslError):
    kind = "semantic error"


@dataclass(frozen=True)
class Tok:
    kind: str  # IDENT, INT, SYM, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s+|#[^\n]*|//[^\n]*|(?P<ARROW>->)|(?P<INT>\d+)|(?P<IDENT>[A-Za-z_][A-Za-z0-9_']*)|(?P<SYM>[{}()\[\];:,=+\-*/^])")


def tokenize(src: str) -> list[Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if not m:
            raise LexError("unexpected character", line, pos - line_start + 1, src[pos])
        kind = m.lastgroup
        if kind:
            toks.append(Tok("SYM" if kind == "ARROW" else kind, m.group(), line, pos - line_start + 1))
        text = m.group()
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    toks.append(Tok("EOF", "", line, pos - line_start + 1))
    return toks


# -- syntax trees (kept until names can be resolved) -------------------------


@dataclass
class PolyAst:
    terms: list  # [(coeff Fraction, [(name, exp, Tok)])]
    tok: Tok


@dataclass
class DerAst:
    terms: list  # [(coeff, gen name, gen Tok, PolyAst)]
    tok: Tok


@dataclass
class Problem:
    name: str
    relative: str
    quillen: str
    cell: str
    hX: DglMapData
    hY: DglMapData

    def __eq__(self, other):
        return (
            isinstance(other, Problem)
            and (self.name, self.relative, self.quillen, self.cell) == (other.name, other.relative, other.quillen, other.cell)
            and _map_eq(self.hX, other.hX)
            and _map_eq(self.hY, other.hY)
        )


def _map_eq(a: DglMapData, b: DglMapData) -> bool:
    return a.images.keys() == b.images.keys() and all(a.images[k] == b.images[k] and a.images[k].shift == b.images[k].shift for k in a.images)


@dataclass
class BorelSpec:
    name: str
    model: str
    torus: list[str]
    images: dict[str, AlgElement]

    def __eq__(self, other):
        return isinstance(other, BorelSpec) and (self.name, self.model, self.torus) == (other.name, other.model, other.torus) and self.images.keys() == other.images.keys() and all(
            self.images[k] == other.images[k] for k in self.images
        )


@dataclass
class Workspace:
    models: dict[str, SullivanModel] = field(default_factory=dict)
    relatives: dict[str, RelativeModel] = field(default_factory=dict)
    quillens: dict[str, QuillenData] = field(default_factory=dict)
    problems: dict[str, Problem] = field(default_factory=dict)
    borels: dict[str, BorelSpec] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Workspace):
            return False
        return all(getattr(self, k) == getattr(other, k) for k in ("models", "relatives", "quillens", "problems", "borels"))

    def model(self, name: str) -> SullivanModel:
        """A model by name; relative-model names resolve to their total model."""
        if name in self.models:
            return self.models[name]
        if name in self.relatives:
            return self.relatives[name].total
        for rm in self.relatives.values():
            if rm.total_name == name:
                return rm.total
        raise KeyError(f"no model named {name!r}")

    def relative(self, name: str) -> RelativeModel:
        if name in self.relatives:
            return self.relatives[name]
        raise KeyError(f"no relative model named {name!r}")

    def merge(self, other: "Workspace") -> "Workspace":
        out = Workspace()
        for k in ("models", "relatives", "quillens", "problems", "borels"):
            clash = sorted(set(getattr(self, k)) & set(getattr(other, k)))
            if clash:
                raise ValueError(f"{k} defined twice: {', '.join(clash)}")
            getattr(out, k).update(getattr(self, k))
            getattr(out, k).update(getattr(other, k))
        out.warnings = self.warnings + other.warnings
        return out


# -- parser ---------------------------------------------------------------------


class Parser:
    def __init__(self, src: str, context: Workspace | None = None):
        self.toks = tokenize(src)
        self.i = 0
        # earlier files: their names are visible and may not be redefined
        self.ws = Workspace().merge(context) if context is not None else Workspace()

    # token helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def advance(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("SYM", "IDENT")

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.fail("unexpected token", [repr(text)])
        return self.advance()

    def ident(self, what="identifier") -> Tok:
        if self.tok.kind != "IDENT":
            self.fail("unexpected token", [what])
        return self.advance()

    def integer(self) -> Tok:
        if self.tok.kind != "INT":
            self.fail("unexpected token", ["integer"])
        return self.advance()

    def fail(self, msg, expected=None):
        t = self.tok
        raise ParseError(msg, t.line, t.col, t.text if t.kind != "EOF" else "end of input", expected)

    # grammar
    def parse(self) -> Workspace:
        while self.tok.kind != "EOF":
            kw = self.tok.text
            if kw == "model":
                self.model_stmt()
            elif kw == "relative":
                self.relative_stmt()
            elif kw == "quillen":
                self.quillen_stmt()
            elif kw == "problem":
                self.problem_stmt()
            elif kw == "borel":
                self.borel_stmt()
            else:
                self.fail("unknown statement", ["'model'", "'relative'", "'quillen'", "'problem'", "'borel'"])
        return self.ws

    def _unique(self, kind: str, t: Tok):
        if t.text in getattr(self.ws, kind):
            raise SemanticError(f"duplicate {kind[:-1]} name {t.text!r}", t.line, t.col, t.text)

    def gen_decl(self, gens: list, seen: dict):
        name = self.ident("generator name")
        self.expect(":")
        deg = self.integer()
        self.expect(";")
        if name.text in seen:
            raise SemanticError(f"generator {name.text!r} declared twice", name.line, name.col, name.text)
        seen[name.text] = name
        gens.append((name.text, int(deg.text), deg))

    def model_stmt(self):
        self.advance()
        name = self.ident("model name")
        self._unique("models", name)
        self.expect("{")
        gens, seen, diffs = [], {}, []
        while not self.at("}"):
            if self.at("gen"):
                self.advance()
                self.gen_decl(gens, seen)
            elif self.at("d"):
                self.advance()
                g = self.ident("generator name")
                self.expect("=")
                diffs.append((g, self.poly()))
                self.expect(";")
            else:
                self.fail("not a model item", ["'gen'", "'d'", "'}'"])
        self.expect("}")
        for g, d, t in gens:
            if d < 2:
                raise SemanticError(f"generator {g} has degree {d}; Sullivan generators need degree >= 2", t.line, t.col, str(d))
        alg = GradedAlgebra([(g, d) for g, d, _ in gens])
        diff = self._resolve_diffs(alg, diffs, set(alg.names), "d")
        m = SullivanModel(alg, diff, name.text)
        self._check_model(m, diffs, name)
        self.ws.models[name.text] = m

    def _resolve_diffs(self, alg: GradedAlgebra, diffs, allowed: set, dname: str) -> dict:
        out = {}
        for g, p in diffs:
            if g.text not in allowed:
                raise SemanticError(f"{dname} of unknown generator {g.text!r}", g.line, g.col, g.text)
            if g.text in out:
                raise SemanticError(f"{dname} {g.text} given twice", g.line, g.col, g.text)
            img = self.eval_poly(p, alg)
            want = alg.degrees[alg.index(g.text)] + 1
            try:
                deg = img.degree()
            except InhomogeneousImage:
                raise SemanticError(f"image of {g.text} is not homogeneous", p.tok.line, p.tok.col) from None
            if deg is not None and deg != want:
                raise SemanticError(f"image degree {deg}, expected {want}", p.tok.line, p.tok.col, p.tok.text)
            out[g.text] = img
        return out

    def _check_model(self, m: SullivanModel, diffs, name: Tok):
        rep = validate_model(m)
        locs = {g.text: p.tok for g, p in diffs}
        for c in rep.checks:
            if not c.d_squared_zero:
                t = locs.get(c.name, name)
                raise SemanticError(f"d^2 != 0 on {c.name}: {c.message}", t.line, t.col, t.text)
        if not rep.minimal:
            self.ws.warnings.append(f"{name.text}: not minimal (linear terms in the differential)")

    def relative_stmt(self):
        self.advance()
        name = self.ident("relative model name")
        self._unique("relatives", name)
        self.expect(":")
        base_t = self.ident("base model name")
        self.expect("->")
        total_t = self.ident("total model name")
        if base_t.text not in self.ws.models:
            raise SemanticError(f"unknown base model {base_t.text!r}", base_t.line, base_t.col, base_t.text)
        base = self.ws.models[base_t.text]
        self.expect("{")
        gens, seen, diffs = [], {n: base_t for n in base.alg.names}, []
        while not self.at("}"):
            if self.at("fiber"):
                self.advance()
                self.gen_decl(gens, seen)
            elif self.at("D"):
                self.advance()
                g = self.ident("generator name")
                self.expect("=")
                diffs.append((g, self.poly()))
                self.expect(";")
            else:
                self.fail("not a relative-model item", ["'fiber'", "'D'", "'}'"])
        self.expect("}")
        for g, d, t in gens:
            if d < 2:
                raise SemanticError(f"fiber generator {g} has degree {d} < 2", t.line, t.col, str(d))
        fgs = [Generator(g, d) for g, d, _ in gens]
        alg = GradedAlgebra(list(base.alg.gens) + fgs)
        for g, _ in diffs:
            if base.alg.has(g.text):
                raise SemanticError(f"D on base generator {g.text}; D restricted to the base is d", g.line, g.col, g.text)
        diff = self._resolve_diffs(alg, diffs, {g.name for g in fgs}, "D")
        rm = RelativeModel(base, fgs, diff, name.text, total_t.text)
        self._check_model(rm.total, diffs, name)
        self.ws.relatives[name.text] = rm

    def quillen_stmt(self):
        self.advance()
        name = self.ident("Quillen model name")
        self._unique("quillens", name)
        self.expect("{")
        gens, seen, diffs = [], {}, []
        while not self.at("}"):
            if self.at("gen"):
                self.advance()
                self.gen_decl(gens, seen)
            elif self.at("d"):
                self.advance()
                g = self.ident("generator name")
                self.expect("=")
                t = self.tok
                diffs.append((g, self.lie(), t))
                self.expect(";")
            else:
                self.fail("not a Quillen item", ["'gen'", "'d'", "'}'"])
        self.expect("}")
        for g, d, t in gens:
            if d < 1:
                raise SemanticError(f"Quillen generator {g} has degree {d} < 1", t.line, t.col, str(d))
        degs = {g: d for g, d, _ in gens}
        diff = {}
        for g, e, t in diffs:
            if g.text not in degs:
                raise SemanticError(f"d of unknown generator {g.text!r}", g.line, g.col, g.text)
            unknown = lie_gens(e) - set(degs)
            if unknown:
                raise SemanticError(f"unknown generator {sorted(unknown)[0]!r}", t.line, t.col, t.text)
            diff[g.text] = e
        q = QuillenData([(g, d) for g, d, _ in gens], diff, None, name.text)
        errs = q.degree_errors()
        if errs:
            raise SemanticError(errs[0], name.line, name.col, name.text)
        bad = q.d_squared_failures()
        if bad:
            raise SemanticError(f"∂^2 != 0 on {bad[0]}", name.line, name.col, name.text)
        self.ws.quillens[name.text] = q

    def problem_stmt(self):
        self.advance()
        name = self.ident("problem name")
        self._unique("problems", name)
        self.expect("{")
        fields: dict[str, Tok] = {}
        hx, hy = [], []
        while not self.at("}"):
            kw = self.tok.text
            if kw in ("relative", "quillen", "cell"):
                self.advance()
                fields[kw] = self.ident(f"{kw} name")
                self.expect(";")
            elif kw in ("hX", "hY"):
                self.advance()
                g = self.ident("Quillen generator")
                self.expect("=")
                (hx if kw == "hX" else hy).append((g, self.der()))
                self.expect(";")
            else:
                self.fail("not a problem item", ["'relative'", "'quillen'", "'cell'", "'hX'", "'hY'", "'}'"])
        close = self.expect("}")
        for k in ("relative", "quillen", "cell"):
            if k not in fields:
                raise SemanticError(f"problem needs a '{k}' entry", close.line, close.col, "}")
        rt, qt, ct = fields["relative"], fields["quillen"], fields["cell"]
        if rt.text not in self.ws.relatives:
            raise SemanticError(f"unknown relative model {rt.text!r}", rt.line, rt.col, rt.text)
        if qt.text not in self.ws.quillens:
            raise SemanticError(f"unknown Quillen model {qt.text!r}", qt.line, qt.col, qt.text)
        rm, q = self.ws.relatives[rt.text], self.ws.quillens[qt.text]
        if ct.text not in q.degrees:
            raise SemanticError(f"cell {ct.text!r} is not a generator of {qt.text}", ct.line, ct.col, ct.text)
        hX = self._der_map(hx, rm.total.alg, q, "hX")
        hY = self._der_map(hy, rm.base.alg, q, "hY")
        if ct.text in hX.images:
            t = next(g for g, _ in hx if g.text == ct.text)
            raise SemanticError("hX is defined on L(B) only, not on the cell", t.line, t.col, t.text)
        self.ws.problems[name.text] = Problem(name.text, rt.text, qt.text, ct.text, hX, hY)

    def _der_map(self, items, alg: GradedAlgebra, q: QuillenData, label: str) -> DglMapData:
        images = {}
        for g, d in items:
            if g.text not in q.degrees:
                raise SemanticError(f"{label} of unknown Quillen generator {g.text!r}", g.line, g.col, g.text)
            if g.text in images:
                raise SemanticError(f"{label} {g.text} given twice", g.line, g.col, g.text)
            images[g.text] = self.eval_der(d, alg, q.degrees[g.text])
        return DglMapData(alg, images)

    def borel_stmt(self):
        self.advance()
        name = self.ident("Borel name")
        self._unique("borels", name)
        self.expect(":")
        mt = self.ident("model name")
        if mt.text not in self.ws.models:
            raise SemanticError(f"unknown model {mt.text!r}", mt.line, mt.col, mt.text)
        m = self.ws.models[mt.text]
        self.expect("{")
        torus, diffs = [], []
        while not self.at("}"):
            if self.at("torus"):
                self.advance()
                torus.append(self.ident("torus generator"))
                while self.at(","):
                    self.advance()
                    torus.append(self.ident("torus generator"))
                self.expect(";")
            elif self.at("D"):
                self.advance()
                g = self.ident("generator name")
                self.expect("=")
                diffs.append((g, self.poly()))
                self.expect(";")
            else:
                self.fail("not a Borel item", ["'torus'", "'D'", "'}'"])
        self.expect("}")
        for t in torus:
            if m.alg.has(t.text):
                raise SemanticError(f"torus generator {t.text} clashes with a model generator", t.line, t.col, t.text)
        alg = GradedAlgebra([(t.text, 2) for t in torus] + list(m.alg.gens))
        images = {}
        for g, p in diffs:
            if not alg.has(g.text):
                raise SemanticError(f"D of unknown generator {g.text!r}", g.line, g.col, g.text)
            images[g.text] = self.eval_poly(p, alg)
        self.ws.borels[name.text] = BorelSpec(name.text, mt.text, [t.text for t in torus], images)

    # expressions
    def coeff(self) -> Fraction:
        num = self.integer()
        c = Fraction(int(num.text))
        if self.at("/"):
            self.advance()
            den = self.integer()
            if int(den.text) == 0:
                raise SemanticError("zero denominator", den.line, den.col, den.text)
            c /= int(den.text)
        return c

    def poly(self) -> PolyAst:
        start = self.tok
        terms = []
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        elif self.at("+"):
            self.advance()
        while True:
            c, factors = self.poly_term()
            terms.append((sign * c, factors))
            if self.at("+"):
                sign = 1
            elif self.at("-"):
                sign = -1
            else:
                break
            self.advance()
        return PolyAst(terms, start)

    def poly_term(self):
        c = Fraction(1)
        factors = []
        while True:
            if self.tok.kind == "INT":
                c *= self.coeff()
            elif self.tok.kind == "IDENT":
                t = self.advance()
                e = 1
                if self.at("^"):
                    self.advance()
                    e = int(self.integer().text)
                factors.append((t.text, e, t))
            elif self.at("("):
                self.advance()
                inner = self.poly()
                self.expect(")")
                factors.append((inner, 1, inner.tok))
            else:
                self.fail("not the start of a term", ["integer", "identifier", "'('"])
            if not self.at("*"):
                return c, factors
            self.advance()

    def eval_poly(self, p: PolyAst, alg: GradedAlgebra) -> AlgElement:
        total = alg.zero()
        for c, factors in p.terms:
            term = alg.scalar(c)
            for f, e, t in factors:
                if isinstance(f, PolyAst):
                    base = self.eval_poly(f, alg)
                else:
                    if not alg.has(f):
                        raise SemanticError(f"unknown generator {f!r}", t.line, t.col, t.text)
                    base = alg.gen(f)
                term = term * base**e
            total = total + term
        return total

    def der(self) -> DerAst:
        start = self.tok
        terms = []
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        while True:
            c = Fraction(1)
            if self.tok.kind == "INT":
                c = self.coeff()
                if c == 0 and not self.at("*"):
                    terms.append((Fraction(0), None, None, None))
                    c = None
                else:
                    self.expect("*")
            if c is not None:
                self.expect("(")
                g = self.ident("generator name")
                self.expect(",")
                p = self.poly()
                self.expect(")")
                terms.append((sign * c, g.text, g, p))
            if self.at("+"):
                sign = 1
            elif self.at("-"):
                sign = -1
            else:
                break
            self.advance()
        return DerAst(terms, start)

    def eval_der(self, d: DerAst, alg: GradedAlgebra, shift: int) -> Derivation:
        imgs: dict[str, AlgElement] = {}
        for c, g, gt, p in d.terms:
            if g is None:
                continue
            if not alg.has(g):
                raise SemanticError(f"unknown generator {g!r}", gt.line, gt.col, g)
            val = self.eval_poly(p, alg) * c
            if not val.is_zero():
                want = alg.degrees[alg.index(g)] - shift
                if val.degree() != want:
                    raise SemanticError(f"({g},·) needs an element of degree {want} for a degree-{shift} derivation, got {val.degree()}", p.tok.line, p.tok.col, p.tok.text)
            imgs[g] = imgs.get(g, alg.zero()) + val
        return Derivation(alg, shift, imgs, check=False)

    def lie(self) -> LieExpr:
        terms = []
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        while True:
            t = self.lie_term()
            terms.append(t if sign == 1 else LieScale(Fraction(-1), t))
            if self.at("+"):
                sign = 1
            elif self.at("-"):
                sign = -1
            else:
                break
            self.advance()
        return terms[0] if len(terms) == 1 else LieSum(tuple(terms))

    def lie_term(self) -> LieExpr:
        if self.tok.kind == "INT":
            c = self.coeff()
            if c == 0 and not self.at("*"):
                return LIE_ZERO
            self.expect("*")
            return LieScale(c, self.lie_atom())
        return self.lie_atom()

    def lie_atom(self) -> LieExpr:
        if self.at("["):
            self.advance()
            a = self.lie()
            self.expect(",")
            b = self.lie()
            self.expect("]")
            return LieBracket(a, b)
        if self.at("("):
            self.advance()
            e = self.lie()
            self.expect(")")
            return e
        return LieGen(self.ident("generator or '['").text)


def parse(source: str, context: Workspace | None = None) -> Workspace:
    """Parse and validate a DSL source; raises a DslError subclass with a location.

    With ``context``, the result extends that workspace: its objects can be
    referenced and redefining one of them is a semantic error.
    """
    return Parser(source, context).parse()


def parse_poly(text: str, alg: GradedAlgebra) -> AlgElement:
    p = Parser(text)
    ast = p.poly()
    if p.tok.kind != "EOF":
        p.fail("trailing input after polynomial", ["end of input"])
    return p.eval_poly(ast, alg)


def parse_lie(text: str) -> LieExpr:
    p = Parser(text)
    e = p.lie()
    if p.tok.kind != "EOF":
        p.fail("trailing input after Lie expression", ["end of input"])
    return e


# -- pretty printer ---------------------------------------------------------------


def _poly(x: AlgElement) -> str:
    return str(x)


def _der(s: Derivation) -> str:
    return str(s)


def format_workspace(ws: Workspace) -> str:
    """Source text that parses back to an equal workspace."""
    out = []
    written: set[str] = set()

    def model_block(m: SullivanModel, name: str):
        lines = [f"model {name} {{"]
        lines += [f"  gen {g.name}:{g.degree};" for g in m.alg.gens]
        lines += [f"  d {m.alg.names[i]} = {_poly(v)};" for i, v in sorted(m.diff.items())]
        lines.append("}")
        return "\n".join(lines)

    for name, m in ws.models.items():
        out.append(model_block(m, name))
        written.add(name)
    for name, rm in ws.relatives.items():
        base_name = rm.base.name
        if base_name not in written:
            out.append(model_block(rm.base, base_name))
            written.add(base_name)
        lines = [f"relative {name} : {base_name} -> {rm.total_name or name + '_total'} {{"]
        lines += [f"  fiber {g.name}:{g.degree};" for g in rm.fiber_gens]
        lines += [f"  D {k} = {_poly(v)};" for k, v in rm.fiber_diff().items()]
        lines.append("}")
        out.append("\n".join(lines))
    for name, q in ws.quillens.items():
        lines = [f"quillen {name} {{"]
        lines += [f"  gen {g}:{d};" for g, d in q.gens]
        lines += [f"  d {g} = {format_lie(e)};" for g, e in q.diff.items()]
        lines.append("}")
        out.append("\n".join(lines))
    for name, p in ws.problems.items():
        lines = [f"problem {name} {{", f"  relative {p.relative};", f"  quillen {p.quillen};", f"  cell {p.cell};"]
        lines += [f"  hX {g} = {_der(s)};" for g, s in p.hX.images.items()]
        lines += [f"  hY {g} = {_der(s)};" for g, s in p.hY.images.items()]
        lines.append("}")
        out.append("\n".join(lines))
    for name, b in ws.borels.items():
        lines = [f"borel {name} : {b.model} {{", f"  torus {', '.join(b.torus)};"]
        lines += [f"  D {k} = {_poly(v)};" for k, v in b.images.items()]
        lines.append("}")
        out.append("\n".join(lines))
    return "\n\n".join(out) + "\n"
