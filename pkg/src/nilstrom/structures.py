"""Structure equations of nilpotent Lie algebras with complex structures.

A :class:`Structure` stores the exterior derivative of each of the six
generators of a coframe.  Complex structures are given by ``d`` of a
(1,0)-coframe ``w1 w2 w3``; the differentials of the conjugate generators are
obtained by conjugation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import (
    DegenerateDeformation,
    DomainError,
    DSLSyntaxError,
    NonRationalLiteral,
    UnboundParameter,
)
from .exterior import (
    COMPLEX,
    DIM,
    PLAIN,
    REAL,
    Form,
    bidegree_split,
    conj_form,
    dee,
    substitute,
    wedge_all,
)
from .scalar import CQ, I, Mode, abs2, conj, is_exact, is_zero, lift


@dataclass(frozen=True, eq=False)
class Structure:
    """Differentials ``d[i]`` of the six coframe generators."""

    d: tuple
    basis: str = COMPLEX
    name: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.d) != DIM:
            raise ValueError("a structure needs the differential of all six generators")
        for f in self.d:
            if f.degree != 2 or f.basis != self.basis:
                raise ValueError("generator differentials must be 2-forms in the structure's coframe")

    @classmethod
    def from_complex(cls, dw, name: str = "", params=None) -> "Structure":
        """Build from ``d w1, d w2, d w3`` in the complex coframe."""
        dw = [f if isinstance(f, Form) else Form.zero(2) for f in dw]
        full = tuple(dw) + tuple(conj_form(f) for f in dw)
        return cls(full, COMPLEX, name, dict(params or {}))

    def is_exact(self) -> bool:
        return all(f.is_exact() for f in self.d)

    def generator(self, i: int) -> Form:
        return Form.generator(i, self.basis, CQ(1) if self.is_exact() else 1 + 0j)

    def dee(self, a: Form) -> Form:
        return dee(self, a)

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return self.basis == other.basis and all(a == b for a, b in zip(self.d, other.d))

    __hash__ = None

    def close_to(self, other: "Structure", tol: float = 1e-10) -> bool:
        return self.basis == other.basis and all(a.close_to(b, tol) for a, b in zip(self.d, other.d))

    def approx(self) -> "Structure":
        return Structure(tuple(f.approx() for f in self.d), self.basis, self.name, dict(self.params))

    def __str__(self):
        lab = ("w1", "w2", "w3") if self.basis == COMPLEX else tuple(f"e{i + 1}" for i in range(DIM))
        return "; ".join(f"d {lab[i]} = {self.d[i]}" for i in range(len(lab)))


def transform(structure: Structure, matrix, basis: str | None = None, name: str | None = None) -> Structure:
    """Rewrite structure equations in a new coframe.

    ``matrix`` is 6x6 with ``new_k = sum_j matrix[k][j] * old_j``.
    """
    basis = basis or structure.basis
    try:
        inv = linalg.inverse(matrix)
    except ZeroDivisionError as exc:
        raise DegenerateDeformation("coframe change is not invertible") from exc
    old_in_new = [Form(1, {(k,): inv[j][k] for k in range(DIM)}, basis) for j in range(DIM)]
    new_d = []
    for k in range(DIM):
        acc = Form.zero(2, structure.basis)
        for j in range(DIM):
            if not is_zero(matrix[k][j]):
                acc = acc + structure.d[j] * matrix[k][j]
        new_d.append(substitute(acc, old_in_new, basis))
    return Structure(tuple(new_d), basis, structure.name if name is None else name, dict(structure.params))


def express_form(a: Form, matrix, basis: str) -> Form:
    """Express ``a`` (in the old coframe) in the new coframe ``new = matrix @ old``."""
    inv = linalg.inverse(matrix)
    old_in_new = [Form(1, {(k,): inv[j][k] for k in range(DIM)}, basis) for j in range(DIM)]
    return substitute(a, old_in_new, basis)


def pull_form(a: Form, matrix, basis: str) -> Form:
    """Express ``a`` (in the new coframe) in the old coframe, ``new = matrix @ old``."""
    new_in_old = [Form(1, {(j,): matrix[k][j] for j in range(DIM)}, basis) for k in range(DIM)]
    return substitute(a, new_in_old, basis)


def complex_change_matrix(L, Phi=None):
    """6x6 matrix for ``theta^i = sum_j L[i][j] w^j + Phi[i][j] ~w^j`` plus conjugates."""
    exact = all(is_exact(x) for row in L for x in row) and (
        Phi is None or all(is_exact(x) for row in Phi for x in row))
    z = CQ(0) if exact else 0j
    Phi = Phi or [[z] * 3 for _ in range(3)]
    m = [[z] * DIM for _ in range(DIM)]
    for i in range(3):
        for j in range(3):
            m[i][j] = L[i][j]
            m[i][j + 3] = Phi[i][j]
            m[i + 3][j] = conj(Phi[i][j])
            m[i + 3][j + 3] = conj(L[i][j])
    return m


def realification_matrix(exact: bool = True):
    """``e`` in terms of ``(theta, ~theta)``: rows give e1..e6."""
    h = CQ(Fraction(1, 2)) if exact else 0.5 + 0j
    ii = I if exact else 1j
    z = CQ(0) if exact else 0j
    m = [[z] * DIM for _ in range(DIM)]
    for k in range(3):
        m[2 * k][k] = h
        m[2 * k][k + 3] = h
        m[2 * k + 1][k] = -ii * h
        m[2 * k + 1][k + 3] = ii * h
    return m


def to_real_structure(structure: Structure) -> Structure:
    """Structure equations in the real coframe adapted to the complex coframe."""
    if structure.basis != COMPLEX:
        raise ValueError("expected a complex-coframe structure")
    return transform(structure, realification_matrix(structure.is_exact()), REAL)


# diagnostics

@dataclass
class StructureDiagnostics:
    jacobi_ok: bool
    integrable: bool
    canonical_closed: bool
    d_canonical: Form
    d_squared: tuple
    zero_two_parts: tuple

    def all_ok(self) -> bool:
        return self.jacobi_ok and self.integrable and self.canonical_closed


def check_structure(structure: Structure) -> StructureDiagnostics:
    """Jacobi identity (d^2 = 0), integrability and closedness of w^{123}."""
    d2 = tuple(dee(structure, f) for f in structure.d)
    jacobi = all(f.is_zero() for f in d2)
    if structure.basis == COMPLEX:
        zero_two = []
        for f in structure.d[:3]:
            part = Form.zero(2)
            for p, q, comp in bidegree_split(f):
                if (p, q) == (0, 2):
                    part = comp
            zero_two.append(part)
        integrable = all(f.is_zero() for f in zero_two)
        canon = wedge_all(*(structure.generator(i) for i in range(3)))
        d_canon = dee(structure, canon)
    else:
        zero_two, integrable, d_canon = [], False, Form.zero(4, structure.basis)
    return StructureDiagnostics(jacobi, integrable, d_canon.is_zero() and structure.basis == COMPLEX,
                                d_canon, d2, tuple(zero_two))


# deformations

@dataclass(frozen=True, eq=False)
class DeformationParams:
    """Coefficients ``Phi[i][j]`` of ``w_Phi^i = w^i + sum_j Phi[i][j] ~w^j``.

    ``family`` selects the closed-form integrability residual and the domain
    check: ``"h5"`` needs ``s`` and requires ``|Phi^1_2| < s^2``; ``"h4"``
    requires ``|Phi^1_1| < 1`` and ``|Phi^3_3| < 1``.
    """

    phi: tuple
    family: str | None = None
    s: object = None

    def __post_init__(self):
        phi = tuple(tuple(row) for row in self.phi)
        if len(phi) != 3 or any(len(r) != 3 for r in phi):
            raise ValueError("Phi must be 3x3")
        object.__setattr__(self, "phi", phi)
        if self.family == "h5":
            if self.s is None:
                raise ValueError("h5 deformations need s")
            if not abs2(phi[0][1]) < abs2(self.s) ** 2:
                raise DomainError("|Phi^1_2| must be < s^2")
        elif self.family == "h4":
            if not abs2(phi[0][0]) < 1 or not abs2(phi[2][2]) < 1:
                raise DomainError("|Phi^1_1| and |Phi^3_3| must be < 1")

    @classmethod
    def zero(cls, exact: bool = True, **kw) -> "DeformationParams":
        z = CQ(0) if exact else 0j
        return cls(tuple((z, z, z) for _ in range(3)), **kw)

    def entry(self, i: int, j: int):
        """``Phi^i_j`` with 1-based indices."""
        return self.phi[i - 1][j - 1]

    def is_zero(self) -> bool:
        return all(is_zero(x) for row in self.phi for x in row)


def integrability_residual(params: DeformationParams):
    """Closed-form integrability expression of the named families (zero iff integrable)."""
    P = params.entry
    if params.family == "h5":
        s2 = params.s * params.s
        return P(1, 1) * P(2, 2) - P(1, 2) * P(2, 1) + P(1, 2) + s2 * P(2, 1)
    if params.family == "h4":
        return I * (1 + P(3, 3)) * P(1, 2) - (1 - P(3, 3)) * (P(1, 1) - P(2, 2))
    raise ValueError("no closed-form residual for an unnamed family")


def deform(structure: Structure, params: DeformationParams):
    """Structure equations in the coframe ``w + Phi ~w`` and the integrability residual.

    For the named families the residual is the closed-form expression; for
    others it is the first nonzero coefficient of the (0,2)-parts of the
    deformed differentials (zero iff integrable).
    """
    if structure.basis != COMPLEX:
        raise ValueError("deformations act on complex-coframe structures")
    exact = structure.is_exact() and all(is_exact(x) for row in params.phi for x in row)
    one, z = (CQ(1), CQ(0)) if exact else (1 + 0j, 0j)
    L = [[one if i == j else z for j in range(3)] for i in range(3)]
    m = complex_change_matrix(L, [list(r) for r in params.phi])
    if is_zero(linalg.det(m)):
        raise DegenerateDeformation("w_Phi, ~w_Phi do not form a coframe")
    new = transform(structure, m, COMPLEX)
    if params.family in ("h5", "h4"):
        residual = integrability_residual(params)
    else:
        residual = z
        for f in check_structure(new).zero_two_parts:
            if f.terms:
                residual = f.items()[0][1]
                break
    return new, residual


# DSL

_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r]+)|(?P<comment>\#[^\n]*)|(?P<nl>\n)
       |(?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
       |(?P<name>[A-Za-z_][A-Za-z_0-9]*)
       |(?P<op>[-+*/^~=;(),])""",
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str):
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            out.append(_Tok("op", ";", line, m.start() - line_start + 1))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


@dataclass
class StructureTemplate:
    """Parsed structure equations whose coefficients may reference parameters."""

    generators: tuple
    params: dict
    equations: dict  # generator position -> list of (coef factors, (i, j))
    mode: Mode = Mode.EXACT

    def free_parameters(self) -> set:
        names = set()
        for terms in self.equations.values():
            for factors, _ in terms:
                names |= {f[1] for f in factors if f[0] == "param"}
        return names - set(self.params)

    def bind(self, **values) -> Structure:
        env = {k: lift(v, self.mode) for k, v in {**self.params, **values}.items()}
        missing = self.free_parameters() - set(env)
        if missing:
            raise UnboundParameter(f"unbound parameter(s): {', '.join(sorted(missing))}")
        one = CQ(1) if self.mode is Mode.EXACT else 1 + 0j
        dw = []
        for g in range(3):
            acc = {}
            for factors, (a, b) in self.equations.get(g, []):
                c = one
                for f in factors:
                    if f[0] == "num":
                        c = c * lift(f[1], self.mode)
                    elif f[0] == "i":
                        c = c * (I if self.mode is Mode.EXACT else 1j)
                    elif f[0] == "neg":
                        c = -c
                    else:
                        c = c * env[f[1]] ** f[2]
                term = Form(1, {(a,): c}) ^ Form(1, {(b,): one})
                for k, v in term.terms.items():
                    acc[k] = acc[k] + v if k in acc else v
            dw.append(Form(2, acc))
        return Structure.from_complex(dw, params=env)


class _Parser:
    def __init__(self, text: str, mode: Mode):
        self.toks = _tokenize(text)
        self.pos = 0
        self.mode = mode
        self.generators = ("w1", "w2", "w3")
        self.params = {}
        self.equations = {}

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[self.pos + k]

    def take(self, kind=None, text=None) -> _Tok:
        t = self.peek()
        if (kind and t.kind != kind) or (text and t.text != text):
            want = text or kind
            raise DSLSyntaxError(f"expected {want!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        self.pos += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise DSLSyntaxError(msg, tok.line, tok.col)

    def parse(self) -> StructureTemplate:
        while self.peek().kind != "eof":
            if self.peek().text == ";":
                self.take()
                continue
            t = self.peek()
            if t.kind == "name" and t.text == "basis":
                self.take()
                names = []
                while self.peek().kind == "name":
                    names.append(self.take().text)
                if len(names) != 3 or len(set(names)) != 3:
                    self.error("basis needs three distinct generator names", t)
                self.generators = tuple(names)
            elif t.kind == "name" and t.text == "param":
                self.take()
                name = self.take("name").text
                self.take("op", "=")
                self.params[name] = self.rational_literal()
            elif t.kind == "name" and t.text == "d":
                self.take()
                g = self.generator(allow_bar=False)
                self.take("op", "=")
                self.equations[g] = self.sum_of_terms()
            else:
                self.error(f"unexpected {t.text!r}")
            if self.peek().kind != "eof":
                self.take("op", ";")
        return StructureTemplate(self.generators, self.params, self.equations, self.mode)

    def rational_literal(self):
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.take().text == "-" else 1
        value = self.number()
        if self.peek().text == "/":
            self.take()
            value = value / self.number()
        return sign * value

    def number(self):
        t = self.take("num")
        if self.mode is Mode.EXACT:
            if not t.text.isdigit():
                raise NonRationalLiteral(f"line {t.line}, column {t.col}: non-rational literal {t.text!r}")
            return Fraction(int(t.text))
        return float(t.text)

    def generator(self, allow_bar=True) -> int:
        bar = False
        if self.peek().text == "~":
            if not allow_bar:
                self.error("conjugate generator not allowed here")
            self.take()
            bar = True
        t = self.take("name")
        if t.text not in self.generators:
            self.error(f"unknown generator {t.text!r}", t)
        return self.generators.index(t.text) + (3 if bar else 0)

    def is_generator_ahead(self) -> bool:
        t = self.peek()
        return t.text == "~" or (t.kind == "name" and t.text in self.generators)

    def sum_of_terms(self):
        terms = []
        first = True
        while True:
            t = self.peek()
            neg = False
            if t.kind == "op" and t.text in "+-":
                self.take()
                neg = t.text == "-"
            elif not first:
                break
            if self.peek().text == "0" and self.peek(1).text in (";", "") and not terms and first:
                self.take()
                return []
            first = False
            factors = [("neg",)] if neg else []
            while not self.is_generator_ahead():
                factors.append(self.factor())
                if self.peek().text == "*":
                    self.take()
                elif not self.is_generator_ahead():
                    self.error("expected '*' or a generator")
            a = self.generator()
            self.take("op", "^")
            b = self.generator()
            terms.append((factors, (a, b)))
            if self.peek().text not in "+-" or self.peek().kind != "op":
                break
        return terms

    def factor(self):
        t = self.peek()
        if t.kind == "num":
            v = self.number()
            if self.peek().text == "/":
                self.take()
                v = v / self.number()
            return ("num", v)
        if t.kind == "name" and t.text == "i":
            self.take()
            return ("i",)
        if t.kind == "name":
            self.take()
            power = 1
            if self.peek().text == "^" and self.peek(1).kind == "num":
                self.take()
                power = int(self.take("num").text)
            return ("param", t.text, power)
        if t.kind == "op" and t.text == "(":
            self.error("parenthesised coefficients are not supported")
        self.error(f"unexpected {t.text or 'end of input'!r} in coefficient")


def parse_template(text: str, mode: Mode | str = Mode.EXACT) -> StructureTemplate:
    return _Parser(text, Mode(mode)).parse()


def parse_structure(text: str, params=None, mode: Mode | str = Mode.EXACT) -> Structure:
    """Parse the structure-equation DSL and bind parameters.

    >>> s = parse_structure("d w3 = w1^w2 + w1^~w1 - s^2*w2^~w2", {"s": "1/4"})
    """
    return parse_template(text, mode).bind(**(params or {}))


_SALAMON_TERM = re.compile(r"([+-]?)\s*(\d)(\d)")


def parse_salamon(text: str, mode: Mode | str = Mode.EXACT) -> Structure:
    """Real structure equations from Salamon notation, e.g. ``(0,0,0,0,13+42,14+23)``."""
    mode = Mode(mode)
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise DSLSyntaxError("Salamon tuple must be parenthesised", 1, 1)
    entries = body[1:-1].split(",")
    if len(entries) != DIM:
        raise DSLSyntaxError(f"expected {DIM} entries, found {len(entries)}", 1, 1)
    one = CQ(1) if mode is Mode.EXACT else 1 + 0j
    d = []
    for k, entry in enumerate(entries):
        entry = entry.strip()
        form = Form.zero(2, PLAIN)
        if entry != "0":
            pos = 0
            while pos < len(entry):
                m = _SALAMON_TERM.match(entry, pos)
                if not m:
                    raise DSLSyntaxError(f"bad Salamon term in {entry!r}", 1, pos + 1)
                a, b = int(m.group(2)) - 1, int(m.group(3)) - 1
                sign = -one if m.group(1) == "-" else one
                form = form + (Form(1, {(a,): sign}, PLAIN) ^ Form(1, {(b,): one}, PLAIN))
                pos = m.end()
                while pos < len(entry) and entry[pos] == " ":
                    pos += 1
        d.append(form)
    return Structure(tuple(d), PLAIN, name=text.strip())
