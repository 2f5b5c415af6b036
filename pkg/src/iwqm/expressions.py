"""Symbolic operator expressions, the physical adjoint, and a tiny grammar.

The physical adjoint of the imaginary-frequency ladder operators is not
the matrix conjugate-transpose in the biorthogonal frame: each generator
maps to (sigma * i) times itself, with a global sign sigma in {+1, -1}
coming from the branch of the square root in the generator prefactor.
The adjoint is therefore implemented structurally on expression trees
(reverse products, conjugate scalars, rephase generators) and only then
evaluated to a matrix.  None of the verified operator identities depend
on sigma; both settings are exercised by the test suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .algebra import build_lowering, build_raising

#: Default adjoint sign: conj(sqrt(i/2)) / sqrt(i/2) = -i on the principal
#: branch, i.e. a^dag = -i a.
ADJOINT_SIGN = -1


class OperatorExpression:
    """Base class for expression-tree nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class AMinus(OperatorExpression):
    pass


@dataclass(frozen=True)
class APlus(OperatorExpression):
    pass


@dataclass(frozen=True)
class Identity(OperatorExpression):
    pass


@dataclass(frozen=True)
class Scaled(OperatorExpression):
    scalar: complex
    child: OperatorExpression


@dataclass(frozen=True)
class OpSum(OperatorExpression):
    terms: tuple


@dataclass(frozen=True)
class OpProduct(OperatorExpression):
    factors: tuple


A_MINUS = AMinus()
A_PLUS = APlus()
IDENTITY = Identity()


def scaled(scalar: complex, child: OperatorExpression) -> OperatorExpression:
    return Scaled(complex(scalar), child)


def op_sum(*terms: OperatorExpression) -> OperatorExpression:
    return OpSum(tuple(terms))


def op_product(*factors: OperatorExpression) -> OperatorExpression:
    return OpProduct(tuple(factors))


def adjoint(expr: OperatorExpression, sigma: int = ADJOINT_SIGN) -> OperatorExpression:
    """Physical adjoint: antihomomorphism with generators mapping to sigma*i times themselves."""
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma!r}")
    if isinstance(expr, (AMinus, APlus)):
        return Scaled(sigma * 1j, expr)
    if isinstance(expr, Identity):
        return expr
    if isinstance(expr, Scaled):
        return Scaled(np.conj(expr.scalar), adjoint(expr.child, sigma))
    if isinstance(expr, OpSum):
        return OpSum(tuple(adjoint(t, sigma) for t in expr.terms))
    if isinstance(expr, OpProduct):
        return OpProduct(tuple(adjoint(f, sigma) for f in reversed(expr.factors)))
    raise TypeError(f"not an operator expression: {expr!r}")


def to_matrix(expr: OperatorExpression, dim: int) -> np.ndarray:
    """Evaluate an expression to a dense matrix on ket-family coefficients."""
    if isinstance(expr, AMinus):
        return build_lowering(dim)
    if isinstance(expr, APlus):
        return build_raising(dim)
    if isinstance(expr, Identity):
        return np.eye(dim, dtype=complex)
    if isinstance(expr, Scaled):
        return expr.scalar * to_matrix(expr.child, dim)
    if isinstance(expr, OpSum):
        out = np.zeros((dim, dim), dtype=complex)
        for t in expr.terms:
            out += to_matrix(t, dim)
        return out
    if isinstance(expr, OpProduct):
        out = np.eye(dim, dtype=complex)
        for f in expr.factors:
            out = out @ to_matrix(f, dim)
        return out
    raise TypeError(f"not an operator expression: {expr!r}")


# ---------------------------------------------------------------------------
# named operators
# ---------------------------------------------------------------------------

def number_expression() -> OperatorExpression:
    """n = a+ a-."""
    return op_product(A_PLUS, A_MINUS)


def hamiltonian_expression(omega: float = 1.0) -> OperatorExpression:
    """H = i omega (n + 1/2)."""
    return scaled(1j * omega, op_sum(number_expression(), scaled(0.5, IDENTITY)))


def su11_expressions() -> dict[str, OperatorExpression]:
    """The hyperbolic generators Sz, S+, S-, Sx, Sy as expression trees.

    Sy carries the sign (i/2)(S+ - S-), matching :func:`iwqm.algebra.build_su11`.
    """
    sz = scaled(0.5, op_sum(op_product(A_PLUS, A_MINUS), scaled(0.5, IDENTITY)))
    s_plus = scaled(0.5, op_product(A_PLUS, A_PLUS))
    s_minus = scaled(0.5, op_product(A_MINUS, A_MINUS))
    sx = scaled(0.5, op_sum(s_plus, s_minus))
    sy = scaled(0.5j, op_sum(s_plus, scaled(-1.0, s_minus)))
    return {"Sz": sz, "S+": s_plus, "S-": s_minus, "Sx": sx, "Sy": sy}


# ---------------------------------------------------------------------------
# grammar:  expr (== expr)?  with  * binding tighter than binary +/-
# atoms: a-  a+  I  Sz  S+  S-  Sx  Sy  n  H, scalar literals (2, 0.5, 2i, i),
# functions adj(e), comm(a, b)
# ---------------------------------------------------------------------------

class ExpressionParseError(ValueError):
    """Raised on malformed expression text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_KEYWORDS = ("adj", "comm", "a-", "a+", "Sz", "S+", "S-", "Sx", "Sy", "n", "H", "I", "i")
_NUMBER_RE = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if text.startswith("==", pos):
            tokens.append(("EQ", "==", pos))
            pos += 2
            continue
        m = _NUMBER_RE.match(text, pos)
        if m:
            end = m.end()
            if end < len(text) and text[end] == "i":
                tokens.append(("IMAG", m.group(), pos))
                pos = end + 1
            else:
                tokens.append(("NUM", m.group(), pos))
                pos = end
            continue
        for kw in _KEYWORDS:
            if text.startswith(kw, pos):
                following = text[pos + len(kw):pos + len(kw) + 1]
                if kw.isalnum() and following.isalnum():
                    continue  # e.g. "np" must not match atom "n"
                tokens.append(("NAME", kw, pos))
                pos += len(kw)
                break
        else:
            if ch in "*+-(),":
                tokens.append((ch, ch, pos))
                pos += 1
            else:
                raise ExpressionParseError(f"unexpected character {ch!r}", pos)
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sigma: int, omega: float):
        self.tokens = _tokenize(text)
        self.idx = 0
        self.sigma = sigma
        self.named = {"n": number_expression(), "H": hamiltonian_expression(omega),
                      "I": IDENTITY, "a-": A_MINUS, "a+": A_PLUS}
        self.named.update(su11_expressions())

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind: str):
        tok = self.advance()
        if tok[0] != kind:
            raise ExpressionParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expr(self) -> OperatorExpression:
        node = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.parse_term()
            if op == "-":
                rhs = Scaled(-1.0 + 0j, rhs)
            node = op_sum(node, rhs)
        return node

    def parse_term(self) -> OperatorExpression:
        node = self.parse_factor()
        while self.peek()[0] == "*":
            self.advance()
            node = op_product(node, self.parse_factor())
        return node

    def parse_factor(self) -> OperatorExpression:
        if self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            child = self.parse_factor()
            return Scaled(-1.0 + 0j, child) if op == "-" else child
        return self.parse_primary()

    def parse_primary(self) -> OperatorExpression:
        kind, value, pos = self.advance()
        if kind == "NUM":
            return Scaled(complex(float(value)), IDENTITY)
        if kind == "IMAG":
            return Scaled(1j * float(value), IDENTITY)
        if kind == "(":
            node = self.parse_expr()
            self.expect(")")
            return node
        if kind == "NAME":
            if value == "i":
                return Scaled(1j, IDENTITY)
            if value == "adj":
                self.expect("(")
                child = self.parse_expr()
                self.expect(")")
                return adjoint(child, self.sigma)
            if value == "comm":
                self.expect("(")
                a = self.parse_expr()
                self.expect(",")
                b = self.parse_expr()
                self.expect(")")
                return op_sum(op_product(a, b), Scaled(-1.0 + 0j, op_product(b, a)))
            return self.named[value]
        raise ExpressionParseError(f"unexpected token {value!r}", pos)


def parse_expression(text: str, sigma: int = ADJOINT_SIGN, omega: float = 1.0) -> OperatorExpression:
    """Parse a single operator expression."""
    parser = _Parser(text, sigma, omega)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "END":
        raise ExpressionParseError(f"trailing input {tok[1]!r}", tok[2])
    return node


def parse_equation(text: str, sigma: int = ADJOINT_SIGN,
                   omega: float = 1.0) -> tuple[OperatorExpression, OperatorExpression]:
    """Parse ``LHS == RHS`` into a pair of expression trees."""
    parser = _Parser(text, sigma, omega)
    lhs = parser.parse_expr()
    parser.expect("EQ")
    rhs = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "END":
        raise ExpressionParseError(f"trailing input {tok[1]!r}", tok[2])
    return lhs, rhs


def equation_residual(text: str, nmax: int, sigma: int = ADJOINT_SIGN,
                      omega: float = 1.0, guard: int = 8) -> float:
    """Max-entry residual of ``LHS == RHS`` on the leading nmax block.

    Both sides are evaluated at truncation nmax + guard so that edge
    artifacts of finite generator words stay outside the compared block.
    """
    lhs, rhs = parse_equation(text, sigma, omega)
    diff = to_matrix(lhs, nmax + guard) - to_matrix(rhs, nmax + guard)
    return float(np.max(np.abs(diff[:nmax, :nmax])))
