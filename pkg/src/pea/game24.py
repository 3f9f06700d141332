"""Exhaustive Game of 24 over exact rationals.

Every candidate is a binary expression tree with the four inputs as leaves.
The stream walks leaf permutations, then operator triples, then the five
tree shapes, so it always yields 24 * 64 * 5 = 7680 trees.  Repeated inputs
produce repeated trees; they are not filtered.
"""

from __future__ import annotations

import ast
import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

TARGET = Fraction(24)


class BinOp(enum.Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"

    @property
    def precedence(self) -> int:
        return 1 if self in (BinOp.ADD, BinOp.SUB) else 2


@dataclass(frozen=True)
class Leaf:
    value: Fraction


@dataclass(frozen=True)
class Node:
    op: BinOp
    left: "Expr"
    right: "Expr"


Expr = Union[Leaf, Node]


class _DivByZero(enum.Enum):
    DIV_BY_ZERO = "DIV_BY_ZERO"


DIV_BY_ZERO = _DivByZero.DIV_BY_ZERO


@dataclass(frozen=True)
class Found:
    expression: Expr
    rendered: str


IMPOSSIBLE = "IMPOSSIBLE"


def leaf(x) -> Leaf:
    return Leaf(Fraction(x))


def eval_expr(tree: Expr):
    """Exact value of ``tree``, or :data:`DIV_BY_ZERO`."""
    if isinstance(tree, Leaf):
        return tree.value
    a = eval_expr(tree.left)
    if a is DIV_BY_ZERO:
        return a
    b = eval_expr(tree.right)
    if b is DIV_BY_ZERO:
        return b
    op = tree.op
    if op is BinOp.ADD:
        return a + b
    if op is BinOp.SUB:
        return a - b
    if op is BinOp.MUL:
        return a * b
    if b == 0:
        return DIV_BY_ZERO
    return a / b


def leaves(tree: Expr) -> list[Fraction]:
    if isinstance(tree, Leaf):
        return [tree.value]
    return leaves(tree.left) + leaves(tree.right)


# The five full binary trees over leaves a, b, c, d in order.
SHAPES = (
    lambda a, b, c, d, o: Node(o[2], Node(o[1], Node(o[0], a, b), c), d),  # ((ab)c)d
    lambda a, b, c, d, o: Node(o[2], Node(o[1], a, Node(o[0], b, c)), d),  # (a(bc))d
    lambda a, b, c, d, o: Node(o[2], Node(o[0], a, b), Node(o[1], c, d)),  # (ab)(cd)
    lambda a, b, c, d, o: Node(o[2], a, Node(o[1], Node(o[0], b, c), d)),  # a((bc)d)
    lambda a, b, c, d, o: Node(o[2], a, Node(o[1], b, Node(o[0], c, d))),  # a(b(cd))
)


def enumerate_expressions(numbers: Sequence) -> Iterator[Expr]:
    if len(numbers) != 4:
        raise ValueError(f"need exactly 4 numbers, got {len(numbers)}")
    nodes = [leaf(x) for x in numbers]
    ops = list(BinOp)
    for a, b, c, d in itertools.permutations(nodes):
        for triple in itertools.product(ops, repeat=3):
            for shape in SHAPES:
                yield shape(a, b, c, d, triple)


def solve24(numbers: Sequence, target=TARGET):
    """First expression in stream order hitting ``target`` exactly, else IMPOSSIBLE."""
    target = Fraction(target)
    for tree in enumerate_expressions(numbers):
        if eval_expr(tree) == target:
            return Found(tree, render(tree))
    return IMPOSSIBLE


# --- rendering and parsing ------------------------------------------------------
#
# A left child is parenthesized when it binds looser than its parent; a right
# child when it binds looser or equally loose.  Parsing the output with the
# usual left-associative precedence rules gives back the identical tree.

def _render_leaf(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"({value.numerator}/{value.denominator})"


def render(tree: Expr) -> str:
    if isinstance(tree, Leaf):
        return _render_leaf(tree.value)
    left, right = render(tree.left), render(tree.right)
    prec = tree.op.precedence
    if isinstance(tree.left, Node) and tree.left.op.precedence < prec:
        left = f"({left})"
    if isinstance(tree.right, Node) and tree.right.op.precedence <= prec:
        right = f"({right})"
    return f"{left}{tree.op.value}{right}"


_AST_OPS = {ast.Add: BinOp.ADD, ast.Sub: BinOp.SUB, ast.Mult: BinOp.MUL, ast.Div: BinOp.DIV}


def parse_expr(text: str) -> Expr:
    """Parse an infix arithmetic expression over integers into a tree."""
    text = text.strip().replace("×", "*").replace("÷", "/")
    try:
        node = ast.parse(text, mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"unparseable expression {text!r}") from exc

    def convert(n) -> Expr:
        if isinstance(n, ast.BinOp) and type(n.op) in _AST_OPS:
            return Node(_AST_OPS[type(n.op)], convert(n.left), convert(n.right))
        if isinstance(n, ast.Constant) and isinstance(n.value, int) and not isinstance(n.value, bool):
            return leaf(n.value)
        raise ValueError(f"unsupported syntax in {text!r}")

    return convert(node)


def format_answer(verdict) -> str:
    if isinstance(verdict, Found):
        return f"[{verdict.rendered}]"
    return "cannot"


def check_answer(numbers: Sequence, answer: str, target=TARGET) -> bool | None:
    """Judge a bracketed answer.

    Returns True/False for an expression answer (uses each number once and
    hits ``target`` exactly) and ``None`` when the answer says it cannot be done.
    """
    text = answer.strip()
    if text.lower().rstrip(".") in ("cannot", "impossible"):
        return None
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    try:
        tree = parse_expr(text)
    except ValueError:
        return False
    if sorted(leaves(tree)) != sorted(Fraction(x) for x in numbers):
        return False
    return eval_expr(tree) == Fraction(target)


def parse_instance(line: str) -> tuple[int, ...]:
    parts = line.split()
    if len(parts) != 4:
        raise ValueError(f"expected 4 numbers, got {line!r}")
    return tuple(int(p) for p in parts)
