"""Reference Game of 24 program: four numbers on stdin, [expression] or cannot."""

import ast
import itertools
import operator
import sys
from fractions import Fraction

OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_instance(text):
    return [int(tok) for tok in text.split()[:4]]


def _value(node):
    if isinstance(node, ast.Constant):
        return Fraction(node.value)
    left, right = _value(node.left), _value(node.right)
    return OPS[type(node.op)](left, right)


def evaluate_to_24(expression):
    try:
        return _value(ast.parse(expression, mode="eval").body) == 24
    except ZeroDivisionError:
        return False


def generate_expressions(n1, n2, n3, n4):
    out = []
    for a, b, c, d in itertools.permutations([str(n1), str(n2), str(n3), str(n4)]):
        for x, y, z in itertools.product("+-*/", repeat=3):
            out += [
                f"(({a}{x}{b}){y}{c}){z}{d}",
                f"({a}{x}({b}{y}{c})){z}{d}",
                f"({a}{x}{b}){z}({c}{y}{d})",
                f"{a}{z}(({b}{x}{c}){y}{d})",
                f"{a}{z}({b}{y}({c}{x}{d}))",
            ]
    return out


def can_evaluate(n1, n2, n3, n4):
    for expression in generate_expressions(n1, n2, n3, n4):
        if evaluate_to_24(expression):
            return expression
    return None


def main():
    expression = can_evaluate(*parse_instance(sys.stdin.read()))
    print("cannot" if expression is None else f"[{expression}]")


if __name__ == "__main__":
    main()
